use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use super::{HashBackend, StreamHasher};

/// Wraps a backend and counts finished digest computations.
///
/// One-shot digests and finalized streaming states each count once,
/// regardless of how many compression blocks they took. Counts are
/// therefore comparable between backends with different padding rules.
#[derive(Debug)]
pub struct CountingBackend {
    inner: Arc<dyn HashBackend>,
    calls: Arc<AtomicU64>,
}

struct CountingStream {
    inner: Box<dyn StreamHasher>,
    calls: Arc<AtomicU64>,
}

impl StreamHasher for CountingStream {
    fn update(&mut self, data: &[u8]) {
        self.inner.update(data);
    }

    fn finalize_into(self: Box<Self>, out: &mut [u8]) {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.finalize_into(out);
    }
}

impl CountingBackend {
    pub fn new(inner: Arc<dyn HashBackend>) -> Self {
        Self {
            inner,
            calls: Arc::new(AtomicU64::new(0)),
        }
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.calls.store(0, Ordering::Relaxed);
    }
}

impl HashBackend for CountingBackend {
    fn id(&self) -> &'static str {
        self.inner.id()
    }

    fn wire_code(&self) -> u8 {
        self.inner.wire_code()
    }

    fn out_len(&self) -> usize {
        self.inner.out_len()
    }

    fn block_len(&self) -> usize {
        self.inner.block_len()
    }

    fn hasher(&self) -> Box<dyn StreamHasher> {
        Box::new(CountingStream {
            inner: self.inner.hasher(),
            calls: Arc::clone(&self.calls),
        })
    }

    fn digest_parts_into(&self, parts: &[&[u8]], out: &mut [u8]) {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.digest_parts_into(parts, out);
    }
}
