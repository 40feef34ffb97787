use sha2::{Digest, Sha256};

use super::{HashBackend, StreamHasher};

/// SHA-256 backend over the `sha2` crate.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sha256Backend;

struct Sha256Stream(Sha256);

impl StreamHasher for Sha256Stream {
    fn update(&mut self, data: &[u8]) {
        self.0.update(data);
    }

    fn finalize_into(self: Box<Self>, out: &mut [u8]) {
        out.copy_from_slice(self.0.finalize().as_slice());
    }
}

impl HashBackend for Sha256Backend {
    fn id(&self) -> &'static str {
        "sha256"
    }

    fn wire_code(&self) -> u8 {
        0x02
    }

    fn out_len(&self) -> usize {
        32
    }

    fn block_len(&self) -> usize {
        64
    }

    fn hasher(&self) -> Box<dyn StreamHasher> {
        Box::new(Sha256Stream(Sha256::new()))
    }

    fn digest_parts_into(&self, parts: &[&[u8]], out: &mut [u8]) {
        let mut h = Sha256::new();
        for p in parts {
            h.update(p);
        }
        out.copy_from_slice(h.finalize().as_slice());
    }
}
