//! Instrumentation shared by the unit tests.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use rand::Rng;

use crate::address::Adrs;
use crate::thash::{CallObserver, HashRole};

pub(crate) fn random_bytes(rng: &mut impl Rng, len: usize) -> Vec<u8> {
    let mut v = vec![0u8; len];
    rng.fill(&mut v[..]);
    v
}

/// Counts auxiliary-function invocations by role.
#[derive(Default)]
pub(crate) struct CallCounter {
    counts: Mutex<HashMap<HashRole, u64>>,
    total: AtomicU64,
}

impl CallCounter {
    pub(crate) fn get(&self, role: HashRole) -> u64 {
        *self.counts.lock().unwrap().get(&role).unwrap_or(&0)
    }
    pub(crate) fn f(&self) -> u64 {
        self.get(HashRole::F)
    }
    pub(crate) fn h(&self) -> u64 {
        self.get(HashRole::H)
    }
    pub(crate) fn t(&self) -> u64 {
        self.get(HashRole::T)
    }
    pub(crate) fn prf(&self) -> u64 {
        self.get(HashRole::Prf)
    }
    #[allow(dead_code)]
    pub(crate) fn total(&self) -> u64 {
        self.total.load(Ordering::Relaxed)
    }
}

impl CallObserver for CallCounter {
    fn observe(&self, role: HashRole, _adrs: Option<&Adrs>, _input: &[u8]) {
        *self.counts.lock().unwrap().entry(role).or_default() += 1;
        self.total.fetch_add(1, Ordering::Relaxed);
    }
}
