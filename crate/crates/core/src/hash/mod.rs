//! Raw hash primitives behind one object-safe backend trait.
//!
//! Backends are registered by name in a [`BackendRegistry`] and selected at
//! runtime; everything above this module only sees `&dyn HashBackend`.

mod counting;
mod hmac;
mod mgf1;
mod sha256;
pub mod streebog;
mod streebog_consts;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use counting::CountingBackend;
pub use hmac::{hmac, Hmac};
pub use mgf1::{mgf1, mgf1_into};
pub use sha256::Sha256Backend;
pub use streebog::{streebog256, streebog512, Streebog, Streebog256Backend};

/// Largest digest any backend may produce.
pub const MAX_OUT_LEN: usize = 64;

/// Incremental hashing state obtained from [`HashBackend::hasher`].
pub trait StreamHasher: Send {
    fn update(&mut self, data: &[u8]);

    /// Writes the digest into `out`, which must be exactly `out_len` bytes.
    fn finalize_into(self: Box<Self>, out: &mut [u8]);
}

/// A hash function usable as the primitive of the signature scheme.
pub trait HashBackend: Send + Sync + fmt::Debug {
    /// Registry name, e.g. `"streebog256"`.
    fn id(&self) -> &'static str;

    /// One-byte identifier used in key and signature file headers.
    fn wire_code(&self) -> u8;

    fn out_len(&self) -> usize;

    fn block_len(&self) -> usize;

    fn hasher(&self) -> Box<dyn StreamHasher>;

    /// Hashes the concatenation of `parts` into `out` (exactly `out_len` bytes).
    ///
    /// Backends override this to avoid the boxed streaming state on hot paths.
    fn digest_parts_into(&self, parts: &[&[u8]], out: &mut [u8]) {
        let mut h = self.hasher();
        for p in parts {
            h.update(p);
        }
        h.finalize_into(out);
    }

    fn digest(&self, msg: &[u8]) -> Vec<u8> {
        let mut out = vec![0u8; self.out_len()];
        self.digest_parts_into(&[msg], &mut out);
        out
    }
}

pub type BackendFactory = fn() -> Arc<dyn HashBackend>;

/// Name-indexed collection of backend constructors.
#[derive(Clone)]
pub struct BackendRegistry {
    entries: Vec<(&'static str, BackendFactory)>,
}

impl fmt::Debug for BackendRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.entries.iter().map(|(n, _)| n))
            .finish()
    }
}

impl Default for BackendRegistry {
    fn default() -> Self {
        let mut reg = Self::empty();
        reg.register("streebog256", || Arc::new(Streebog256Backend));
        reg.register("sha256", || Arc::new(Sha256Backend));
        reg
    }
}

impl BackendRegistry {
    pub fn empty() -> Self {
        Self {
            entries: Vec::new(),
        }
    }

    /// Adds a backend; a later registration under the same name replaces the
    /// earlier one.
    pub fn register(&mut self, name: &'static str, factory: BackendFactory) {
        self.entries.retain(|(n, _)| *n != name);
        self.entries.push((name, factory));
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|(n, _)| *n).collect()
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn HashBackend>> {
        self.entries
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, f)| f())
            .ok_or_else(|| Error::UnknownBackend {
                name: name.to_string(),
                valid: self.names().join(", "),
            })
    }

    pub fn by_wire_code(&self, code: u8) -> Option<Arc<dyn HashBackend>> {
        self.entries
            .iter()
            .map(|(_, f)| f())
            .find(|b| b.wire_code() == code)
    }

    pub fn all(&self) -> Vec<Arc<dyn HashBackend>> {
        self.entries.iter().map(|(_, f)| f()).collect()
    }
}

/// Looks a backend up in the built-in registry.
pub fn backend(name: &str) -> Result<Arc<dyn HashBackend>> {
    BackendRegistry::default().get(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_registry() {
        let reg = BackendRegistry::default();
        assert_eq!(reg.names(), vec!["streebog256", "sha256"]);
        for b in reg.all() {
            assert_eq!(b.out_len(), 32);
            assert_eq!(b.block_len(), 64);
            assert_eq!(reg.get(b.id()).unwrap().wire_code(), b.wire_code());
            assert_eq!(reg.by_wire_code(b.wire_code()).unwrap().id(), b.id());
        }
        assert_eq!(reg.get("streebog256").unwrap().wire_code(), 0x01);
        assert_eq!(reg.get("sha256").unwrap().wire_code(), 0x02);
        assert!(reg.by_wire_code(0x03).is_none());
    }

    #[test]
    fn unknown_backend() {
        let err = backend("md5").unwrap_err();
        assert!(err.to_string().contains("streebog256"));
    }

    #[test]
    fn register_replaces() {
        let mut reg = BackendRegistry::empty();
        reg.register("h", || Arc::new(Sha256Backend));
        reg.register("h", || Arc::new(Streebog256Backend));
        assert_eq!(reg.names(), vec!["h"]);
        assert_eq!(reg.get("h").unwrap().id(), "streebog256");
    }

    #[test]
    fn default_parts_path_matches_override() {
        for b in BackendRegistry::default().all() {
            let parts: [&[u8]; 3] = [b"abc", b"", &[7u8; 100]];
            let mut fast = vec![0u8; 32];
            b.digest_parts_into(&parts, &mut fast);
            let mut h = b.hasher();
            for p in parts {
                h.update(p);
            }
            let mut slow = vec![0u8; 32];
            h.finalize_into(&mut slow);
            assert_eq!(fast, slow, "{}", b.id());
        }
    }
}
