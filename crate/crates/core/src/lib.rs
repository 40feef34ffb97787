//! Stateless hash-based signatures following the SPHINCS+ construction,
//! instantiated with either Streebog-256 (GOST R 34.11-2012) or SHA-256.
//!
//! The hash function is a runtime choice: every layer of the scheme works
//! against [`hash::HashBackend`] trait objects looked up by name in a
//! [`hash::BackendRegistry`].
//!
//! Nothing here is constant-time.

pub mod address;
pub mod bench;
pub mod error;
pub mod fors;
pub mod hash;
pub mod hypertree;
mod merkle;
pub mod params;
pub mod sphincs;
pub mod thash;
pub mod wots;

#[cfg(test)]
mod test_util;

pub use error::{Error, Result};
pub use params::ParamSet;
pub use sphincs::{PublicKey, Scheme, SecretKey, Signature};
