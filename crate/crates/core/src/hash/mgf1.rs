//! MGF1 mask generation (RFC 2437 / PKCS #1).

use super::{HashBackend, MAX_OUT_LEN};
use crate::error::{Error, Result};

fn check_len(backend: &dyn HashBackend, len: usize) -> Result<()> {
    let limit = (1u64 << 32) * backend.out_len() as u64;
    if len as u64 > limit {
        return Err(Error::MaskTooLong {
            requested: len as u64,
            limit,
        });
    }
    Ok(())
}

/// Fills `out` with MGF1 output for the seed formed by concatenating
/// `seed_parts`.
pub fn mgf1_into(backend: &dyn HashBackend, seed_parts: &[&[u8]], out: &mut [u8]) -> Result<()> {
    check_len(backend, out.len())?;
    let hlen = backend.out_len();
    let mut block = [0u8; MAX_OUT_LEN];
    for (counter, chunk) in out.chunks_mut(hlen).enumerate() {
        let c = (counter as u32).to_be_bytes();
        let mut parts: Vec<&[u8]> = Vec::with_capacity(seed_parts.len() + 1);
        parts.extend_from_slice(seed_parts);
        parts.push(&c);
        backend.digest_parts_into(&parts, &mut block[..hlen]);
        chunk.copy_from_slice(&block[..chunk.len()]);
    }
    Ok(())
}

pub fn mgf1(backend: &dyn HashBackend, seed: &[u8], len: usize) -> Result<Vec<u8>> {
    let mut out = vec![0u8; len];
    mgf1_into(backend, &[seed], &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hash::{Sha256Backend, Streebog256Backend};

    #[test]
    fn zero_length() {
        assert!(mgf1(&Sha256Backend, b"seed", 0).unwrap().is_empty());
        assert!(mgf1(&Streebog256Backend, b"", 0).unwrap().is_empty());
    }

    #[test]
    fn single_block_is_digest_of_counter_zero() {
        let b = Sha256Backend;
        assert_eq!(mgf1(&b, b"", 32).unwrap(), b.digest(&[0, 0, 0, 0]));
    }

    #[test]
    fn streebog_two_blocks() {
        let b = Streebog256Backend;
        let mut expected = b.digest(b"abc\x00\x00\x00\x00");
        expected.extend(b.digest(b"abc\x00\x00\x00\x01"));
        expected.truncate(40);
        assert_eq!(mgf1(&b, b"abc", 40).unwrap(), expected);
    }

    #[test]
    fn split_seed_matches_joined() {
        let b = Streebog256Backend;
        let mut out = [0u8; 70];
        mgf1_into(&b, &[b"ab", b"", b"c"], &mut out).unwrap();
        assert_eq!(out.to_vec(), mgf1(&b, b"abc", 70).unwrap());
    }

    #[test]
    fn overlong_mask_rejected() {
        // The length check runs before any output is produced.
        let too_long = (1usize << 32) * 32 + 1;
        assert!(matches!(
            check_len(&Sha256Backend, too_long),
            Err(Error::MaskTooLong { .. })
        ));
        assert!(check_len(&Sha256Backend, (1usize << 32) * 32).is_ok());
    }
}
