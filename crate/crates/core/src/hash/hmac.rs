//! HMAC (RFC 2104) over any backend.

use super::{HashBackend, StreamHasher, MAX_OUT_LEN};

const IPAD: u8 = 0x36;
const OPAD: u8 = 0x5c;

/// Streaming HMAC. The outer hasher is primed with the padded key up front
/// so `finalize` only has to absorb the inner digest.
pub struct Hmac {
    inner: Box<dyn StreamHasher>,
    outer: Box<dyn StreamHasher>,
    out_len: usize,
}

impl Hmac {
    pub fn new(backend: &dyn HashBackend, key: &[u8]) -> Self {
        let block_len = backend.block_len();
        let mut padded = vec![0u8; block_len];
        if key.len() > block_len {
            backend.digest_parts_into(&[key], &mut padded[..backend.out_len()]);
        } else {
            padded[..key.len()].copy_from_slice(key);
        }

        let mut inner = backend.hasher();
        let mut outer = backend.hasher();
        let ipad: Vec<u8> = padded.iter().map(|b| b ^ IPAD).collect();
        let opad: Vec<u8> = padded.iter().map(|b| b ^ OPAD).collect();
        inner.update(&ipad);
        outer.update(&opad);
        Self {
            inner,
            outer,
            out_len: backend.out_len(),
        }
    }

    pub fn update(&mut self, data: &[u8]) {
        self.inner.update(data);
    }

    pub fn finalize(self) -> Vec<u8> {
        let mut inner_digest = [0u8; MAX_OUT_LEN];
        self.inner.finalize_into(&mut inner_digest[..self.out_len]);
        let mut outer = self.outer;
        outer.update(&inner_digest[..self.out_len]);
        let mut out = vec![0u8; self.out_len];
        outer.finalize_into(&mut out);
        out
    }
}

pub fn hmac(backend: &dyn HashBackend, key: &[u8], message: &[u8]) -> Vec<u8> {
    let mut mac = Hmac::new(backend, key);
    mac.update(message);
    mac.finalize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hash::{Sha256Backend, Streebog256Backend};

    fn unhex(s: &str) -> Vec<u8> {
        hex::decode(s.split_whitespace().collect::<String>()).unwrap()
    }

    // RFC 4231 test cases 1, 2, 4, 6 and 7 (HMAC-SHA-256).
    #[test]
    fn rfc4231() {
        let cases: [(Vec<u8>, Vec<u8>, &str); 5] = [
            (
                vec![0x0b; 20],
                b"Hi There".to_vec(),
                "b0344c61d8db38535ca8afceaf0bf12b881dc200c9833da726e9376c2e32cff7",
            ),
            (
                b"Jefe".to_vec(),
                b"what do ya want for nothing?".to_vec(),
                "5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843",
            ),
            (
                unhex("0102030405060708090a0b0c0d0e0f10111213141516171819"),
                vec![0xcd; 50],
                "82558a389a443c0ea4cc819899f2083a85f0faa3e578f8077a2e3ff46729665b",
            ),
            (
                vec![0xaa; 131],
                b"Test Using Larger Than Block-Size Key - Hash Key First".to_vec(),
                "60e431591ee0b67f0d8a26aacbf5b77f8e0bc6213728c5140546040f0ee37f54",
            ),
            (
                vec![0xaa; 131],
                b"This is a test using a larger than block-size key and a larger than block-size data. The key needs to be hashed before being used by the HMAC algorithm.".to_vec(),
                "9b09ffa71b942fcb27635fbcd5b0e944bfdc63644f0713938a7f51535c3a35e2",
            ),
        ];
        for (key, msg, tag) in cases {
            assert_eq!(hmac(&Sha256Backend, &key, &msg), unhex(tag));
        }
    }

    // RFC 7836 section A.1.1 (HMAC_GOSTR3411_2012_256).
    #[test]
    fn rfc7836_streebog256() {
        let key = unhex("000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f");
        let msg = unhex("0126bdb87800af214341456563780100");
        let tag = unhex("a1aa5f7de402d7b3d323f2991c8d4534013137010a83754fd0af6d7cd4922ed9");
        assert_eq!(hmac(&Streebog256Backend, &key, &msg), tag);
    }

    #[test]
    fn empty_key_is_zero_block() {
        for b in [&Sha256Backend as &dyn HashBackend, &Streebog256Backend] {
            assert_eq!(hmac(b, b"", b""), hmac(b, &[0u8; 64], b""));
            // Keys shorter than a block are zero-padded.
            assert_eq!(hmac(b, b"k", b"m"), hmac(b, b"k\0\0\0", b"m"));
        }
    }

    #[test]
    fn streaming_matches_one_shot() {
        let msg: Vec<u8> = (0..300u32).map(|i| (i * 7) as u8).collect();
        for b in [&Sha256Backend as &dyn HashBackend, &Streebog256Backend] {
            let mut mac = Hmac::new(b, b"key");
            for chunk in msg.chunks(13) {
                mac.update(chunk);
            }
            assert_eq!(mac.finalize(), hmac(b, b"key", &msg));
        }
    }
}
