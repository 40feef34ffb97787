//! GOST R 34.11-2012 ("Streebog"), 256- and 512-bit variants.
//!
//! The 512-bit state is held as eight little-endian `u64` words: byte `i`
//! of a block in memory is bit range `8i..8i+8` of the standard's integer.
//! With that convention message bytes are absorbed in their natural order
//! and the digest is emitted in the order the RFC 6986 reference code
//! prints it after byte reversal.
//!
//! S, P and L are fused into eight 256-entry tables computed at compile time.

use super::streebog_consts::{A, C, PI};
use super::{HashBackend, StreamHasher};

type Words = [u64; 8];

const fn lps_tables() -> [[u64; 256]; 8] {
    // Output word q collects byte q of every input word r (the transposition
    // P), substituted through PI and multiplied by the 8 matrix rows that
    // correspond to byte position r of the output word.
    let mut table = [[0u64; 256]; 8];
    let mut r = 0;
    while r < 8 {
        let mut v = 0;
        while v < 256 {
            let s = PI[v];
            let mut acc = 0u64;
            let mut bit = 0;
            while bit < 8 {
                if (s >> bit) & 1 == 1 {
                    acc ^= A[63 - 8 * r - bit];
                }
                bit += 1;
            }
            table[r][v] = acc;
            v += 1;
        }
        r += 1;
    }
    table
}

const fn round_constants() -> [Words; 12] {
    let mut out = [[0u64; 8]; 12];
    let mut i = 0;
    while i < 12 {
        let mut q = 0;
        while q < 8 {
            let mut word = 0u64;
            let mut b = 0;
            while b < 8 {
                word |= (C[i][8 * q + b] as u64) << (8 * b);
                b += 1;
            }
            out[i][q] = word;
            q += 1;
        }
        i += 1;
    }
    out
}

static LPS: [[u64; 256]; 8] = lps_tables();
static ROUND_C: [Words; 12] = round_constants();

#[inline(always)]
fn xor(a: &Words, b: &Words) -> Words {
    let mut out = [0u64; 8];
    for i in 0..8 {
        out[i] = a[i] ^ b[i];
    }
    out
}

#[inline(always)]
fn lps(x: &Words) -> Words {
    let mut out = [0u64; 8];
    for (q, o) in out.iter_mut().enumerate() {
        let shift = 8 * q;
        let mut acc = 0u64;
        for (r, t) in LPS.iter().enumerate() {
            acc ^= t[((x[r] >> shift) & 0xff) as usize];
        }
        *o = acc;
    }
    out
}

/// Compression function g_N(h, m) in Miyaguchi-Preneel mode over the
/// 12-round cipher E.
fn compress(h: &mut Words, n: &Words, m: &Words) {
    let mut key = lps(&xor(h, n));
    let mut state = *m;
    for c in ROUND_C.iter() {
        state = lps(&xor(&state, &key));
        key = lps(&xor(&key, c));
    }
    for i in 0..8 {
        h[i] ^= state[i] ^ key[i] ^ m[i];
    }
}

/// Adds `b` into `a` modulo 2^512.
fn add_512(a: &mut Words, b: &Words) {
    let mut carry = false;
    for i in 0..8 {
        let (s1, c1) = a[i].overflowing_add(b[i]);
        let (s2, c2) = s1.overflowing_add(carry as u64);
        a[i] = s2;
        carry = c1 || c2;
    }
}

fn load(block: &[u8; 64]) -> Words {
    let mut out = [0u64; 8];
    for (w, chunk) in out.iter_mut().zip(block.chunks_exact(8)) {
        *w = u64::from_le_bytes(chunk.try_into().unwrap());
    }
    out
}

/// Incremental Streebog state.
#[derive(Clone)]
pub struct Streebog {
    h: Words,
    n: Words,
    sigma: Words,
    buf: [u8; 64],
    pos: usize,
    out_len: usize,
}

impl Streebog {
    /// 256-bit variant: IV of all 0x01 bytes, output truncated to the most
    /// significant half.
    pub fn new_256() -> Self {
        Self::with_iv([0x0101_0101_0101_0101; 8], 32)
    }

    pub fn new_512() -> Self {
        Self::with_iv([0; 8], 64)
    }

    fn with_iv(h: Words, out_len: usize) -> Self {
        Self {
            h,
            n: [0; 8],
            sigma: [0; 8],
            buf: [0; 64],
            pos: 0,
            out_len,
        }
    }

    pub fn out_len(&self) -> usize {
        self.out_len
    }

    fn absorb_block(&mut self, block: &Words, bits: u64) {
        compress(&mut self.h, &self.n, block);
        add_512(&mut self.n, &[bits, 0, 0, 0, 0, 0, 0, 0]);
        add_512(&mut self.sigma, block);
    }

    pub fn update(&mut self, mut data: &[u8]) {
        if self.pos > 0 {
            let take = (64 - self.pos).min(data.len());
            self.buf[self.pos..self.pos + take].copy_from_slice(&data[..take]);
            self.pos += take;
            data = &data[take..];
            if self.pos < 64 {
                return;
            }
            let block = load(&self.buf);
            self.absorb_block(&block, 512);
            self.pos = 0;
        }
        // A full final block is still followed by a padding block, so full
        // blocks can be compressed as soon as they are available.
        let mut chunks = data.chunks_exact(64);
        for chunk in &mut chunks {
            let block = load(chunk.try_into().unwrap());
            self.absorb_block(&block, 512);
        }
        let rest = chunks.remainder();
        self.buf[..rest.len()].copy_from_slice(rest);
        self.pos = rest.len();
    }

    /// Writes the digest into `out` (`out_len` bytes).
    pub fn finalize_into(mut self, out: &mut [u8]) {
        assert_eq!(out.len(), self.out_len, "streebog output length");
        let mut last = [0u8; 64];
        last[..self.pos].copy_from_slice(&self.buf[..self.pos]);
        last[self.pos] = 0x01;
        let block = load(&last);
        self.absorb_block(&block, 8 * self.pos as u64);
        let zero = [0u64; 8];
        let (n, sigma) = (self.n, self.sigma);
        compress(&mut self.h, &zero, &n);
        compress(&mut self.h, &zero, &sigma);

        let mut full = [0u8; 64];
        for (chunk, w) in full.chunks_exact_mut(8).zip(self.h.iter()) {
            chunk.copy_from_slice(&w.to_le_bytes());
        }
        out.copy_from_slice(&full[64 - self.out_len..]);
    }

    pub fn finalize(self) -> Vec<u8> {
        let mut out = vec![0u8; self.out_len];
        self.finalize_into(&mut out);
        out
    }

    #[cfg(test)]
    pub(crate) fn counters(&self) -> (Words, Words) {
        (self.n, self.sigma)
    }
}

pub fn streebog256(msg: &[u8]) -> [u8; 32] {
    let mut s = Streebog::new_256();
    s.update(msg);
    let mut out = [0u8; 32];
    s.finalize_into(&mut out);
    out
}

pub fn streebog512(msg: &[u8]) -> [u8; 64] {
    let mut s = Streebog::new_512();
    s.update(msg);
    let mut out = [0u8; 64];
    s.finalize_into(&mut out);
    out
}

impl StreamHasher for Streebog {
    fn update(&mut self, data: &[u8]) {
        Streebog::update(self, data);
    }

    fn finalize_into(self: Box<Self>, out: &mut [u8]) {
        Streebog::finalize_into(*self, out);
    }
}

/// Streebog-256 as a signature-scheme backend.
#[derive(Debug, Clone, Copy, Default)]
pub struct Streebog256Backend;

impl HashBackend for Streebog256Backend {
    fn id(&self) -> &'static str {
        "streebog256"
    }

    fn wire_code(&self) -> u8 {
        0x01
    }

    fn out_len(&self) -> usize {
        32
    }

    fn block_len(&self) -> usize {
        64
    }

    fn hasher(&self) -> Box<dyn StreamHasher> {
        Box::new(Streebog::new_256())
    }

    fn digest_parts_into(&self, parts: &[&[u8]], out: &mut [u8]) {
        let mut s = Streebog::new_256();
        for p in parts {
            s.update(p);
        }
        s.finalize_into(out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use streebog::Digest as _;

    /// RFC 6986 prints messages and digests most-significant byte first;
    /// reversing gives the byte strings as hashed and emitted.
    fn rfc(s: &str) -> Vec<u8> {
        let mut v = hex::decode(s).unwrap();
        v.reverse();
        v
    }

    const M1: &str = "323130393837363534333231303938373635343332313039383736353433323130\
                      393837363534333231303938373635343332313039383736353433323130";
    const M2: &str = "fbe2e5f0eee3c820fbeafaebef20fffbf0e1e0f0f520e0ed20e8ece0ebe5f0f2f1\
                      20fff0eeec20f120faf2fee5e2202ce8f6f3ede220e8e6eee1e8f0f2d1202ce8\
                      f0f2e5e220e5d1";

    #[test]
    fn rfc6986_m1() {
        let m1 = rfc(M1);
        assert_eq!(m1.len(), 63);
        assert_eq!(&m1, b"012345678901234567890123456789012345678901234567890123456789012");
        assert_eq!(
            streebog512(&m1).to_vec(),
            rfc("486f64c1917879417fef082b3381a4e211c324f074654c38823a7b76f830ad00\
                 fa1fbae42b1285c0352f227524bc9ab16254288dd6863dccd5b9f54a1ad0541b")
        );
        assert_eq!(
            streebog256(&m1).to_vec(),
            rfc("00557be5e584fd52a449b16b0251d05d27f94ab76cbaa6da890b59d8ef1e159d")
        );
    }

    #[test]
    fn rfc6986_m2() {
        let m2 = rfc(M2);
        assert_eq!(m2.len(), 72);
        assert_eq!(
            streebog512(&m2).to_vec(),
            rfc("28fbc9bada033b1460642bdcddb90c3fb3e56c497ccd0f62b8a2ad4935e85f03\
                 7613966de4ee00531ae60f3b5a47f8dae06915d5f2f194996fcabf2622e6881e")
        );
        assert_eq!(
            streebog256(&m2).to_vec(),
            rfc("508f7e553c06501d749a66fc28c6cac0b005746d97537fa85d9e40904efed29d")
        );
    }

    #[test]
    fn empty_message_matches_reference_crate() {
        assert_eq!(
            streebog256(b"").as_slice(),
            streebog::Streebog256::digest(b"").as_slice()
        );
        assert_eq!(
            streebog512(b"").as_slice(),
            streebog::Streebog512::digest(b"").as_slice()
        );
    }

    #[test]
    fn block_boundaries_match_reference_crate() {
        for len in [1usize, 55, 63, 64, 65, 127, 128, 129, 200] {
            let msg: Vec<u8> = (0..len).map(|i| (i * 31 + 7) as u8).collect();
            assert_eq!(
                streebog256(&msg).as_slice(),
                streebog::Streebog256::digest(&msg).as_slice(),
                "len {len}"
            );
            assert_eq!(
                streebog512(&msg).as_slice(),
                streebog::Streebog512::digest(&msg).as_slice(),
                "len {len}"
            );
        }
    }

    fn add_bytes(acc: &mut Words, bytes: &[u8; 64]) {
        add_512(acc, &load(bytes));
    }

    #[test]
    fn length_counter_and_checksum() {
        let msg: Vec<u8> = (0..200u32).map(|i| (i ^ 0x5a) as u8).collect();
        let mut s = Streebog::new_256();
        s.update(&msg);
        let (n, sigma) = s.counters();
        // Three full blocks absorbed so far; 8 bytes buffered.
        assert_eq!(n, [3 * 512, 0, 0, 0, 0, 0, 0, 0]);
        let mut expected = [0u64; 8];
        for chunk in msg.chunks_exact(64) {
            add_bytes(&mut expected, chunk.try_into().unwrap());
        }
        assert_eq!(sigma, expected);
    }

    #[test]
    fn checksum_wraps_mod_2_512() {
        let mut a = [u64::MAX; 8];
        add_512(&mut a, &[1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(a, [0; 8]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn chunked_equals_one_shot(
            msg in proptest::collection::vec(any::<u8>(), 0..4096),
            cuts in proptest::collection::vec(any::<prop::sample::Index>(), 0..8),
        ) {
            let mut points: Vec<usize> = cuts.iter().map(|c| c.index(msg.len() + 1)).collect();
            points.sort_unstable();
            let mut s = Streebog::new_256();
            let mut prev = 0;
            for p in points {
                s.update(&msg[prev..p]);
                prev = p;
            }
            s.update(&msg[prev..]);
            prop_assert_eq!(s.finalize(), streebog256(&msg).to_vec());
        }
    }

    #[test]
    fn byte_at_a_time_and_block_aligned() {
        let msg: Vec<u8> = (0..777u32).map(|i| (i * 13) as u8).collect();
        let one_shot = streebog512(&msg);
        let mut bytewise = Streebog::new_512();
        for b in &msg {
            bytewise.update(std::slice::from_ref(b));
        }
        let mut aligned = Streebog::new_512();
        for chunk in msg.chunks(64) {
            aligned.update(chunk);
        }
        assert_eq!(bytewise.finalize(), one_shot.to_vec());
        assert_eq!(aligned.finalize(), one_shot.to_vec());
    }
}
