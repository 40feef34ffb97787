//! The auxiliary functions of the scheme, built from one [`HashBackend`].
//!
//! * `F`, `H`, `T_l`: one tweakable hash over `l·n` input bytes. The input is
//!   first XORed with an MGF1 bitmask seeded by `pk_seed ‖ ADRS`, then hashed
//!   together with the same prefix and truncated to `n` bytes.
//! * `PRF`: `digest(sk_seed ‖ ADRS)` truncated to `n`.
//! * `PRF_msg`: `HMAC(sk_prf, opt_rand ‖ M)` truncated to `n`.
//! * `H_msg`: `MGF1(R ‖ pk_seed ‖ pk_root ‖ digest(R ‖ pk_seed ‖ pk_root ‖ M), m)`.

use crate::address::{Adrs, ADRS_BYTES};
use crate::error::{Error, Result};
use crate::hash::{mgf1_into, HashBackend, Hmac, StreamHasher, MAX_OUT_LEN};
use crate::params::ParamSet;

/// Which auxiliary function a hash call implements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HashRole {
    /// Tweakable hash over one value (chain step, FORS leaf).
    F,
    /// Tweakable hash over two values (Merkle node).
    H,
    /// Tweakable hash over more than two values (key compression).
    T,
    Prf,
    PrfMsg,
    HMsg,
}

/// Receives one callback per auxiliary-function invocation.
///
/// Used by tests and the benchmark harness to count calls and to check that
/// tweaks never collide. `input` is the unmasked message (or the secret seed
/// for `Prf`); it is empty for the message-level functions.
pub trait CallObserver: Send + Sync {
    fn observe(&self, role: HashRole, adrs: Option<&Adrs>, input: &[u8]);
}

#[derive(Clone, Copy)]
pub struct TweakContext<'a> {
    backend: &'a dyn HashBackend,
    pk_seed: &'a [u8],
    observer: Option<&'a dyn CallObserver>,
}

impl std::fmt::Debug for TweakContext<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TweakContext")
            .field("backend", &self.backend.id())
            .field("n", &self.n())
            .finish()
    }
}

fn check_len(what: &'static str, expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::Length {
            what,
            expected,
            actual,
        });
    }
    Ok(())
}

impl<'a> TweakContext<'a> {
    /// `n` is taken from the length of `pk_seed`.
    pub fn new(backend: &'a dyn HashBackend, pk_seed: &'a [u8]) -> Result<Self> {
        if pk_seed.is_empty() || pk_seed.len() > backend.out_len() {
            return Err(Error::Length {
                what: "pk_seed",
                expected: backend.out_len(),
                actual: pk_seed.len(),
            });
        }
        Ok(Self {
            backend,
            pk_seed,
            observer: None,
        })
    }

    pub fn with_observer(mut self, observer: &'a dyn CallObserver) -> Self {
        self.observer = Some(observer);
        self
    }

    pub fn n(&self) -> usize {
        self.pk_seed.len()
    }

    pub fn backend(&self) -> &'a dyn HashBackend {
        self.backend
    }

    pub fn pk_seed(&self) -> &'a [u8] {
        self.pk_seed
    }

    #[inline]
    fn notify(&self, role: HashRole, adrs: Option<&Adrs>, input: &[u8]) {
        if let Some(obs) = self.observer {
            obs.observe(role, adrs, input);
        }
    }

    fn mask_in_place(&self, adrs_bytes: &[u8; ADRS_BYTES], msg: &mut [u8]) {
        let mut mask = vec![0u8; msg.len()];
        mgf1_into(self.backend, &[self.pk_seed, adrs_bytes], &mut mask)
            .expect("in-memory message is within the MGF1 length bound");
        for (m, k) in msg.iter_mut().zip(mask) {
            *m ^= k;
        }
    }

    /// `msg ⊕ MGF1(pk_seed ‖ ADRS, len(msg))`.
    pub fn mask(&self, adrs: &Adrs, msg: &[u8]) -> Vec<u8> {
        let mut out = msg.to_vec();
        self.mask_in_place(&adrs.to_bytes(), &mut out);
        out
    }

    /// Tweakable hash `F`/`H`/`T_l`, selected by `msg.len() / n`.
    pub fn thash(&self, adrs: &Adrs, msg: &[u8]) -> Result<Vec<u8>> {
        let n = self.n();
        if msg.is_empty() || !msg.len().is_multiple_of(n) {
            return Err(Error::Length {
                what: "tweakable hash input (multiple of n)",
                expected: n * msg.len().div_ceil(n).max(1),
                actual: msg.len(),
            });
        }
        let mut out = vec![0u8; n];
        self.thash_into(adrs, msg, &mut out);
        Ok(out)
    }

    /// Unchecked `thash`; `out` must be `n` bytes and `msg` a multiple of `n`.
    pub(crate) fn thash_into(&self, adrs: &Adrs, msg: &[u8], out: &mut [u8]) {
        let n = self.n();
        debug_assert_eq!(out.len(), n);
        debug_assert!(!msg.is_empty() && msg.len().is_multiple_of(n));
        let role = match msg.len() / n {
            1 => HashRole::F,
            2 => HashRole::H,
            _ => HashRole::T,
        };
        self.notify(role, Some(adrs), msg);

        let adrs_bytes = adrs.to_bytes();
        let mut masked = msg.to_vec();
        self.mask_in_place(&adrs_bytes, &mut masked);
        let mut digest = [0u8; MAX_OUT_LEN];
        let out_len = self.backend.out_len();
        self.backend
            .digest_parts_into(&[self.pk_seed, &adrs_bytes, &masked], &mut digest[..out_len]);
        out.copy_from_slice(&digest[..n]);
    }

    pub fn prf(&self, sk_seed: &[u8], adrs: &Adrs) -> Result<Vec<u8>> {
        check_len("sk_seed", self.n(), sk_seed.len())?;
        let mut out = vec![0u8; self.n()];
        self.prf_into(sk_seed, adrs, &mut out);
        Ok(out)
    }

    pub(crate) fn prf_into(&self, sk_seed: &[u8], adrs: &Adrs, out: &mut [u8]) {
        self.notify(HashRole::Prf, Some(adrs), sk_seed);
        let mut digest = [0u8; MAX_OUT_LEN];
        let out_len = self.backend.out_len();
        self.backend
            .digest_parts_into(&[sk_seed, &adrs.to_bytes()], &mut digest[..out_len]);
        out.copy_from_slice(&digest[..self.n()]);
    }

    /// Starts an incremental `PRF_msg`; feed the message with
    /// [`PrfMsg::update`].
    pub fn prf_msg_stream(&self, sk_prf: &[u8], opt_rand: &[u8]) -> Result<PrfMsg> {
        check_len("sk_prf", self.n(), sk_prf.len())?;
        check_len("opt_rand", self.n(), opt_rand.len())?;
        self.notify(HashRole::PrfMsg, None, &[]);
        let mut mac = Hmac::new(self.backend, sk_prf);
        mac.update(opt_rand);
        Ok(PrfMsg { mac, n: self.n() })
    }

    pub fn prf_msg(&self, sk_prf: &[u8], opt_rand: &[u8], message: &[u8]) -> Result<Vec<u8>> {
        let mut s = self.prf_msg_stream(sk_prf, opt_rand)?;
        s.update(message);
        Ok(s.finalize())
    }

    /// Starts an incremental `H_msg`.
    pub fn h_msg_stream(&self, randomizer: &[u8], pk_root: &[u8]) -> Result<HMsg<'a>> {
        check_len("randomizer", self.n(), randomizer.len())?;
        check_len("pk_root", self.n(), pk_root.len())?;
        self.notify(HashRole::HMsg, None, &[]);
        let mut prefix = Vec::with_capacity(3 * self.n());
        prefix.extend_from_slice(randomizer);
        prefix.extend_from_slice(self.pk_seed);
        prefix.extend_from_slice(pk_root);
        let mut inner = self.backend.hasher();
        inner.update(&prefix);
        Ok(HMsg {
            backend: self.backend,
            prefix,
            inner,
        })
    }

    pub fn h_msg(&self, randomizer: &[u8], pk_root: &[u8], message: &[u8], m: usize) -> Result<Vec<u8>> {
        let mut s = self.h_msg_stream(randomizer, pk_root)?;
        s.update(message);
        s.finalize(m)
    }
}

pub struct PrfMsg {
    mac: Hmac,
    n: usize,
}

impl PrfMsg {
    pub fn update(&mut self, data: &[u8]) {
        self.mac.update(data);
    }

    pub fn finalize(self) -> Vec<u8> {
        let mut out = self.mac.finalize();
        out.truncate(self.n);
        out
    }
}

pub struct HMsg<'a> {
    backend: &'a dyn HashBackend,
    prefix: Vec<u8>,
    inner: Box<dyn StreamHasher>,
}

impl HMsg<'_> {
    pub fn update(&mut self, data: &[u8]) {
        self.inner.update(data);
    }

    /// Expands the message hash to `m` bytes.
    pub fn finalize(self, m: usize) -> Result<Vec<u8>> {
        let mut digest = vec![0u8; self.backend.out_len()];
        self.inner.finalize_into(&mut digest);
        let mut out = vec![0u8; m];
        mgf1_into(self.backend, &[&self.prefix, &digest], &mut out)?;
        Ok(out)
    }
}

/// Positions selected by a message digest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigestIndices {
    /// One leaf index per FORS tree, each `< 2^a`.
    pub fors: Vec<u32>,
    /// Bottom-layer subtree, `< 2^(h - h/d)`.
    pub tree: u64,
    /// Leaf within that subtree, `< 2^(h/d)`.
    pub leaf: u32,
}

/// Reads `bits`-wide big-endian fields from a byte string.
struct BitReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl BitReader<'_> {
    fn take(&mut self, bits: u32) -> u64 {
        let mut v = 0u64;
        for _ in 0..bits {
            let bit = (self.bytes[self.pos / 8] >> (7 - self.pos % 8)) & 1;
            v = (v << 1) | bit as u64;
            self.pos += 1;
        }
        v
    }
}

fn be_masked(bytes: &[u8], bits: u32) -> u64 {
    let v = bytes.iter().fold(0u128, |acc, &b| (acc << 8) | b as u128);
    (v & ((1u128 << bits) - 1)) as u64
}

/// Splits an `m`-byte digest into FORS indices, tree index and leaf index.
pub fn split_digest(p: &ParamSet, digest: &[u8]) -> Result<DigestIndices> {
    check_len("message digest", p.m, digest.len())?;
    let fors_bytes = (p.k * p.a as usize).div_ceil(8);
    let tree_bytes = (p.tree_bits() as usize).div_ceil(8);

    let mut reader = BitReader {
        bytes: &digest[..fors_bytes],
        pos: 0,
    };
    let fors = (0..p.k).map(|_| reader.take(p.a) as u32).collect();
    let tree = be_masked(&digest[fors_bytes..fors_bytes + tree_bytes], p.tree_bits());
    let leaf = be_masked(&digest[fors_bytes + tree_bytes..], p.tree_height()) as u32;
    Ok(DigestIndices { fors, tree, leaf })
}
