//! Winternitz one-time signatures with bitmasked chains.

use crate::address::{Adrs, AdrsType};
use crate::error::{Error, Result};
use crate::params::ParamSet;
use crate::thash::TweakContext;

/// `len` chain values of `n` bytes each, message chains first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WotsSignature {
    bytes: Vec<u8>,
    n: usize,
}

impl WotsSignature {
    pub fn from_bytes(p: &ParamSet, bytes: &[u8]) -> Result<Self> {
        if bytes.len() != p.len * p.n {
            return Err(Error::Length {
                what: "WOTS signature",
                expected: p.len * p.n,
                actual: bytes.len(),
            });
        }
        Ok(Self {
            bytes: bytes.to_vec(),
            n: p.n,
        })
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn chain(&self, i: usize) -> &[u8] {
        &self.bytes[i * self.n..(i + 1) * self.n]
    }

    pub fn len(&self) -> usize {
        self.bytes.len() / self.n
    }

    pub fn is_empty(&self) -> bool {
        self.bytes.is_empty()
    }
}

pub(crate) fn checksum(p: &ParamSet, digits: &[u32]) -> u32 {
    digits.iter().map(|&v| p.w - 1 - v).sum()
}

/// Big-endian base-`w` digits of `msg` followed by the checksum digits.
pub fn base_w(p: &ParamSet, msg: &[u8]) -> Result<Vec<u32>> {
    if msg.len() != p.n {
        return Err(Error::Length {
            what: "WOTS message",
            expected: p.n,
            actual: msg.len(),
        });
    }
    let log_w = p.log_w();
    let mask = p.w - 1;
    let mut digits = Vec::with_capacity(p.len);
    // w = 16: two digits per byte, high nibble first.
    for &b in msg {
        digits.push((b as u32 >> log_w) & mask);
        digits.push(b as u32 & mask);
    }
    digits.truncate(p.len1);

    // Shift the checksum so its len2 digits start at a byte boundary, then
    // read them most significant first.
    let csum_bits = p.len2 as u32 * log_w;
    let shifted = checksum(p, &digits) << ((8 - csum_bits % 8) % 8);
    let total_bits = csum_bits.div_ceil(8) * 8;
    for i in 0..p.len2 as u32 {
        let shift = total_bits - log_w * (i + 1);
        digits.push((shifted >> shift) & mask);
    }
    Ok(digits)
}

/// Advances `value` from position `start` by `steps` chain steps.
///
/// `adrs` must be a chain address; its hash word is overwritten.
pub(crate) fn chain_in_place(ctx: &TweakContext<'_>, value: &mut [u8], start: u32, steps: u32, adrs: &mut Adrs) {
    let mut next = [0u8; 32];
    let n = value.len();
    for i in start..start + steps {
        adrs.set_hash(i);
        ctx.thash_into(adrs, value, &mut next[..n]);
        value.copy_from_slice(&next[..n]);
    }
}

pub fn chain(p: &ParamSet, ctx: &TweakContext<'_>, start_value: &[u8], start: u32, steps: u32, adrs: &Adrs) -> Result<Vec<u8>> {
    if start + steps > p.w - 1 {
        return Err(Error::Range {
            what: "chain end (start + steps)",
            value: (start + steps) as u128,
            limit: p.w as u128,
        });
    }
    if start_value.len() != ctx.n() {
        return Err(Error::Length {
            what: "chain value",
            expected: ctx.n(),
            actual: start_value.len(),
        });
    }
    let mut value = start_value.to_vec();
    let mut a = *adrs;
    chain_in_place(ctx, &mut value, start, steps, &mut a);
    Ok(value)
}

fn chain_address(adrs: &Adrs) -> Adrs {
    let keypair = adrs.keypair();
    let mut a = adrs.with_type(AdrsType::WotsHash);
    a.set_keypair(keypair);
    a
}

fn compress(ctx: &TweakContext<'_>, adrs: &Adrs, ends: &[u8]) -> Vec<u8> {
    let keypair = adrs.keypair();
    let mut pk_adrs = adrs.with_type(AdrsType::WotsPk);
    pk_adrs.set_keypair(keypair);
    let mut out = vec![0u8; ctx.n()];
    ctx.thash_into(&pk_adrs, ends, &mut out);
    out
}

fn secret_element(ctx: &TweakContext<'_>, sk_seed: &[u8], chain_adrs: &mut Adrs, i: usize, out: &mut [u8]) {
    chain_adrs.set_chain(i as u32);
    chain_adrs.set_hash(0);
    ctx.prf_into(sk_seed, chain_adrs, out);
}

fn check_seed(ctx: &TweakContext<'_>, sk_seed: &[u8]) -> Result<()> {
    if sk_seed.len() != ctx.n() {
        return Err(Error::Length {
            what: "sk_seed",
            expected: ctx.n(),
            actual: sk_seed.len(),
        });
    }
    Ok(())
}

/// Compressed public key of the one-time key pair at `adrs` (layer, tree and
/// keypair are taken from it).
pub fn wots_pk_gen(p: &ParamSet, ctx: &TweakContext<'_>, sk_seed: &[u8], adrs: &Adrs) -> Result<Vec<u8>> {
    check_seed(ctx, sk_seed)?;
    Ok(pk_gen_unchecked(p, ctx, sk_seed, adrs))
}

pub(crate) fn pk_gen_unchecked(p: &ParamSet, ctx: &TweakContext<'_>, sk_seed: &[u8], adrs: &Adrs) -> Vec<u8> {
    let n = p.n;
    let mut chain_adrs = chain_address(adrs);
    let mut ends = vec![0u8; p.len * n];
    for (i, end) in ends.chunks_exact_mut(n).enumerate() {
        secret_element(ctx, sk_seed, &mut chain_adrs, i, end);
        chain_in_place(ctx, end, 0, p.w - 1, &mut chain_adrs);
    }
    compress(ctx, adrs, &ends)
}

/// Public key of the leaf at `adrs` together with a signature of `digits`,
/// read off the chains as they are walked.
pub(crate) fn pk_gen_and_sign(p: &ParamSet, ctx: &TweakContext<'_>, sk_seed: &[u8], adrs: &Adrs, digits: &[u32]) -> (Vec<u8>, WotsSignature) {
    let n = p.n;
    let mut chain_adrs = chain_address(adrs);
    let mut ends = vec![0u8; p.len * n];
    let mut bytes = vec![0u8; p.len * n];
    for (i, (end, value)) in ends.chunks_exact_mut(n).zip(bytes.chunks_exact_mut(n)).enumerate() {
        secret_element(ctx, sk_seed, &mut chain_adrs, i, end);
        chain_in_place(ctx, end, 0, digits[i], &mut chain_adrs);
        value.copy_from_slice(end);
        chain_in_place(ctx, end, digits[i], p.w - 1 - digits[i], &mut chain_adrs);
    }
    (compress(ctx, adrs, &ends), WotsSignature { bytes, n })
}

pub fn wots_sign(p: &ParamSet, ctx: &TweakContext<'_>, msg: &[u8], sk_seed: &[u8], adrs: &Adrs) -> Result<WotsSignature> {
    check_seed(ctx, sk_seed)?;
    let digits = base_w(p, msg)?;
    let n = p.n;
    let mut chain_adrs = chain_address(adrs);
    let mut bytes = vec![0u8; p.len * n];
    for (i, (value, &digit)) in bytes.chunks_exact_mut(n).zip(&digits).enumerate() {
        secret_element(ctx, sk_seed, &mut chain_adrs, i, value);
        chain_in_place(ctx, value, 0, digit, &mut chain_adrs);
    }
    Ok(WotsSignature { bytes, n })
}

/// Completes every chain of `sig` and compresses the ends. Equals
/// [`wots_pk_gen`] exactly when `sig` is a valid signature of `msg`.
pub fn wots_pk_from_sig(p: &ParamSet, ctx: &TweakContext<'_>, sig: &WotsSignature, msg: &[u8], adrs: &Adrs) -> Result<Vec<u8>> {
    if sig.bytes.len() != p.len * p.n {
        return Err(Error::Length {
            what: "WOTS signature",
            expected: p.len * p.n,
            actual: sig.bytes.len(),
        });
    }
    let digits = base_w(p, msg)?;
    let n = p.n;
    let mut chain_adrs = chain_address(adrs);
    let mut ends = sig.bytes.clone();
    for (i, (value, &digit)) in ends.chunks_exact_mut(n).zip(&digits).enumerate() {
        chain_adrs.set_chain(i as u32);
        chain_in_place(ctx, value, digit, p.w - 1 - digit, &mut chain_adrs);
    }
    Ok(compress(ctx, adrs, &ends))
}
