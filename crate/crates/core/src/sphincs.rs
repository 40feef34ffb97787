//! Key generation, signing and verification for a parameter set and hash
//! backend.

use std::fmt;
use std::sync::Arc;

use crate::address::Adrs;
use crate::error::{Error, Result};
use crate::fors::{self, ForsSignature};
use crate::hash::{self, HashBackend};
use crate::hypertree::{self, HtSignature};
use crate::params::ParamSet;
use crate::thash::{split_digest, CallObserver, TweakContext};

fn expect_len(what: &'static str, expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::Length {
            what,
            expected,
            actual,
        });
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq)]
pub struct SecretKey {
    sk_seed: Vec<u8>,
    sk_prf: Vec<u8>,
    pk: PublicKey,
}

impl fmt::Debug for SecretKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SecretKey")
            .field("n", &self.sk_seed.len())
            .field("pk", &self.pk)
            .finish_non_exhaustive()
    }
}

impl SecretKey {
    /// Parses `sk_seed ‖ sk_prf ‖ pk_seed ‖ pk_root`.
    pub fn from_bytes(p: &ParamSet, bytes: &[u8]) -> Result<Self> {
        expect_len("secret key", p.sk_bytes, bytes.len())?;
        let n = p.n;
        Ok(Self {
            sk_seed: bytes[..n].to_vec(),
            sk_prf: bytes[n..2 * n].to_vec(),
            pk: PublicKey::from_bytes(p, &bytes[2 * n..])?,
        })
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        [&self.sk_seed[..], &self.sk_prf, &self.pk.pk_seed, &self.pk.pk_root].concat()
    }

    pub fn public_key(&self) -> &PublicKey {
        &self.pk
    }

    pub fn sk_seed(&self) -> &[u8] {
        &self.sk_seed
    }

    pub fn sk_prf(&self) -> &[u8] {
        &self.sk_prf
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicKey {
    pk_seed: Vec<u8>,
    pk_root: Vec<u8>,
}

impl PublicKey {
    /// Parses `pk_seed ‖ pk_root`.
    pub fn from_bytes(p: &ParamSet, bytes: &[u8]) -> Result<Self> {
        expect_len("public key", p.pk_bytes, bytes.len())?;
        Ok(Self {
            pk_seed: bytes[..p.n].to_vec(),
            pk_root: bytes[p.n..].to_vec(),
        })
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        [&self.pk_seed[..], &self.pk_root].concat()
    }

    pub fn pk_seed(&self) -> &[u8] {
        &self.pk_seed
    }

    pub fn pk_root(&self) -> &[u8] {
        &self.pk_root
    }
}

/// `R ‖ FORS signature ‖ hyper-tree signature`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    randomizer: Vec<u8>,
    fors: ForsSignature,
    ht: HtSignature,
}

impl Signature {
    pub fn from_bytes(p: &ParamSet, bytes: &[u8]) -> Result<Self> {
        expect_len("signature", p.sig_bytes, bytes.len())?;
        let fors_end = p.n + ForsSignature::byte_len(p);
        Ok(Self {
            randomizer: bytes[..p.n].to_vec(),
            fors: ForsSignature::from_bytes(p, &bytes[p.n..fors_end])?,
            ht: HtSignature::from_bytes(p, &bytes[fors_end..])?,
        })
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        [&self.randomizer[..], self.fors.as_bytes(), self.ht.as_bytes()].concat()
    }

    pub fn randomizer(&self) -> &[u8] {
        &self.randomizer
    }

    pub fn fors(&self) -> &ForsSignature {
        &self.fors
    }

    pub fn ht(&self) -> &HtSignature {
        &self.ht
    }
}

/// A parameter set bound to a hash backend.
#[derive(Debug, Clone)]
pub struct Scheme {
    params: &'static ParamSet,
    backend: Arc<dyn HashBackend>,
}

impl Scheme {
    pub fn new(params: &'static ParamSet, backend: Arc<dyn HashBackend>) -> Result<Self> {
        params.validate()?;
        if backend.out_len() < params.n {
            return Err(Error::InconsistentParams {
                name: params.name,
                reason: format!("backend {} outputs {} bytes, n = {}", backend.id(), backend.out_len(), params.n),
            });
        }
        Ok(Self { params, backend })
    }

    /// Looks up both names in the default registries.
    pub fn by_name(paramset: &str, backend: &str) -> Result<Self> {
        Self::new(ParamSet::lookup(paramset)?, hash::backend(backend)?)
    }

    pub fn params(&self) -> &'static ParamSet {
        self.params
    }

    pub fn backend(&self) -> &Arc<dyn HashBackend> {
        &self.backend
    }

    fn ctx<'a>(&'a self, pk_seed: &'a [u8], observer: Option<&'a dyn CallObserver>) -> Result<TweakContext<'a>> {
        let ctx = TweakContext::new(self.backend.as_ref(), pk_seed)?;
        Ok(match observer {
            Some(o) => ctx.with_observer(o),
            None => ctx,
        })
    }

    /// Derives a key pair from `sk_seed ‖ sk_prf ‖ pk_seed` (3n bytes).
    pub fn keygen(&self, entropy: &[u8]) -> Result<(SecretKey, PublicKey)> {
        let p = self.params;
        expect_len("key generation entropy", 3 * p.n, entropy.len())?;
        let (sk_seed, rest) = entropy.split_at(p.n);
        let (sk_prf, pk_seed) = rest.split_at(p.n);
        let ctx = self.ctx(pk_seed, None)?;
        let top = Adrs::subtree(p.d - 1, 0);
        let pk_root = hypertree::treehash(p, &ctx, sk_seed, 0, p.tree_height(), &top)?;
        let pk = PublicKey {
            pk_seed: pk_seed.to_vec(),
            pk_root,
        };
        let sk = SecretKey {
            sk_seed: sk_seed.to_vec(),
            sk_prf: sk_prf.to_vec(),
            pk: pk.clone(),
        };
        Ok((sk, pk))
    }

    fn check_sk(&self, sk: &SecretKey) -> Result<()> {
        expect_len("secret key seed", self.params.n, sk.sk_seed.len())
    }

    /// Signs `message`. Without `opt_rand` the signature is deterministic.
    pub fn sign(&self, sk: &SecretKey, message: &[u8], opt_rand: Option<&[u8]>) -> Result<Signature> {
        self.sign_stream(sk, opt_rand, |sink| {
            sink(message);
            Ok::<(), Error>(())
        })
    }

    /// Signs a message delivered in chunks. `feed` is called twice and must
    /// hand over the same bytes both times.
    pub fn sign_stream<E: From<Error>>(
        &self,
        sk: &SecretKey,
        opt_rand: Option<&[u8]>,
        feed: impl FnMut(&mut dyn FnMut(&[u8])) -> std::result::Result<(), E>,
    ) -> std::result::Result<Signature, E> {
        self.sign_observed(sk, opt_rand, feed, None)
    }

    pub(crate) fn sign_observed<E: From<Error>>(
        &self,
        sk: &SecretKey,
        opt_rand: Option<&[u8]>,
        mut feed: impl FnMut(&mut dyn FnMut(&[u8])) -> std::result::Result<(), E>,
        observer: Option<&dyn CallObserver>,
    ) -> std::result::Result<Signature, E> {
        let p = self.params;
        self.check_sk(sk)?;
        let ctx = self.ctx(&sk.pk.pk_seed, observer)?;
        let opt_rand = opt_rand.unwrap_or(&sk.pk.pk_seed);

        let mut prf = ctx.prf_msg_stream(&sk.sk_prf, opt_rand)?;
        feed(&mut |chunk| prf.update(chunk))?;
        let randomizer = prf.finalize();

        let mut hm = ctx.h_msg_stream(&randomizer, &sk.pk.pk_root)?;
        feed(&mut |chunk| hm.update(chunk))?;
        let digest = hm.finalize(p.m)?;
        let idx = split_digest(p, &digest)?;

        let fors_adrs = Adrs::fors_roots(idx.tree as u128, idx.leaf as u64)?;
        let fors_sig = fors::fors_sign(p, &ctx, &idx.fors, &sk.sk_seed, &fors_adrs)?;
        let fors_pk = fors::fors_pk_from_sig(p, &ctx, &fors_sig, &idx.fors, &fors_adrs)?;
        let ht = hypertree::ht_sign(p, &ctx, &fors_pk, &sk.sk_seed, idx.tree, idx.leaf as u64)?;
        Ok(Signature {
            randomizer,
            fors: fors_sig,
            ht,
        })
    }

    /// `Ok(false)` for a well-formed signature that does not verify; an
    /// error when the signature or key has the wrong length.
    pub fn verify(&self, pk: &PublicKey, message: &[u8], sig: &[u8]) -> Result<bool> {
        self.verify_stream(pk, sig, |sink| {
            sink(message);
            Ok::<(), Error>(())
        })
    }

    /// Verifies a message delivered in chunks; `feed` is called once.
    pub fn verify_stream<E: From<Error>>(
        &self,
        pk: &PublicKey,
        sig: &[u8],
        mut feed: impl FnMut(&mut dyn FnMut(&[u8])) -> std::result::Result<(), E>,
    ) -> std::result::Result<bool, E> {
        let p = self.params;
        expect_len("public key", p.pk_bytes, pk.pk_seed.len() + pk.pk_root.len())?;
        expect_len("public key seed", p.n, pk.pk_seed.len())?;
        let sig = Signature::from_bytes(p, sig)?;
        let ctx = self.ctx(&pk.pk_seed, None)?;

        let mut hm = ctx.h_msg_stream(&sig.randomizer, &pk.pk_root)?;
        feed(&mut |chunk| hm.update(chunk))?;
        let digest = hm.finalize(p.m)?;
        let idx = split_digest(p, &digest)?;

        let fors_adrs = Adrs::fors_roots(idx.tree as u128, idx.leaf as u64)?;
        let fors_pk = fors::fors_pk_from_sig(p, &ctx, &sig.fors, &idx.fors, &fors_adrs)?;
        Ok(hypertree::ht_verify(p, &ctx, &fors_pk, &sig.ht, idx.tree, idx.leaf as u64, &pk.pk_root)?)
    }
}
