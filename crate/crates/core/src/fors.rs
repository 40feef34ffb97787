//! Forest of random subsets: `k` Merkle trees of height `a` whose revealed
//! leaves sign the `k·a`-bit part of the message digest.
//!
//! Leaves of all `k` trees share one index space: leaf `i` of tree `j` has
//! index `j·2^a + i`, and node `i` at height `z` of tree `j` has index
//! `j·2^(a-z) + i`.

use crate::address::{Adrs, AdrsType};
use crate::error::{Error, Result};
use crate::merkle;
use crate::params::ParamSet;
use crate::thash::TweakContext;

/// For each tree: the secret element, then `a` path nodes bottom-up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForsSignature {
    bytes: Vec<u8>,
    n: usize,
    a: usize,
}

impl ForsSignature {
    pub fn byte_len(p: &ParamSet) -> usize {
        p.k * (p.a as usize + 1) * p.n
    }

    pub fn from_bytes(p: &ParamSet, bytes: &[u8]) -> Result<Self> {
        if bytes.len() != Self::byte_len(p) {
            return Err(Error::Length {
                what: "FORS signature",
                expected: Self::byte_len(p),
                actual: bytes.len(),
            });
        }
        Ok(Self {
            bytes: bytes.to_vec(),
            n: p.n,
            a: p.a as usize,
        })
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    fn tree(&self, j: usize) -> &[u8] {
        let stride = (self.a + 1) * self.n;
        &self.bytes[j * stride..(j + 1) * stride]
    }

    pub fn secret(&self, j: usize) -> &[u8] {
        &self.tree(j)[..self.n]
    }

    pub fn auth_path(&self, j: usize) -> &[u8] {
        &self.tree(j)[self.n..]
    }
}

fn node_base(adrs: &Adrs) -> Adrs {
    let keypair = adrs.keypair();
    let mut a = adrs.with_type(AdrsType::ForsTree);
    a.set_keypair(keypair);
    a
}

fn node_at(base: &Adrs, height: u32, index: u64) -> Adrs {
    let mut a = *base;
    a.set_height(height);
    a.set_index(index as u32);
    a
}

fn check_indices(p: &ParamSet, indices: &[u32]) -> Result<()> {
    if indices.len() != p.k {
        return Err(Error::Length {
            what: "FORS index vector",
            expected: p.k,
            actual: indices.len(),
        });
    }
    if let Some(&bad) = indices.iter().find(|&&i| i >= 1 << p.a) {
        return Err(Error::Range {
            what: "FORS leaf index",
            value: bad as u128,
            limit: 1 << p.a,
        });
    }
    Ok(())
}

fn secret_into(ctx: &TweakContext<'_>, sk_seed: &[u8], base: &Adrs, leaf: u64, out: &mut [u8]) {
    ctx.prf_into(sk_seed, &node_at(base, 0, leaf), out);
}

fn leaf_into(ctx: &TweakContext<'_>, sk_seed: &[u8], base: &Adrs, leaf: u64, out: &mut [u8]) {
    let mut sk = [0u8; 32];
    let sk = &mut sk[..out.len()];
    secret_into(ctx, sk_seed, base, leaf, sk);
    ctx.thash_into(&node_at(base, 0, leaf), sk, out);
}

fn roots_pk(p: &ParamSet, ctx: &TweakContext<'_>, adrs: &Adrs, roots: &[u8]) -> Vec<u8> {
    let keypair = adrs.keypair();
    let mut roots_adrs = adrs.with_type(AdrsType::ForsRoots);
    roots_adrs.set_keypair(keypair);
    let mut out = vec![0u8; p.n];
    ctx.thash_into(&roots_adrs, roots, &mut out);
    out
}

/// Root of FORS tree `j`, computed from all of its leaves.
pub(crate) fn tree_root(p: &ParamSet, ctx: &TweakContext<'_>, sk_seed: &[u8], adrs: &Adrs, j: usize) -> Vec<u8> {
    let base = node_base(adrs);
    merkle::treehash(
        ctx,
        p.a,
        (j as u64) << p.a,
        None,
        |leaf, out| leaf_into(ctx, sk_seed, &base, leaf, out),
        |z, i| node_at(&base, z, i),
    )
    .root
}

/// FORS public key computed directly from the secret seed.
pub fn fors_pk_gen(p: &ParamSet, ctx: &TweakContext<'_>, sk_seed: &[u8], adrs: &Adrs) -> Vec<u8> {
    let roots: Vec<u8> = (0..p.k)
        .flat_map(|j| tree_root(p, ctx, sk_seed, adrs, j))
        .collect();
    roots_pk(p, ctx, adrs, &roots)
}

/// Signs `indices` with the FORS key pair at `adrs` (tree and keypair are
/// taken from it).
pub fn fors_sign(p: &ParamSet, ctx: &TweakContext<'_>, indices: &[u32], sk_seed: &[u8], adrs: &Adrs) -> Result<ForsSignature> {
    check_indices(p, indices)?;
    if sk_seed.len() != p.n {
        return Err(Error::Length {
            what: "sk_seed",
            expected: p.n,
            actual: sk_seed.len(),
        });
    }
    let base = node_base(adrs);
    let n = p.n;
    let mut bytes = Vec::with_capacity(ForsSignature::byte_len(p));
    for (j, &idx) in indices.iter().enumerate() {
        let offset = (j as u64) << p.a;
        let mut secret = vec![0u8; n];
        secret_into(ctx, sk_seed, &base, offset + idx as u64, &mut secret);
        bytes.extend_from_slice(&secret);

        let th = merkle::treehash(
            ctx,
            p.a,
            offset,
            Some(idx as u64),
            |leaf, out| leaf_into(ctx, sk_seed, &base, leaf, out),
            |z, i| node_at(&base, z, i),
        );
        bytes.extend_from_slice(&th.auth_path);
    }
    Ok(ForsSignature {
        bytes,
        n,
        a: p.a as usize,
    })
}

/// Rebuilds the FORS public key from a signature and the signed indices.
pub fn fors_pk_from_sig(p: &ParamSet, ctx: &TweakContext<'_>, sig: &ForsSignature, indices: &[u32], adrs: &Adrs) -> Result<Vec<u8>> {
    check_indices(p, indices)?;
    if sig.bytes.len() != ForsSignature::byte_len(p) {
        return Err(Error::Length {
            what: "FORS signature",
            expected: ForsSignature::byte_len(p),
            actual: sig.bytes.len(),
        });
    }
    let base = node_base(adrs);
    let n = p.n;
    let mut roots = Vec::with_capacity(p.k * n);
    let mut leaf = vec![0u8; n];
    for (j, &idx) in indices.iter().enumerate() {
        let index = ((j as u64) << p.a) + idx as u64;
        ctx.thash_into(&node_at(&base, 0, index), sig.secret(j), &mut leaf);
        roots.extend(merkle::root_from_path(ctx, &leaf, index, sig.auth_path(j), |z, i| {
            node_at(&base, z, i)
        }));
    }
    Ok(roots_pk(p, ctx, adrs, &roots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hash::{HashBackend, Sha256Backend, Streebog256Backend};
    use crate::params::{self, TOY};
    use crate::test_util::random_bytes;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    /// Every node of FORS tree `j`, level by level, built without the stack
    /// algorithm: `levels[z][i]` is node `i` at height `z`.
    fn full_tree(p: &ParamSet, ctx: &TweakContext<'_>, sk_seed: &[u8], adrs: &Adrs, j: u64) -> Vec<Vec<Vec<u8>>> {
        let (tree, kp) = (adrs.tree(), adrs.keypair() as u64);
        let mut levels = Vec::new();
        let leaves: Vec<Vec<u8>> = (0..1u64 << p.a)
            .map(|i| {
                let a = Adrs::fors_node(tree, kp, 0, (j << p.a) + i).unwrap();
                ctx.thash(&a, &ctx.prf(sk_seed, &a).unwrap()).unwrap()
            })
            .collect();
        levels.push(leaves);
        for z in 1..=p.a {
            let below = &levels[z as usize - 1];
            let level = below
                .chunks(2)
                .enumerate()
                .map(|(i, pair)| {
                    let a = Adrs::fors_node(tree, kp, z as u64, (j << (p.a - z)) + i as u64).unwrap();
                    ctx.thash(&a, &[pair[0].clone(), pair[1].clone()].concat()).unwrap()
                })
                .collect();
            levels.push(level);
        }
        levels
    }

    fn setup(b: &dyn HashBackend) -> (Vec<u8>, Vec<u8>, Adrs) {
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        let _ = b;
        (random_bytes(&mut rng, 16), random_bytes(&mut rng, 16), Adrs::fors_roots(5, 3).unwrap())
    }

    #[test]
    fn exhaustive_toy_against_full_tree() {
        for b in [&Streebog256Backend as &dyn HashBackend, &Sha256Backend] {
            let (pk_seed, sk_seed, adrs) = setup(b);
            let ctx = TweakContext::new(b, &pk_seed).unwrap();
            let trees: Vec<_> = (0..TOY.k as u64).map(|j| full_tree(&TOY, &ctx, &sk_seed, &adrs, j)).collect();
            let roots: Vec<u8> = trees.iter().flat_map(|t| t[TOY.a as usize][0].clone()).collect();
            let pk = ctx.thash(&Adrs::fors_roots(5, 3).unwrap(), &roots).unwrap();
            assert_eq!(fors_pk_gen(&TOY, &ctx, &sk_seed, &adrs), pk);

            for (j, t) in trees.iter().enumerate() {
                assert_eq!(tree_root(&TOY, &ctx, &sk_seed, &adrs, j), t[TOY.a as usize][0]);
            }

            // Every leaf position, in every tree at once.
            for idx in 0..1u32 << TOY.a {
                let indices: Vec<u32> = (0..TOY.k as u32).map(|j| (idx + j) % 16).collect();
                let sig = fors_sign(&TOY, &ctx, &indices, &sk_seed, &adrs).unwrap();
                for (j, &i) in indices.iter().enumerate() {
                    let path = sig.auth_path(j);
                    for z in 0..TOY.a as usize {
                        let sibling = &trees[j][z][((i as usize) >> z) ^ 1];
                        assert_eq!(&path[z * 16..(z + 1) * 16], &sibling[..]);
                    }
                }
                assert_eq!(fors_pk_from_sig(&TOY, &ctx, &sig, &indices, &adrs).unwrap(), pk);
            }
        }
    }

    #[test]
    fn signature_sizes() {
        let pk_seed = [1u8; 32];
        for p in params::ALL {
            if p.a > 9 {
                continue;
            }
            let ctx = TweakContext::new(&Sha256Backend, &pk_seed[..p.n]).unwrap();
            let indices = vec![1u32; p.k];
            let sig = fors_sign(p, &ctx, &indices, &pk_seed[..p.n], &Adrs::default()).unwrap();
            assert_eq!(sig.as_bytes().len(), p.k * (p.a as usize + 1) * p.n);
            assert_eq!(sig, fors_sign(p, &ctx, &indices, &pk_seed[..p.n], &Adrs::default()).unwrap());
        }
    }

    #[test]
    fn tampering_changes_pk() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let (pk_seed, sk_seed, adrs) = setup(&Sha256Backend);
        let ctx = TweakContext::new(&Sha256Backend, &pk_seed).unwrap();
        let pk = fors_pk_gen(&TOY, &ctx, &sk_seed, &adrs);
        for _ in 0..50 {
            let indices: Vec<u32> = (0..TOY.k).map(|_| rng.random_range(0..16)).collect();
            let sig = fors_sign(&TOY, &ctx, &indices, &sk_seed, &adrs).unwrap();

            let mut bytes = sig.as_bytes().to_vec();
            let j = rng.random_range(0..TOY.k);
            let bit = rng.random_range(0..128);
            bytes[j * 5 * 16 + bit / 8] ^= 1 << (bit % 8);
            let bad = ForsSignature::from_bytes(&TOY, &bytes).unwrap();
            assert_ne!(fors_pk_from_sig(&TOY, &ctx, &bad, &indices, &adrs).unwrap(), pk);

            let mut other = indices.clone();
            other[j] ^= 1 << rng.random_range(0..TOY.a);
            assert_ne!(fors_pk_from_sig(&TOY, &ctx, &sig, &other, &adrs).unwrap(), pk);
        }
    }

    #[test]
    fn reuse_reveals_at_most_2k_secrets() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let (pk_seed, sk_seed, adrs) = setup(&Sha256Backend);
        let ctx = TweakContext::new(&Sha256Backend, &pk_seed).unwrap();
        for _ in 0..20 {
            let mut revealed = HashSet::new();
            for _ in 0..2 {
                let indices: Vec<u32> = (0..TOY.k).map(|_| rng.random_range(0..16)).collect();
                let sig = fors_sign(&TOY, &ctx, &indices, &sk_seed, &adrs).unwrap();
                for j in 0..TOY.k {
                    revealed.insert(sig.secret(j).to_vec());
                }
            }
            assert!(revealed.len() <= 2 * TOY.k);
            assert!(revealed.len() >= TOY.k);
        }
    }

    #[test]
    fn index_errors() {
        let (pk_seed, sk_seed, adrs) = setup(&Sha256Backend);
        let ctx = TweakContext::new(&Sha256Backend, &pk_seed).unwrap();
        let mut indices = vec![0u32; TOY.k];
        indices[3] = 16;
        assert!(matches!(
            fors_sign(&TOY, &ctx, &indices, &sk_seed, &adrs),
            Err(Error::Range { .. })
        ));
        assert!(fors_sign(&TOY, &ctx, &[0; 7], &sk_seed, &adrs).is_err());
        assert!(ForsSignature::from_bytes(&TOY, &[0u8; 100]).is_err());
    }
}
