//! Merkle subtrees of WOTS keys and the `d`-layer hyper-tree built from them.
//!
//! Subtrees are never stored. Signing recomputes each subtree on the path
//! with [`treehash`]-style hashing, collecting the authentication path and
//! the root in the same pass.

use crate::address::{Adrs, AdrsType};
use crate::error::{Error, Result};
use crate::merkle;
use crate::params::ParamSet;
use crate::thash::TweakContext;
use crate::wots::{self, WotsSignature};

/// `d` layers bottom-up; each is `len` WOTS chain values followed by `h/d`
/// authentication-path nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HtSignature {
    bytes: Vec<u8>,
    layer_len: usize,
    wots_len: usize,
}

impl HtSignature {
    pub fn byte_len(p: &ParamSet) -> usize {
        p.d as usize * (p.len + p.tree_height() as usize) * p.n
    }

    pub fn from_bytes(p: &ParamSet, bytes: &[u8]) -> Result<Self> {
        if bytes.len() != Self::byte_len(p) {
            return Err(Error::Length {
                what: "hyper-tree signature",
                expected: Self::byte_len(p),
                actual: bytes.len(),
            });
        }
        Ok(Self {
            bytes: bytes.to_vec(),
            layer_len: (p.len + p.tree_height() as usize) * p.n,
            wots_len: p.len * p.n,
        })
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn layers(&self) -> usize {
        self.bytes.len() / self.layer_len
    }

    fn layer(&self, i: usize) -> &[u8] {
        &self.bytes[i * self.layer_len..(i + 1) * self.layer_len]
    }

    pub fn wots_bytes(&self, i: usize) -> &[u8] {
        &self.layer(i)[..self.wots_len]
    }

    pub fn auth_path(&self, i: usize) -> &[u8] {
        &self.layer(i)[self.wots_len..]
    }
}

fn node_adrs(subtree: &Adrs, height: u32, index: u64) -> Adrs {
    let mut a = subtree.with_type(AdrsType::Tree);
    a.set_height(height);
    a.set_index(index as u32);
    a
}

fn leaf_adrs(subtree: &Adrs, keypair: u64) -> Adrs {
    let mut a = subtree.with_type(AdrsType::WotsHash);
    a.set_keypair(keypair as u32);
    a
}

fn subtree_of(adrs: &Adrs) -> Adrs {
    Adrs::subtree(adrs.layer(), adrs.tree() as u64)
}

fn subtree_pass(
    p: &ParamSet,
    ctx: &TweakContext<'_>,
    sk_seed: &[u8],
    start: u64,
    height: u32,
    target: Option<u64>,
    subtree: &Adrs,
) -> merkle::Treehash {
    merkle::treehash(
        ctx,
        height,
        start,
        target,
        |leaf, out| out.copy_from_slice(&wots::pk_gen_unchecked(p, ctx, sk_seed, &leaf_adrs(subtree, leaf))),
        |z, i| node_adrs(subtree, z, i),
    )
}

fn check_seed(p: &ParamSet, sk_seed: &[u8]) -> Result<()> {
    if sk_seed.len() != p.n {
        return Err(Error::Length {
            what: "sk_seed",
            expected: p.n,
            actual: sk_seed.len(),
        });
    }
    Ok(())
}

fn check_leaf(p: &ParamSet, leaf_index: u64) -> Result<()> {
    let limit = 1u64 << p.tree_height();
    if leaf_index >= limit {
        return Err(Error::Range {
            what: "leaf index",
            value: leaf_index as u128,
            limit: limit as u128,
        });
    }
    Ok(())
}

/// Root of the height-`height` subtree whose leftmost leaf is `start_leaf`,
/// within the subtree addressed by `adrs` (layer and tree are used).
pub fn treehash(p: &ParamSet, ctx: &TweakContext<'_>, sk_seed: &[u8], start_leaf: u64, height: u32, adrs: &Adrs) -> Result<Vec<u8>> {
    Ok(treehash_traced(p, ctx, sk_seed, start_leaf, height, adrs)?.root)
}

pub(crate) fn treehash_traced(
    p: &ParamSet,
    ctx: &TweakContext<'_>,
    sk_seed: &[u8],
    start_leaf: u64,
    height: u32,
    adrs: &Adrs,
) -> Result<merkle::Treehash> {
    check_seed(p, sk_seed)?;
    if height > p.tree_height() {
        return Err(Error::Range {
            what: "treehash height",
            value: height as u128,
            limit: p.tree_height() as u128 + 1,
        });
    }
    if !start_leaf.is_multiple_of(1 << height) {
        return Err(Error::Alignment {
            start: start_leaf,
            height,
        });
    }
    check_leaf(p, start_leaf + (1 << height) - 1)?;
    Ok(subtree_pass(p, ctx, sk_seed, start_leaf, height, None, &subtree_of(adrs)))
}

/// One subtree signature: WOTS signature of `msg` by leaf `leaf_index`,
/// plus that leaf's authentication path.
pub fn xmss_sign(p: &ParamSet, ctx: &TweakContext<'_>, msg: &[u8], sk_seed: &[u8], leaf_index: u64, adrs: &Adrs) -> Result<(WotsSignature, Vec<u8>)> {
    let (sig, path, _) = xmss_sign_with_root(p, ctx, msg, sk_seed, leaf_index, adrs)?;
    Ok((sig, path))
}

fn xmss_sign_with_root(
    p: &ParamSet,
    ctx: &TweakContext<'_>,
    msg: &[u8],
    sk_seed: &[u8],
    leaf_index: u64,
    adrs: &Adrs,
) -> Result<(WotsSignature, Vec<u8>, Vec<u8>)> {
    check_seed(p, sk_seed)?;
    check_leaf(p, leaf_index)?;
    let digits = wots::base_w(p, msg)?;
    let subtree = subtree_of(adrs);
    let mut sig = None;
    let th = merkle::treehash(
        ctx,
        p.tree_height(),
        0,
        Some(leaf_index),
        |leaf, out| {
            let a = leaf_adrs(&subtree, leaf);
            if leaf == leaf_index {
                let (pk, s) = wots::pk_gen_and_sign(p, ctx, sk_seed, &a, &digits);
                out.copy_from_slice(&pk);
                sig = Some(s);
            } else {
                out.copy_from_slice(&wots::pk_gen_unchecked(p, ctx, sk_seed, &a));
            }
        },
        |z, i| node_adrs(&subtree, z, i),
    );
    let sig = sig.expect("treehash visits every leaf");
    Ok((sig, th.auth_path, th.root))
}

/// Subtree root implied by a WOTS signature and authentication path.
pub fn xmss_root_from_sig(
    p: &ParamSet,
    ctx: &TweakContext<'_>,
    leaf_index: u64,
    sig: &WotsSignature,
    auth_path: &[u8],
    msg: &[u8],
    adrs: &Adrs,
) -> Result<Vec<u8>> {
    check_leaf(p, leaf_index)?;
    let expected = p.tree_height() as usize * p.n;
    if auth_path.len() != expected {
        return Err(Error::Length {
            what: "authentication path",
            expected,
            actual: auth_path.len(),
        });
    }
    let subtree = subtree_of(adrs);
    let leaf = wots::wots_pk_from_sig(p, ctx, sig, msg, &leaf_adrs(&subtree, leaf_index))?;
    Ok(merkle::root_from_path(ctx, &leaf, leaf_index, auth_path, |z, i| {
        node_adrs(&subtree, z, i)
    }))
}

fn check_tree(p: &ParamSet, tree_index: u64) -> Result<()> {
    if p.tree_bits() < 64 && tree_index >> p.tree_bits() != 0 {
        return Err(Error::Range {
            what: "tree index",
            value: tree_index as u128,
            limit: 1u128 << p.tree_bits(),
        });
    }
    Ok(())
}

/// Signs `msg` with bottom-layer leaf (`tree_index`, `leaf_index`) and
/// chains signatures of each subtree root up to the top layer.
pub fn ht_sign(p: &ParamSet, ctx: &TweakContext<'_>, msg: &[u8], sk_seed: &[u8], tree_index: u64, leaf_index: u64) -> Result<HtSignature> {
    check_tree(p, tree_index)?;
    check_leaf(p, leaf_index)?;
    let height = p.tree_height();
    let mut bytes = Vec::with_capacity(HtSignature::byte_len(p));
    let mut tree = tree_index;
    let mut leaf = leaf_index;
    let mut root = msg.to_vec();
    for layer in 0..p.d {
        let adrs = Adrs::subtree(layer, tree);
        let (sig, path, next_root) = xmss_sign_with_root(p, ctx, &root, sk_seed, leaf, &adrs)?;
        bytes.extend_from_slice(sig.as_bytes());
        bytes.extend_from_slice(&path);
        root = next_root;
        leaf = tree & ((1 << height) - 1);
        tree = if height < 64 { tree >> height } else { 0 };
    }
    HtSignature::from_bytes(p, &bytes)
}

/// True iff `sig` chains `msg` up to `pk_root`. Structural problems are
/// errors, not `false`.
pub fn ht_verify(
    p: &ParamSet,
    ctx: &TweakContext<'_>,
    msg: &[u8],
    sig: &HtSignature,
    tree_index: u64,
    leaf_index: u64,
    pk_root: &[u8],
) -> Result<bool> {
    if sig.bytes.len() != HtSignature::byte_len(p) {
        return Err(Error::Length {
            what: "hyper-tree signature",
            expected: HtSignature::byte_len(p),
            actual: sig.bytes.len(),
        });
    }
    if msg.len() != p.n || pk_root.len() != p.n {
        return Err(Error::Length {
            what: "hyper-tree message / root",
            expected: p.n,
            actual: if msg.len() != p.n { msg.len() } else { pk_root.len() },
        });
    }
    check_tree(p, tree_index)?;
    check_leaf(p, leaf_index)?;
    let height = p.tree_height();
    let mut tree = tree_index;
    let mut leaf = leaf_index;
    let mut node = msg.to_vec();
    for layer in 0..p.d as usize {
        let adrs = Adrs::subtree(layer as u32, tree);
        let wsig = WotsSignature::from_bytes(p, sig.wots_bytes(layer))?;
        node = xmss_root_from_sig(p, ctx, leaf, &wsig, sig.auth_path(layer), &node, &adrs)?;
        leaf = tree & ((1 << height) - 1);
        tree = if height < 64 { tree >> height } else { 0 };
    }
    Ok(node == pk_root)
}
