//! Stack-based tree hashing shared by FORS trees and hyper-tree subtrees.

use crate::address::Adrs;
use crate::thash::TweakContext;

pub(crate) struct Treehash {
    pub root: Vec<u8>,
    /// Sibling nodes of the target leaf, bottom-up; empty without a target.
    pub auth_path: Vec<u8>,
    /// Largest number of nodes held on the stack at once.
    #[cfg_attr(not(test), allow(dead_code))]
    pub peak_stack: usize,
}

/// Computes the root of the perfect tree of height `height` whose leaves
/// have absolute indices `start..start + 2^height`.
///
/// `leaf` writes leaf `i` (absolute) into its buffer; `node_adrs(z, j)` is
/// the address of node `j` (absolute) at height `z`. With `target` set, the
/// authentication path of leaf `start + target` is collected on the way.
pub(crate) fn treehash(
    ctx: &TweakContext<'_>,
    height: u32,
    start: u64,
    target: Option<u64>,
    mut leaf: impl FnMut(u64, &mut [u8]),
    node_adrs: impl Fn(u32, u64) -> Adrs,
) -> Treehash {
    let n = ctx.n();
    let mut stack: Vec<(u32, u64, Vec<u8>)> = Vec::with_capacity(height as usize + 1);
    let mut auth_path = vec![0u8; if target.is_some() { height as usize * n } else { 0 }];
    let mut peak = 0;
    let mut pair = vec![0u8; 2 * n];

    let mut record = |z: u32, index: u64, value: &[u8]| {
        if let Some(t) = target {
            if z < height && ((start >> z) ^ index) == ((t >> z) ^ 1) {
                auth_path[z as usize * n..(z as usize + 1) * n].copy_from_slice(value);
            }
        }
    };

    for i in 0..1u64 << height {
        let mut node = vec![0u8; n];
        leaf(start + i, &mut node);
        record(0, start + i, &node);
        let mut z = 0;
        let mut index = start + i;
        stack.push((z, index, node));
        peak = peak.max(stack.len());

        while stack.len() >= 2 && stack[stack.len() - 2].0 == z {
            let (_, _, right) = stack.pop().unwrap();
            let (_, _, left) = stack.pop().unwrap();
            pair[..n].copy_from_slice(&left);
            pair[n..].copy_from_slice(&right);
            z += 1;
            index >>= 1;
            let mut parent = vec![0u8; n];
            ctx.thash_into(&node_adrs(z, index), &pair, &mut parent);
            record(z, index, &parent);
            stack.push((z, index, parent));
        }
    }

    let (_, _, root) = stack.pop().expect("tree has at least one leaf");
    Treehash {
        root,
        auth_path,
        peak_stack: peak,
    }
}

/// Walks an authentication path from `leaf` (absolute index `index`) up to
/// the root.
pub(crate) fn root_from_path(
    ctx: &TweakContext<'_>,
    leaf: &[u8],
    mut index: u64,
    auth_path: &[u8],
    node_adrs: impl Fn(u32, u64) -> Adrs,
) -> Vec<u8> {
    let n = ctx.n();
    let mut node = leaf.to_vec();
    let mut pair = vec![0u8; 2 * n];
    for (z, sibling) in auth_path.chunks_exact(n).enumerate() {
        if index & 1 == 0 {
            pair[..n].copy_from_slice(&node);
            pair[n..].copy_from_slice(sibling);
        } else {
            pair[..n].copy_from_slice(sibling);
            pair[n..].copy_from_slice(&node);
        }
        index >>= 1;
        ctx.thash_into(&node_adrs(z as u32 + 1, index), &pair, &mut node);
    }
    node
}
