//! The 32-byte hash address (ADRS) that tweaks every hash call.
//!
//! Layout, all fields big-endian:
//!
//! ```text
//! layer (4) | tree (12) | type (4) | word1 (4) | word2 (4) | word3 (4)
//! ```
//!
//! | type         | word1   | word2        | word3              |
//! |--------------|---------|--------------|--------------------|
//! | `WotsHash`   | keypair | chain        | hash step          |
//! | `WotsPk`     | keypair | 0            | 0                  |
//! | `Tree`       | 0       | node height  | node index         |
//! | `ForsTree`   | keypair | node height  | node index         |
//! | `ForsRoots`  | keypair | 0            | 0                  |
//!
//! Secret elements are derived under the address of the first hash that
//! consumes them (hash step or height 0).

use std::fmt;

use crate::error::{Error, Result};

pub const ADRS_BYTES: usize = 32;

const TREE_LIMIT: u128 = 1 << 96;
const WORD_LIMIT: u128 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u32)]
pub enum AdrsType {
    WotsHash = 0,
    WotsPk = 1,
    Tree = 2,
    ForsTree = 3,
    ForsRoots = 4,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Adrs {
    layer: u32,
    tree: u128,
    kind: AdrsType,
    words: [u32; 3],
}

impl Default for Adrs {
    fn default() -> Self {
        Self {
            layer: 0,
            tree: 0,
            kind: AdrsType::WotsHash,
            words: [0; 3],
        }
    }
}

impl fmt::Debug for Adrs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Adrs(layer={}, tree={}, {:?}, {:?})",
            self.layer, self.tree, self.kind, self.words
        )
    }
}

fn word(what: &'static str, value: u64) -> Result<u32> {
    u32::try_from(value).map_err(|_| Error::Range {
        what,
        value: value as u128,
        limit: WORD_LIMIT,
    })
}

fn tree(value: u128) -> Result<u128> {
    if value >= TREE_LIMIT {
        return Err(Error::Range {
            what: "tree",
            value,
            limit: TREE_LIMIT,
        });
    }
    Ok(value)
}

impl Adrs {
    pub fn wots_chain(layer: u64, tree_idx: u128, keypair: u64, chain: u64, hash: u64) -> Result<Self> {
        Ok(Self {
            layer: word("layer", layer)?,
            tree: tree(tree_idx)?,
            kind: AdrsType::WotsHash,
            words: [word("keypair", keypair)?, word("chain", chain)?, word("hash", hash)?],
        })
    }

    pub fn wots_pk(layer: u64, tree_idx: u128, keypair: u64) -> Result<Self> {
        Ok(Self {
            layer: word("layer", layer)?,
            tree: tree(tree_idx)?,
            kind: AdrsType::WotsPk,
            words: [word("keypair", keypair)?, 0, 0],
        })
    }

    pub fn tree_node(layer: u64, tree_idx: u128, height: u64, index: u64) -> Result<Self> {
        Ok(Self {
            layer: word("layer", layer)?,
            tree: tree(tree_idx)?,
            kind: AdrsType::Tree,
            words: [0, word("height", height)?, word("index", index)?],
        })
    }

    /// FORS addresses always sit on layer 0.
    pub fn fors_node(tree_idx: u128, keypair: u64, height: u64, index: u64) -> Result<Self> {
        Ok(Self {
            layer: 0,
            tree: tree(tree_idx)?,
            kind: AdrsType::ForsTree,
            words: [word("keypair", keypair)?, word("height", height)?, word("index", index)?],
        })
    }

    pub fn fors_roots(tree_idx: u128, keypair: u64) -> Result<Self> {
        Ok(Self {
            layer: 0,
            tree: tree(tree_idx)?,
            kind: AdrsType::ForsRoots,
            words: [word("keypair", keypair)?, 0, 0],
        })
    }

    /// Subtree coordinates only; the type is `WotsHash` with zero words.
    pub(crate) fn subtree(layer: u32, tree_idx: u64) -> Self {
        Self {
            layer,
            tree: tree_idx as u128,
            ..Self::default()
        }
    }

    pub fn layer(&self) -> u32 {
        self.layer
    }

    pub fn tree(&self) -> u128 {
        self.tree
    }

    pub fn kind(&self) -> AdrsType {
        self.kind
    }

    pub fn keypair(&self) -> u32 {
        self.words[0]
    }

    pub fn words(&self) -> [u32; 3] {
        self.words
    }

    /// Changes the type and clears all three type-specific words.
    pub fn set_type(&mut self, kind: AdrsType) {
        self.kind = kind;
        self.words = [0; 3];
    }

    pub(crate) fn with_type(mut self, kind: AdrsType) -> Self {
        self.set_type(kind);
        self
    }

    pub(crate) fn set_keypair(&mut self, keypair: u32) {
        self.words[0] = keypair;
    }

    pub(crate) fn set_chain(&mut self, chain: u32) {
        self.words[1] = chain;
    }

    pub(crate) fn set_hash(&mut self, hash: u32) {
        self.words[2] = hash;
    }

    pub(crate) fn set_height(&mut self, height: u32) {
        self.words[1] = height;
    }

    pub(crate) fn set_index(&mut self, index: u32) {
        self.words[2] = index;
    }

    pub fn to_bytes(&self) -> [u8; ADRS_BYTES] {
        let mut out = [0u8; ADRS_BYTES];
        out[0..4].copy_from_slice(&self.layer.to_be_bytes());
        out[4..16].copy_from_slice(&self.tree.to_be_bytes()[4..]);
        out[16..20].copy_from_slice(&(self.kind as u32).to_be_bytes());
        for (i, w) in self.words.iter().enumerate() {
            out[20 + 4 * i..24 + 4 * i].copy_from_slice(&w.to_be_bytes());
        }
        out
    }
}
