//! Named parameter sets and their derived lengths.
//!
//! Six sets cover three security levels, each with a size-optimised ("s") and
//! speed-optimised ("f") variant. The `toy` set is small enough to enumerate
//! every leaf of its hyper-tree and exists for testing only.

use crate::error::{Error, Result};

/// A parameter bundle with every derived length precomputed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamSet {
    pub name: &'static str,
    /// Bytes per hash value.
    pub n: usize,
    /// Total hyper-tree height.
    pub h: u32,
    /// Number of subtree layers.
    pub d: u32,
    /// FORS tree height.
    pub a: u32,
    /// Number of FORS trees.
    pub k: usize,
    /// Winternitz parameter.
    pub w: u32,
    pub len1: usize,
    pub len2: usize,
    pub len: usize,
    /// Message digest length in bytes.
    pub m: usize,
    pub sig_bytes: usize,
    pub pk_bytes: usize,
    pub sk_bytes: usize,
    /// Whether the set is meant for real use (false only for `toy`).
    pub secure: bool,
}

const fn ceil_div(x: usize, y: usize) -> usize {
    x.div_ceil(y)
}

const fn ilog2(x: u32) -> u32 {
    31 - x.leading_zeros()
}

const fn wots_len1(n: usize, w: u32) -> usize {
    ceil_div(8 * n, ilog2(w) as usize)
}

const fn wots_len2(len1: usize, w: u32) -> usize {
    let max_checksum = (len1 * (w as usize - 1)) as u32;
    (ilog2(max_checksum) / ilog2(w)) as usize + 1
}

const fn digest_len(h: u32, d: u32, a: u32, k: usize) -> usize {
    let tree_bits = (h - h / d) as usize;
    let leaf_bits = (h / d) as usize;
    ceil_div(k * a as usize, 8) + ceil_div(tree_bits, 8) + ceil_div(leaf_bits, 8)
}

const fn sig_len(n: usize, h: u32, d: u32, a: u32, k: usize, len: usize) -> usize {
    n * (1 + k * (a as usize + 1) + h as usize + d as usize * len)
}

const fn build(
    name: &'static str,
    n: usize,
    h: u32,
    d: u32,
    a: u32,
    k: usize,
    secure: bool,
) -> ParamSet {
    let w = 16;
    let len1 = wots_len1(n, w);
    let len2 = wots_len2(len1, w);
    let len = len1 + len2;
    ParamSet {
        name,
        n,
        h,
        d,
        a,
        k,
        w,
        len1,
        len2,
        len,
        m: digest_len(h, d, a, k),
        sig_bytes: sig_len(n, h, d, a, k, len),
        pk_bytes: 2 * n,
        sk_bytes: 4 * n,
        secure,
    }
}

pub static SPHINCS_128S: ParamSet = build("128s", 16, 63, 7, 12, 14, true);
pub static SPHINCS_128F: ParamSet = build("128f", 16, 66, 22, 6, 33, true);
pub static SPHINCS_192S: ParamSet = build("192s", 24, 63, 7, 14, 17, true);
pub static SPHINCS_192F: ParamSet = build("192f", 24, 66, 22, 8, 33, true);
pub static SPHINCS_256S: ParamSet = build("256s", 32, 64, 8, 14, 22, true);
pub static SPHINCS_256F: ParamSet = build("256f", 32, 68, 17, 9, 35, true);
pub static TOY: ParamSet = build("toy", 16, 6, 2, 4, 8, false);

/// Every shipped set, in file-format id order with `toy` last.
pub static ALL: [&ParamSet; 7] = [
    &SPHINCS_128S,
    &SPHINCS_128F,
    &SPHINCS_192S,
    &SPHINCS_192F,
    &SPHINCS_256S,
    &SPHINCS_256F,
    &TOY,
];

/// The six sets intended for real use.
pub fn secure_sets() -> impl Iterator<Item = &'static ParamSet> {
    ALL.iter().copied().filter(|p| p.secure)
}

fn valid_names() -> String {
    ALL.iter().map(|p| p.name).collect::<Vec<_>>().join(", ")
}

impl ParamSet {
    pub fn lookup(name: &str) -> Result<&'static ParamSet> {
        ALL.iter()
            .copied()
            .find(|p| p.name == name)
            .ok_or_else(|| Error::UnknownParamSet {
                name: name.to_string(),
                valid: valid_names(),
            })
    }

    /// Height of one subtree of the hyper-tree.
    pub fn tree_height(&self) -> u32 {
        self.h / self.d
    }

    /// Bits of the digest that select a subtree at the bottom layer.
    pub fn tree_bits(&self) -> u32 {
        self.h - self.h / self.d
    }

    pub fn log_w(&self) -> u32 {
        ilog2(self.w)
    }

    /// Checks the structural invariants and recomputes every derived field.
    pub fn validate(&self) -> Result<()> {
        let fail = |reason: String| Error::InconsistentParams {
            name: self.name,
            reason,
        };
        if self.d == 0 || !self.h.is_multiple_of(self.d) {
            return Err(fail(format!("h={} is not a multiple of d={}", self.h, self.d)));
        }
        if self.w != 16 {
            return Err(fail(format!("w={} (only w=16 is supported)", self.w)));
        }
        // The address field holds 96 bits, but tree indices are carried as u64.
        if self.tree_bits() > 64 {
            return Err(fail(format!(
                "tree index needs {} bits, more than a u64",
                self.tree_bits()
            )));
        }
        if self.n > 32 {
            return Err(fail(format!("n={} exceeds the 32-byte digest", self.n)));
        }
        let fresh = build(self.name, self.n, self.h, self.d, self.a, self.k, self.secure);
        if fresh != *self {
            return Err(fail(format!("derived fields differ: {fresh:?}")));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_128s() {
        let p = ParamSet::lookup("128s").unwrap();
        assert_eq!((p.n, p.h, p.d, p.a, p.k, p.w), (16, 63, 7, 12, 14, 16));
        assert_eq!(p.len, 35);
        assert_eq!(p.sig_bytes, 7856);
    }

    #[test]
    fn lookup_128f() {
        let p = ParamSet::lookup("128f").unwrap();
        assert_eq!((p.n, p.h, p.d, p.a, p.k, p.w), (16, 66, 22, 6, 33, 16));
        assert_eq!(p.sig_bytes, 17088);
    }

    #[test]
    fn lookup_toy() {
        let p = ParamSet::lookup("toy").unwrap();
        assert_eq!((p.n, p.h, p.d, p.a, p.k, p.w), (16, 6, 2, 4, 8, 16));
        assert_eq!(p.sig_bytes, 16 * (1 + 8 * 5 + 6 + 2 * 35));
        assert_eq!(p.m, 6);
        assert!(!p.secure);
    }

    #[test]
    fn unknown_name_lists_valid_ones() {
        let err = ParamSet::lookup("xyz").unwrap_err();
        let msg = err.to_string();
        assert!(matches!(err, Error::UnknownParamSet { .. }));
        for p in ALL {
            assert!(msg.contains(p.name), "{msg}");
        }
    }

    #[test]
    fn all_sets_validate() {
        for p in ALL {
            p.validate().unwrap();
            assert_eq!(p.tree_height() * p.d, p.h);
        }
    }

    #[test]
    fn sizes_from_first_principles() {
        // Byte-level accounting of a signature: randomizer, k FORS trees of
        // (secret + a path nodes), d layers of (len chains + h/d path nodes).
        for p in ALL {
            let fors = p.k * (1 + p.a as usize) * p.n;
            let ht = p.d as usize * (p.len + p.tree_height() as usize) * p.n;
            assert_eq!(p.sig_bytes, p.n + fors + ht, "{}", p.name);
            assert_eq!(p.pk_bytes, 2 * p.n);
            assert_eq!(p.sk_bytes, 4 * p.n);
        }
    }

    #[test]
    fn len2_matches_exhaustive_search() {
        for p in ALL {
            let max = (p.len1 as u64) * (p.w as u64 - 1);
            let mut c = 0u32;
            while (p.w as u64).pow(c) <= max {
                c += 1;
            }
            assert_eq!(c as usize, p.len2, "{}", p.name);
        }
    }

    #[test]
    fn invalid_set_rejected() {
        let mut p = SPHINCS_128S;
        p.sig_bytes += 1;
        assert!(p.validate().is_err());
        let mut p = TOY;
        p.d = 4;
        assert!(p.validate().is_err());
    }
}
