//! Partitions, Young diagrams and hooks.
//!
//! Partitions of `n` index the irreducible characters of `S_n`; all
//! decompositions in this crate are reported in the reverse-lexicographic
//! order produced by [`enumerate_partitions`], with `(n)` first and
//! `(1, .., 1)` last.

mod characters;
mod lr;

pub use characters::{character_value, class_size, CharacterTable};
pub use lr::lr_coefficient;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::Error;

/// A partition: a weakly decreasing sequence of positive integers. The empty
/// sequence is the unique partition of 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Validates weak decrease and positivity of the parts.
    pub fn new(parts: Vec<u32>) -> Result<Partition, Error> {
        for i in 0..parts.len() {
            if parts[i] == 0 {
                return Err(Error::InvalidPartition(format!("zero part in {parts:?}")));
            }
            if i + 1 < parts.len() && parts[i] < parts[i + 1] {
                return Err(Error::InvalidPartition(format!(
                    "parts not weakly decreasing: {parts:?}"
                )));
            }
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Partition {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts (the number of rows of the Young diagram).
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// The part at `index`, or 0 past the end. 0-based.
    pub fn part(&self, index: usize) -> u32 {
        self.parts.get(index).copied().unwrap_or(0)
    }

    /// Sum of the parts.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// The conjugate partition: its i-th part counts the parts of `self`
    /// that are `>= i+1`. Conjugation transposes the Young diagram and is an
    /// involution.
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0) as usize;
        let mut parts = Vec::with_capacity(cols);
        for i in 1..=cols {
            parts.push(self.parts.iter().filter(|&&p| p >= i as u32).count() as u32);
        }
        Partition { parts }
    }

    /// True when the diagram fits in the hook `H(k, l)`, i.e. the (k+1)-th
    /// part is at most `l`.
    pub fn in_hook(&self, hook: HookSpec) -> bool {
        self.part(hook.k as usize) <= hook.l
    }

    /// Number of standard Young tableaux of this shape, by the hook length
    /// formula.
    pub fn dimension(&self) -> BigUint {
        let n = self.size();
        if n == 0 {
            return BigUint::one();
        }
        let conj = self.conjugate();
        let mut numerator = BigUint::one();
        for v in 2..=n {
            numerator *= BigUint::from(v);
        }
        let mut denominator = BigUint::one();
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row as usize {
                let hook = (row as usize - j) + (conj.part(j) as usize - i) - 1;
                denominator *= BigUint::from(hook);
            }
        }
        numerator / denominator
    }

    /// Ordering used throughout: by size first, then reverse-lexicographic,
    /// so partitions of equal size sort as `(n), (n-1,1), .., (1,..,1)`.
    fn cmp_key(&self, other: &Partition) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Partition) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Partition) -> Ordering {
        self.cmp_key(other)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A partition of `n` read as the cycle lengths of a conjugacy class of
/// `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(Partition);

impl CycleType {
    pub fn new(partition: Partition) -> CycleType {
        CycleType(partition)
    }

    pub fn identity(n: u32) -> CycleType {
        CycleType(Partition {
            parts: vec![1; n as usize],
        })
    }

    pub fn partition(&self) -> &Partition {
        &self.0
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The infinite hook `H(k, l)`: partitions whose (k+1)-th part is at most
/// `l`. `H(k, 0)` is the horizontal strip of height `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HookSpec {
    pub k: u32,
    pub l: u32,
}

impl HookSpec {
    pub fn new(k: u32, l: u32) -> HookSpec {
        HookSpec { k, l }
    }
}

impl fmt::Display for HookSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({},{})", self.k, self.l)
    }
}

/// All partitions of `n` in reverse-lexicographic order: `(n)` first, then
/// `(n-1,1)`, ending with `(1,..,1)`.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        let top = remaining.min(max_part);
        for k in (1..=top).rev() {
            current.push(k);
            rec(remaining - k, k, current, out);
            current.pop();
        }
    }
    rec(n, n.max(1), &mut current, &mut out);
    out
}

/// The hook-shaped partition `h(k, l, d) = (l+d, .., l+d, l, .., l)` with `k`
/// copies of `l+d` followed by `d` copies of `l`, of size `kl + d(k+l)`.
/// Zero parts are dropped. `k = l = 0` is only allowed with `d = 0`.
pub fn hook_partition(k: u32, l: u32, d: u32) -> Result<Partition, Error> {
    if k == 0 && l == 0 && d > 0 {
        return Err(Error::InvalidHook);
    }
    let mut parts = Vec::new();
    if l + d > 0 {
        parts.extend(std::iter::repeat_n(l + d, k as usize));
    }
    if l > 0 {
        parts.extend(std::iter::repeat_n(l, d as usize));
    }
    Ok(Partition { parts })
}

/// Exact sum of `dimension(lambda)` over all partitions of `n` inside the
/// hook.
pub fn sum_dimensions_in_hook(hook: HookSpec, n: u32) -> BigUint {
    enumerate_partitions(n)
        .iter()
        .filter(|p| p.in_hook(hook))
        .map(|p| p.dimension())
        .sum()
}
