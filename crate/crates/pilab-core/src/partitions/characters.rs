//! Irreducible characters of the symmetric group.
//!
//! Values are computed by the Murnaghan-Nakayama border-strip recursion on
//! beta-sets, memoized per `(shape, remaining cycle type)` pair. Character
//! values of `S_n` are integers; `i64` is ample for every degree within the
//! engine's budget.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;

use super::{enumerate_partitions, CycleType, Partition};
use crate::Error;

/// Exact value of the irreducible character indexed by `shape` on the
/// conjugacy class `class`; the sizes must agree.
pub fn character_value(shape: &Partition, class: &CycleType) -> Result<i64, Error> {
    if shape.size() != class.partition().size() {
        return Err(Error::DimensionMismatch(format!(
            "character of {shape} evaluated on a class of S_{}",
            class.partition().size()
        )));
    }
    let mut memo = HashMap::new();
    Ok(mn_value(
        shape.parts().to_vec(),
        class.partition().parts(),
        &mut memo,
    ))
}

/// `|C_mu| = n! / z_mu` with `z_mu = prod_i i^{m_i} m_i!` where `m_i` counts
/// the parts of `mu` equal to `i`.
pub fn class_size(class: &CycleType) -> BigUint {
    let mu = class.partition();
    let n = mu.size();
    let mut numerator = BigUint::one();
    for v in 2..=n {
        numerator *= BigUint::from(v);
    }
    let mut counts: HashMap<u32, u32> = HashMap::new();
    for &p in mu.parts() {
        *counts.entry(p).or_insert(0) += 1;
    }
    let mut z = BigUint::one();
    for (&len, &mult) in &counts {
        for _ in 0..mult {
            z *= BigUint::from(len);
        }
        for m in 2..=mult {
            z *= BigUint::from(m);
        }
    }
    numerator / z
}

type Memo = HashMap<(Vec<u32>, Vec<u32>), i64>;

fn mn_value(shape: Vec<u32>, remaining: &[u32], memo: &mut Memo) -> i64 {
    if remaining.is_empty() {
        return 1; // shape is empty here as sizes always agree
    }
    let key = (shape.clone(), remaining.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let strip = remaining[0] as i64;
    let rest = &remaining[1..];
    let m = shape.len();
    // beta-set: strictly decreasing first-column hook lengths
    let beta: Vec<i64> = shape
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (m - 1 - i) as i64)
        .collect();
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        let nb = b - strip;
        if nb < 0 || beta.contains(&nb) {
            continue;
        }
        let crossed = beta.iter().filter(|&&x| nb < x && x < b).count();
        let mut nbeta = beta.clone();
        nbeta[i] = nb;
        nbeta.sort_unstable_by(|a, b| b.cmp(a));
        let mm = nbeta.len();
        let nshape: Vec<u32> = nbeta
            .iter()
            .enumerate()
            .map(|(j, &x)| (x - (mm - 1 - j) as i64) as u32)
            .filter(|&x| x > 0)
            .collect();
        let sign = if crossed % 2 == 0 { 1 } else { -1 };
        total += sign * mn_value(nshape, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// The full character table of `S_n`: one row per shape, one column per
/// cycle type, both in the reverse-lexicographic partition order. Built once
/// and shared read-only.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    n: u32,
    partitions: Vec<Partition>,
    values: Vec<Vec<i64>>,
    class_sizes: Vec<BigUint>,
}

impl CharacterTable {
    pub fn new(n: u32) -> CharacterTable {
        let partitions = enumerate_partitions(n);
        let mut memo = Memo::new();
        let values = partitions
            .iter()
            .map(|shape| {
                partitions
                    .iter()
                    .map(|mu| mn_value(shape.parts().to_vec(), mu.parts(), &mut memo))
                    .collect()
            })
            .collect();
        let class_sizes = partitions
            .iter()
            .map(|mu| class_size(&CycleType::new(mu.clone())))
            .collect();
        CharacterTable {
            n,
            partitions,
            values,
            class_sizes,
        }
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn class_sizes(&self) -> &[BigUint] {
        &self.class_sizes
    }

    pub fn value_at(&self, shape_index: usize, class_index: usize) -> i64 {
        self.values[shape_index][class_index]
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.partitions.iter().position(|q| q == p)
    }
}
