//! Cocharacter decompositions: multiplicities of irreducible characters in
//! the quotient module, extracted from traces by character orthogonality.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::exactlin::Scalar;
use crate::partitions::{CharacterTable, Partition};
use crate::Error;

/// Ordinary decomposition: multiplicity of each partition of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocharacterDecomposition {
    degree: u32,
    entries: BTreeMap<Partition, u64>,
}

impl CocharacterDecomposition {
    pub fn new(degree: u32, entries: BTreeMap<Partition, u64>) -> CocharacterDecomposition {
        let entries = entries.into_iter().filter(|(_, m)| *m > 0).collect();
        CocharacterDecomposition { degree, entries }
    }

    pub fn empty(degree: u32) -> CocharacterDecomposition {
        CocharacterDecomposition {
            degree,
            entries: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, shape: &Partition) -> u64 {
        self.entries.get(shape).copied().unwrap_or(0)
    }

    /// Entries in reverse-lexicographic partition order.
    pub fn entries(&self) -> impl Iterator<Item = (&Partition, u64)> {
        self.entries.iter().map(|(p, &m)| (p, m))
    }

    /// The colength: the sum of the multiplicities.
    pub fn colength(&self) -> u64 {
        self.entries.values().sum()
    }

    /// `sum m_lambda * d_lambda`, which must equal the codimension.
    pub fn dimension_sum(&self) -> BigUint {
        self.entries
            .iter()
            .map(|(p, &m)| p.dimension() * BigUint::from(m))
            .sum()
    }

    /// Largest `d_lambda` over nonzero multiplicities (zero when empty).
    pub fn max_dimension(&self) -> BigUint {
        self.entries
            .keys()
            .map(Partition::dimension)
            .max()
            .unwrap_or_else(BigUint::zero)
    }
}

impl fmt::Display for CocharacterDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, m) in self.entries() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m != 1 {
                write!(f, "{m}*")?;
            }
            write!(f, "chi{p}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Graded decomposition at a fixed signature: multiplicities over pairs
/// (even shape, odd shape).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCocharacter {
    even_degree: u32,
    odd_degree: u32,
    entries: BTreeMap<(Partition, Partition), u64>,
}

impl GradedCocharacter {
    pub fn new(
        even_degree: u32,
        odd_degree: u32,
        entries: BTreeMap<(Partition, Partition), u64>,
    ) -> GradedCocharacter {
        let entries = entries.into_iter().filter(|(_, m)| *m > 0).collect();
        GradedCocharacter {
            even_degree,
            odd_degree,
            entries,
        }
    }

    pub fn even_degree(&self) -> u32 {
        self.even_degree
    }

    pub fn odd_degree(&self) -> u32 {
        self.odd_degree
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, even: &Partition, odd: &Partition) -> u64 {
        self.entries
            .get(&(even.clone(), odd.clone()))
            .copied()
            .unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(Partition, Partition), u64)> {
        self.entries.iter().map(|(k, &m)| (k, m))
    }

    pub fn colength(&self) -> u64 {
        self.entries.values().sum()
    }

    /// `sum m * d_lambda * d_mu`.
    pub fn dimension_sum(&self) -> BigUint {
        self.entries
            .iter()
            .map(|((l, m), &mult)| l.dimension() * m.dimension() * BigUint::from(mult))
            .sum()
    }

    pub fn max_dimension(&self) -> BigUint {
        self.entries
            .keys()
            .map(|(l, m)| l.dimension() * m.dimension())
            .max()
            .unwrap_or_else(BigUint::zero)
    }
}

/// The colength `l_n = sum m_lambda`.
pub fn colength(decomposition: &CocharacterDecomposition) -> u64 {
    decomposition.colength()
}

fn lift_multiplicity<S: Scalar>(value: &S, what: &str) -> Result<u64, Error> {
    match value.lift_integer() {
        Some(v) if v >= 0 => Ok(v as u64),
        Some(v) => Err(Error::InternalInconsistency(format!(
            "negative multiplicity {v} for {what}"
        ))),
        None => Err(Error::InternalInconsistency(format!(
            "non-integral multiplicity for {what}"
        ))),
    }
}

/// `m_lambda = (1/n!) sum_mu |C_mu| chi_lambda(mu) trace(mu)`, computed in
/// the working field and lifted back to non-negative integers.
pub fn ordinary_multiplicities<S: Scalar>(
    ctx: &S::Ctx,
    table: &CharacterTable,
    traces: &[S],
) -> Result<BTreeMap<Partition, u64>, Error> {
    let n = table.degree();
    let mut factorial = BigUint::from(1u32);
    for v in 2..=n {
        factorial *= BigUint::from(v);
    }
    let inv_fact = S::from_biguint(ctx, &factorial)
        .inv()
        .ok_or_else(|| Error::InternalInconsistency("n! vanishes in the field".to_string()))?;
    let class_sizes: Vec<S> = table
        .class_sizes()
        .iter()
        .map(|c| S::from_biguint(ctx, c))
        .collect();
    let mut out = BTreeMap::new();
    for (li, shape) in table.partitions().iter().enumerate() {
        let mut sum = S::zero(ctx);
        for (ci, size) in class_sizes.iter().enumerate() {
            let chi = signed_from_i64::<S>(ctx, table.value_at(li, ci));
            sum = sum.add(&size.mul(&chi).mul(&traces[ci]));
        }
        let m = lift_multiplicity(&sum.mul(&inv_fact), &format!("{shape}"))?;
        if m > 0 {
            out.insert(shape.clone(), m);
        }
    }
    Ok(out)
}

/// Product-group analogue over pairs of cycle types.
pub fn graded_multiplicities<S: Scalar>(
    ctx: &S::Ctx,
    even_table: &CharacterTable,
    odd_table: &CharacterTable,
    traces: &[Vec<S>],
) -> Result<BTreeMap<(Partition, Partition), u64>, Error> {
    let mut order = BigUint::from(1u32);
    for v in 2..=even_table.degree() {
        order *= BigUint::from(v);
    }
    for v in 2..=odd_table.degree() {
        order *= BigUint::from(v);
    }
    let inv_order = S::from_biguint(ctx, &order)
        .inv()
        .ok_or_else(|| Error::InternalInconsistency("q!m! vanishes in the field".to_string()))?;
    let even_sizes: Vec<S> = even_table
        .class_sizes()
        .iter()
        .map(|c| S::from_biguint(ctx, c))
        .collect();
    let odd_sizes: Vec<S> = odd_table
        .class_sizes()
        .iter()
        .map(|c| S::from_biguint(ctx, c))
        .collect();
    let mut out = BTreeMap::new();
    for (li, lshape) in even_table.partitions().iter().enumerate() {
        for (mi, mshape) in odd_table.partitions().iter().enumerate() {
            let mut sum = S::zero(ctx);
            for (ai, asize) in even_sizes.iter().enumerate() {
                let chi_a = signed_from_i64::<S>(ctx, even_table.value_at(li, ai));
                for (bi, bsize) in odd_sizes.iter().enumerate() {
                    let chi_b = signed_from_i64::<S>(ctx, odd_table.value_at(mi, bi));
                    let weight = asize.mul(bsize).mul(&chi_a).mul(&chi_b);
                    sum = sum.add(&weight.mul(&traces[ai][bi]));
                }
            }
            let m = lift_multiplicity(
                &sum.mul(&inv_order),
                &format!("({lshape},{mshape})"),
            )?;
            if m > 0 {
                out.insert((lshape.clone(), mshape.clone()), m);
            }
        }
    }
    Ok(out)
}

fn signed_from_i64<S: Scalar>(ctx: &S::Ctx, v: i64) -> S {
    if v >= 0 {
        S::from_u64(ctx, v as u64)
    } else {
        S::from_u64(ctx, (-v) as u64).neg()
    }
}
