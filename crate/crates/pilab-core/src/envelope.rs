//! Grassmann algebra arithmetic and evaluation of multilinear monomials on
//! Grassmann envelopes.
//!
//! An envelope evaluation substitutes `b_i (x) g_i` for each variable, where
//! `b_i` is a homogeneous basis element and `g_i` a block of fresh Grassmann
//! generators of matching parity (one generator for odd slots, two for even
//! slots). Because even blocks are central and disjoint odd blocks
//! anticommute, the Grassmann factor of any monomial reduces to a global
//! sign times the sorted product of the blocks; `koszul_sign` computes that
//! sign directly and `truncated_envelope_oracle` recomputes the whole product
//! in a truncated Grassmann algebra as an independent cross-check.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::algebras::{AlgebraClass, AlgebraSpec, Element};
use crate::freealg::{Monomial, Tree};
use crate::{Error, Parity};

/// A signed product of distinct Grassmann generators; the generator list is
/// strictly increasing. The zero element of the algebra is represented
/// separately (`None` in multiplication results).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GrassmannMonomial {
    generators: Vec<u32>,
    sign: i8,
}

impl GrassmannMonomial {
    /// The unit (empty product).
    pub fn one() -> GrassmannMonomial {
        GrassmannMonomial {
            generators: Vec::new(),
            sign: 1,
        }
    }

    pub fn generator(index: u32) -> GrassmannMonomial {
        GrassmannMonomial {
            generators: vec![index],
            sign: 1,
        }
    }

    /// Builds `sign * e_{g_1} .. e_{g_k}`; the indices must be strictly
    /// increasing.
    pub fn new(generators: Vec<u32>, sign: i8) -> Result<GrassmannMonomial, Error> {
        if generators.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse(format!(
                "generator indices must be strictly increasing: {generators:?}"
            )));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::Parse(format!("sign must be +-1, got {sign}")));
        }
        Ok(GrassmannMonomial { generators, sign })
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn parity(&self) -> Parity {
        Parity::from_bit((self.generators.len() % 2) as u8)
    }

    /// Product in the Grassmann algebra: zero (`None`) when a generator
    /// repeats, otherwise the merged sorted monomial with the sign of the
    /// interleaving shuffle.
    pub fn mul(&self, other: &GrassmannMonomial) -> Option<GrassmannMonomial> {
        let mut merged = Vec::with_capacity(self.generators.len() + other.generators.len());
        let mut sign = self.sign * other.sign;
        let (mut i, mut j) = (0usize, 0usize);
        while i < self.generators.len() && j < other.generators.len() {
            let a = self.generators[i];
            let b = other.generators[j];
            if a == b {
                return None;
            }
            if a < b {
                merged.push(a);
                i += 1;
            } else {
                // b jumps over the remaining generators of self
                if (self.generators.len() - i) % 2 == 1 {
                    sign = -sign;
                }
                merged.push(b);
                j += 1;
            }
        }
        merged.extend_from_slice(&self.generators[i..]);
        merged.extend_from_slice(&other.generators[j..]);
        Some(GrassmannMonomial {
            generators: merged,
            sign,
        })
    }
}

/// Assignment of one envelope element `b (x) block` per variable slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotAssignment {
    pub basis_index: usize,
    pub parity: Parity,
    pub block: Vec<u32>,
}

/// Per-slot envelope substitutions with pairwise disjoint generator blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopeAssignment {
    slots: Vec<SlotAssignment>,
}

impl EnvelopeAssignment {
    /// Validates block parities (odd slot: odd block size; even slot: even
    /// block size) and pairwise disjointness, which guarantees a nonzero
    /// Grassmann product.
    pub fn new(slots: Vec<SlotAssignment>) -> Result<EnvelopeAssignment, Error> {
        let mut seen = std::collections::BTreeSet::new();
        for (i, slot) in slots.iter().enumerate() {
            let blockparity = Parity::from_bit((slot.block.len() % 2) as u8);
            if blockparity != slot.parity {
                return Err(Error::ParityMismatch(format!(
                    "slot {i}: block of {} generators for a {:?} slot",
                    slot.block.len(),
                    slot.parity
                )));
            }
            for &g in &slot.block {
                if !seen.insert(g) {
                    return Err(Error::ParityMismatch(format!(
                        "generator e_{g} assigned to two slots"
                    )));
                }
            }
        }
        Ok(EnvelopeAssignment { slots })
    }

    /// The canonical fresh assignment for a basis tuple: slot `i` takes basis
    /// element `tuple[i]` with one fresh generator when odd, two when even,
    /// blocks allocated in slot order.
    pub fn fresh(algebra: &AlgebraSpec, tuple: &[usize]) -> Result<EnvelopeAssignment, Error> {
        let mut next = 0u32;
        let mut slots = Vec::with_capacity(tuple.len());
        for &b in tuple {
            if b >= algebra.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "basis index {b} out of range for {}",
                    algebra.name()
                )));
            }
            let parity = algebra.parity(b);
            let width = if parity.is_odd() { 1 } else { 2 };
            let block: Vec<u32> = (next..next + width).collect();
            next += width;
            slots.push(SlotAssignment {
                basis_index: b,
                parity,
                block,
            });
        }
        Ok(EnvelopeAssignment { slots })
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn slot(&self, i: usize) -> &SlotAssignment {
        &self.slots[i]
    }

    pub fn slots(&self) -> &[SlotAssignment] {
        &self.slots
    }

    /// The product of all blocks in slot order, as a signed sorted monomial;
    /// disjointness makes it nonzero.
    pub fn sorted_block_product(&self) -> GrassmannMonomial {
        let mut acc = GrassmannMonomial::one();
        for slot in &self.slots {
            let block = GrassmannMonomial::new(slot.block.clone(), 1).expect("sorted block");
            acc = acc.mul(&block).expect("blocks are disjoint");
        }
        GrassmannMonomial {
            generators: acc.generators,
            sign: 1,
        }
    }
}

/// Sign of the product of the assigned blocks taken in the monomial's leaf
/// order, relative to the blocks in slot order: even blocks are central, so
/// this is the sign of the permutation the odd-slot blocks undergo.
pub fn koszul_sign(monomial: &Monomial, assignment: &EnvelopeAssignment) -> i8 {
    let odd_slots: Vec<u8> = monomial
        .leaf_order()
        .into_iter()
        .filter(|&s| assignment.slot(s as usize).parity.is_odd())
        .collect();
    let mut inversions = 0usize;
    for i in 0..odd_slots.len() {
        for j in (i + 1)..odd_slots.len() {
            if odd_slots[i] > odd_slots[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn eval_tree_in_algebra(algebra: &AlgebraSpec, tree: &Tree, tuple: &[usize]) -> Element {
    match tree {
        Tree::Leaf(slot) => Element::basis(algebra.dim(), tuple[*slot as usize]),
        Tree::Node(l, r) => {
            let lv = eval_tree_in_algebra(algebra, l, tuple);
            let rv = eval_tree_in_algebra(algebra, r, tuple);
            algebra.bracket(&lv, &rv).expect("dimensions agree")
        }
    }
}

/// Evaluates a monomial on the Grassmann envelope of a graded Lie algebra:
/// returns `(koszul sign, value of the monomial on the underlying basis
/// elements)`. The Grassmann factor is the assignment's sorted block
/// product scaled by the returned sign.
pub fn evaluate_on_envelope(
    algebra: &AlgebraSpec,
    monomial: &Monomial,
    assignment: &EnvelopeAssignment,
) -> Result<(i8, Element), Error> {
    if algebra.class() != AlgebraClass::Lie {
        return Err(Error::ClassValidation(format!(
            "envelope evaluation needs a Lie algebra, got {}",
            algebra.class().label()
        )));
    }
    if !algebra.has_grading() {
        return Err(Error::GradingRequired(format!(
            "algebra {} has no grading",
            algebra.name()
        )));
    }
    if assignment.len() != monomial.arity() {
        return Err(Error::DimensionMismatch(format!(
            "assignment covers {} slots for a monomial of arity {}",
            assignment.len(),
            monomial.arity()
        )));
    }
    for (i, slot) in assignment.slots().iter().enumerate() {
        if algebra.parity(slot.basis_index) != slot.parity {
            return Err(Error::ParityMismatch(format!(
                "slot {i}: basis element {} has parity {:?}, block has parity {:?}",
                algebra.basis_names()[slot.basis_index],
                algebra.parity(slot.basis_index),
                slot.parity
            )));
        }
    }
    let tuple: Vec<usize> = assignment.slots().iter().map(|s| s.basis_index).collect();
    let value = eval_tree_in_algebra(algebra, monomial.tree(), &tuple);
    Ok((koszul_sign(monomial, assignment), value))
}

/// An element of `L (x) G`: coefficient vectors of `L` indexed by sorted
/// Grassmann generator lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopeValue {
    dim: usize,
    terms: BTreeMap<Vec<u32>, Element>,
}

impl EnvelopeValue {
    pub fn zero(dim: usize) -> EnvelopeValue {
        EnvelopeValue {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn pure(monomial: &GrassmannMonomial, element: Element) -> EnvelopeValue {
        let mut out = EnvelopeValue::zero(element.dim());
        out.add_term(monomial, element);
        out
    }

    pub fn add_term(&mut self, monomial: &GrassmannMonomial, element: Element) {
        let scaled = if monomial.sign() < 0 {
            element.neg()
        } else {
            element
        };
        let entry = self
            .terms
            .entry(monomial.generators().to_vec())
            .or_insert_with(|| Element::zero(self.dim));
        *entry = entry.add(&scaled);
        if entry.is_zero() {
            self.terms.remove(monomial.generators());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Element)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &EnvelopeValue) -> EnvelopeValue {
        let mut out = self.clone();
        for (g, e) in other.terms() {
            out.add_term(
                &GrassmannMonomial::new(g.clone(), 1).expect("stored sorted"),
                e.clone(),
            );
        }
        out
    }

    /// `[x (x) g, y (x) h] = [x, y] (x) gh`, extended bilinearly.
    pub fn bracket(&self, algebra: &AlgebraSpec, other: &EnvelopeValue) -> EnvelopeValue {
        let mut out = EnvelopeValue::zero(self.dim);
        for (g, x) in &self.terms {
            for (h, y) in &other.terms {
                let gm = GrassmannMonomial::new(g.clone(), 1).expect("sorted");
                let hm = GrassmannMonomial::new(h.clone(), 1).expect("sorted");
                if let Some(product) = gm.mul(&hm) {
                    let value = algebra.bracket(x, y).expect("dimensions agree");
                    if !value.is_zero() {
                        out.add_term(&product, value);
                    }
                }
            }
        }
        out
    }
}

/// Literal recursive evaluation of a monomial in `L (x) G` with the
/// assignment's substitutions: brackets in `L`, Grassmann products in `G`.
/// Independent of the sign bookkeeping in [`koszul_sign`].
pub fn truncated_envelope_oracle(
    algebra: &AlgebraSpec,
    monomial: &Monomial,
    assignment: &EnvelopeAssignment,
) -> Result<EnvelopeValue, Error> {
    if assignment.len() != monomial.arity() {
        return Err(Error::DimensionMismatch(format!(
            "assignment covers {} slots for a monomial of arity {}",
            assignment.len(),
            monomial.arity()
        )));
    }
    fn rec(algebra: &AlgebraSpec, tree: &Tree, assignment: &EnvelopeAssignment) -> EnvelopeValue {
        match tree {
            Tree::Leaf(slot) => {
                let s = assignment.slot(*slot as usize);
                let block = GrassmannMonomial::new(s.block.clone(), 1).expect("sorted block");
                EnvelopeValue::pure(&block, Element::basis(algebra.dim(), s.basis_index))
            }
            Tree::Node(l, r) => {
                let lv = rec(algebra, l, assignment);
                let rv = rec(algebra, r, assignment);
                lv.bracket(algebra, &rv)
            }
        }
    }
    Ok(rec(algebra, monomial.tree(), assignment))
}

/// Materializes a finite sample of the envelope: `L (x) G_N` restricted to
/// matching parities, as a structure-constant algebra of class super-Lie.
/// Basis: `b_i (x) e_S` for subsets `S` of the `N` generators with
/// `|S| = parity(b_i) mod 2`, ordered by basis index then subset bitmask.
pub fn truncated_envelope_algebra(
    algebra: &AlgebraSpec,
    generators: u32,
) -> Result<Arc<AlgebraSpec>, Error> {
    if algebra.class() != AlgebraClass::Lie {
        return Err(Error::ClassValidation(
            "envelope of a non-Lie algebra".to_string(),
        ));
    }
    if !algebra.has_grading() {
        return Err(Error::GradingRequired(format!(
            "algebra {} has no grading",
            algebra.name()
        )));
    }
    if generators > 10 {
        return Err(Error::BudgetExceeded(format!(
            "truncated envelope with {generators} generators ({} subsets)",
            1u64 << generators
        )));
    }
    let masks: Vec<u32> = (0u32..1 << generators).collect();
    let mut basis: Vec<(usize, u32)> = Vec::new();
    for i in 0..algebra.dim() {
        for &m in &masks {
            if (m.count_ones() % 2) as u8 == algebra.parity(i).bit() {
                basis.push((i, m));
            }
        }
    }
    let index_of = |i: usize, m: u32| basis.iter().position(|&(bi, bm)| bi == i && bm == m);
    let dim = basis.len();
    let mut table = vec![vec![vec![BigRational::zero(); dim]; dim]; dim];
    for (a, &(i, s)) in basis.iter().enumerate() {
        for (b, &(j, t)) in basis.iter().enumerate() {
            if s & t != 0 {
                continue; // repeated generator: Grassmann factor vanishes
            }
            let gs = GrassmannMonomial::new(mask_to_list(s), 1).expect("sorted");
            let gt = GrassmannMonomial::new(mask_to_list(t), 1).expect("sorted");
            let product = gs.mul(&gt).expect("disjoint");
            let merged = s | t;
            for k in 0..algebra.dim() {
                let c = algebra.structure_constant(i, j, k);
                if c.is_zero() {
                    continue;
                }
                if let Some(target) = index_of(k, merged) {
                    let signed = if product.sign() < 0 { -c.clone() } else { c.clone() };
                    table[a][b][target] = signed;
                }
            }
        }
    }
    let names = basis
        .iter()
        .map(|&(i, m)| {
            if m == 0 {
                algebra.basis_names()[i].clone()
            } else {
                let gens: Vec<String> = mask_to_list(m).iter().map(|g| format!("e{g}")).collect();
                format!("{}*{}", algebra.basis_names()[i], gens.join(""))
            }
        })
        .collect();
    let grading = basis
        .iter()
        .map(|&(_, m)| Parity::from_bit((m.count_ones() % 2) as u8))
        .collect();
    Ok(Arc::new(AlgebraSpec::new(
        format!("envelope({}, {} generators)", algebra.name(), generators),
        names,
        table,
        Some(grading),
        AlgebraClass::SuperLie,
    )?))
}

fn mask_to_list(mask: u32) -> Vec<u32> {
    (0..32).filter(|b| mask & (1 << b) != 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    #[test]
    fn grassmann_defining_relations() {
        let e1 = GrassmannMonomial::generator(1);
        let e2 = GrassmannMonomial::generator(2);
        let e12 = e1.mul(&e2).unwrap();
        assert_eq!(e12.generators(), &[1, 2]);
        assert_eq!(e12.sign(), 1);
        let e21 = e2.mul(&e1).unwrap();
        assert_eq!(e21.generators(), &[1, 2]);
        assert_eq!(e21.sign(), -1);
        assert!(e1.mul(&e1).is_none());
        assert_eq!(e1.mul(&GrassmannMonomial::one()).unwrap(), e1);
    }

    fn random_monomial(rng: &mut SplitMix64) -> GrassmannMonomial {
        let mut gens: Vec<u32> = (0..8).filter(|_| rng.below(2) == 1).collect();
        gens.dedup();
        let sign = if rng.below(2) == 0 { 1 } else { -1 };
        GrassmannMonomial::new(gens, sign).unwrap()
    }

    #[test]
    fn grassmann_product_is_associative() {
        let mut rng = SplitMix64::new(8);
        for _ in 0..500 {
            let (a, b, c) = (
                random_monomial(&mut rng),
                random_monomial(&mut rng),
                random_monomial(&mut rng),
            );
            let left = a.mul(&b).and_then(|ab| ab.mul(&c));
            let right = b.mul(&c).and_then(|bc| a.mul(&bc));
            assert_eq!(left, right, "{a:?} {b:?} {c:?}");
        }
    }

    #[test]
    fn fresh_assignment_blocks() {
        let alg = AlgebraSpec::builtin("metabelian").unwrap();
        let asg = EnvelopeAssignment::fresh(&alg, &[0, 1]).unwrap();
        assert_eq!(asg.slot(0).block, vec![0, 1]); // even: two generators
        assert_eq!(asg.slot(1).block, vec![2]); // odd: one generator
        assert_eq!(asg.sorted_block_product().generators(), &[0, 1, 2]);
    }

    #[test]
    fn koszul_sign_examples() {
        let alg = AlgebraSpec::builtin("metabelian").unwrap();
        // all slots even: sign +1 regardless of order
        let even_asg = EnvelopeAssignment::fresh(&alg, &[0, 0]).unwrap();
        assert_eq!(koszul_sign(&Monomial::left_normed(&[1, 0]), &even_asg), 1);
        // both odd, reversed leaf order: one transposition
        let odd_asg = EnvelopeAssignment::fresh(&alg, &[1, 1]).unwrap();
        assert_eq!(koszul_sign(&Monomial::left_normed(&[1, 0]), &odd_asg), -1);
        assert_eq!(koszul_sign(&Monomial::left_normed(&[0, 1]), &odd_asg), 1);
    }

    #[test]
    fn metabelian_envelope_evaluation() {
        let alg = AlgebraSpec::builtin("metabelian").unwrap();
        let asg = EnvelopeAssignment::fresh(&alg, &[0, 1]).unwrap();
        let m = Monomial::left_normed(&[0, 1]);
        let (sign, value) = evaluate_on_envelope(&alg, &m, &asg).unwrap();
        assert_eq!(sign, 1);
        assert_eq!(value, Element::basis(2, 1)); // [e, f] = f
    }

    #[test]
    fn single_variable_evaluation() {
        let alg = AlgebraSpec::builtin("sl2-cartan").unwrap();
        let asg = EnvelopeAssignment::fresh(&alg, &[2]).unwrap();
        let m = Monomial::left_normed(&[0]);
        let (sign, value) = evaluate_on_envelope(&alg, &m, &asg).unwrap();
        assert_eq!(sign, 1);
        assert_eq!(value, Element::basis(3, 2));
    }

    #[test]
    fn oracle_matches_signed_evaluation() {
        let mut rng = SplitMix64::new(77);
        let algebras = [
            AlgebraSpec::builtin("metabelian").unwrap(),
            AlgebraSpec::builtin("sl2-cartan").unwrap(),
            AlgebraSpec::builtin("heisenberg").unwrap(),
        ];
        use crate::freealg::{SpanKind, SpanningSet, VarSpec};
        for _ in 0..500 {
            let alg = &algebras[rng.below(3) as usize];
            let n = 1 + rng.below(6) as usize;
            let span = SpanningSet::generate(SpanKind::AllBracketings, VarSpec::Ordinary { n });
            let m = span.monomial(rng.below(span.len() as u64) as usize);
            let tuple: Vec<usize> = (0..n).map(|_| rng.below(alg.dim() as u64) as usize).collect();
            let asg = EnvelopeAssignment::fresh(alg, &tuple).unwrap();
            let (sign, value) = evaluate_on_envelope(alg, &m, &asg).unwrap();
            let oracle = truncated_envelope_oracle(alg, &m, &asg).unwrap();
            let mut expect = EnvelopeValue::zero(alg.dim());
            if !value.is_zero() {
                let signed = if sign < 0 { value.neg() } else { value };
                expect.add_term(&asg.sorted_block_product(), signed);
            }
            assert_eq!(oracle, expect, "monomial {:?}", m.leaf_order());
        }
    }

    #[test]
    fn shared_generators_give_zero() {
        let alg = AlgebraSpec::builtin("metabelian").unwrap();
        // assignments with overlapping blocks are rejected outright
        let slots = vec![
            SlotAssignment {
                basis_index: 1,
                parity: Parity::Odd,
                block: vec![0],
            },
            SlotAssignment {
                basis_index: 1,
                parity: Parity::Odd,
                block: vec![0],
            },
        ];
        assert!(EnvelopeAssignment::new(slots).is_err());
        // and a product with a repeated generator vanishes in L (x) G
        let u = EnvelopeValue::pure(&GrassmannMonomial::generator(0), Element::basis(2, 0));
        let v = EnvelopeValue::pure(&GrassmannMonomial::generator(0), Element::basis(2, 1));
        assert!(u.bracket(&alg, &v).is_zero());
    }

    #[test]
    fn envelope_evaluations_are_super_anticommutative() {
        let alg = AlgebraSpec::builtin("sl2-cartan").unwrap();
        let m12 = Monomial::left_normed(&[0, 1]);
        let m21 = Monomial::left_normed(&[1, 0]);
        for b1 in 0..3usize {
            for b2 in 0..3usize {
                let asg = EnvelopeAssignment::fresh(&alg, &[b1, b2]).unwrap();
                let (s12, v12) = evaluate_on_envelope(&alg, &m12, &asg).unwrap();
                let (s21, v21) = evaluate_on_envelope(&alg, &m21, &asg).unwrap();
                let both_odd = alg.parity(b1).is_odd() && alg.parity(b2).is_odd();
                // [u,v] = -(-1)^{|u||v|} [v,u]
                let lhs = if s12 < 0 { v12.neg() } else { v12 };
                let mut rhs = if s21 < 0 { v21.neg() } else { v21 };
                if !both_odd {
                    rhs = rhs.neg();
                }
                assert_eq!(lhs, rhs, "b1={b1} b2={b2}");
            }
        }
    }

    #[test]
    fn koszul_sign_multiplicative_under_concatenation() {
        // the sign of a monomial whose leaf order is the concatenation of two
        // blocks of slots equals the product of the blockwise signs
        let alg = AlgebraSpec::builtin("sl2-cartan").unwrap();
        let mut rng = SplitMix64::new(15);
        for _ in 0..100 {
            let n1 = 1 + rng.below(3) as usize;
            let n2 = 1 + rng.below(3) as usize;
            let tuple: Vec<usize> = (0..n1 + n2)
                .map(|_| rng.below(alg.dim() as u64) as usize)
                .collect();
            let asg = EnvelopeAssignment::fresh(&alg, &tuple).unwrap();
            // leaf orders permuting within each block only
            let p1 = crate::perm::Permutation::from_lex_rank(
                n1,
                rng.below(crate::perm::FACTORIALS[n1]) as usize,
            );
            let p2 = crate::perm::Permutation::from_lex_rank(
                n2,
                rng.below(crate::perm::FACTORIALS[n2]) as usize,
            );
            let mut order: Vec<u8> = p1.images().to_vec();
            order.extend(p2.images().iter().map(|&x| x + n1 as u8));
            let m = Monomial::left_normed(&order);
            let asg1 = EnvelopeAssignment::new(asg.slots()[..n1].to_vec()).unwrap();
            let asg2 = EnvelopeAssignment::new(asg.slots()[n1..].to_vec()).unwrap();
            let m1 = Monomial::left_normed(p1.images());
            // slots of the second block are renumbered to 0..n2 in asg2
            let m2 = Monomial::left_normed(p2.images());
            let s_total = koszul_sign(&m, &asg);
            let s1 = koszul_sign(&m1, &asg1);
            let s2 = koszul_sign(&m2, &asg2);
            assert_eq!(s_total, s1 * s2);
        }
    }

    #[test]
    fn truncated_envelope_sample_is_super_lie() {
        let alg = AlgebraSpec::builtin("metabelian").unwrap();
        let env = truncated_envelope_algebra(&alg, 3).unwrap();
        assert_eq!(env.dim(), 8); // 4 even subsets with e, 4 odd subsets with f
        assert_eq!(env.class(), AlgebraClass::SuperLie);
        assert!(env.validate_super_lie().unwrap().passed());
        assert!(env.check_grading_compatibility().passed());

        let env_sl2 = truncated_envelope_algebra(&AlgebraSpec::builtin("sl2-cartan").unwrap(), 3)
            .unwrap();
        assert!(env_sl2.validate_super_lie().unwrap().passed());
    }

    #[test]
    fn all_even_grading_reduces_to_plain_evaluation() {
        let alg = AlgebraSpec::builtin("sl2-trivial").unwrap();
        let mut rng = SplitMix64::new(23);
        for _ in 0..50 {
            let n = 1 + rng.below(4) as usize;
            use crate::freealg::{SpanKind, SpanningSet, VarSpec};
            let span = SpanningSet::generate(SpanKind::AllBracketings, VarSpec::Ordinary { n });
            let m = span.monomial(rng.below(span.len() as u64) as usize);
            let tuple: Vec<usize> = (0..n).map(|_| rng.below(3) as usize).collect();
            let asg = EnvelopeAssignment::fresh(&alg, &tuple).unwrap();
            let (sign, value) = evaluate_on_envelope(&alg, &m, &asg).unwrap();
            assert_eq!(sign, 1);
            assert_eq!(value, eval_tree_in_algebra(&alg, m.tree(), &tuple));
        }
    }
}
