//! Multilinear monomials of free nonassociative algebras, symmetric-group
//! actions on them, and the sign-twisting `tilde` map between graded Lie
//! polynomials and super-Lie polynomials.
//!
//! A monomial is a full binary bracketing whose leaves are the distinct
//! variable slots `0..n`. Monomials are totally ordered by (bracketing shape
//! rank, permutation rank of the leaf order); left-normed monomials all share
//! the left-comb shape, which has rank 0, so their order is the lexicographic
//! order of leaf sequences.

mod symmetrizer;

pub use symmetrizer::{apply_young_symmetrizer, Tableau};

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::perm::{Permutation, FACTORIALS};
use crate::{Error, Parity};

/// Catalan numbers `C_0 .. C_16`; `C_{n-1}` counts bracketings of a word of
/// length `n` (so 2 shapes for n = 3, not 3).
pub const CATALAN: [u64; 17] = [
    1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012, 742900, 2674440, 9694845,
    35357670,
];

/// Variable declaration shared by all monomials of one polynomial space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarSpec {
    /// Untyped variables `z1 .. zn`.
    Ordinary { n: usize },
    /// Even variables `x1 .. xq` in slots `0..q`, odd variables `y1 .. ym`
    /// in slots `q..q+m`.
    Graded { even: usize, odd: usize },
}

impl VarSpec {
    pub fn arity(&self) -> usize {
        match *self {
            VarSpec::Ordinary { n } => n,
            VarSpec::Graded { even, odd } => even + odd,
        }
    }

    /// Parity of a slot; `None` for untyped variables.
    pub fn slot_parity(&self, slot: usize) -> Option<Parity> {
        match *self {
            VarSpec::Ordinary { .. } => None,
            VarSpec::Graded { even, .. } => Some(if slot < even {
                Parity::Even
            } else {
                Parity::Odd
            }),
        }
    }

    pub fn is_graded(&self) -> bool {
        matches!(self, VarSpec::Graded { .. })
    }

    pub fn variable_name(&self, slot: usize) -> String {
        match *self {
            VarSpec::Ordinary { .. } => format!("z{}", slot + 1),
            VarSpec::Graded { even, .. } => {
                if slot < even {
                    format!("x{}", slot + 1)
                } else {
                    format!("y{}", slot - even + 1)
                }
            }
        }
    }

    /// Checks that a permutation keeps even slots even and odd slots odd.
    pub fn permits(&self, sigma: &Permutation) -> bool {
        match *self {
            VarSpec::Ordinary { n } => sigma.len() == n,
            VarSpec::Graded { even, odd } => {
                sigma.len() == even + odd && sigma.preserves_split(even)
            }
        }
    }
}

/// Full binary bracketing with `u8` leaf labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf(u8),
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn node(left: Tree, right: Tree) -> Tree {
        Tree::Node(Box::new(left), Box::new(right))
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    fn push_leaves(&self, out: &mut Vec<u8>) {
        match self {
            Tree::Leaf(v) => out.push(*v),
            Tree::Node(l, r) => {
                l.push_leaves(out);
                r.push_leaves(out);
            }
        }
    }

    fn relabel(&self, sigma: &Permutation) -> Tree {
        match self {
            Tree::Leaf(v) => Tree::Leaf(sigma.image(*v as usize) as u8),
            Tree::Node(l, r) => Tree::node(l.relabel(sigma), r.relabel(sigma)),
        }
    }

    /// Rank of the bracketing shape among all shapes with the same number of
    /// leaves, in the order produced by [`enumerate_shapes`]: larger left
    /// subtrees first, so the left comb has rank 0.
    fn shape_rank(&self) -> u64 {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node(l, r) => {
                let n = self.leaf_count();
                let a = l.leaf_count();
                let mut offset = 0u64;
                for ap in (a + 1)..n {
                    offset += CATALAN[ap - 1] * CATALAN[n - ap - 1];
                }
                offset + l.shape_rank() * CATALAN[n - a - 1] + r.shape_rank()
            }
        }
    }
}

/// All bracketing shapes with `n` leaves (labels set to 0), ordered by left
/// subtree size descending, recursively, so the left comb comes first;
/// `shape_rank` is the index in this list.
pub fn enumerate_shapes(n: usize) -> Vec<Tree> {
    if n == 1 {
        return vec![Tree::Leaf(0)];
    }
    let mut out = Vec::new();
    for a in (1..n).rev() {
        for l in enumerate_shapes(a) {
            for r in enumerate_shapes(n - a) {
                out.push(Tree::node(l.clone(), r));
            }
        }
    }
    out
}

fn left_comb(n: usize) -> Tree {
    let mut t = Tree::Leaf(0);
    for _ in 1..n {
        t = Tree::node(t, Tree::Leaf(0));
    }
    t
}

/// Grafts leaf labels onto a shape in leaf order.
fn label_shape(shape: &Tree, labels: &[u8], next: &mut usize) -> Tree {
    match shape {
        Tree::Leaf(_) => {
            let t = Tree::Leaf(labels[*next]);
            *next += 1;
            t
        }
        Tree::Node(l, r) => {
            let lt = label_shape(l, labels, next);
            let rt = label_shape(r, labels, next);
            Tree::node(lt, rt)
        }
    }
}

/// A multilinear monomial: a bracketing whose leaves are the distinct slots
/// `0..n` in some order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    tree: Tree,
}

impl Monomial {
    /// Validates multilinearity: every slot `0..n` occurs exactly once.
    pub fn from_tree(tree: Tree) -> Result<Monomial, Error> {
        let n = tree.leaf_count();
        let mut seen = vec![false; n];
        let mut leaves = Vec::with_capacity(n);
        tree.push_leaves(&mut leaves);
        for &v in &leaves {
            if (v as usize) >= n || seen[v as usize] {
                return Err(Error::Parse(format!(
                    "leaves are not the distinct slots 0..{n}: {leaves:?}"
                )));
            }
            seen[v as usize] = true;
        }
        Ok(Monomial { tree })
    }

    /// The left-normed monomial `[[..[z_{o_1}, z_{o_2}], ..], z_{o_n}]`.
    pub fn left_normed(order: &[u8]) -> Monomial {
        let mut t = Tree::Leaf(order[0]);
        for &v in &order[1..] {
            t = Tree::node(t, Tree::Leaf(v));
        }
        Monomial { tree: t }
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn arity(&self) -> usize {
        self.tree.leaf_count()
    }

    /// Leaf labels read left to right.
    pub fn leaf_order(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.arity());
        self.tree.push_leaves(&mut out);
        out
    }

    /// Relabels leaf `i` as `sigma(i)`.
    pub fn act(&self, sigma: &Permutation) -> Monomial {
        Monomial {
            tree: self.tree.relabel(sigma),
        }
    }

    pub fn shape_rank(&self) -> u64 {
        self.tree.shape_rank()
    }

    pub fn perm_rank(&self) -> usize {
        Permutation::from_images(self.leaf_order())
            .expect("leaves form a permutation")
            .lex_rank()
    }

    /// Sign of the order in which the odd slots appear in the leaf order:
    /// `-1` for an odd number of inversions, `+1` otherwise.
    pub fn odd_order_sign(&self, is_odd: impl Fn(usize) -> bool) -> i64 {
        let odd: Vec<u8> = self
            .leaf_order()
            .into_iter()
            .filter(|&s| is_odd(s as usize))
            .collect();
        let mut inversions = 0usize;
        for i in 0..odd.len() {
            for j in (i + 1)..odd.len() {
                if odd[i] > odd[j] {
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

    pub fn display(&self, vars: &VarSpec) -> String {
        fn rec(t: &Tree, vars: &VarSpec, out: &mut String) {
            match t {
                Tree::Leaf(v) => out.push_str(&vars.variable_name(*v as usize)),
                Tree::Node(l, r) => {
                    out.push('[');
                    rec(l, vars, out);
                    out.push(',');
                    rec(r, vars, out);
                    out.push(']');
                }
            }
        }
        let mut out = String::new();
        rec(&self.tree, vars, &mut out);
        out
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        self.arity()
            .cmp(&other.arity())
            .then_with(|| self.shape_rank().cmp(&other.shape_rank()))
            .then_with(|| self.leaf_order().cmp(&other.leaf_order()))
    }
}

/// Which monomials span the multilinear space for matrix rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpanKind {
    /// The n! left-normed monomials. Spans evaluations on targets whose
    /// bracket satisfies anticommutativity and the Jacobi identity.
    LeftNormed,
    /// All `Catalan(n-1) * n!` bracketed monomials.
    AllBracketings,
}

impl SpanKind {
    pub fn label(&self) -> &'static str {
        match self {
            SpanKind::LeftNormed => "left-normed",
            SpanKind::AllBracketings => "all-bracketings",
        }
    }
}

impl std::str::FromStr for SpanKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<SpanKind, Error> {
        match s {
            "left-normed" => Ok(SpanKind::LeftNormed),
            "all-bracketings" => Ok(SpanKind::AllBracketings),
            other => Err(Error::Parse(format!("unknown spanning set `{other}`"))),
        }
    }
}

/// Deterministically ordered list of spanning monomials: row index =
/// `shape_position * n! + permutation_rank`.
#[derive(Clone, Debug)]
pub struct SpanningSet {
    kind: SpanKind,
    vars: VarSpec,
    shapes: Vec<Tree>,
}

impl SpanningSet {
    pub fn generate(kind: SpanKind, vars: VarSpec) -> SpanningSet {
        let n = vars.arity();
        assert!(n >= 1, "spanning sets need at least one variable");
        let shapes = match kind {
            SpanKind::LeftNormed => vec![left_comb(n)],
            SpanKind::AllBracketings => enumerate_shapes(n),
        };
        SpanningSet { kind, vars, shapes }
    }

    pub fn kind(&self) -> SpanKind {
        self.kind
    }

    pub fn vars(&self) -> VarSpec {
        self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.arity()
    }

    pub fn shape_count(&self) -> usize {
        self.shapes.len()
    }

    pub fn shape(&self, i: usize) -> &Tree {
        &self.shapes[i]
    }

    pub fn len(&self) -> usize {
        self.shapes.len() * FACTORIALS[self.arity()] as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn monomial(&self, index: usize) -> Monomial {
        let n = self.arity();
        let fact = FACTORIALS[n] as usize;
        let shape = &self.shapes[index / fact];
        let perm = Permutation::from_lex_rank(n, index % fact);
        let mut next = 0usize;
        Monomial {
            tree: label_shape(shape, perm.images(), &mut next),
        }
    }

    /// Index of a monomial in this set, if its shape belongs to the set.
    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        let n = self.arity();
        if m.arity() != n {
            return None;
        }
        let fact = FACTORIALS[n] as usize;
        let shape_pos = match self.kind {
            SpanKind::LeftNormed => {
                if m.shape_rank() != 0 {
                    return None;
                }
                0
            }
            SpanKind::AllBracketings => m.shape_rank() as usize,
        };
        Some(shape_pos * fact + m.perm_rank())
    }

    /// Row index of `sigma . monomial(index)`: the action relabels leaves,
    /// keeping the shape.
    pub fn permuted_index(&self, index: usize, sigma: &Permutation) -> usize {
        let n = self.arity();
        let fact = FACTORIALS[n] as usize;
        let perm = Permutation::from_lex_rank(n, index % fact);
        (index / fact) * fact + sigma.compose(&perm).lex_rank()
    }

    pub fn iter(&self) -> impl Iterator<Item = Monomial> + '_ {
        (0..self.len()).map(|i| self.monomial(i))
    }
}

/// Rational linear combination of monomials over one variable declaration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    vars: VarSpec,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(vars: VarSpec) -> Polynomial {
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(vars: VarSpec, terms: I) -> Result<Polynomial, Error>
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Polynomial::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c)?;
        }
        Ok(p)
    }

    pub fn monomial(vars: VarSpec, m: Monomial) -> Result<Polynomial, Error> {
        Polynomial::from_terms(vars, [(m, BigRational::from_integer(1.into()))])
    }

    pub fn vars(&self) -> VarSpec {
        self.vars
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) -> Result<(), Error> {
        if m.arity() != self.vars.arity() {
            return Err(Error::DimensionMismatch(format!(
                "monomial arity {} in a space of arity {}",
                m.arity(),
                self.vars.arity()
            )));
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                if !c.is_zero() {
                    slot.insert(c);
                }
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.vars);
        }
        Polynomial {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        if self.vars != other.vars {
            return Err(Error::DimensionMismatch(
                "polynomials over different variable declarations".to_string(),
            ));
        }
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            out.push_str(&format!("{}*{}", c, m.display(&self.vars)));
        }
        out
    }
}

/// The action `sigma . f(x_1, .., x_n) = f(x_{sigma(1)}, .., x_{sigma(n)})`:
/// leaf `i` is relabeled `sigma(i)` in every monomial. For graded variables
/// the permutation must keep even slots even and odd slots odd.
pub fn act_permutation(sigma: &Permutation, f: &Polynomial) -> Result<Polynomial, Error> {
    if sigma.len() != f.vars().arity() {
        return Err(Error::DimensionMismatch(format!(
            "permutation of {} symbols on a space of arity {}",
            sigma.len(),
            f.vars().arity()
        )));
    }
    if !f.vars().permits(sigma) {
        return Err(Error::ParityMismatch(format!(
            "permutation {:?} mixes even and odd slots",
            sigma.images()
        )));
    }
    Polynomial::from_terms(
        f.vars(),
        f.terms().map(|(m, c)| (m.act(sigma), c.clone())),
    )
}

/// The tilde map: every monomial keeps its bracketing and leaf order and its
/// coefficient picks up the sign of the order in which the odd variables
/// appear. An involution; the identity on polynomials without odd variables.
pub fn tilde(f: &Polynomial) -> Result<Polynomial, Error> {
    let VarSpec::Graded { even, .. } = f.vars() else {
        return Err(Error::ParityRequired(
            "tilde is defined on parity-typed polynomials".to_string(),
        ));
    };
    Polynomial::from_terms(
        f.vars(),
        f.terms().map(|(m, c)| {
            let sign = m.odd_order_sign(|s| s >= even);
            let coeff = if sign < 0 { -c.clone() } else { c.clone() };
            (m.clone(), coeff)
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn spanning_set_sizes() {
        let s = SpanningSet::generate(SpanKind::LeftNormed, VarSpec::Ordinary { n: 2 });
        let monos: Vec<String> = s
            .iter()
            .map(|m| m.display(&VarSpec::Ordinary { n: 2 }))
            .collect();
        assert_eq!(monos, vec!["[z1,z2]", "[z2,z1]"]);

        let s3 = SpanningSet::generate(SpanKind::AllBracketings, VarSpec::Ordinary { n: 3 });
        assert_eq!(s3.len(), 12);
        for n in 1..=7usize {
            let ln = SpanningSet::generate(SpanKind::LeftNormed, VarSpec::Ordinary { n });
            assert_eq!(ln.len(), FACTORIALS[n] as usize);
            let ab = SpanningSet::generate(SpanKind::AllBracketings, VarSpec::Ordinary { n });
            assert_eq!(ab.len(), CATALAN[n - 1] as usize * FACTORIALS[n] as usize);
        }
    }

    #[test]
    fn monomial_index_roundtrip() {
        for kind in [SpanKind::LeftNormed, SpanKind::AllBracketings] {
            let s = SpanningSet::generate(kind, VarSpec::Ordinary { n: 4 });
            for i in 0..s.len() {
                let m = s.monomial(i);
                assert_eq!(s.index_of(&m), Some(i));
            }
        }
    }

    #[test]
    fn permuted_index_matches_action() {
        let s = SpanningSet::generate(SpanKind::AllBracketings, VarSpec::Ordinary { n: 4 });
        let sigma = Permutation::from_images(vec![2, 0, 3, 1]).unwrap();
        for i in (0..s.len()).step_by(7) {
            let m = s.monomial(i);
            let j = s.permuted_index(i, &sigma);
            assert_eq!(s.monomial(j), m.act(&sigma));
        }
    }

    #[test]
    fn action_examples() {
        let vars = VarSpec::Ordinary { n: 2 };
        let f = Polynomial::monomial(vars, Monomial::left_normed(&[0, 1])).unwrap();
        let id = Permutation::identity(2);
        assert_eq!(act_permutation(&id, &f).unwrap(), f);
        let swap = Permutation::transposition(2, 0, 1);
        let g = act_permutation(&swap, &f).unwrap();
        let expect = Polynomial::monomial(vars, Monomial::left_normed(&[1, 0])).unwrap();
        assert_eq!(g, expect);
    }

    #[test]
    fn action_is_a_left_group_action() {
        use crate::rng::SplitMix64;
        let mut rng = SplitMix64::new(99);
        for n in 2..=6usize {
            let vars = VarSpec::Ordinary { n };
            let span = SpanningSet::generate(SpanKind::AllBracketings, vars);
            for _ in 0..20 {
                let mut f = Polynomial::zero(vars);
                for _ in 0..3 {
                    let idx = rng.below(span.len() as u64) as usize;
                    f.add_term(span.monomial(idx), rat(rng.range_inclusive(-3, 3)))
                        .unwrap();
                }
                let s = Permutation::from_lex_rank(n, rng.below(FACTORIALS[n]) as usize);
                let t = Permutation::from_lex_rank(n, rng.below(FACTORIALS[n]) as usize);
                let st = s.compose(&t);
                let lhs = act_permutation(&st, &f).unwrap();
                let rhs = act_permutation(&s, &act_permutation(&t, &f).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn left_normed_monomials_stay_left_normed_under_action() {
        let s = SpanningSet::generate(SpanKind::LeftNormed, VarSpec::Ordinary { n: 5 });
        let sigma = Permutation::from_images(vec![4, 2, 0, 1, 3]).unwrap();
        for i in 0..s.len() {
            let m = s.monomial(i).act(&sigma);
            assert_eq!(m.shape_rank(), 0);
        }
    }

    #[test]
    fn parity_violating_action_fails() {
        let vars = VarSpec::Graded { even: 1, odd: 1 };
        let f = Polynomial::monomial(vars, Monomial::left_normed(&[0, 1])).unwrap();
        let swap = Permutation::transposition(2, 0, 1);
        assert!(matches!(
            act_permutation(&swap, &f),
            Err(Error::ParityMismatch(_))
        ));
    }

    #[test]
    fn tilde_examples() {
        // one odd variable: unchanged
        let vars = VarSpec::Graded { even: 1, odd: 1 };
        let f = Polynomial::monomial(vars, Monomial::left_normed(&[1, 0])).unwrap();
        assert_eq!(tilde(&f).unwrap(), f);

        // [[y2,y1],x1]: slots 1,2 odd; leaf order (2,1,0), odd subsequence (2,1) -> sign -1
        let vars = VarSpec::Graded { even: 1, odd: 2 };
        let m = Monomial::left_normed(&[2, 1, 0]);
        let f = Polynomial::monomial(vars, m.clone()).unwrap();
        let t = tilde(&f).unwrap();
        let expect = Polynomial::from_terms(vars, [(m, rat(-1))]).unwrap();
        assert_eq!(t, expect);
    }

    #[test]
    fn tilde_requires_typed_variables() {
        let f = Polynomial::monomial(
            VarSpec::Ordinary { n: 2 },
            Monomial::left_normed(&[0, 1]),
        )
        .unwrap();
        assert!(matches!(tilde(&f), Err(Error::ParityRequired(_))));
    }

    #[test]
    fn tilde_is_an_involution_on_random_polynomials() {
        use crate::rng::SplitMix64;
        let mut rng = SplitMix64::new(5);
        let mut cases = 0;
        while cases < 200 {
            let even = rng.below(4) as usize;
            let odd = rng.below(4) as usize;
            let n = even + odd;
            if n == 0 || n > 6 {
                continue;
            }
            cases += 1;
            let vars = VarSpec::Graded { even, odd };
            let span = SpanningSet::generate(SpanKind::AllBracketings, vars);
            let mut f = Polynomial::zero(vars);
            for _ in 0..4 {
                let idx = rng.below(span.len() as u64) as usize;
                f.add_term(span.monomial(idx), rat(rng.range_inclusive(-4, 4)))
                    .unwrap();
            }
            let tt = tilde(&tilde(&f).unwrap()).unwrap();
            assert_eq!(tt, f);
        }
    }

    #[test]
    fn tilde_is_linear() {
        use crate::rng::SplitMix64;
        let mut rng = SplitMix64::new(31);
        let vars = VarSpec::Graded { even: 2, odd: 3 };
        let span = SpanningSet::generate(SpanKind::AllBracketings, vars);
        for _ in 0..50 {
            let mut f = Polynomial::zero(vars);
            let mut g = Polynomial::zero(vars);
            for _ in 0..3 {
                f.add_term(
                    span.monomial(rng.below(span.len() as u64) as usize),
                    rat(rng.range_inclusive(-3, 3)),
                )
                .unwrap();
                g.add_term(
                    span.monomial(rng.below(span.len() as u64) as usize),
                    rat(rng.range_inclusive(-3, 3)),
                )
                .unwrap();
            }
            let a = rat(rng.range_inclusive(-2, 2));
            let combined = f.scale(&a).add(&g).unwrap();
            let lhs = tilde(&combined).unwrap();
            let rhs = tilde(&f).unwrap().scale(&a).add(&tilde(&g).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn tilde_is_identity_without_odd_variables() {
        let vars = VarSpec::Graded { even: 4, odd: 0 };
        let span = SpanningSet::generate(SpanKind::AllBracketings, vars);
        for i in (0..span.len()).step_by(11) {
            let f = Polynomial::monomial(vars, span.monomial(i)).unwrap();
            assert_eq!(tilde(&f).unwrap(), f);
        }
    }

    #[test]
    fn display_bracket_notation() {
        let vars = VarSpec::Graded { even: 1, odd: 2 };
        let m = Monomial::from_tree(Tree::node(
            Tree::node(Tree::Leaf(0), Tree::Leaf(2)),
            Tree::Leaf(1),
        ))
        .unwrap();
        assert_eq!(m.display(&vars), "[[x1,y2],y1]");
    }
}
