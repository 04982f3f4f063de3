//! Evaluation matrices: rows are spanning monomials, columns are
//! (basis tuple, output coordinate) pairs, entries the exact coordinates of
//! the (signed, for envelope targets) evaluation.

use rayon::prelude::*;

use super::EvaluationTarget;
use crate::algebras::AlgebraSpec;
use crate::exactlin::{DenseMatrix, Scalar};
use crate::freealg::{SpanKind, SpanningSet, Tree, VarSpec};
use crate::perm::{Permutation, FACTORIALS};
use crate::{Error, Parity};

/// Logical column label: the basis tuple assigned to the slots (by basis
/// index into the target algebra) and the output coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnKey {
    pub tuple: Vec<u8>,
    pub coord: u8,
}

impl ColumnKey {
    /// Parity pattern of the column under the algebra's grading.
    pub fn pattern(&self, algebra: &AlgebraSpec) -> Vec<Parity> {
        self.tuple
            .iter()
            .map(|&b| algebra.parity(b as usize))
            .collect()
    }
}

/// Column-sparse evaluation matrix: all-zero columns are not materialized.
#[derive(Debug)]
pub struct EvalMatrix<S: Scalar> {
    ctx: S::Ctx,
    vars: VarSpec,
    kind: SpanKind,
    n_rows: usize,
    columns: Vec<ColumnKey>,
    data: Vec<Option<Vec<S>>>,
}

impl<S: Scalar> EvalMatrix<S> {
    pub fn ctx(&self) -> &S::Ctx {
        &self.ctx
    }

    pub fn vars(&self) -> VarSpec {
        self.vars
    }

    pub fn kind(&self) -> SpanKind {
        self.kind
    }

    pub fn rows(&self) -> usize {
        self.n_rows
    }

    /// Number of logical columns (including all-zero ones).
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column_key(&self, col: usize) -> &ColumnKey {
        &self.columns[col]
    }

    pub fn entry(&self, row: usize, col: usize) -> S {
        match &self.data[col] {
            Some(v) => v[row].clone(),
            None => S::zero(&self.ctx),
        }
    }

    pub fn live_columns(&self) -> usize {
        self.data.iter().filter(|c| c.is_some()).count()
    }

    /// Fully materialized dense form (for small fixtures).
    pub fn to_dense(&self) -> DenseMatrix<S> {
        let mut m = DenseMatrix::zero(self.ctx.clone(), self.n_rows, self.columns.len());
        for (c, col) in self.data.iter().enumerate() {
            if let Some(col) = col {
                for (r, v) in col.iter().enumerate() {
                    m.set(r, c, v.clone());
                }
            }
        }
        m
    }

    /// Dense matrix over a column basis: zero columns are dropped and only
    /// the first column of each scalar-multiple class is kept. Every dropped
    /// column is a multiple of a kept one, so ranks, row dependencies and
    /// in-span solving over the kept columns agree with the full matrix.
    pub fn compact(&self) -> (DenseMatrix<S>, Vec<usize>)
    where
        S: std::hash::Hash + Eq,
    {
        use std::collections::HashSet;
        let mut kept: Vec<usize> = Vec::new();
        let mut seen: HashSet<Vec<S>> = HashSet::new();
        for (c, col) in self.data.iter().enumerate() {
            let Some(col) = col else { continue };
            let lead = col
                .iter()
                .find(|x| !x.is_zero())
                .expect("live columns have a nonzero entry");
            let inv = lead.inv().expect("field element");
            let normalized: Vec<S> = col.iter().map(|x| x.mul(&inv)).collect();
            if seen.insert(normalized) {
                kept.push(c);
            }
        }
        let mut m = DenseMatrix::zero(self.ctx.clone(), self.n_rows, kept.len());
        for (j, &c) in kept.iter().enumerate() {
            let col = self.data[c].as_ref().expect("kept columns are live");
            for (r, v) in col.iter().enumerate() {
                m.set(r, j, v.clone());
            }
        }
        (m, kept)
    }
}

/// Structure constants converted into the working field.
struct Consts<S: Scalar> {
    dim: usize,
    table: Vec<S>,
    parities: Vec<Parity>,
}

impl<S: Scalar> Consts<S> {
    fn new(ctx: &S::Ctx, algebra: &AlgebraSpec) -> Result<Consts<S>, Error> {
        let dim = algebra.dim();
        let mut table = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    table.push(S::from_rational(ctx, algebra.structure_constant(i, j, k))?);
                }
            }
        }
        Ok(Consts {
            dim,
            table,
            parities: (0..dim).map(|i| algebra.parity(i)).collect(),
        })
    }

    #[inline]
    fn c(&self, i: usize, j: usize, k: usize) -> &S {
        &self.table[(i * self.dim + j) * self.dim + k]
    }

    /// `[v, b_j]` for a coordinate vector `v`.
    fn bracket_basis(&self, ctx: &S::Ctx, v: &[S], j: usize) -> Vec<S> {
        let mut out = vec![S::zero(ctx); self.dim];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for k in 0..self.dim {
                let c = self.c(i, j, k);
                if !c.is_zero() {
                    out[k] = out[k].add(&vi.mul(c));
                }
            }
        }
        out
    }

    fn bracket(&self, ctx: &S::Ctx, u: &[S], v: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(ctx); self.dim];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let f = ui.mul(vj);
                for k in 0..self.dim {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        out[k] = out[k].add(&f.mul(c));
                    }
                }
            }
        }
        out
    }
}

/// Per-slot allowed basis indices for the column tuples.
fn slot_domains(target: &EvaluationTarget, vars: VarSpec) -> Vec<Vec<u8>> {
    let algebra = target.algebra();
    let all: Vec<u8> = (0..algebra.dim() as u8).collect();
    match vars {
        VarSpec::Ordinary { n } => vec![all; n],
        VarSpec::Graded { even, odd } => {
            let evens: Vec<u8> = algebra
                .parity_basis(Parity::Even)
                .into_iter()
                .map(|i| i as u8)
                .collect();
            let odds: Vec<u8> = algebra
                .parity_basis(Parity::Odd)
                .into_iter()
                .map(|i| i as u8)
                .collect();
            let mut domains = vec![evens; even];
            domains.extend(std::iter::repeat_n(odds, odd));
            domains
        }
    }
}

fn tuple_count(domains: &[Vec<u8>]) -> usize {
    domains.iter().map(Vec::len).product()
}

fn tuple_at(domains: &[Vec<u8>], mut index: usize) -> Vec<u8> {
    let mut out = vec![0u8; domains.len()];
    for slot in (0..domains.len()).rev() {
        let len = domains[slot].len();
        out[slot] = domains[slot][index % len];
        index /= len;
    }
    out
}

/// Approximate bytes per matrix entry, for budget estimates.
pub fn entry_bytes_estimate(exact: bool) -> u64 {
    if exact {
        64
    } else {
        16
    }
}

/// Logical matrix shape for a prospective run.
pub fn logical_shape(target: &EvaluationTarget, vars: VarSpec, kind: SpanKind) -> (u64, u64) {
    let n = vars.arity();
    let shapes = match kind {
        SpanKind::LeftNormed => 1u64,
        SpanKind::AllBracketings => crate::freealg::CATALAN[n - 1],
    };
    let rows = shapes * FACTORIALS[n];
    let cols = tuple_count(&slot_domains(target, vars)) as u64 * target.algebra().dim() as u64;
    (rows, cols)
}

/// Builds the evaluation matrix for the target over the given spanning set.
/// `budget_mb`, when set, caps the estimated dense size.
pub fn build_eval_matrix<S: Scalar>(
    ctx: &S::Ctx,
    target: &EvaluationTarget,
    span: &SpanningSet,
    budget_mb: Option<u64>,
    exact_entry_estimate: bool,
) -> Result<EvalMatrix<S>, Error> {
    let vars = span.vars();
    let n = vars.arity();
    if n == 0 {
        return Err(Error::Parse("degree must be at least 1".to_string()));
    }
    if target.is_envelope() && !target.algebra().has_grading() {
        return Err(Error::GradingRequired(format!(
            "envelope evaluation on ungraded {}",
            target.algebra().name()
        )));
    }
    let algebra = target.algebra();
    let consts: Consts<S> = Consts::new(ctx, algebra)?;
    let domains = slot_domains(target, vars);
    let tuples = tuple_count(&domains);
    let n_rows = span.len();

    if let Some(mb) = budget_mb {
        let bytes = n_rows as u64
            * tuples as u64
            * algebra.dim() as u64
            * entry_bytes_estimate(exact_entry_estimate);
        let estimate_mb = bytes / (1024 * 1024);
        if estimate_mb > mb {
            return Err(Error::BudgetExceeded(format!(
                "evaluation matrix for {} at degree {n} needs about {estimate_mb} MB ({} rows x {} logical columns), budget is {mb} MB",
                target.describe(),
                n_rows,
                tuples * algebra.dim(),
            )));
        }
    }

    let signed = target.is_envelope();
    let perms: Option<Vec<Permutation>> = match span.kind() {
        SpanKind::LeftNormed => None,
        SpanKind::AllBracketings => Some((0..FACTORIALS[n] as usize)
            .map(|r| Permutation::from_lex_rank(n, r))
            .collect()),
    };

    let per_tuple: Vec<Vec<Option<Vec<S>>>> = (0..tuples)
        .into_par_iter()
        .map(|t| {
            let tuple = tuple_at(&domains, t);
            match span.kind() {
                SpanKind::LeftNormed => {
                    left_normed_columns(ctx, &consts, &tuple, n, n_rows, signed)
                }
                SpanKind::AllBracketings => all_bracketings_columns(
                    ctx,
                    &consts,
                    span,
                    perms.as_ref().expect("perm cache"),
                    &tuple,
                    n_rows,
                    signed,
                ),
            }
        })
        .collect();

    let mut columns = Vec::with_capacity(tuples * consts.dim);
    let mut data = Vec::with_capacity(tuples * consts.dim);
    for (t, coord_cols) in per_tuple.into_iter().enumerate() {
        let tuple = tuple_at(&domains, t);
        for (coord, col) in coord_cols.into_iter().enumerate() {
            columns.push(ColumnKey {
                tuple: tuple.clone(),
                coord: coord as u8,
            });
            data.push(col);
        }
    }

    Ok(EvalMatrix {
        ctx: ctx.clone(),
        vars,
        kind: span.kind(),
        n_rows,
        columns,
        data,
    })
}

/// One tuple's columns over the left-normed rows, by depth-first search over
/// leaf orders with zero-subtree pruning. Row index is the lexicographic
/// rank of the leaf order.
fn left_normed_columns<S: Scalar>(
    ctx: &S::Ctx,
    consts: &Consts<S>,
    tuple: &[u8],
    n: usize,
    n_rows: usize,
    signed: bool,
) -> Vec<Option<Vec<S>>> {
    let dim = consts.dim;
    let mut buffers: Vec<Vec<S>> = vec![vec![S::zero(ctx); n_rows]; dim];
    let mut touched = vec![false; dim];

    struct Dfs<'a, S: Scalar> {
        ctx: &'a S::Ctx,
        consts: &'a Consts<S>,
        tuple: &'a [u8],
        n: usize,
        signed: bool,
        buffers: &'a mut Vec<Vec<S>>,
        touched: &'a mut Vec<bool>,
    }

    impl<S: Scalar> Dfs<'_, S> {
        fn run(&mut self, depth: usize, used: u32, odd_used: u32, rank: usize, value: &[S]) {
            if depth == self.n {
                for (k, v) in value.iter().enumerate() {
                    if !v.is_zero() {
                        self.buffers[k][rank] = v.clone();
                        self.touched[k] = true;
                    }
                }
                return;
            }
            let fact = FACTORIALS[self.n - 1 - depth] as usize;
            let mut j = 0usize;
            for s in 0..self.n {
                if used & (1 << s) != 0 {
                    continue;
                }
                let basis = self.tuple[s] as usize;
                let child_rank = rank + j * fact;
                j += 1;
                let mut w = if depth == 0 {
                    let mut v = vec![S::zero(self.ctx); self.consts.dim];
                    v[basis] = S::one(self.ctx);
                    v
                } else {
                    self.consts.bracket_basis(self.ctx, value, basis)
                };
                let is_odd = self.consts.parities[basis].is_odd();
                let mut next_odd = odd_used;
                if self.signed && is_odd {
                    // crossings over already-placed odd blocks with larger slot index
                    let above = odd_used >> (s + 1);
                    if above.count_ones() % 2 == 1 {
                        for x in w.iter_mut() {
                            *x = x.neg();
                        }
                    }
                    next_odd |= 1 << s;
                } else if is_odd {
                    next_odd |= 1 << s;
                }
                if depth + 1 < self.n && w.iter().all(S::is_zero) {
                    continue; // every extension stays zero
                }
                self.run(depth + 1, used | (1 << s), next_odd, child_rank, &w);
            }
        }
    }

    let mut dfs = Dfs {
        ctx,
        consts,
        tuple,
        n,
        signed,
        buffers: &mut buffers,
        touched: &mut touched,
    };
    let empty: Vec<S> = Vec::new();
    dfs.run(0, 0, 0, 0, &empty);

    buffers
        .into_iter()
        .zip(touched)
        .map(|(b, t)| t.then_some(b))
        .collect()
}

fn all_bracketings_columns<S: Scalar>(
    ctx: &S::Ctx,
    consts: &Consts<S>,
    span: &SpanningSet,
    perms: &[Permutation],
    tuple: &[u8],
    n_rows: usize,
    signed: bool,
) -> Vec<Option<Vec<S>>> {
    let dim = consts.dim;
    let n = tuple.len();
    let mut buffers: Vec<Vec<S>> = vec![vec![S::zero(ctx); n_rows]; dim];
    let mut touched = vec![false; dim];

    fn eval<S: Scalar>(
        ctx: &S::Ctx,
        consts: &Consts<S>,
        tree: &Tree,
        perm: &Permutation,
        tuple: &[u8],
        pos: &mut usize,
    ) -> Vec<S> {
        match tree {
            Tree::Leaf(_) => {
                let slot = perm.image(*pos);
                *pos += 1;
                let mut v = vec![S::zero(ctx); consts.dim];
                v[tuple[slot] as usize] = S::one(ctx);
                v
            }
            Tree::Node(l, r) => {
                let lv = eval(ctx, consts, l, perm, tuple, pos);
                let rv = eval(ctx, consts, r, perm, tuple, pos);
                consts.bracket(ctx, &lv, &rv)
            }
        }
    }

    let fact = FACTORIALS[n] as usize;
    for shape_pos in 0..span.shape_count() {
        let shape = span.shape(shape_pos);
        for (r, perm) in perms.iter().enumerate() {
            let mut pos = 0usize;
            let mut v = eval(ctx, consts, shape, perm, tuple, &mut pos);
            if signed {
                // sign of the odd-slot subsequence of the leaf order
                let mut inversions = 0usize;
                let order = perm.images();
                for i in 0..n {
                    if !consts.parities[tuple[order[i] as usize] as usize].is_odd() {
                        continue;
                    }
                    for j in (i + 1)..n {
                        if consts.parities[tuple[order[j] as usize] as usize].is_odd()
                            && order[i] > order[j]
                        {
                            inversions += 1;
                        }
                    }
                }
                if inversions % 2 == 1 {
                    for x in v.iter_mut() {
                        *x = x.neg();
                    }
                }
            }
            let row = shape_pos * fact + r;
            for (k, x) in v.into_iter().enumerate() {
                if !x.is_zero() {
                    buffers[k][row] = x;
                    touched[k] = true;
                }
            }
        }
    }

    buffers
        .into_iter()
        .zip(touched)
        .map(|(b, t)| t.then_some(b))
        .collect()
}
