//! Exact dense linear algebra over the rationals and over prime fields.
//!
//! Rank over Q runs fraction-free (Bareiss) on denominator-cleared integer
//! rows; rank over a prime field runs standard Gaussian elimination. Row
//! bases and in-span solving use an incremental row echelon that processes
//! rows strictly in the order given, so the selected basis is the
//! lexicographically first maximal independent set.

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::rng::SplitMix64;
use crate::Error;

/// Field element for matrix arithmetic. Implemented by [`BigRational`]
/// (exact) and [`Fp`] (residues modulo a configured prime).
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync + 'static {
    /// Construction context: nothing for Q, the prime for `Fp`.
    type Ctx: Clone + Send + Sync + Debug + PartialEq;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_rational(ctx: &Self::Ctx, value: &BigRational) -> Result<Self, Error>;
    fn from_u64(ctx: &Self::Ctx, value: u64) -> Self;
    fn from_biguint(ctx: &Self::Ctx, value: &BigUint) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    /// Lifts a value that represents a small integer back to `i64`.
    /// Over Q this requires an integral value; over `Fp` residues close to 0
    /// or to `p` lift symmetrically and anything else is rejected.
    fn lift_integer(&self) -> Option<i64>;

    /// Matrix rank specialized per field.
    fn rank_of(matrix: &DenseMatrix<Self>) -> usize;
}

impl Scalar for BigRational {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        Zero::zero()
    }

    fn one(_: &()) -> Self {
        One::one()
    }

    fn from_rational(_: &(), value: &BigRational) -> Result<Self, Error> {
        Ok(value.clone())
    }

    fn from_u64(_: &(), value: u64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn from_biguint(_: &(), value: &BigUint) -> Self {
        BigRational::from_integer(BigInt::from(value.clone()))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn lift_integer(&self) -> Option<i64> {
        if !self.is_integer() {
            return None;
        }
        let n = self.to_integer();
        i64::try_from(&n).ok()
    }

    fn rank_of(matrix: &DenseMatrix<Self>) -> usize {
        bareiss_rank(matrix)
    }
}

/// Residue modulo the prime carried in the construction context.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    value: u64,
    prime: u64,
}

impl Fp {
    pub fn new(value: u64, prime: u64) -> Fp {
        Fp {
            value: value % prime,
            prime,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

impl Scalar for Fp {
    type Ctx = u64;

    fn zero(prime: &u64) -> Self {
        Fp {
            value: 0,
            prime: *prime,
        }
    }

    fn one(prime: &u64) -> Self {
        Fp {
            value: 1 % *prime,
            prime: *prime,
        }
    }

    fn from_rational(prime: &u64, value: &BigRational) -> Result<Self, Error> {
        let p = BigInt::from(*prime);
        let numer = value.numer().mod_floor(&p);
        let denom = value.denom().mod_floor(&p);
        let numer = numer.to_u64_digits().1.first().copied().unwrap_or(0);
        let denom = denom.to_u64_digits().1.first().copied().unwrap_or(0);
        if denom == 0 {
            return Err(Error::BadPrime(*prime));
        }
        let inv = pow_mod(denom, *prime - 2, *prime);
        Ok(Fp {
            value: mul_mod(numer, inv, *prime),
            prime: *prime,
        })
    }

    fn from_u64(prime: &u64, value: u64) -> Self {
        Fp {
            value: value % *prime,
            prime: *prime,
        }
    }

    fn from_biguint(prime: &u64, value: &BigUint) -> Self {
        let r = value % BigUint::from(*prime);
        Fp {
            value: r.to_u64_digits().first().copied().unwrap_or(0),
            prime: *prime,
        }
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.prime, rhs.prime);
        let mut v = self.value + rhs.value;
        if v >= self.prime {
            v -= self.prime;
        }
        Fp {
            value: v,
            prime: self.prime,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.prime, rhs.prime);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.prime - rhs.value
        };
        Fp {
            value: v,
            prime: self.prime,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.prime, rhs.prime);
        Fp {
            value: mul_mod(self.value, rhs.value, self.prime),
            prime: self.prime,
        }
    }

    fn neg(&self) -> Self {
        Fp {
            value: if self.value == 0 {
                0
            } else {
                self.prime - self.value
            },
            prime: self.prime,
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        Some(Fp {
            value: pow_mod(self.value, self.prime - 2, self.prime),
            prime: self.prime,
        })
    }

    fn lift_integer(&self) -> Option<i64> {
        const BOUND: u64 = 1 << 40;
        if self.value < BOUND {
            Some(self.value as i64)
        } else if self.prime - self.value < BOUND {
            Some(-((self.prime - self.value) as i64))
        } else {
            None
        }
    }

    fn rank_of(matrix: &DenseMatrix<Self>) -> usize {
        gaussian_rank_fp(matrix)
    }
}

/// Row-major dense matrix over a [`Scalar`] field.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<S: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
    ctx: S::Ctx,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn zero(ctx: S::Ctx, rows: usize, cols: usize) -> DenseMatrix<S> {
        DenseMatrix {
            rows,
            cols,
            data: vec![S::zero(&ctx); rows * cols],
            ctx,
        }
    }

    pub fn identity(ctx: S::Ctx, n: usize) -> DenseMatrix<S> {
        let mut m = Self::zero(ctx, n, n);
        for i in 0..n {
            let one = S::one(&m.ctx);
            m.set(i, i, one);
        }
        m
    }

    pub fn from_rows(ctx: S::Ctx, rows: Vec<Vec<S>>) -> Result<DenseMatrix<S>, Error> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch(
                "rows of unequal length".to_string(),
            ));
        }
        Ok(DenseMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
            ctx,
        })
    }

    pub fn ctx(&self) -> &S::Ctx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: S) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> DenseMatrix<S> {
        let mut out = DenseMatrix::zero(self.ctx.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Exact rank: fraction-free elimination over Q, Gaussian elimination
    /// over prime fields. Deterministic.
    pub fn rank(&self) -> usize {
        S::rank_of(self)
    }

    /// Indices of the lexicographically first maximal linearly independent
    /// set of rows (the pivot rows of a row echelon built in row order).
    pub fn image_basis(&self) -> Vec<usize> {
        let mut ech: RowEchelon<S> = RowEchelon::new(self.ctx.clone(), self.cols, false);
        let mut basis = Vec::new();
        for i in 0..self.rows {
            if ech.offer_row(self.row(i)) {
                basis.push(i);
            }
        }
        basis
    }

    /// Expresses `v` as a combination of the rows of `self` (which must be
    /// linearly independent) or reports that `v` lies outside their span.
    pub fn solve_in_span(&self, v: &[S]) -> Result<Option<Vec<S>>, Error> {
        let solver = SpanSolver::new(self)?;
        Ok(solver.solve(v))
    }
}

/// Fraction-free (Bareiss) rank of a rational matrix: rows are scaled to
/// integers, duplicate and zero rows/columns are dropped, and the remaining
/// integer matrix is eliminated with exact divisions only.
fn bareiss_rank(matrix: &DenseMatrix<BigRational>) -> usize {
    let rows: Vec<Vec<BigInt>> = (0..matrix.rows())
        .map(|i| clear_denominators(matrix.row(i)))
        .collect();
    let rows = dedupe_normalized(rows);
    let cols = transpose_int(&rows);
    let cols = dedupe_normalized(cols);
    let mut m = transpose_int(&cols);
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);

    let mut prev = BigInt::one();
    let mut rank = 0usize;
    for c in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let (head, tail) = m.split_at_mut(rank + 1);
        let prow = &head[rank];
        for rj in tail.iter_mut() {
            if rj[c].is_zero() {
                // still must scale the untouched entries to keep divisions exact
                for k in (c + 1)..ncols {
                    rj[k] = (&prow[c] * &rj[k]) / &prev;
                }
            } else {
                for k in (c + 1)..ncols {
                    rj[k] = (&prow[c] * &rj[k] - &rj[c] * &prow[k]) / &prev;
                }
                rj[c] = BigInt::zero();
            }
        }
        prev = prow[c].clone();
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in row {
        if !Zero::is_zero(x) {
            lcm = lcm.lcm(x.denom());
        }
    }
    row.iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect()
}

/// Scale-normalizes integer vectors (divide by content, fix sign) and keeps
/// the first representative of each class; zero vectors are dropped. Rank is
/// invariant under these removals.
fn dedupe_normalized(rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    use std::collections::HashSet;
    let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
    let mut out = Vec::new();
    for row in rows {
        let mut content = BigInt::zero();
        for x in &row {
            content = content.gcd(x);
        }
        if content.is_zero() {
            continue;
        }
        let first_nonzero_negative = row
            .iter()
            .find(|x| !x.is_zero())
            .map(|x| x.is_negative())
            .unwrap_or(false);
        if first_nonzero_negative {
            content = -content;
        }
        let normalized: Vec<BigInt> = row.iter().map(|x| x / &content).collect();
        if seen.insert(normalized.clone()) {
            out.push(normalized);
        }
    }
    out
}

fn transpose_int(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let ncols = rows.first().map_or(0, Vec::len);
    (0..ncols)
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect()
}

fn gaussian_rank_fp(matrix: &DenseMatrix<Fp>) -> usize {
    let p = *matrix.ctx();
    // dedupe scale-normalized rows and columns first; cheap and large wins on
    // evaluation matrices
    let rows: Vec<Vec<u64>> = (0..matrix.rows())
        .map(|i| matrix.row(i).iter().map(Fp::value).collect())
        .collect();
    let rows = dedupe_normalized_fp(rows, p);
    let cols = transpose_u64(&rows);
    let cols = dedupe_normalized_fp(cols, p);
    let mut m = transpose_u64(&cols);

    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0usize;
    for c in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = pow_mod(m[rank][c], p - 2, p);
        let (head, tail) = m.split_at_mut(rank + 1);
        let prow = &head[rank];
        for rj in tail.iter_mut() {
            if rj[c] != 0 {
                let f = mul_mod(rj[c], inv, p);
                for k in c..ncols {
                    let s = mul_mod(f, prow[k], p);
                    rj[k] = if rj[k] >= s { rj[k] - s } else { rj[k] + p - s };
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

fn dedupe_normalized_fp(rows: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    use std::collections::HashSet;
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut out = Vec::new();
    for row in rows {
        let Some(lead) = row.iter().copied().find(|&x| x != 0) else {
            continue;
        };
        let inv = pow_mod(lead, p - 2, p);
        let normalized: Vec<u64> = row.iter().map(|&x| mul_mod(x, inv, p)).collect();
        if seen.insert(normalized.clone()) {
            out.push(normalized);
        }
    }
    out
}

fn transpose_u64(rows: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let ncols = rows.first().map_or(0, Vec::len);
    (0..ncols)
        .map(|c| rows.iter().map(|r| r[c]).collect())
        .collect()
}

/// Incremental row echelon over a field, processing rows strictly in offer
/// order. Echelon rows keep their pivot normalized to one. With kernel
/// tracking on, each echelon row carries its expression over the accepted
/// original rows, and every dependent row yields the combination of accepted
/// rows it equals.
pub struct RowEchelon<S: Scalar> {
    ctx: S::Ctx,
    cols: usize,
    pivot_cols: Vec<usize>,
    rows: Vec<Vec<S>>,
    /// combos[j][k]: coefficient of accepted original row k in echelon row j.
    combos: Option<Vec<Vec<S>>>,
    accepted: Vec<usize>,
    kernel: Vec<(usize, Vec<S>)>,
    offered: usize,
}

impl<S: Scalar> RowEchelon<S> {
    pub fn new(ctx: S::Ctx, cols: usize, track_kernel: bool) -> RowEchelon<S> {
        RowEchelon {
            ctx,
            cols,
            pivot_cols: Vec::new(),
            rows: Vec::new(),
            combos: track_kernel.then(Vec::new),
            accepted: Vec::new(),
            kernel: Vec::new(),
            offered: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Offer indices of the rows that enlarged the span so far.
    pub fn accepted(&self) -> &[usize] {
        &self.accepted
    }

    /// Offers a row; returns true when it enlarges the span.
    pub fn offer_row(&mut self, row: &[S]) -> bool {
        debug_assert_eq!(row.len(), self.cols);
        let mut r = row.to_vec();
        // acc[k]: coefficient of accepted original row k in (row - reduced residue)
        let mut acc = self
            .combos
            .as_ref()
            .map(|_| vec![S::zero(&self.ctx); self.rows.len()]);
        for j in 0..self.rows.len() {
            let pc = self.pivot_cols[j];
            if r[pc].is_zero() {
                continue;
            }
            let f = r[pc].clone();
            for (a, b) in r.iter_mut().zip(self.rows[j].iter()) {
                *a = a.sub(&f.mul(b));
            }
            if let (Some(acc), Some(combos)) = (acc.as_mut(), self.combos.as_ref()) {
                for (k, b) in combos[j].iter().enumerate() {
                    acc[k] = acc[k].add(&f.mul(b));
                }
            }
        }
        let index = self.offered;
        self.offered += 1;
        match r.iter().position(|x| !x.is_zero()) {
            Some(pc) => {
                let inv = r[pc].inv().expect("nonzero pivot");
                for x in r.iter_mut() {
                    *x = x.mul(&inv);
                }
                if let (Some(acc), Some(combos)) = (acc, self.combos.as_mut()) {
                    // echelon row = inv * (original - sum acc_k * accepted_k)
                    let mut combo: Vec<S> = acc.iter().map(|x| x.mul(&inv).neg()).collect();
                    combo.push(inv);
                    combos.push(combo);
                }
                self.pivot_cols.push(pc);
                self.rows.push(r);
                self.accepted.push(index);
                true
            }
            None => {
                if let Some(acc) = acc {
                    self.kernel.push((index, acc));
                }
                false
            }
        }
    }

    /// Dependent rows seen so far, each as `(offered index, coefficients over
    /// the accepted rows)` with `row[index] = sum_k coeff[k] * accepted_k`.
    pub fn kernel(&self) -> &[(usize, Vec<S>)] {
        &self.kernel
    }

    /// The `which`-th kernel relation as a sparse vector over offered row
    /// indices: the listed combination of original rows is zero.
    pub fn kernel_vector(&self, which: usize) -> Vec<(usize, S)> {
        let (index, coeffs) = &self.kernel[which];
        let mut out = vec![(*index, S::one(&self.ctx))];
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.push((self.accepted[k], c.neg()));
            }
        }
        out
    }
}

/// Solver for coefficient recovery within the span of a fixed list of
/// linearly independent rows.
pub struct SpanSolver<S: Scalar> {
    ctx: S::Ctx,
    cols: usize,
    // echelon rows with pivot one, plus their expression over the basis rows
    ech: Vec<(usize, Vec<S>, Vec<S>)>,
    n_basis: usize,
}

impl<S: Scalar> SpanSolver<S> {
    /// Builds the solver; fails with [`Error::DependentBasis`] if the rows
    /// are linearly dependent.
    pub fn new(basis: &DenseMatrix<S>) -> Result<SpanSolver<S>, Error> {
        Self::from_rows(
            basis.ctx().clone(),
            basis.cols(),
            (0..basis.rows()).map(|i| basis.row(i)),
        )
    }

    pub fn from_rows<'a, I>(ctx: S::Ctx, cols: usize, rows: I) -> Result<SpanSolver<S>, Error>
    where
        I: IntoIterator<Item = &'a [S]>,
        S: 'a,
    {
        let mut ech: Vec<(usize, Vec<S>, Vec<S>)> = Vec::new();
        let mut n_basis = 0usize;
        for row in rows {
            let mut r = row.to_vec();
            let mut combo = vec![S::zero(&ctx); n_basis + 1];
            combo[n_basis] = S::one(&ctx);
            for (pc, prow, pcombo) in &ech {
                if r[*pc].is_zero() {
                    continue;
                }
                let f = r[*pc].clone();
                for (a, b) in r.iter_mut().zip(prow.iter()) {
                    *a = a.sub(&f.mul(b));
                }
                for (j, b) in pcombo.iter().enumerate() {
                    combo[j] = combo[j].sub(&f.mul(b));
                }
            }
            let Some(pc) = r.iter().position(|x| !x.is_zero()) else {
                return Err(Error::DependentBasis(n_basis));
            };
            let inv = r[pc].inv().expect("nonzero pivot");
            for x in r.iter_mut() {
                *x = x.mul(&inv);
            }
            for x in combo.iter_mut() {
                *x = x.mul(&inv);
            }
            ech.push((pc, r, combo));
            n_basis += 1;
        }
        for (_, _, c) in ech.iter_mut() {
            c.resize(n_basis, S::zero(&ctx));
        }
        Ok(SpanSolver {
            ctx,
            cols,
            ech,
            n_basis,
        })
    }

    pub fn n_basis(&self) -> usize {
        self.n_basis
    }

    /// Returns `c` with `sum_i c_i * basis_i = v`, or `None` when `v` is not
    /// in the span.
    pub fn solve(&self, v: &[S]) -> Option<Vec<S>> {
        debug_assert_eq!(v.len(), self.cols);
        let mut r = v.to_vec();
        let mut coeff = vec![S::zero(&self.ctx); self.n_basis];
        for (pc, prow, pcombo) in &self.ech {
            if r[*pc].is_zero() {
                continue;
            }
            let f = r[*pc].clone();
            for (a, b) in r.iter_mut().zip(prow.iter()) {
                *a = a.sub(&f.mul(b));
            }
            for (j, b) in pcombo.iter().enumerate() {
                coeff[j] = coeff[j].add(&f.mul(b));
            }
        }
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(coeff)
    }
}

/// Deterministic Miller-Rabin primality for `u64` (the witness set is exact
/// below 3.3 * 10^24).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// First prime in `[2^61, 2^62)` found from the seeded stream; deterministic
/// per seed.
pub fn random_prime_62(seed: u64) -> u64 {
    let mut rng = SplitMix64::new(seed ^ 0x70696c61625f7031);
    loop {
        let candidate = (1u64 << 61) | rng.below(1u64 << 61) | 1;
        if is_prime_u64(candidate) {
            return candidate;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn rat_matrix(rows: Vec<Vec<i64>>) -> DenseMatrix<BigRational> {
        DenseMatrix::from_rows(
            (),
            rows.into_iter()
                .map(|r| r.into_iter().map(rat).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_basics() {
        assert_eq!(DenseMatrix::<BigRational>::zero((), 4, 5).rank(), 0);
        assert_eq!(DenseMatrix::<BigRational>::identity((), 6).rank(), 6);
        let m = rat_matrix(vec![vec![1, 2], vec![2, 4], vec![0, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rank_equals_transpose_rank() {
        let mut rng = SplitMix64::new(42);
        for _ in 0..10 {
            let rows = 7;
            let cols = 13;
            let m = rat_matrix(
                (0..rows)
                    .map(|_| (0..cols).map(|_| rng.range_inclusive(-3, 3)).collect())
                    .collect(),
            );
            assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    #[test]
    fn rank_equals_transpose_rank_large_fp() {
        let p = random_prime_62(5);
        let mut rng = SplitMix64::new(13);
        // rank-deficient by construction: 200x200 built from 150 random rows
        let gen_rows: Vec<Vec<u64>> = (0..150)
            .map(|_| (0..200).map(|_| rng.below(1000)).collect())
            .collect();
        let rows: Vec<Vec<Fp>> = (0..200)
            .map(|_| {
                let a = rng.below(150) as usize;
                let b = rng.below(150) as usize;
                (0..200)
                    .map(|j| Fp::new(gen_rows[a][j] + 3 * gen_rows[b][j], p))
                    .collect()
            })
            .collect();
        let m = DenseMatrix::from_rows(p, rows).unwrap();
        assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn modular_rank_matches_exact_on_random_matrices() {
        let mut rng = SplitMix64::new(7);
        for trial in 0..5 {
            let rows: Vec<Vec<i64>> = (0..12)
                .map(|_| (0..9).map(|_| rng.range_inclusive(-9, 9)).collect())
                .collect();
            let exact = rat_matrix(rows.clone()).rank();
            for pseed in 0..3u64 {
                let p = random_prime_62(1000 * trial + pseed);
                let m = DenseMatrix::from_rows(
                    p,
                    rows.iter()
                        .map(|r| {
                            r.iter()
                                .map(|&x| {
                                    Fp::from_rational(&p, &rat(x)).unwrap()
                                })
                                .collect()
                        })
                        .collect(),
                )
                .unwrap();
                assert_eq!(m.rank(), exact);
            }
        }
    }

    #[test]
    fn image_basis_examples() {
        let id = DenseMatrix::<BigRational>::identity((), 4);
        assert_eq!(id.image_basis(), vec![0, 1, 2, 3]);
        let m = rat_matrix(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(m.image_basis(), vec![0]);
    }

    #[test]
    fn image_basis_size_is_rank() {
        let mut rng = SplitMix64::new(11);
        for _ in 0..50 {
            let m = rat_matrix(
                (0..6)
                    .map(|_| (0..5).map(|_| rng.range_inclusive(-2, 2)).collect())
                    .collect(),
            );
            assert_eq!(m.image_basis().len(), m.rank());
        }
    }

    #[test]
    fn solve_in_span_examples() {
        let b = rat_matrix(vec![vec![1, 0, 2], vec![0, 1, 3]]);
        let c = b.solve_in_span(&[rat(1), rat(0), rat(2)]).unwrap().unwrap();
        assert_eq!(c, vec![rat(1), rat(0)]);
        let z = b.solve_in_span(&[rat(0), rat(0), rat(0)]).unwrap().unwrap();
        assert_eq!(z, vec![rat(0), rat(0)]);
        assert!(b
            .solve_in_span(&[rat(0), rat(0), rat(1)])
            .unwrap()
            .is_none());
    }

    #[test]
    fn solve_round_trip() {
        let b = rat_matrix(vec![vec![2, 1, 0, 1], vec![1, 1, 1, 0], vec![0, 3, 1, 2]]);
        let mut rng = SplitMix64::new(3);
        for _ in 0..20 {
            let c: Vec<BigRational> = (0..3).map(|_| rat(rng.range_inclusive(-5, 5))).collect();
            let v: Vec<BigRational> = (0..4)
                .map(|j| {
                    (0..3)
                        .map(|i| &c[i] * b.get(i, j))
                        .fold(<BigRational as num_traits::Zero>::zero(), |a, x| a + x)
                })
                .collect();
            let solved = b.solve_in_span(&v).unwrap().unwrap();
            assert_eq!(solved, c);
        }
    }

    #[test]
    fn dependent_basis_is_an_error() {
        let b = rat_matrix(vec![vec![1, 2], vec![2, 4]]);
        assert!(matches!(
            b.solve_in_span(&[rat(1), rat(2)]),
            Err(Error::DependentBasis(1))
        ));
    }

    #[test]
    fn kernel_tracking() {
        let m = rat_matrix(vec![vec![1, 1], vec![2, 2], vec![0, 1]]);
        let mut ech = RowEchelon::new((), 2, true);
        for i in 0..3 {
            ech.offer_row(m.row(i));
        }
        assert_eq!(ech.rank(), 2);
        let kernel = ech.kernel();
        assert_eq!(kernel.len(), 1);
        // row 1 = 2 * pivot row 0
        assert_eq!(kernel[0].0, 1);
        assert_eq!(kernel[0].1[0], rat(2));
    }

    #[test]
    fn modular_rank_can_only_drop() {
        // a matrix whose entries vanish mod p loses rank there; rank over Q
        // always dominates rank mod p
        let p = random_prime_62(9);
        let q_matrix = rat_matrix(vec![vec![1, 2], vec![3, 4]]);
        let mut scaled = q_matrix.clone();
        for i in 0..2 {
            for j in 0..2 {
                let v = scaled.get(i, j) * BigRational::from_integer(BigInt::from(p));
                scaled.set(i, j, v);
            }
        }
        assert_eq!(scaled.rank(), 2);
        let fp = DenseMatrix::from_rows(
            p,
            (0..2)
                .map(|i| {
                    (0..2)
                        .map(|j| Fp::from_rational(&p, scaled.get(i, j)).unwrap())
                        .collect()
                })
                .collect(),
        )
        .unwrap();
        assert_eq!(fp.rank(), 0);
        assert!(scaled.rank() >= fp.rank());
    }

    #[test]
    fn prime_generation() {
        let p = random_prime_62(0);
        assert!(p >= (1 << 61) && is_prime_u64(p));
        assert_eq!(p, random_prime_62(0));
        assert!(is_prime_u64((1 << 61) - 1));
        assert!(!is_prime_u64(1_000_000_000_000));
    }
}
