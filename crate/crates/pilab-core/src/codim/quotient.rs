//! The quotient of the multilinear space by the identities of the target,
//! realized as the row space of the evaluation matrix with its
//! symmetric-group action by row permutation.

use crate::exactlin::{DenseMatrix, RowEchelon, Scalar, SpanSolver};
use crate::freealg::SpanningSet;
use crate::perm::Permutation;
use crate::Error;

use super::matrix::EvalMatrix;

/// Row space of an evaluation matrix with solving infrastructure: the
/// codimension is the number of basis rows, and traces of permutations are
/// recovered by expressing permuted basis rows in the basis.
pub struct QuotientModule<S: Scalar> {
    rows: DenseMatrix<S>,
    basis: Vec<usize>,
    solver: SpanSolver<S>,
    kernel_seeds: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar + std::hash::Hash + Eq> QuotientModule<S> {
    pub fn build(matrix: &EvalMatrix<S>) -> Result<QuotientModule<S>, Error> {
        Self::build_inner(matrix, false)
    }

    /// As `build`, but also records, for every dependent row, the
    /// combination of basis rows it equals (used to sample identities).
    pub fn build_with_kernel(matrix: &EvalMatrix<S>) -> Result<QuotientModule<S>, Error> {
        Self::build_inner(matrix, true)
    }

    fn build_inner(matrix: &EvalMatrix<S>, track_kernel: bool) -> Result<QuotientModule<S>, Error> {
        let (rows, _kept) = matrix.compact();
        let mut ech = RowEchelon::new(matrix.ctx().clone(), rows.cols(), track_kernel);
        for i in 0..rows.rows() {
            ech.offer_row(rows.row(i));
        }
        let basis = ech.accepted().to_vec();
        let kernel_seeds = (0..ech.kernel().len())
            .map(|i| ech.kernel_vector(i))
            .collect();
        let solver = SpanSolver::from_rows(
            matrix.ctx().clone(),
            rows.cols(),
            basis.iter().map(|&i| rows.row(i)),
        )?;
        Ok(QuotientModule {
            rows,
            basis,
            solver,
            kernel_seeds,
        })
    }

    /// Codimension: the dimension of the row space.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_rows(&self) -> &[usize] {
        &self.basis
    }

    /// Relations among the offered rows: sparse combinations that evaluate
    /// to zero, one per dependent row.
    pub fn kernel_seeds(&self) -> &[Vec<(usize, S)>] {
        &self.kernel_seeds
    }

    /// Trace of the permutation action on the row space: basis row `i` maps
    /// to the matrix row of the permuted monomial; its coefficient over the
    /// basis contributes the diagonal term.
    pub fn trace(&self, span: &SpanningSet, sigma: &Permutation) -> Result<S, Error> {
        let ctx = self.rows.ctx().clone();
        let mut total = S::zero(&ctx);
        for (i, &row) in self.basis.iter().enumerate() {
            let permuted = span.permuted_index(row, sigma);
            let coeffs = self.solver.solve(self.rows.row(permuted)).ok_or_else(|| {
                Error::InternalInconsistency(format!(
                    "permuted basis row {permuted} escaped the row space"
                ))
            })?;
            total = total.add(&coeffs[i]);
        }
        Ok(total)
    }
}
