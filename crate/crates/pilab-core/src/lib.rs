//! Exact-arithmetic engine for polynomial-identity invariants of
//! finite-dimensional algebras.
//!
//! The crate computes codimension sequences, graded codimensions,
//! cocharacter decompositions, colengths and PI-exponent trend reports for
//! algebras given by structure constants, and for the Grassmann envelopes of
//! Z2-graded Lie algebras. All counts are exact: arithmetic runs over the
//! rationals or, for large matrices, over a random 62-bit prime field with an
//! optional exact verification pass.
//!
//! Module map:
//! - [`partitions`]: Young diagrams, hooks, irreducible characters of the
//!   symmetric group, Littlewood-Richardson coefficients.
//! - [`exactlin`]: dense exact linear algebra (rank, row-space bases, solving
//!   within a span) over Q and over prime fields.
//! - [`freealg`]: multilinear bracketed monomials, symmetric-group actions,
//!   the sign-twisting `tilde` map, Young symmetrizers.
//! - [`algebras`]: structure-constant algebras, gradings, class validators,
//!   built-in examples, JSON import/export.
//! - [`envelope`]: Grassmann algebra arithmetic and evaluation of monomials
//!   on Grassmann envelopes, with an independent truncated-envelope oracle.
//! - [`codim`]: evaluation matrices, codimensions, cocharacters and the
//!   engine-level consistency checks.

pub mod algebras;
pub mod codim;
pub mod envelope;
mod error;
pub mod exactlin;
pub mod freealg;
pub mod partitions;
pub mod perm;
pub mod rng;

pub use error::Error;

/// Z2-parity of a variable, basis element or Grassmann monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Parity of a sum of degrees.
    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn from_bit(bit: u8) -> Parity {
        if bit.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}
