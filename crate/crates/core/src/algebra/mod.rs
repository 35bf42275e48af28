//! Exact linear algebra over `Z` and `F_p`.

pub mod elimination;
pub mod homology;
pub mod integer;
pub mod lattice;
pub mod matrix;
pub mod ring;
pub mod snf;

pub use elimination::{eliminate_rows, equality_classes, invariant_factors, kernel_basis, rank, ColumnReduction};
pub use homology::{
    allowed_subcomplex_homology, allowed_subcomplex_lattices, free_homology, FreeComplex, HomologyGroup,
    HomologyResult, Step, SubquotientComplex,
};
pub use integer::Integer;
pub use lattice::{Lattice, SparseVec};
pub use matrix::{DenseMatrix, IntMatrix, SparseIntMatrix, SparseMatrix};
pub use ring::{Coefficients, EuclideanRing, Integers, PrimeField};
pub use snf::{dense_invariant_factors, smith_normal_form, SmithForm};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("cannot parse coefficient ring {0:?}")]
    BadCoefficients(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("d∘d is nonzero on degree {0}")]
    NotAComplex(usize),
    #[error("contract violated: {0}")]
    Contract(String),
}

/// Dispatches a generic computation on runtime coefficients.
#[macro_export]
macro_rules! with_ring {
    ($coeffs:expr, |$r:ident| $body:expr) => {
        match $coeffs {
            $crate::algebra::Coefficients::Integers => {
                let $r = $crate::algebra::Integers;
                $body
            }
            $crate::algebra::Coefficients::Prime(fp) => {
                let $r = fp;
                $body
            }
        }
    };
}
