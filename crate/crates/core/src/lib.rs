//! Combinatorial commutative algebra for Stanley-Reisner rings and their
//! rings of differential operators, over exact coefficient fields.
//!
//! The building blocks are simplicial complexes with faces stored as 64-bit
//! vertex masks, polynomials and divided-power differential operators with
//! exact rational or prime-field coefficients, and a verification layer that
//! replays every computed fact against an independent brute-force oracle.

pub mod complex;
pub mod ddm;
pub mod field;
pub mod generate;
pub mod holonomy;
pub mod idealizer;
pub mod io;
pub mod linalg;
pub mod localization;
pub mod parse;
pub mod sralgebra;
pub mod weyl;

pub use complex::{Face, SimplicialComplex, TSpaceVerdict};
pub use ddm::{DdmContext, DdmElement, RationalPoint};
pub use field::{FieldSpec, Scalar};
pub use generate::{exhaustive_complexes, exhaustive_graphs, random_complexes, random_t_spaces};
pub use holonomy::{
    bernstein_dim, bernstein_level, divided_derivative_divisibility, r_filtration_report,
    rf_filtration_check, BernsteinLevel, GrowthReport,
};
pub use idealizer::{DrAlgebra, DrOperator};
pub use io::{complex_from_json, complex_to_json};
pub use localization::{
    candidate_ass_primes, cech_cohomology, divided_derivative, saturate, CechCell,
    CechComputation, Fraction, LocalizedContext,
};
pub use sralgebra::{ExponentVector, Polynomial, SrRing};
pub use weyl::{DiffOp, OperatorMonomial};

/// Three-valued verdict for verification checks whose precondition may not
/// hold on the given input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    /// Carries a human-readable description of the first mismatch found.
    Fail(String),
    /// The check's precondition does not apply; carries the reason.
    NotApplicable(String),
}

impl CheckOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, CheckOutcome::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, CheckOutcome::Fail(_))
    }
}

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input exceeds a hard capacity bound (e.g. more than 64 vertices).
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// Input violates a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// A literal could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
