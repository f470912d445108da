//! Weighted Schwarz gaps and their reverse (counterpart) bounds.
//!
//! The central quantity is `|x|^2 |y|^2 - |<x,y>|^2` for weighted real or
//! complex vectors. [`reverse`] certifies the quarter-disk bound, builds
//! extremal witnesses and fits the tightest disk; [`classical`] evaluates the
//! classical family of counterpart inequalities for positive sequences;
//! [`functionals`] realizes weighted-sum functionals and quadrature
//! integrals; [`oracle`] generates randomized instances and runs the
//! verification suites.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classical;
pub mod error;
pub mod functionals;
pub mod inner;
pub mod oracle;
pub mod reverse;
pub mod summation;

pub use num_complex::Complex64 as Scalar;

pub use error::{Error, Result};
pub use inner::{schwarz_gap, weighted_inner, GapReport, Mode, Tolerance, WeightedVectorPair};
pub use reverse::{
    certify, check_condition, extremal_witness, fit_disk, identity_terms, quarter_bound, CertifiedBound,
    ConditionDiagnostics, DiskBound, FitMode, IdentityTerms,
};
