//! Obstructions to component-preserving amphicheirality of algebraically
//! split links, built from the symmetric factors `f_J` of the sublinks.

mod checks;
mod family;
mod sums;

use thiserror::Error;

use crate::index_set::IndexSet;
use crate::laurent::LaurentError;

pub use checks::{
    check_diagonal_vanishing, check_specializations, check_square_divisibility,
    check_surgery_sums, check_surgery_sums_limited, DivisibilityMode, SignMode,
    DEFAULT_MAX_SEARCH_R, DIAGONAL_VANISHING_ID, EPS_DIVISIBILITY_ID, KNOT_SPECIALIZATION_ID,
    SQUARE_DIVISIBILITY_ID, SUBLINK_SPECIALIZATION_ID, SURGERY_SUMS_ID,
};
pub use family::{build_family, extract_symmetric_factor, is_symmetric, SymmetricFactorFamily};
pub use sums::{
    f_sub, flip_frame, s_sums, surgery_torsion, surgery_torsion_signed, SignAssignment,
    SubsetFrame, TorsionExpr,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("invalid index set {{{0}}} for this family")]
    InvalidSet(IndexSet),
    #[error("polynomial for {{{0}}}: {1}")]
    Laurent(IndexSet, LaurentError),
    #[error("factor for {{{0}}} is not symmetric under t -> t^-1")]
    NotSymmetric(IndexSet),
    #[error("Alexander polynomial of {{{0}}} is not divisible by the product of (t_i - 1)")]
    NotDivisible(IndexSet),
    #[error("Alexander polynomial of {{{0}}} has no symmetric representative")]
    NoSymmetricRep(IndexSet),
    #[error("link is not algebraically split")]
    NotAlgebraicallySplit,
    #[error("invalid frame over {{{0}}}")]
    InvalidFrame(IndexSet),
    #[error("{{{subset}}} is not a subset of {{{set}}}")]
    NotSubset { subset: IndexSet, set: IndexSet },
    #[error("no factor for {{{0}}}")]
    MissingFactor(IndexSet),
    #[error("no knot polynomial for component {0}")]
    MissingKnotPoly(usize),
}
