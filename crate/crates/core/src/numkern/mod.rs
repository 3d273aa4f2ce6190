//! Dense complex matrices, SVD, Moore–Penrose inverse, rank and subspace
//! predicates.

pub mod matrix;
pub mod pinv;
pub mod predicates;
pub mod svd;
pub mod tolerance;

pub use matrix::{Matrix, C64};
pub use pinv::{
    null_space_basis, pinv, pinv_ref, range_projector, rank, rank_ref, row_space_basis, row_space_projector,
};
pub use predicates::{
    classify_ginverse, is_almost_skew_hermitian, is_range_hermitian, null_space_included, penrose_residuals,
    range_included, rank_of_symmetric_part, symmetric_part, GinverseClass,
};
pub use svd::{svd, SvdResult};
pub use tolerance::{PredicateVerdict, ToleranceConfig};
