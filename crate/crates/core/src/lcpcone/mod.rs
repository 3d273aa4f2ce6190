//! Real-matrix classes tied to the linear complementarity problem: P†- and
//! R†-matrices, the block constructions `M₀` and `M₁`, and a support
//! enumeration LCP solver. Decisions reduce to small linear feasibility
//! problems solved by a dense simplex.

mod blocks;
mod classify;
mod lcp;
pub mod simplex;

pub use blocks::{build_m0, build_m1};
pub use classify::{
    is_p_dagger, is_p_dagger_with_cap, is_r_dagger, is_r_dagger_with_cap, restricted_row_space_projector, ClassVerdict,
    ClassifierMode, Method, DEFAULT_SIZE_CAP,
};
pub use lcp::{solve_lcp_enumerate, solve_lcp_enumerate_in_row_space, solve_lcp_enumerate_with_cap, LcpInstance};
