//! Partitioned matrices and their generalized principal pivot transforms.
//!
//! For `M = [[A, B], [C, D]]`:
//!
//! ```text
//! gppt(M, A) = [[A†, -A†B], [CA†, D - CA†B]]
//! gppt(M, D) = [[A - BD†C, BD†], [-D†C, D†]]
//! ```

mod block_pinv;
mod factor;
mod partition;
mod properties;
mod transform;

pub use block_pinv::{block_pinv_a, block_pinv_d, BlockPinv};
pub use factor::{gppt_factorization, Factorization};
pub use partition::PartitionedMatrix;
pub use properties::{
    domain_range_exchange_a, domain_range_exchange_d, ep_equivalence_check, exchange_backward_a, exchange_backward_d,
    gram_gppt_one_inverse, gram_gppt_one_inverse_unchecked, rank_sym_preserved_a, rank_sym_preserved_d, EpEquivalence,
    ExchangeReport, GramOneInverse, RankSymReport,
};
pub use transform::{
    all_hold, dagger_complement_null_conditions, dagger_complement_residuals, double_gppt_a, double_gppt_d,
    failed_names, gppt, gppt_a, gppt_d, gppt_dagger_equals_complement, moore_penrose_via_gppt,
    moore_penrose_via_gppt_unchecked, mp_via_gppt_conditions, schur_complements, Condition, SchurPair, Side,
};
