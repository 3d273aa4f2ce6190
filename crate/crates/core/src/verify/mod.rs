//! Theorem verification: constrained instance generators, one checker per
//! statement, campaigns over many random instances, and replayable fixtures
//! for the worked examples.

mod campaign;
mod checkers;
mod fixtures;
mod generator;
mod report;

pub use campaign::{
    default_plan, run_campaign, run_default_campaign, CampaignReport, PlanVariant, CLASSIFIER_SIZES, DEFAULT_SIZES,
    DEFAULT_TRIALS,
};
pub use checkers::{check_theorem, check_theorem_seeded, is_known_theorem, requires_real, THEOREM_IDS};
pub use fixtures::{
    lemma_counterexample, paper_fixtures, replay, Fact, FactOutcome, Fixture, Quantity, FIXTURE_EQ_TOL, FIXTURE_NEQ_TOL,
};
pub use generator::{
    constraint_verdict, gaussian, generate, generate_with, orthonormal_columns, random_ep, random_rank, sub_seed,
    well_conditioned, Constraint, Field, GeneratorSpec, MAX_RETRIES, MIN_RELATIVE_GAP,
};
pub use report::{Classification, Clause, TheoremReport};
