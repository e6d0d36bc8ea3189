//! Seeded random generation and the verification suites built on it.

pub mod generate;
pub mod rng;
pub mod suites;

pub use generate::{
    extremal_pair, random_block_conjugator, random_conjugator, random_idempotent, random_invertible,
    random_invertible_in, random_matrix, random_subalgebra, random_unital_subalgebra, shear,
};
pub use rng::Rng;
pub use suites::{replay_trial, run_suite, SuiteId, SuiteParams, SuiteReport, TrialOutcome, Violation};
