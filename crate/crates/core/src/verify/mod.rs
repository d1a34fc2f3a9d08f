//! Named, seeded property suites tying the word combinatorics to exact matrix
//! computations. Each suite returns a [`SuiteReport`].

mod report;
pub mod sl2;
mod suites;

pub use report::{Case, SuiteReport};
pub use suites::{
    run_suite, suite_char_pfaffian, suite_generator_soundness, suite_nagata_higman,
    suite_nagata_higman_multilinear, suite_qn, suite_separation_so2, suite_sl2_identities, DEFAULT_TRIALS, SUITES,
};
