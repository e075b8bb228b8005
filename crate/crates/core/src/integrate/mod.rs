//! Search for a rational first integral of bounded degree.

pub mod conditions;
pub mod diagnostics;
pub mod diophantine;
pub mod pipeline;

pub use conditions::{cluster_conditions, expected_condition_count, local_basis, ClassCluster};
pub use diagnostics::{verify_condition_d, verify_condition_e, ConditionD, ConditionE};
pub use diophantine::{solve_diophantine, DiophantineSolution, EigenClass};
pub use pipeline::{
    canonical_pair, find_first_integral, CandidateOutcome, CandidateRecord, ClassWeight, FirstIntegral,
    IntegrabilityReport, Obstruction, PipelineOptions, Verdict,
};
