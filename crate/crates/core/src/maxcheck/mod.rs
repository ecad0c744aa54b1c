//! Maximality verification and the registry of table rows, theorem instances,
//! exceptional cases and Dynkin rows.

mod registry;
mod suites;
mod verify;

pub use registry::{
    associator, find_row, instantiate_row, lambda_merge, markdown_table, odd_complex_structure, parse_params, registry,
    twist_mu, verify_exceptional, verify_row, Expected, InclusionCheck, Instance, MaximalityReport, Params, Relation,
    RunOptions, Section, TableRow,
};
pub use suites::{lemma241, quantize, reps, run_suite, signs, Check, SUITE_NAMES};
pub use verify::{verify_maximal, ClosureTrace, Mode, Status, Verification, Witness};
