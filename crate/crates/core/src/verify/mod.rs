//! Checking responses: syntactic membership, bounded semantic checking,
//! objectives, SMT-LIB emission and a small enumerative solver.

pub mod domain;
mod objective;
mod response;
mod semantic;
mod smt;
mod solve;
mod syntactic;

pub use objective::{check_optimize, compare_solutions, compare_values, directions, Direction, Preference};
pub use response::{parse_response, Response, SolutionDef};
pub use semantic::{check_semantic_bounded, interp_for, DomainSpec, Pins, Semantic, WeightKey};
pub use smt::emit_smt;
pub use solve::{solve_enumerative, SolveOptions};
pub use syntactic::{check_syntactic, SyntacticFailure};

#[cfg(test)]
mod tests;
