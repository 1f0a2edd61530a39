//! Core value types: permutations, q-cycle sets, solutions and named examples.

pub mod fixtures;
pub mod permutation;
pub mod qcycle;
pub mod solution;

pub use fixtures::{fixture, Fixture, FIXTURE_NAMES};
pub use permutation::Permutation;
pub use qcycle::{Axiom, AxiomReport, AxiomViolation, QCycleSet};
pub use solution::{from_solution, to_solution, Solution};
