//! Finite regular q-cycle sets, the bijective non-degenerate set-theoretic
//! solutions of the Yang-Baxter equation they encode, and their invariants.
//!
//! Carriers are `{0, .., n-1}` internally; file formats and reports are
//! 1-based. Permutation products act right to left.

pub mod analysis;
pub mod congruence;
pub mod enumerate;
pub mod error;
pub mod extension;
pub mod group;
pub mod io;
pub mod model;

pub use error::{Error, Result};
pub use model::{fixture, from_solution, to_solution, Fixture, Permutation, QCycleSet, Solution};
