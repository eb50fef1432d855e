//! Supermatrix (partitioned matrix) algebra over the plus–times and max–min
//! semirings, and multi-expert fuzzy inference models built on it: fuzzy
//! cognitive maps, fuzzy relational maps, bidirectional associative memories
//! and fuzzy associative memories.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod fuzzy;
pub mod io;
pub mod models;
pub mod partition;

pub use algebra::{Semiring, SuperMatrix};
pub use error::{Error, Result};
pub use fuzzy::{FuzzyMatrix, StateDomain, SuperStateVector};
pub use models::{ModelKind, ModelSpec, RunTrace, Side, Variant, Verdict};
pub use partition::{PartitionClass, PartitionScheme};
