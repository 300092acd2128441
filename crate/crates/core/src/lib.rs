pub mod averaging;
pub mod bitset;
pub mod bounds;
pub mod config;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod lattice;
mod parallel;
pub mod rational;
pub mod search;
pub mod structure;
pub mod sumset;
pub mod zero_sum;

pub use averaging::{
    erdos_straus_criterion, is_non_averaging, AveragingWitness, CriterionViolation,
};
pub use config::Budgets;
pub use error::{Error, Result};
pub use lattice::{BoundingBox, IntSet, Point};
pub use rational::Rational;
pub use sumset::{subset_sums, sumsets_share_nonzero, SumSet};
pub use zero_sum::has_zero_sum_subset;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
