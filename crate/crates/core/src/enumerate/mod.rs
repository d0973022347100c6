//! Exhaustive generation: generators, trees, simple networks and composed
//! universes of binary networks, plus verification sweeps over them.

mod generators;
mod networks;
mod simple;
mod trees;
mod verify;

use thiserror::Error;

use crate::reconstruct::ReconError;

pub use generators::enumerate_generators;
pub use networks::{enumerate_networks, enumerate_networks_on, NetClass, Universe, UniverseSpec, MAX_UNIVERSE};
pub use simple::{enumerate_simple, enumerate_simple_on};
pub use trees::{default_labels, enumerate_trees, enumerate_trees_on};
pub use verify::{
    verify_class, verify_universe, Check, Counterexample, FailureKind, LevelFraction, NetReport, TheoremCheck,
    VerificationReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("infeasible request: {0}")]
    Infeasible(String),
    #[error("request exceeds the enumeration budget: {0}")]
    BudgetExceeded(String),
    #[error(transparent)]
    Check(#[from] ReconError),
}
