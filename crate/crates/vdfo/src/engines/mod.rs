//! The specialized solvers for the tractable fragments, plus engine
//! selection.
//!
//! Auto dispatch mirrors the tier structure of the classification: the
//! witness-walk algorithm for `eae` on basic graphs and `ae` on undirected
//! graphs, the hitting-set reduction for `e*a*` patterns, the bounded
//! search tree for `e*a*e*`, and brute force (with a warning from the CLI)
//! for everything harder.

pub mod hitting_set;
pub mod search_tree;
pub mod witness_walk;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::classifier::{in_family, PatternFamily};
use crate::logic::{LogicError, Pattern};
use crate::oracle::{brute_force_vd_bounded, OracleError, VDInstance, VDVerdict};
use crate::structures::{StructureClass, StructureError};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("engine expects pattern {expected}, formula has pattern {got}")]
    WrongPattern { expected: &'static str, got: String },
    #[error("engine expects a {expected} structure: {detail}")]
    ClassMismatch {
        expected: &'static str,
        detail: String,
    },
    #[error("bad argument: {0}")]
    BadArgument(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// An engine request: either a specific engine or automatic dispatch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineChoice {
    Auto,
    Brute,
    WitnessWalk,
    HittingSet,
    SearchTree,
}

impl FromStr for EngineChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(EngineChoice::Auto),
            "brute" => Ok(EngineChoice::Brute),
            "witness_walk" => Ok(EngineChoice::WitnessWalk),
            "hitting_set" => Ok(EngineChoice::HittingSet),
            "search_tree" => Ok(EngineChoice::SearchTree),
            other => Err(format!("unknown engine: {other}")),
        }
    }
}

impl fmt::Display for EngineChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EngineChoice::Auto => "auto",
            EngineChoice::Brute => "brute",
            EngineChoice::WitnessWalk => "witness_walk",
            EngineChoice::HittingSet => "hitting_set",
            EngineChoice::SearchTree => "search_tree",
        })
    }
}

/// The engine actually run after dispatch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResolvedEngine {
    Brute,
    WitnessWalk,
    HittingSet,
    SearchTree,
}

impl fmt::Display for ResolvedEngine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResolvedEngine::Brute => "brute",
            ResolvedEngine::WitnessWalk => "witness_walk",
            ResolvedEngine::HittingSet => "hitting_set",
            ResolvedEngine::SearchTree => "search_tree",
        })
    }
}

/// Selects the engine for a pattern and structure class. Never selects an
/// engine whose preconditions fail on a valid instance of that class.
pub fn auto_dispatch(pattern: &Pattern, class: StructureClass) -> ResolvedEngine {
    let word = pattern.as_str();
    if (word == "eae" && class == StructureClass::Basic)
        || (word == "ae" && class == StructureClass::Undirected)
    {
        return ResolvedEngine::WitnessWalk;
    }
    if in_family(pattern, PatternFamily::EStarAStar) {
        return ResolvedEngine::HittingSet;
    }
    if in_family(pattern, PatternFamily::EStarAStarEStar) {
        return ResolvedEngine::SearchTree;
    }
    ResolvedEngine::Brute
}

/// Runs the requested engine (resolving `auto` first) on the instance.
/// `work_bound` only applies to the brute-force engine.
pub fn solve(
    instance: &VDInstance,
    choice: EngineChoice,
    work_bound: u64,
) -> Result<(VDVerdict, ResolvedEngine), EngineError> {
    let engine = match choice {
        EngineChoice::Auto => auto_dispatch(&instance.formula().pattern(), instance.class()),
        EngineChoice::Brute => ResolvedEngine::Brute,
        EngineChoice::WitnessWalk => ResolvedEngine::WitnessWalk,
        EngineChoice::HittingSet => ResolvedEngine::HittingSet,
        EngineChoice::SearchTree => ResolvedEngine::SearchTree,
    };
    let verdict = match engine {
        ResolvedEngine::Brute => brute_force_vd_bounded(instance, work_bound)?,
        ResolvedEngine::WitnessWalk => match instance.formula().pattern().as_str() {
            "eae" => witness_walk::solve_eae_basic(instance)?,
            "ae" => witness_walk::solve_ae_undirected(instance)?,
            other => {
                return Err(EngineError::WrongPattern {
                    expected: "eae or ae",
                    got: other.to_string(),
                })
            }
        },
        ResolvedEngine::HittingSet => hitting_set::solve_ea_star(instance)?,
        ResolvedEngine::SearchTree => search_tree::solve_eae_star(instance)?,
    };
    Ok((verdict, engine))
}
