//! The witness-walk solver: pattern `eae` on basic graphs and pattern `ae`
//! on undirected graphs.
//!
//! For a fixed anchor `s` (absent in the `ae` variant), a witness of `x` is
//! any `y` with `psi(s, x, y)`; a witness walk repeatedly steps to a
//! witness of the current vertex. A walk is stable when it reaches `s` or
//! returns to an earlier vertex; stability within length 10 is decidable
//! and exactly characterizes the vertices that never have to be deleted,
//! so the forced deletion set per anchor is the set of walk-less vertices.

use std::collections::BTreeSet;

use super::EngineError;
use crate::logic::{self, Formula};
use crate::oracle::{SolveStats, VDInstance, VDVerdict};
use crate::structures::{validate_class, DeletionSet, Graph, GraphClass, RelationalStructure};

/// Walks of at most this many vertices suffice to witness stability.
pub const WALK_LENGTH_BOUND: usize = 10;

/// How a complete witness walk ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkKind {
    /// Ends at the anchor `s` (`eae` variant only).
    STerminated,
    /// Ends at a vertex already on the walk.
    Returning,
    /// Ends at a vertex with an empty witness set.
    Unstable,
}

/// A witness walk `(v1, ..., vj)`: consecutive vertices are witnesses of
/// their predecessors, `v1..v_{j-1}` are pairwise distinct, and the last
/// vertex matches `kind`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessWalk {
    pub vertices: Vec<u32>,
    pub kind: WalkKind,
    /// The anchor `s`; absent in the `ae` variant.
    pub anchor: Option<u32>,
}

impl WitnessWalk {
    pub fn is_stable(&self) -> bool {
        self.kind != WalkKind::Unstable
    }
}

fn require_pattern(f: &Formula, expected: &'static str) -> Result<(), EngineError> {
    let got = f.pattern();
    if got.as_str() != expected {
        return Err(EngineError::WrongPattern {
            expected,
            got: got.to_string(),
        });
    }
    Ok(())
}

fn require_class(
    s: &RelationalStructure,
    class: GraphClass,
    expected: &'static str,
) -> Result<(), EngineError> {
    validate_class(s, class).map_err(|e| EngineError::ClassMismatch {
        expected,
        detail: e.to_string(),
    })
}

fn check_vertex(s: &RelationalStructure, v: u32, what: &str) -> Result<(), EngineError> {
    if v as usize >= s.universe_size() {
        return Err(EngineError::BadArgument(format!(
            "{what} {v} out of range (n = {})",
            s.universe_size()
        )));
    }
    Ok(())
}

fn validate_variant(g: &Graph, f: &Formula, s: Option<u32>) -> Result<(), EngineError> {
    match s {
        Some(s) => {
            require_pattern(f, "eae")?;
            require_class(g.structure(), GraphClass::Basic, "basic")?;
            check_vertex(g.structure(), s, "anchor")
        }
        None => {
            require_pattern(f, "ae")?;
            require_class(g.structure(), GraphClass::Undirected, "undirected")
        }
    }
}

// All witness sets relative to `s`, ascending within each set. In the eae
// variant the entry for `s` itself stays empty: walks never continue from
// `s`. Direct evaluation of the matrix at concrete vertices realizes the
// witness relation; at `x != s` every `s = x` atom is determined.
fn all_witness_sets(
    structure: &RelationalStructure,
    f: &Formula,
    s: Option<u32>,
) -> Result<Vec<Vec<u32>>, EngineError> {
    let bound = logic::bind(structure, f)?;
    let n = structure.universe_size();
    let mut sets = vec![Vec::new(); n];
    for x in 0..n as u32 {
        if s == Some(x) {
            continue;
        }
        let set = &mut sets[x as usize];
        for y in 0..n as u32 {
            let holds = match s {
                Some(s) => bound.eval_matrix(&[s, x, y]),
                None => bound.eval_matrix(&[x, y]),
            };
            if holds {
                set.push(y);
            }
        }
    }
    Ok(sets)
}

/// The witnesses of `x` relative to `s`: all `y` making the matrix true at
/// `(s, x, y)` (`eae` on basic graphs) or `(x, y)` (`ae` on undirected
/// graphs).
pub fn witness_set(
    g: &Graph,
    f: &Formula,
    s: Option<u32>,
    x: u32,
) -> Result<Vec<u32>, EngineError> {
    validate_variant(g, f, s)?;
    check_vertex(g.structure(), x, "vertex")?;
    if s == Some(x) {
        return Err(EngineError::BadArgument(
            "witness sets are defined for vertices other than the anchor".to_string(),
        ));
    }
    let bound = logic::bind(g.structure(), f)?;
    let mut set = Vec::new();
    for y in 0..g.n() as u32 {
        let holds = match s {
            Some(s) => bound.eval_matrix(&[s, x, y]),
            None => bound.eval_matrix(&[x, y]),
        };
        if holds {
            set.push(y);
        }
    }
    Ok(set)
}

// Depth-first search for a stable walk starting at the last vertex of
// `walk`, extending in ascending vertex order. Reaching `s` terminates
// immediately as s-terminated. `nodes` counts extension steps.
fn extend_walk(
    wsets: &[Vec<u32>],
    s: Option<u32>,
    walk: &mut Vec<u32>,
    on_walk: &mut [bool],
    max_len: usize,
    nodes: &mut u64,
) -> Option<WalkKind> {
    *nodes += 1;
    if walk.len() >= max_len {
        return None;
    }
    let last = *walk.last().expect("walk is nonempty");
    for &y in &wsets[last as usize] {
        if s == Some(y) {
            walk.push(y);
            return Some(WalkKind::STerminated);
        }
        if on_walk[y as usize] {
            walk.push(y);
            return Some(WalkKind::Returning);
        }
        walk.push(y);
        on_walk[y as usize] = true;
        if let Some(kind) = extend_walk(wsets, s, walk, on_walk, max_len, nodes) {
            return Some(kind);
        }
        on_walk[y as usize] = false;
        walk.pop();
    }
    None
}

fn stable_walk_from(
    wsets: &[Vec<u32>],
    s: Option<u32>,
    v: u32,
    max_len: usize,
    nodes: &mut u64,
) -> Option<WitnessWalk> {
    let mut walk = vec![v];
    let mut on_walk = vec![false; wsets.len()];
    on_walk[v as usize] = true;
    let kind = extend_walk(wsets, s, &mut walk, &mut on_walk, max_len, nodes)?;
    Some(WitnessWalk {
        vertices: walk,
        kind,
        anchor: s,
    })
}

/// Finds a stable witness walk of at most `max_len` vertices starting at
/// `v`, searching depth-first in ascending vertex order; `None` if no such
/// walk exists.
pub fn find_stable_walk(
    g: &Graph,
    f: &Formula,
    s: Option<u32>,
    v: u32,
    max_len: usize,
) -> Result<Option<WitnessWalk>, EngineError> {
    validate_variant(g, f, s)?;
    check_vertex(g.structure(), v, "start vertex")?;
    if s == Some(v) {
        return Err(EngineError::BadArgument(
            "walks start at vertices other than the anchor".to_string(),
        ));
    }
    let wsets = all_witness_sets(g.structure(), f, s)?;
    let mut nodes = 0;
    Ok(stable_walk_from(&wsets, s, v, max_len, &mut nodes))
}

/// Decides `eae` vertex deletion on a basic graph: for each anchor `s`
/// (ascending), delete exactly the vertices without a stable walk, then
/// accept iff the budget holds and the anchor still has a witness for
/// itself in the reduced graph.
pub fn solve_eae_basic(instance: &VDInstance) -> Result<VDVerdict, EngineError> {
    let structure = instance.structure();
    let f = instance.formula();
    require_pattern(f, "eae")?;
    require_class(structure, GraphClass::Basic, "basic")?;
    let bound = logic::bind(structure, f)?;
    let n = structure.universe_size();
    let mut stats = SolveStats::default();
    for s in 0..n as u32 {
        let mut nodes = 0;
        let wsets = all_witness_sets(structure, f, Some(s))?;
        let mut deleted = BTreeSet::new();
        for v in 0..n as u32 {
            if v == s {
                continue;
            }
            if stable_walk_from(&wsets, Some(s), v, WALK_LENGTH_BOUND, &mut nodes).is_none() {
                deleted.insert(v);
            }
        }
        stats.nodes_explored += nodes;
        stats.max_nodes_per_assignment = stats.max_nodes_per_assignment.max(nodes);
        if deleted.len() <= instance.k() {
            let alive: Vec<u32> = (0..n as u32).filter(|v| !deleted.contains(v)).collect();
            // The final check: does some surviving y satisfy psi(s, s, y)?
            if alive.iter().any(|&y| bound.eval_matrix(&[s, s, y])) {
                let witness = DeletionSet::new(deleted, instance.k());
                debug_assert!(instance.verify_witness(&witness).unwrap_or(false));
                return Ok(VDVerdict::yes(witness, stats));
            }
        }
    }
    Ok(VDVerdict::no(stats))
}

/// Decides `ae` vertex deletion on an undirected graph: delete exactly the
/// vertices without a stable (returning) walk; accept iff the budget holds.
pub fn solve_ae_undirected(instance: &VDInstance) -> Result<VDVerdict, EngineError> {
    let structure = instance.structure();
    let f = instance.formula();
    require_pattern(f, "ae")?;
    require_class(structure, GraphClass::Undirected, "undirected")?;
    let n = structure.universe_size();
    let wsets = all_witness_sets(structure, f, None)?;
    let mut stats = SolveStats::default();
    let mut nodes = 0;
    let mut deleted = BTreeSet::new();
    for v in 0..n as u32 {
        if stable_walk_from(&wsets, None, v, WALK_LENGTH_BOUND, &mut nodes).is_none() {
            deleted.insert(v);
        }
    }
    stats.nodes_explored = nodes;
    stats.max_nodes_per_assignment = nodes;
    // Deleting every vertex only counts as a solution in empty-universe
    // mode (the formula is universal, so the empty graph models it).
    let feasible = deleted.len() <= instance.k() && (instance.empty_allowed() || deleted.len() < n);
    if feasible {
        let witness = DeletionSet::new(deleted, instance.k());
        debug_assert!(instance.verify_witness(&witness).unwrap_or(false));
        Ok(VDVerdict::yes(witness, stats))
    } else {
        Ok(VDVerdict::no(stats))
    }
}
