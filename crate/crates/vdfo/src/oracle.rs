//! Brute-force ground truth for vertex deletion: exhaustive subset
//! enumeration plus model checking. Exists to be obviously correct, not
//! fast.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::logic::{self, evaluate, Formula, LogicError, WitnessCache};
use crate::structures::{
    validate_class, DeletionSet, Graph, RelationalStructure, StructureClass, StructureError,
};

/// Default cap on `(subsets to try) * (cost of one model check)`.
pub const DEFAULT_WORK_BOUND: u64 = 100_000_000;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("oracle scale exceeded: ~{estimated} elementary checks, bound {bound}")]
    ScaleExceeded { estimated: u128, bound: u64 },
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// A vertex deletion instance: structure, target formula, and budget.
#[derive(Debug, Clone)]
pub struct VDInstance {
    structure: RelationalStructure,
    class: StructureClass,
    formula: Formula,
    k: usize,
    allow_empty: bool,
}

impl VDInstance {
    /// Validates that the structure matches the class tag and that the
    /// structure's vocabulary covers the formula's relation symbols.
    pub fn new(
        structure: RelationalStructure,
        class: StructureClass,
        formula: Formula,
        k: usize,
    ) -> Result<VDInstance, OracleError> {
        if let Some(gc) = class.graph_class() {
            validate_class(&structure, gc)?;
        }
        logic::bind(&structure, &formula)?;
        Ok(VDInstance {
            structure,
            class,
            formula,
            k,
            allow_empty: false,
        })
    }

    pub fn from_graph(graph: Graph, formula: Formula, k: usize) -> Result<VDInstance, OracleError> {
        let class = graph.class().into();
        Self::new(graph.into_structure(), class, formula, k)
    }

    /// Opts into empty-universe mode: deleting all elements is allowed and
    /// the empty structure satisfies universals vacuously.
    pub fn allow_empty(mut self, allow: bool) -> VDInstance {
        self.allow_empty = allow;
        self
    }

    pub fn structure(&self) -> &RelationalStructure {
        &self.structure
    }

    pub fn class(&self) -> StructureClass {
        self.class
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn empty_allowed(&self) -> bool {
        self.allow_empty
    }

    /// Largest deletion-set size any solver may report: the budget, capped
    /// below the universe size unless empty-universe mode is on.
    pub(crate) fn effective_budget(&self) -> usize {
        let n = self.structure.universe_size();
        if self.allow_empty {
            self.k.min(n)
        } else {
            self.k.min(n.saturating_sub(1))
        }
    }

    /// Re-checks a reported witness independently: delete, then evaluate.
    pub fn verify_witness(&self, witness: &DeletionSet) -> Result<bool, OracleError> {
        if !witness.is_valid_for(self.structure.universe_size()) || witness.len() > self.k {
            return Ok(false);
        }
        let (reduced, _) = if self.allow_empty {
            self.structure
                .delete_elements_allow_empty(&witness.elements)?
        } else {
            self.structure.delete_elements(&witness.elements)?
        };
        Ok(evaluate(&reduced, &self.formula)?)
    }
}

/// Work counters reported by the oracle and the engines.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub subsets_tested: u64,
    pub nodes_explored: u64,
    pub max_nodes_per_assignment: u64,
}

/// The outcome of a vertex deletion decision.
#[derive(Debug, Clone)]
pub struct VDVerdict {
    pub answer: bool,
    pub witness: Option<DeletionSet>,
    pub stats: SolveStats,
}

impl VDVerdict {
    pub fn no(stats: SolveStats) -> VDVerdict {
        VDVerdict {
            answer: false,
            witness: None,
            stats,
        }
    }

    pub fn yes(witness: DeletionSet, stats: SolveStats) -> VDVerdict {
        VDVerdict {
            answer: true,
            witness: Some(witness),
            stats,
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

fn work_estimate(n: usize, kmax: usize, prefix_len: usize) -> u128 {
    let mut subsets: u128 = 0;
    for j in 0..=kmax {
        subsets = subsets.saturating_add(binomial(n, j));
    }
    let mut eval_cost: u128 = 1;
    for _ in 0..prefix_len {
        eval_cost = eval_cost.saturating_mul(n.max(1) as u128);
    }
    subsets.saturating_mul(eval_cost)
}

// Visits size-`j` subsets of `0..n` in lexicographic order.
fn next_combination(c: &mut [u32], n: usize) -> bool {
    let j = c.len();
    let mut i = j;
    while i > 0 && c[i - 1] == (n - j + i - 1) as u32 {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    c[i - 1] += 1;
    for l in i..j {
        c[l] = c[l - 1] + 1;
    }
    true
}

/// Decides the instance by enumerating candidate deletion sets by size,
/// then lexicographically, using the default work bound.
pub fn brute_force_vd(instance: &VDInstance) -> Result<VDVerdict, OracleError> {
    brute_force_vd_bounded(instance, DEFAULT_WORK_BOUND)
}

/// [`brute_force_vd`] with an explicit work bound.
pub fn brute_force_vd_bounded(
    instance: &VDInstance,
    work_bound: u64,
) -> Result<VDVerdict, OracleError> {
    let n = instance.structure.universe_size();
    let kmax = instance.effective_budget();
    let estimated = work_estimate(n, kmax, instance.formula.prefix_len());
    if estimated > work_bound as u128 {
        return Err(OracleError::ScaleExceeded {
            estimated,
            bound: work_bound,
        });
    }
    let bound = logic::bind(&instance.structure, &instance.formula)?;
    let mut cache = WitnessCache::new();
    let mut stats = SolveStats::default();
    let mut alive: Vec<u32> = Vec::with_capacity(n);
    for j in 0..=kmax {
        let mut subset: Vec<u32> = (0..j as u32).collect();
        loop {
            stats.subsets_tested += 1;
            alive.clear();
            let mut it = subset.iter().peekable();
            for e in 0..n as u32 {
                if it.peek() == Some(&&e) {
                    it.next();
                } else {
                    alive.push(e);
                }
            }
            if bound.eval_sentence(&alive, &[], &mut cache) {
                let witness =
                    DeletionSet::new(subset.iter().copied().collect::<BTreeSet<_>>(), instance.k);
                // Independent re-check through the induced substructure.
                assert!(
                    instance.verify_witness(&witness)?,
                    "oracle witness failed independent verification"
                );
                return Ok(VDVerdict::yes(witness, stats));
            }
            if !next_combination(&mut subset, n) {
                break;
            }
        }
    }
    Ok(VDVerdict::no(stats))
}

/// Smallest feasible deletion size up to `cap`, or `None`. Consistent with
/// [`brute_force_vd`] at every budget.
pub fn min_deletion_size(
    structure: &RelationalStructure,
    formula: &Formula,
    cap: usize,
) -> Result<Option<usize>, OracleError> {
    min_deletion_size_bounded(structure, formula, cap, DEFAULT_WORK_BOUND)
}

/// [`min_deletion_size`] with an explicit work bound.
pub fn min_deletion_size_bounded(
    structure: &RelationalStructure,
    formula: &Formula,
    cap: usize,
    work_bound: u64,
) -> Result<Option<usize>, OracleError> {
    let instance = VDInstance::new(
        structure.clone(),
        StructureClass::Arbitrary,
        formula.clone(),
        cap,
    )?;
    let verdict = brute_force_vd_bounded(&instance, work_bound)?;
    Ok(verdict.witness.map(|w| w.len()))
}
