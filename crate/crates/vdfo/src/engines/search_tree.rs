//! The `e*a*e*` solver: a depth-`k` bounded search tree that resolves
//! violations of the universal block.
//!
//! Deleting elements can destroy witnesses needed elsewhere, so unlike the
//! `e*a*` case the violations cannot all be collected up front: the solver
//! finds the lexicographically first universal tuple without a witness and
//! branches on deleting one of its non-constant elements.

use std::collections::BTreeSet;

use super::EngineError;
use crate::classifier::{in_family, PatternFamily};
use crate::logic::{self, Formula};
use crate::oracle::{SolveStats, VDInstance, VDVerdict};
use crate::structures::{DeletionSet, RelationalStructure};

/// A search tree frame: the deletions committed so far under a fixed
/// existential assignment.
#[derive(Debug, Clone)]
pub struct SearchNode {
    pub deleted: BTreeSet<u32>,
    pub assignment: Vec<u32>,
}

impl SearchNode {
    pub fn depth(&self) -> usize {
        self.deleted.len()
    }
}

/// Splits an `e*a*e*` pattern into block lengths `(f, g, h)`.
pub(crate) fn eae_star_shape(f: &Formula) -> Result<(usize, usize, usize), EngineError> {
    let p = f.pattern();
    if !in_family(&p, PatternFamily::EStarAStarEStar) {
        return Err(EngineError::WrongPattern {
            expected: "e*a*e*",
            got: p.to_string(),
        });
    }
    let word = p.as_str().as_bytes();
    let lead = word.iter().take_while(|&&c| c == b'e').count();
    let mid = word[lead..].iter().take_while(|&&c| c == b'a').count();
    Ok((lead, mid, p.len() - lead - mid))
}

struct Blocks {
    existentials: usize,
    universals: usize,
    witnesses: usize,
}

fn check_assignment(
    s: &RelationalStructure,
    c: &[u32],
    expected: usize,
    deleted: &BTreeSet<u32>,
) -> Result<(), EngineError> {
    if c.len() != expected {
        return Err(EngineError::BadArgument(format!(
            "assignment has {} values, the existential block has {expected}",
            c.len()
        )));
    }
    for &v in c {
        if v as usize >= s.universe_size() {
            return Err(EngineError::BadArgument(format!(
                "assignment value {v} out of range"
            )));
        }
        if deleted.contains(&v) {
            return Err(EngineError::BadArgument(format!(
                "assignment value {v} has been deleted"
            )));
        }
    }
    Ok(())
}

/// The lexicographically first tuple for the universal block (over the
/// surviving elements) that no witness tuple satisfies, or `None` if every
/// universal tuple has a witness.
pub fn first_violation(
    s: &RelationalStructure,
    f: &Formula,
    c: &[u32],
    deleted: &BTreeSet<u32>,
) -> Result<Option<Vec<u32>>, EngineError> {
    let (existentials, universals, witnesses) = eae_star_shape(f)?;
    check_assignment(s, c, existentials, deleted)?;
    let bound = logic::bind(s, f)?;
    let alive: Vec<u32> = (0..s.universe_size() as u32)
        .filter(|v| !deleted.contains(v))
        .collect();
    let blocks = Blocks {
        existentials,
        universals,
        witnesses,
    };
    Ok(violation_with(&bound, &blocks, c, &alive))
}

fn violation_with(
    bound: &logic::Bound<'_>,
    blocks: &Blocks,
    c: &[u32],
    alive: &[u32],
) -> Option<Vec<u32>> {
    let mut asg = vec![0u32; blocks.existentials + blocks.universals + blocks.witnesses];
    asg[..blocks.existentials].copy_from_slice(c);
    let mut d_idx = vec![0usize; blocks.universals];
    if alive.is_empty() && blocks.universals > 0 {
        return None;
    }
    loop {
        for (i, &idx) in d_idx.iter().enumerate() {
            asg[blocks.existentials + i] = alive[idx];
        }
        if !has_witness(bound, blocks, &mut asg, alive) {
            return Some(d_idx.iter().map(|&idx| alive[idx]).collect());
        }
        if !bump_idx(&mut d_idx, alive.len()) {
            break;
        }
    }
    None
}

fn has_witness(bound: &logic::Bound<'_>, blocks: &Blocks, asg: &mut [u32], alive: &[u32]) -> bool {
    let base = blocks.existentials + blocks.universals;
    if blocks.witnesses == 0 {
        return bound.eval_matrix(asg);
    }
    if alive.is_empty() {
        return false;
    }
    let mut e_idx = vec![0usize; blocks.witnesses];
    loop {
        for (i, &idx) in e_idx.iter().enumerate() {
            asg[base + i] = alive[idx];
        }
        if bound.eval_matrix(asg) {
            return true;
        }
        if !bump_idx(&mut e_idx, alive.len()) {
            return false;
        }
    }
}

fn bump_idx(idx: &mut [usize], len: usize) -> bool {
    for slot in idx.iter_mut().rev() {
        if *slot + 1 < len {
            *slot += 1;
            return true;
        }
        *slot = 0;
    }
    false
}

/// Decides an `e*a*e*` instance on any structure class: for each
/// existential assignment (lexicographic), recursively resolve the first
/// violation by branching over deleting its non-constant elements, up to
/// depth `k`.
pub fn solve_eae_star(instance: &VDInstance) -> Result<VDVerdict, EngineError> {
    let s = instance.structure();
    let f = instance.formula();
    let (existentials, universals, witnesses) = eae_star_shape(f)?;
    let bound = logic::bind(s, f)?;
    let n = s.universe_size();
    let budget = if existentials == 0 && !instance.empty_allowed() {
        instance.k().min(n.saturating_sub(1))
    } else {
        instance.k()
    };
    let blocks = Blocks {
        existentials,
        universals,
        witnesses,
    };
    let mut stats = SolveStats::default();
    let mut c = vec![0u32; existentials];
    loop {
        let mut node = SearchNode {
            deleted: BTreeSet::new(),
            assignment: c.clone(),
        };
        let mut nodes = 0;
        let found = resolve(&bound, &blocks, &mut node, budget, n, &mut nodes);
        stats.nodes_explored += nodes;
        stats.max_nodes_per_assignment = stats.max_nodes_per_assignment.max(nodes);
        if let Some(deleted) = found {
            let witness = DeletionSet::new(deleted, instance.k());
            debug_assert!(instance.verify_witness(&witness).unwrap_or(false));
            return Ok(VDVerdict::yes(witness, stats));
        }
        if !bump_value(&mut c, n) {
            break;
        }
    }
    Ok(VDVerdict::no(stats))
}

fn bump_value(tuple: &mut [u32], n: usize) -> bool {
    for slot in tuple.iter_mut().rev() {
        if (*slot as usize) + 1 < n {
            *slot += 1;
            return true;
        }
        *slot = 0;
    }
    false
}

fn resolve(
    bound: &logic::Bound<'_>,
    blocks: &Blocks,
    node: &mut SearchNode,
    budget: usize,
    n: usize,
    nodes: &mut u64,
) -> Option<BTreeSet<u32>> {
    *nodes += 1;
    let alive: Vec<u32> = (0..n as u32)
        .filter(|v| !node.deleted.contains(v))
        .collect();
    let violation = match violation_with(bound, blocks, &node.assignment, &alive) {
        None => return Some(node.deleted.clone()),
        Some(d) => d,
    };
    // Branch on the violating tuple's elements as a set, skipping the
    // existential constants.
    let candidates: BTreeSet<u32> = violation
        .into_iter()
        .filter(|d| !node.assignment.contains(d))
        .collect();
    if node.deleted.len() >= budget {
        return None;
    }
    for b in candidates {
        node.deleted.insert(b);
        if let Some(found) = resolve(bound, blocks, node, budget, n, nodes) {
            return Some(found);
        }
        node.deleted.remove(&b);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::hitting_set::solve_ea_star;
    use crate::oracle::brute_force_vd;
    use crate::structures::{Graph, GraphClass};

    const DEG2: &str = "A x E y1 E y2 (x ~ y1 & x ~ y2 & y1 != y2)";
    const VC: &str = "A x A y (!(x ~ y))";

    fn c4_plus_pendant() -> Graph {
        Graph::from_edges(
            GraphClass::Basic,
            5,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)],
        )
        .unwrap()
    }

    #[test]
    fn first_violation_examples() {
        let f = Formula::parse(DEG2).unwrap();
        let v = first_violation(c4_plus_pendant().structure(), &f, &[], &BTreeSet::new()).unwrap();
        assert_eq!(v, Some(vec![4]));

        let c4 =
            Graph::from_edges(GraphClass::Basic, 4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let v = first_violation(c4.structure(), &f, &[], &BTreeSet::new()).unwrap();
        assert_eq!(v, None);

        let k3 = Graph::from_edges(GraphClass::Basic, 3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let vc = Formula::parse(VC).unwrap();
        let v = first_violation(k3.structure(), &vc, &[], &BTreeSet::new()).unwrap();
        assert_eq!(v, Some(vec![0, 1]));
    }

    #[test]
    fn violation_respects_deletions() {
        let f = Formula::parse(DEG2).unwrap();
        let v =
            first_violation(c4_plus_pendant().structure(), &f, &[], &BTreeSet::from([4])).unwrap();
        assert_eq!(v, None);
    }

    #[test]
    fn solve_examples() {
        let f = Formula::parse(DEG2).unwrap();
        let i = VDInstance::from_graph(c4_plus_pendant(), f.clone(), 1).unwrap();
        let v = solve_eae_star(&i).unwrap();
        assert!(v.answer);
        assert_eq!(v.witness.unwrap().elements, BTreeSet::from([4]));

        // Every induced subgraph of a star has a vertex of degree <= 1.
        let star = Graph::from_edges(GraphClass::Basic, 4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let i = VDInstance::from_graph(star, f, 2).unwrap();
        assert!(!solve_eae_star(&i).unwrap().answer);

        let k3 = Graph::from_edges(GraphClass::Basic, 3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let i = VDInstance::from_graph(k3, Formula::parse(VC).unwrap(), 2).unwrap();
        assert!(solve_eae_star(&i).unwrap().answer);
    }

    #[test]
    fn agrees_with_oracle_and_hitting_set() {
        let f = Formula::parse(VC).unwrap();
        let k3 = Graph::from_edges(GraphClass::Basic, 3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        for k in 0..=3 {
            let i = VDInstance::from_graph(k3.clone(), f.clone(), k).unwrap();
            let st = solve_eae_star(&i).unwrap().answer;
            assert_eq!(st, brute_force_vd(&i).unwrap().answer);
            assert_eq!(st, solve_ea_star(&i).unwrap().answer);
        }
    }

    #[test]
    fn wrong_pattern_rejected() {
        let f = Formula::parse("A x E y A z (x = y | x = z)").unwrap();
        let k3 = Graph::from_edges(GraphClass::Basic, 3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let i = VDInstance::from_graph(k3, f, 1).unwrap();
        assert!(matches!(
            solve_eae_star(&i),
            Err(EngineError::WrongPattern { .. })
        ));
    }
}
