//! The `e*a*` solver: one hitting-set instance per assignment of the
//! existential block, solved by a bounded search tree, with the overall
//! answer the disjunction over assignments.
//!
//! For a fixed assignment `c` of the existentials, every assignment of the
//! universal block that falsifies the matrix contributes the hyperedge of
//! its non-`c` elements; a deletion set works for `c` exactly when it hits
//! all these edges. Universal tuples range over the full universe, so a
//! violation among the `c`'s alone yields an empty, unhittable edge.

use std::collections::BTreeSet;

use super::EngineError;
use crate::classifier::{in_family, PatternFamily};
use crate::logic::{self, Formula};
use crate::oracle::{SolveStats, VDInstance, VDVerdict};
use crate::structures::{DeletionSet, RelationalStructure};

/// A hitting-set instance with bounded hyperedge size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSetInstance {
    universe: BTreeSet<u32>,
    edges: BTreeSet<Vec<u32>>,
    max_edge_size: usize,
}

impl HittingSetInstance {
    /// Builds an instance; hyperedges are deduplicated and sorted, must fit
    /// in the universe, and may be empty (rendering the instance
    /// infeasible).
    pub fn new(
        universe: BTreeSet<u32>,
        edges: impl IntoIterator<Item = Vec<u32>>,
        max_edge_size: usize,
    ) -> Result<HittingSetInstance, EngineError> {
        let mut set = BTreeSet::new();
        for mut e in edges {
            e.sort_unstable();
            e.dedup();
            if e.len() > max_edge_size {
                return Err(EngineError::BadArgument(format!(
                    "hyperedge of size {} exceeds bound {max_edge_size}",
                    e.len()
                )));
            }
            if let Some(&bad) = e.iter().find(|x| !universe.contains(x)) {
                return Err(EngineError::BadArgument(format!(
                    "hyperedge element {bad} outside the universe"
                )));
            }
            set.insert(e);
        }
        Ok(HittingSetInstance {
            universe,
            edges: set,
            max_edge_size,
        })
    }

    pub fn universe(&self) -> &BTreeSet<u32> {
        &self.universe
    }

    pub fn edges(&self) -> impl Iterator<Item = &[u32]> {
        self.edges.iter().map(|e| e.as_slice())
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn max_edge_size(&self) -> usize {
        self.max_edge_size
    }

    pub fn has_empty_edge(&self) -> bool {
        self.edges.contains(&Vec::new())
    }
}

/// Splits an `e*a*` pattern into the block lengths `(f, g)`.
pub(crate) fn ea_star_shape(f: &Formula) -> Result<(usize, usize), EngineError> {
    let p = f.pattern();
    if !in_family(&p, PatternFamily::EStarAStar) {
        return Err(EngineError::WrongPattern {
            expected: "e*a*",
            got: p.to_string(),
        });
    }
    let existentials = p.chars().take_while(|&c| c == 'e').count();
    Ok((existentials, p.len() - existentials))
}

/// Builds the hitting-set instance for the existential assignment `c`: the
/// universe is the structure's universe minus the `c`'s, and every
/// violating universal tuple contributes its non-`c` elements as an edge.
pub fn build_hitting_set_instance(
    s: &RelationalStructure,
    f: &Formula,
    c: &[u32],
) -> Result<HittingSetInstance, EngineError> {
    let (existentials, universals) = ea_star_shape(f)?;
    if c.len() != existentials {
        return Err(EngineError::BadArgument(format!(
            "assignment has {} values, the existential block has {existentials}",
            c.len()
        )));
    }
    if let Some(&bad) = c.iter().find(|&&v| v as usize >= s.universe_size()) {
        return Err(EngineError::BadArgument(format!(
            "assignment value {bad} out of range"
        )));
    }
    let bound = logic::bind(s, f)?;
    build_with(s, &bound, c, existentials, universals)
}

fn build_with(
    s: &RelationalStructure,
    bound: &logic::Bound<'_>,
    c: &[u32],
    existentials: usize,
    universals: usize,
) -> Result<HittingSetInstance, EngineError> {
    let n = s.universe_size();
    let cset: BTreeSet<u32> = c.iter().copied().collect();
    let universe: BTreeSet<u32> = (0..n as u32).filter(|v| !cset.contains(v)).collect();
    let mut edges: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut asg = vec![0u32; existentials + universals];
    asg[..existentials].copy_from_slice(c);
    let mut tuple = vec![0u32; universals];
    loop {
        asg[existentials..].copy_from_slice(&tuple);
        if !bound.eval_matrix(&asg) {
            let edge: Vec<u32> = tuple
                .iter()
                .copied()
                .filter(|d| !cset.contains(d))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            edges.insert(edge);
        }
        if !bump(&mut tuple, n) {
            break;
        }
    }
    Ok(HittingSetInstance {
        universe,
        edges,
        max_edge_size: universals,
    })
}

// Advances a tuple over `0..n` in lexicographic order; zero-length tuples
// have exactly one value.
fn bump(tuple: &mut [u32], n: usize) -> bool {
    for slot in tuple.iter_mut().rev() {
        if (*slot as usize) < n - 1 {
            *slot += 1;
            return true;
        }
        *slot = 0;
    }
    false
}

/// Bounded search tree for hitting sets: repeatedly pick the
/// lexicographically smallest uncovered edge and branch on its elements in
/// ascending order, up to depth `k`. Returns the first solution in that
/// order.
pub fn solve_hitting_set(h: &HittingSetInstance, k: usize) -> Option<BTreeSet<u32>> {
    solve_hitting_set_counting(h, k).0
}

/// [`solve_hitting_set`], also reporting the number of search tree nodes.
pub fn solve_hitting_set_counting(
    h: &HittingSetInstance,
    k: usize,
) -> (Option<BTreeSet<u32>>, u64) {
    let mut chosen = BTreeSet::new();
    let mut nodes = 0;
    let found = branch(h, k, &mut chosen, &mut nodes);
    (found, nodes)
}

fn branch(
    h: &HittingSetInstance,
    k: usize,
    chosen: &mut BTreeSet<u32>,
    nodes: &mut u64,
) -> Option<BTreeSet<u32>> {
    *nodes += 1;
    let uncovered = h
        .edges
        .iter()
        .find(|e| !e.iter().any(|x| chosen.contains(x)));
    let edge = match uncovered {
        None => return Some(chosen.clone()),
        Some(e) => e,
    };
    if chosen.len() >= k {
        return None;
    }
    for &x in edge {
        chosen.insert(x);
        if let Some(found) = branch(h, k, chosen, nodes) {
            return Some(found);
        }
        chosen.remove(&x);
    }
    None
}

/// Decides an `e*a*` instance on any structure class: iterate existential
/// assignments in lexicographic order and accept at the first whose
/// hitting-set instance has a solution within budget.
pub fn solve_ea_star(instance: &VDInstance) -> Result<VDVerdict, EngineError> {
    let s = instance.structure();
    let f = instance.formula();
    let (existentials, universals) = ea_star_shape(f)?;
    let bound = logic::bind(s, f)?;
    let n = s.universe_size();
    // A solution never touches the existential assignment, so only a fully
    // existential-free formula could consume the whole universe.
    let budget = if existentials == 0 && !instance.empty_allowed() {
        instance.k().min(n.saturating_sub(1))
    } else {
        instance.k()
    };
    let mut stats = SolveStats::default();
    let mut c = vec![0u32; existentials];
    loop {
        let h = build_with(s, &bound, &c, existentials, universals)?;
        debug_assert!(h.edges().all(|e| e.len() <= universals));
        let (solution, nodes) = solve_hitting_set_counting(&h, budget);
        stats.nodes_explored += nodes;
        stats.max_nodes_per_assignment = stats.max_nodes_per_assignment.max(nodes);
        if let Some(x) = solution {
            debug_assert!(x.iter().all(|v| !c.contains(v)));
            let witness = DeletionSet::new(x, instance.k());
            debug_assert!(instance.verify_witness(&witness).unwrap_or(false));
            return Ok(VDVerdict::yes(witness, stats));
        }
        if !bump(&mut c, n) {
            break;
        }
    }
    Ok(VDVerdict::no(stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_force_vd;
    use crate::structures::{Graph, GraphClass};

    const VC: &str = "A x A y (!(x ~ y))";

    fn k3() -> Graph {
        Graph::from_edges(GraphClass::Basic, 3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn build_on_k3_vertex_cover() {
        let f = Formula::parse(VC).unwrap();
        let h = build_hitting_set_instance(k3().structure(), &f, &[]).unwrap();
        assert_eq!(h.universe(), &BTreeSet::from([0, 1, 2]));
        let edges: Vec<&[u32]> = h.edges().collect();
        assert_eq!(edges, vec![&[0, 1][..], &[0, 2], &[1, 2]]);
        assert_eq!(h.max_edge_size(), 2);
    }

    #[test]
    fn build_on_edgeless_graph_has_no_edges() {
        let g = Graph::from_edges(GraphClass::Basic, 3, &[]).unwrap();
        let f = Formula::parse(VC).unwrap();
        let h = build_hitting_set_instance(g.structure(), &f, &[]).unwrap();
        assert_eq!(h.edge_count(), 0);
    }

    #[test]
    fn build_with_existential_assignment() {
        let g = Graph::from_edges(GraphClass::Basic, 2, &[(0, 1)]).unwrap();
        let f = Formula::parse("E x A y (x = y)").unwrap();
        let h = build_hitting_set_instance(g.structure(), &f, &[0]).unwrap();
        assert_eq!(h.universe(), &BTreeSet::from([1]));
        let edges: Vec<&[u32]> = h.edges().collect();
        assert_eq!(edges, vec![&[1][..]]);
    }

    #[test]
    fn violation_among_constants_yields_empty_edge() {
        let g = Graph::from_edges(GraphClass::Basic, 2, &[]).unwrap();
        let f = Formula::parse("E x A y (x ~ y)").unwrap();
        let h = build_hitting_set_instance(g.structure(), &f, &[0]).unwrap();
        assert!(h.has_empty_edge());
        assert_eq!(solve_hitting_set(&h, 5), None);
    }

    #[test]
    fn solve_hitting_set_examples() {
        let h = HittingSetInstance::new(BTreeSet::from([1, 2, 3]), vec![vec![1, 2], vec![2, 3]], 2)
            .unwrap();
        assert_eq!(solve_hitting_set(&h, 1), Some(BTreeSet::from([2])));

        let h = HittingSetInstance::new(BTreeSet::from([1, 2]), vec![vec![1], vec![2]], 1).unwrap();
        assert_eq!(solve_hitting_set(&h, 1), None);
        assert_eq!(solve_hitting_set(&h, 2), Some(BTreeSet::from([1, 2])));
    }

    #[test]
    fn solve_ea_star_examples() {
        let f = Formula::parse(VC).unwrap();
        let i = VDInstance::from_graph(k3(), f, 2).unwrap();
        let v = solve_ea_star(&i).unwrap();
        assert!(v.answer);
        assert_eq!(v.witness.unwrap().elements.len(), 2);

        let p4 = Graph::from_edges(GraphClass::Basic, 4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let dom = Formula::parse("E x A y (x = y | x ~ y)").unwrap();
        let i = VDInstance::from_graph(p4.clone(), dom.clone(), 1).unwrap();
        let v = solve_ea_star(&i).unwrap();
        assert!(v.answer);
        assert_eq!(v.witness.unwrap().elements, BTreeSet::from([3]));
        let i = VDInstance::from_graph(p4, dom, 0).unwrap();
        assert!(!solve_ea_star(&i).unwrap().answer);
    }

    #[test]
    fn agrees_with_oracle_on_spec_examples() {
        for k in 0..=3 {
            let f = Formula::parse(VC).unwrap();
            let i = VDInstance::from_graph(k3(), f, k).unwrap();
            assert_eq!(
                solve_ea_star(&i).unwrap().answer,
                brute_force_vd(&i).unwrap().answer
            );
        }
    }

    #[test]
    fn wrong_pattern_rejected() {
        let f = Formula::parse("A x E y (x ~ y)").unwrap();
        let i = VDInstance::from_graph(k3(), f, 1).unwrap();
        assert!(matches!(
            solve_ea_star(&i),
            Err(EngineError::WrongPattern { .. })
        ));
    }

    #[test]
    fn full_deletion_respects_empty_mode() {
        // "A y (y ~ y)" forces deleting everything; only allowed when empty
        // mode is on.
        let g = Graph::from_edges(GraphClass::Undirected, 2, &[]).unwrap();
        let f = Formula::parse("A y (y ~ y)").unwrap();
        let i = VDInstance::from_graph(g.clone(), f.clone(), 2).unwrap();
        assert!(!solve_ea_star(&i).unwrap().answer);
        let i = VDInstance::from_graph(g, f, 2).unwrap().allow_empty(true);
        let v = solve_ea_star(&i).unwrap();
        assert!(v.answer);
        assert_eq!(v.witness.unwrap().elements, BTreeSet::from([0, 1]));
    }
}
