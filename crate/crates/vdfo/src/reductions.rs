//! Hardness-side instance generators: matched-reach and set-cover sources,
//! and the six gadget reductions to vertex deletion, each paired with its
//! canonical target formula.
//!
//! All reductions keep the budget (`k' = k`) and append gadget vertices
//! after the original ones in a fixed documented order, recorded in the
//! provenance map. Original vertex `(layer i, row r)` of a matched-reach
//! instance gets index `i*n + r` (layers 0-based internally; the color
//! rules below use the source numbering, where original layers are
//! `1..=k`).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use thiserror::Error;

use crate::logic::Formula;
use crate::structures::{Graph, GraphClass, StructureError};

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("matched-reach needs n >= 1 and k >= 1 (got n = {n}, k = {k})")]
    BadDimensions { n: usize, k: usize },
    #[error("expected {expected} matchings, got {got}")]
    WrongMatchingCount { expected: usize, got: usize },
    #[error("matching {index} is not a permutation of 0..{n}")]
    NotAPermutation { index: usize, n: usize },
    #[error("row index {row} out of range (n = {n})")]
    RowOutOfRange { row: u32, n: usize },
    #[error("set-cover edge ({s}, {u}) out of range")]
    EdgeOutOfRange { s: u32, u: u32 },
    #[error("the {target} reduction takes {needs} sources")]
    WrongSourceKind {
        target: ReductionTarget,
        needs: &'static str,
    },
    #[error("cannot reduce an empty set-cover instance (no vertices would be produced)")]
    EmptySource,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Reachability in a layered digraph whose consecutive layers are joined by
/// perfect matchings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchedReachInstance {
    n: usize,
    k: usize,
    matchings: Vec<Vec<u32>>,
    s_row: u32,
    t_row: u32,
}

impl MatchedReachInstance {
    /// Validates explicit matchings: `k - 1` bijections on `0..n`.
    pub fn new(
        n: usize,
        k: usize,
        matchings: Vec<Vec<u32>>,
        s_row: u32,
        t_row: u32,
    ) -> Result<Self, ReductionError> {
        if n == 0 || k == 0 {
            return Err(ReductionError::BadDimensions { n, k });
        }
        if matchings.len() != k - 1 {
            return Err(ReductionError::WrongMatchingCount {
                expected: k - 1,
                got: matchings.len(),
            });
        }
        for (index, m) in matchings.iter().enumerate() {
            let mut seen = vec![false; n];
            if m.len() != n {
                return Err(ReductionError::NotAPermutation { index, n });
            }
            for &img in m {
                if img as usize >= n || seen[img as usize] {
                    return Err(ReductionError::NotAPermutation { index, n });
                }
                seen[img as usize] = true;
            }
        }
        for row in [s_row, t_row] {
            if row as usize >= n {
                return Err(ReductionError::RowOutOfRange { row, n });
            }
        }
        Ok(MatchedReachInstance {
            n,
            k,
            matchings,
            s_row,
            t_row,
        })
    }

    /// Seeded pseudo-random matchings; regeneration from the same seed is
    /// identical.
    pub fn generate(
        n: usize,
        k: usize,
        seed: u64,
        s_row: u32,
        t_row: u32,
    ) -> Result<Self, ReductionError> {
        if n == 0 || k == 0 {
            return Err(ReductionError::BadDimensions { n, k });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let matchings = (0..k - 1)
            .map(|_| {
                let mut perm: Vec<u32> = (0..n as u32).collect();
                perm.shuffle(&mut rng);
                perm
            })
            .collect();
        Self::new(n, k, matchings, s_row, t_row)
    }

    pub fn paths(&self) -> usize {
        self.n
    }

    pub fn layers(&self) -> usize {
        self.k
    }

    pub fn matchings(&self) -> &[Vec<u32>] {
        &self.matchings
    }

    pub fn s_row(&self) -> u32 {
        self.s_row
    }

    pub fn t_row(&self) -> u32 {
        self.t_row
    }

    /// True iff `t` is reachable from `s`: the matching composition maps
    /// `s_row` to `t_row`.
    pub fn reach_answer(&self) -> bool {
        let mut row = self.s_row;
        for m in &self.matchings {
            row = m[row as usize];
        }
        row == self.t_row
    }

    fn vertex(&self, layer: usize, row: u32) -> u32 {
        (layer * self.n) as u32 + row
    }
}

/// A set-cover source: bipartite adjacency between `S` and `U` plus a
/// budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoverInstance {
    s_size: usize,
    u_size: usize,
    k: usize,
    edges: BTreeSet<(u32, u32)>,
}

impl SetCoverInstance {
    pub fn new(
        s_size: usize,
        u_size: usize,
        k: usize,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self, ReductionError> {
        let edges: BTreeSet<(u32, u32)> = edges.into_iter().collect();
        for &(s, u) in &edges {
            if s as usize >= s_size || u as usize >= u_size {
                return Err(ReductionError::EdgeOutOfRange { s, u });
            }
        }
        Ok(SetCoverInstance {
            s_size,
            u_size,
            k,
            edges,
        })
    }

    /// Seeded random bipartite adjacency with edge probability 1/2.
    pub fn generate(s_size: usize, u_size: usize, k: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = BTreeSet::new();
        for s in 0..s_size as u32 {
            for u in 0..u_size as u32 {
                if rand::Rng::gen_bool(&mut rng, 0.5) {
                    edges.insert((s, u));
                }
            }
        }
        SetCoverInstance {
            s_size,
            u_size,
            k,
            edges,
        }
    }

    pub fn s_size(&self) -> usize {
        self.s_size
    }

    pub fn u_size(&self) -> usize {
        self.u_size
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn covers(&self, s: u32, u: u32) -> bool {
        self.edges.contains(&(s, u))
    }
}

/// The six reduction targets; the first five take matched-reach sources,
/// `aea` takes set-cover sources.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionTarget {
    EeaeBasic,
    AaeBasic,
    AeeBasic,
    EaeUndirected,
    AeDirected,
    Aea,
}

impl ReductionTarget {
    pub const ALL: [ReductionTarget; 6] = [
        ReductionTarget::EeaeBasic,
        ReductionTarget::AaeBasic,
        ReductionTarget::AeeBasic,
        ReductionTarget::EaeUndirected,
        ReductionTarget::AeDirected,
        ReductionTarget::Aea,
    ];

    /// The five targets fed from matched-reach sources.
    pub const MATCHED_REACH: [ReductionTarget; 5] = [
        ReductionTarget::EeaeBasic,
        ReductionTarget::AaeBasic,
        ReductionTarget::AeeBasic,
        ReductionTarget::EaeUndirected,
        ReductionTarget::AeDirected,
    ];

    pub fn output_class(self) -> GraphClass {
        match self {
            ReductionTarget::EeaeBasic
            | ReductionTarget::AaeBasic
            | ReductionTarget::AeeBasic
            | ReductionTarget::Aea => GraphClass::Basic,
            ReductionTarget::EaeUndirected => GraphClass::Undirected,
            ReductionTarget::AeDirected => GraphClass::Directed,
        }
    }
}

impl fmt::Display for ReductionTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductionTarget::EeaeBasic => "eeae_basic",
            ReductionTarget::AaeBasic => "aae_basic",
            ReductionTarget::AeeBasic => "aee_basic",
            ReductionTarget::EaeUndirected => "eae_undirected",
            ReductionTarget::AeDirected => "ae_directed",
            ReductionTarget::Aea => "aea",
        })
    }
}

impl FromStr for ReductionTarget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "eeae_basic" => Ok(ReductionTarget::EeaeBasic),
            "aae_basic" => Ok(ReductionTarget::AaeBasic),
            "aee_basic" => Ok(ReductionTarget::AeeBasic),
            "eae_undirected" => Ok(ReductionTarget::EaeUndirected),
            "ae_directed" => Ok(ReductionTarget::AeDirected),
            "aea" => Ok(ReductionTarget::Aea),
            other => Err(format!("unknown reduction target: {other}")),
        }
    }
}

/// What a vertex of a reduced instance stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexRole {
    /// Original matched-reach vertex (0-based layer).
    Original {
        layer: usize,
        row: u32,
    },
    /// Pendant at a path end (source layer `k+1`).
    EndPendant {
        row: u32,
    },
    /// First triangle vertex at a path start (source layer `0`).
    StartTriangleFirst {
        row: u32,
    },
    /// Second triangle vertex at a path start (source layer `-1`).
    StartTriangleSecond {
        row: u32,
    },
    /// The color vertices of the eeae/eae constructions.
    ColorC1,
    ColorC2,
    /// One of the `k+1` dangling vertices at `s` (aae).
    SourceDangling {
        copy: usize,
    },
    /// Apex of the `copy`-th parallel triangle on the `edge`-th
    /// triangle-bearing edge (aae).
    EdgeApex {
        edge: usize,
        copy: usize,
    },
    /// The single vertex adjacent to path starts and ends (aee).
    DegreeAnchor,
    /// New predecessor of a path start (ae, directed).
    NewPredecessor {
        row: u32,
    },
    /// Set-cover gadget vertices: the cover element and its 4-cycle.
    CoverSet {
        s: u32,
    },
    CoverCycle1 {
        s: u32,
    },
    CoverCycle2 {
        s: u32,
    },
    CoverCycle3 {
        s: u32,
    },
    /// Copy of a universe element (aea).
    UniverseCopy {
        u: u32,
        copy: usize,
    },
}

impl fmt::Display for VertexRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexRole::Original { layer, row } => write!(f, "original({layer},{row})"),
            VertexRole::EndPendant { row } => write!(f, "end_pendant({row})"),
            VertexRole::StartTriangleFirst { row } => write!(f, "start_triangle_first({row})"),
            VertexRole::StartTriangleSecond { row } => write!(f, "start_triangle_second({row})"),
            VertexRole::ColorC1 => write!(f, "c1"),
            VertexRole::ColorC2 => write!(f, "c2"),
            VertexRole::SourceDangling { copy } => write!(f, "source_dangling({copy})"),
            VertexRole::EdgeApex { edge, copy } => write!(f, "edge_apex({edge},{copy})"),
            VertexRole::DegreeAnchor => write!(f, "degree_anchor"),
            VertexRole::NewPredecessor { row } => write!(f, "new_predecessor({row})"),
            VertexRole::CoverSet { s } => write!(f, "cover_set({s})"),
            VertexRole::CoverCycle1 { s } => write!(f, "cover_cycle1({s})"),
            VertexRole::CoverCycle2 { s } => write!(f, "cover_cycle2({s})"),
            VertexRole::CoverCycle3 { s } => write!(f, "cover_cycle3({s})"),
            VertexRole::UniverseCopy { u, copy } => write!(f, "universe_copy({u},{copy})"),
        }
    }
}

/// A reduced vertex deletion instance with its canonical formula and the
/// role of every vertex.
#[derive(Debug, Clone)]
pub struct ReducedInstance {
    pub graph: Graph,
    pub k_prime: usize,
    pub formula: Formula,
    pub provenance: Vec<VertexRole>,
}

/// The canonical formula attached to each reduction target; its pattern is
/// the target's name.
pub fn target_formula(target: ReductionTarget) -> Formula {
    let text = match target {
        ReductionTarget::EeaeBasic => {
            "E c1 E c2 A x E y (((x != c1) & (x != c2)) -> \
             ((y != c1) & (y != c2) & (c1 != c2) & ((c1 ~ x) | (c2 ~ x)) & (x ~ y) & \
             (((x ~ c1) & (x ~ c2)) -> (!(y ~ c1) & (y ~ c2))) & \
             ((!(x ~ c1) & (x ~ c2)) -> ((y ~ c1) & !(y ~ c2))) & \
             (((x ~ c1) & !(x ~ c2)) -> ((y ~ c1) & (y ~ c2)))))"
        }
        ReductionTarget::AaeBasic => "A x A y E z ((x ~ y) -> ((x ~ z) & (y ~ z)))",
        ReductionTarget::AeeBasic => "A x E y1 E y2 ((x ~ y1) & (x ~ y2) & (y1 != y2))",
        ReductionTarget::EaeUndirected => {
            "E c1 A x E y ((x != c1) -> \
             ((y != c1) & ((c1 ~ x) | (x ~ x)) & (x ~ y) & \
             (((x ~ c1) & (x ~ x)) -> (!(y ~ c1) & (y ~ y))) & \
             ((!(x ~ c1) & (x ~ x)) -> ((y ~ c1) & !(y ~ y))) & \
             (((x ~ c1) & !(x ~ x)) -> ((y ~ c1) & (y ~ y)))))"
        }
        ReductionTarget::AeDirected => "A x E y (x ~ y)",
        ReductionTarget::Aea => "A x E y A z (((x ~ y) & ((y ~ z) -> !(x ~ z))) | (x = z))",
    };
    Formula::parse(text).expect("canonical formula parses")
}

// Offsets from a source layer index (original layers are 1..=k, gadget
// layers -1, 0 and k+1) to the three-coloring used by the eeae and eae
// constructions: color i vertices attach to c1 (i=0), c2 (i=1) or both
// (i=2).
fn color_of_source_layer(layer: isize) -> u8 {
    (layer.rem_euclid(3)) as u8
}

struct GadgetBuilder {
    roles: Vec<VertexRole>,
    edges: Vec<(u32, u32)>,
}

impl GadgetBuilder {
    fn with_originals(m: &MatchedReachInstance) -> Self {
        let mut roles = Vec::new();
        for layer in 0..m.k {
            for row in 0..m.n as u32 {
                roles.push(VertexRole::Original { layer, row });
            }
        }
        GadgetBuilder {
            roles,
            edges: Vec::new(),
        }
    }

    fn path_edges(&mut self, m: &MatchedReachInstance) {
        for (i, matching) in m.matchings.iter().enumerate() {
            for row in 0..m.n as u32 {
                self.edges
                    .push((m.vertex(i, row), m.vertex(i + 1, matching[row as usize])));
            }
        }
    }

    fn add(&mut self, role: VertexRole) -> u32 {
        self.roles.push(role);
        (self.roles.len() - 1) as u32
    }

    fn edge(&mut self, u: u32, v: u32) {
        self.edges.push((u, v));
    }

    fn finish(
        self,
        class: GraphClass,
        k_prime: usize,
        target: ReductionTarget,
    ) -> Result<ReducedInstance, ReductionError> {
        let graph = Graph::from_edges(class, self.roles.len(), &self.edges)?;
        Ok(ReducedInstance {
            graph,
            k_prime,
            formula: target_formula(target),
            provenance: self.roles,
        })
    }
}

// The source layer (in 1..=k numbering, gadget layers -1, 0, k+1) a vertex
// role occupies, for the color rules.
fn source_layer(role: &VertexRole, k: usize) -> Option<isize> {
    match role {
        VertexRole::Original { layer, .. } => Some(*layer as isize + 1),
        VertexRole::EndPendant { .. } => Some(k as isize + 1),
        VertexRole::StartTriangleFirst { .. } => Some(0),
        VertexRole::StartTriangleSecond { .. } => Some(-1),
        _ => None,
    }
}

/// Applies one of the five matched-reach reductions. `k' = k` always.
pub fn reduce_matched_reach(
    m: &MatchedReachInstance,
    target: ReductionTarget,
) -> Result<ReducedInstance, ReductionError> {
    match target {
        ReductionTarget::EeaeBasic => reduce_eeae(m, false),
        ReductionTarget::EaeUndirected => reduce_eeae(m, true),
        ReductionTarget::AaeBasic => reduce_aae(m),
        ReductionTarget::AeeBasic => reduce_aee(m),
        ReductionTarget::AeDirected => reduce_ae_directed(m),
        ReductionTarget::Aea => Err(ReductionError::WrongSourceKind {
            target,
            needs: "set-cover",
        }),
    }
}

// eeae on basic graphs, and its undirected eae variant where the second
// color vertex is replaced by self-loops.
fn reduce_eeae(
    m: &MatchedReachInstance,
    self_loops: bool,
) -> Result<ReducedInstance, ReductionError> {
    let mut b = GadgetBuilder::with_originals(m);
    b.path_edges(m);
    for row in 0..m.n as u32 {
        if row != m.t_row {
            let pendant = b.add(VertexRole::EndPendant { row });
            b.edge(m.vertex(m.k - 1, row), pendant);
        }
    }
    for row in 0..m.n as u32 {
        if row != m.s_row {
            let first = b.add(VertexRole::StartTriangleFirst { row });
            let second = b.add(VertexRole::StartTriangleSecond { row });
            let start = m.vertex(0, row);
            b.edge(start, first);
            b.edge(first, second);
            b.edge(second, start);
        }
    }
    let c1 = b.add(VertexRole::ColorC1);
    let c2 = if self_loops {
        None
    } else {
        Some(b.add(VertexRole::ColorC2))
    };
    for v in 0..b.roles.len() as u32 {
        let layer = match source_layer(&b.roles[v as usize], m.k) {
            Some(layer) => layer,
            None => continue,
        };
        match color_of_source_layer(layer) {
            0 => b.edge(c1, v),
            1 => match c2 {
                Some(c2) => b.edge(c2, v),
                None => b.edge(v, v),
            },
            _ => {
                b.edge(c1, v);
                match c2 {
                    Some(c2) => b.edge(c2, v),
                    None => b.edge(v, v),
                }
            }
        }
    }
    let (class, target) = if self_loops {
        (GraphClass::Undirected, ReductionTarget::EaeUndirected)
    } else {
        (GraphClass::Basic, ReductionTarget::EeaeBasic)
    };
    b.finish(class, m.k, target)
}

// aae: dangling edges at s force the s-path to be deleted; parallel
// triangles on every other edge propagate the forcing.
fn reduce_aae(m: &MatchedReachInstance) -> Result<ReducedInstance, ReductionError> {
    let mut b = GadgetBuilder::with_originals(m);
    b.path_edges(m);
    let mut triangle_bearing: Vec<(u32, u32)> = b.edges.clone();
    for row in 0..m.n as u32 {
        if row != m.t_row {
            let pendant = b.add(VertexRole::EndPendant { row });
            b.edge(m.vertex(m.k - 1, row), pendant);
            triangle_bearing.push((m.vertex(m.k - 1, row), pendant));
        }
    }
    let s = m.vertex(0, m.s_row);
    for copy in 0..=m.k {
        let dangling = b.add(VertexRole::SourceDangling { copy });
        b.edge(s, dangling);
    }
    for (edge, &(u, v)) in triangle_bearing.iter().enumerate() {
        for copy in 0..=m.k {
            let apex = b.add(VertexRole::EdgeApex { edge, copy });
            b.edge(u, apex);
            b.edge(v, apex);
        }
    }
    b.finish(GraphClass::Basic, m.k, ReductionTarget::AaeBasic)
}

// aee: one new vertex adjacent to all path starts and ends except s and t.
fn reduce_aee(m: &MatchedReachInstance) -> Result<ReducedInstance, ReductionError> {
    assert!(m.k >= 1, "matched-reach instances have k >= 1");
    let mut b = GadgetBuilder::with_originals(m);
    b.path_edges(m);
    let anchor = b.add(VertexRole::DegreeAnchor);
    let s = m.vertex(0, m.s_row);
    let t = m.vertex(m.k - 1, m.t_row);
    let mut outer: BTreeSet<u32> = (0..m.n as u32).map(|row| m.vertex(0, row)).collect();
    outer.extend((0..m.n as u32).map(|row| m.vertex(m.k - 1, row)));
    for v in outer {
        if v != s && v != t {
            b.edge(anchor, v);
        }
    }
    b.finish(GraphClass::Basic, m.k, ReductionTarget::AeeBasic)
}

// ae on directed graphs: self-loops at path ends except t, and a new
// predecessor at each path start except s.
fn reduce_ae_directed(m: &MatchedReachInstance) -> Result<ReducedInstance, ReductionError> {
    let mut b = GadgetBuilder::with_originals(m);
    b.path_edges(m);
    for row in 0..m.n as u32 {
        if row != m.t_row {
            let end = m.vertex(m.k - 1, row);
            b.edge(end, end);
        }
    }
    for row in 0..m.n as u32 {
        if row != m.s_row {
            let pred = b.add(VertexRole::NewPredecessor { row });
            b.edge(pred, m.vertex(0, row));
        }
    }
    b.finish(GraphClass::Directed, m.k, ReductionTarget::AeDirected)
}

/// The set-cover reduction for the `aea` fragment: a 4-cycle per cover
/// set, `k+1` copies per universe element, and a triangle through `s` and
/// `s'` for every source edge.
pub fn reduce_set_cover_aea(sc: &SetCoverInstance) -> Result<ReducedInstance, ReductionError> {
    if sc.s_size == 0 && sc.u_size == 0 {
        return Err(ReductionError::EmptySource);
    }
    let mut roles = Vec::new();
    let mut edges = Vec::new();
    for s in 0..sc.s_size as u32 {
        let base = 4 * s;
        roles.push(VertexRole::CoverSet { s });
        roles.push(VertexRole::CoverCycle1 { s });
        roles.push(VertexRole::CoverCycle2 { s });
        roles.push(VertexRole::CoverCycle3 { s });
        edges.push((base, base + 1));
        edges.push((base + 1, base + 2));
        edges.push((base + 2, base + 3));
        edges.push((base + 3, base));
    }
    let copies_base = (4 * sc.s_size) as u32;
    let copies = sc.k + 1;
    for u in 0..sc.u_size as u32 {
        for copy in 0..copies {
            roles.push(VertexRole::UniverseCopy { u, copy });
        }
    }
    let copy_vertex = |u: u32, copy: usize| copies_base + u * copies as u32 + copy as u32;
    for (s, u) in sc.edges() {
        for copy in 0..copies {
            edges.push((copy_vertex(u, copy), 4 * s));
            edges.push((copy_vertex(u, copy), 4 * s + 1));
        }
    }
    let graph = Graph::from_edges(GraphClass::Basic, roles.len(), &edges)?;
    Ok(ReducedInstance {
        graph,
        k_prime: sc.k,
        formula: target_formula(ReductionTarget::Aea),
        provenance: roles,
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> ReductionError {
    ReductionError::Parse {
        line,
        message: message.into(),
    }
}

/// Which source kind a file holds.
#[derive(Debug, Clone)]
pub enum ParsedSource {
    MatchedReach(MatchedReachInstance),
    SetCover(SetCoverInstance),
}

/// Parses a matched-reach or set-cover file (dispatching on the header).
pub fn parse_source(text: &str) -> Result<ParsedSource, ReductionError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                None
            } else {
                Some((i + 1, line))
            }
        })
        .peekable();
    let (lno, header) = lines.next().ok_or_else(|| parse_err(0, "empty input"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let parse_num = |lno: usize, s: &str, what: &str| -> Result<usize, ReductionError> {
        s.parse()
            .map_err(|_| parse_err(lno, format!("invalid {what}: `{s}`")))
    };
    match fields[0] {
        "mreach" => {
            if fields.len() != 5 {
                return Err(parse_err(
                    lno,
                    "header must be `mreach <n> <k> <s_row> <t_row>`",
                ));
            }
            let n = parse_num(lno, fields[1], "n")?;
            let k = parse_num(lno, fields[2], "k")?;
            let s_row = parse_num(lno, fields[3], "s_row")? as u32;
            let t_row = parse_num(lno, fields[4], "t_row")? as u32;
            let mut matchings = Vec::new();
            for (lno, line) in lines {
                let perm = line
                    .split_whitespace()
                    .map(|w| parse_num(lno, w, "row").map(|v| v as u32))
                    .collect::<Result<Vec<u32>, _>>()?;
                matchings.push(perm);
            }
            MatchedReachInstance::new(n, k, matchings, s_row, t_row).map(ParsedSource::MatchedReach)
        }
        "setcover" => {
            if fields.len() != 4 {
                return Err(parse_err(lno, "header must be `setcover <|S|> <|U|> <k>`"));
            }
            let s_size = parse_num(lno, fields[1], "|S|")?;
            let u_size = parse_num(lno, fields[2], "|U|")?;
            let k = parse_num(lno, fields[3], "k")?;
            let mut edges = Vec::new();
            for (lno, line) in lines {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(parse_err(lno, "edge line must be `<s> <u>`"));
                }
                edges.push((
                    parse_num(lno, parts[0], "s")? as u32,
                    parse_num(lno, parts[1], "u")? as u32,
                ));
            }
            SetCoverInstance::new(s_size, u_size, k, edges).map(ParsedSource::SetCover)
        }
        other => Err(parse_err(
            lno,
            format!("expected `mreach` or `setcover` header, found `{other}`"),
        )),
    }
}

pub fn matched_reach_to_text(m: &MatchedReachInstance) -> String {
    let mut out = format!("mreach {} {} {} {}\n", m.n, m.k, m.s_row, m.t_row);
    for perm in &m.matchings {
        let words: Vec<String> = perm.iter().map(|v| v.to_string()).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

pub fn set_cover_to_text(sc: &SetCoverInstance) -> String {
    let mut out = format!("setcover {} {} {}\n", sc.s_size, sc.u_size, sc.k);
    for (s, u) in sc.edges() {
        out.push_str(&format!("{s} {u}\n"));
    }
    out
}
