//! Finite relational structures, graphs with class tags, and element deletion.
//!
//! Elements are dense indices `0..n`. Graphs are the special case of a
//! structure over the vocabulary `{adj^2}` together with a class tag
//! (`basic`, `undirected` or `directed`). Deleting a set of elements yields
//! the induced substructure on the survivors, re-indexed in ascending order
//! of original index.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// The adjacency symbol used by graph files and the `x ~ y` formula sugar.
pub const ADJ: &str = "adj";

/// Universe size up to which binary relations keep a dense bit table.
const PAIR_TABLE_LIMIT: usize = 1 << 12;

#[derive(Debug, Error)]
pub enum StructureError {
    #[error("universe must be nonempty")]
    EmptyUniverse,
    #[error("universe size {0} too large")]
    UniverseTooLarge(usize),
    #[error("relation {symbol}: tuple has {got} entries, declared arity is {arity}")]
    ArityMismatch {
        symbol: String,
        arity: usize,
        got: usize,
    },
    #[error("relation {symbol}: element {index} out of range (universe size {universe})")]
    ElementOutOfRange {
        symbol: String,
        index: u32,
        universe: usize,
    },
    #[error("relation {0} declared twice")]
    DuplicateRelation(String),
    #[error("relation arity must be positive: {0}")]
    ZeroArity(String),
    #[error("graph vocabulary must be exactly one binary symbol `adj`")]
    NotAGraph,
    #[error("{class} class violated at pair ({}, {})", pair.0, pair.1)]
    ClassViolation { class: GraphClass, pair: (u32, u32) },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("cannot delete the entire universe (empty-universe mode is off)")]
    FullDeletion,
    #[error("deletion index {index} out of range (universe size {universe})")]
    DeletionOutOfRange { index: u32, universe: usize },
}

/// Graph class tags in increasing generality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraphClass {
    Basic,
    Undirected,
    Directed,
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphClass::Basic => "basic",
            GraphClass::Undirected => "undirected",
            GraphClass::Directed => "directed",
        })
    }
}

impl FromStr for GraphClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "basic" => Ok(GraphClass::Basic),
            "undirected" => Ok(GraphClass::Undirected),
            "directed" => Ok(GraphClass::Directed),
            other => Err(format!("unknown graph class: {other}")),
        }
    }
}

/// Structure classes for classification and instance dispatch: the three
/// graph classes plus arbitrary relational structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureClass {
    Basic,
    Undirected,
    Directed,
    Arbitrary,
}

impl StructureClass {
    /// The graph class this tag demands, if any.
    pub fn graph_class(self) -> Option<GraphClass> {
        match self {
            StructureClass::Basic => Some(GraphClass::Basic),
            StructureClass::Undirected => Some(GraphClass::Undirected),
            StructureClass::Directed => Some(GraphClass::Directed),
            StructureClass::Arbitrary => None,
        }
    }
}

impl From<GraphClass> for StructureClass {
    fn from(c: GraphClass) -> Self {
        match c {
            GraphClass::Basic => StructureClass::Basic,
            GraphClass::Undirected => StructureClass::Undirected,
            GraphClass::Directed => StructureClass::Directed,
        }
    }
}

impl fmt::Display for StructureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureClass::Basic => "basic",
            StructureClass::Undirected => "undirected",
            StructureClass::Directed => "directed",
            StructureClass::Arbitrary => "arbitrary",
        })
    }
}

impl FromStr for StructureClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "basic" => Ok(StructureClass::Basic),
            "undirected" => Ok(StructureClass::Undirected),
            "directed" => Ok(StructureClass::Directed),
            "arbitrary" => Ok(StructureClass::Arbitrary),
            other => Err(format!("unknown structure class: {other}")),
        }
    }
}

/// A named relation: declared arity plus the set of tuples that hold.
#[derive(Debug, Clone)]
pub struct Relation {
    arity: usize,
    tuples: BTreeSet<Vec<u32>>,
    // Dense membership table for binary relations on small universes.
    pair_table: Option<Vec<u64>>,
    universe: usize,
}

impl PartialEq for Relation {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.tuples == other.tuples
    }
}

impl Eq for Relation {}

impl Relation {
    fn build(
        symbol: &str,
        arity: usize,
        raw: impl IntoIterator<Item = Vec<u32>>,
        universe: usize,
    ) -> Result<Self, StructureError> {
        if arity == 0 {
            return Err(StructureError::ZeroArity(symbol.to_string()));
        }
        let mut tuples = BTreeSet::new();
        for t in raw {
            if t.len() != arity {
                return Err(StructureError::ArityMismatch {
                    symbol: symbol.to_string(),
                    arity,
                    got: t.len(),
                });
            }
            if let Some(&bad) = t.iter().find(|&&e| e as usize >= universe) {
                return Err(StructureError::ElementOutOfRange {
                    symbol: symbol.to_string(),
                    index: bad,
                    universe,
                });
            }
            tuples.insert(t);
        }
        let pair_table = if arity == 2 && universe <= PAIR_TABLE_LIMIT {
            let mut bits = vec![0u64; (universe * universe).div_ceil(64)];
            for t in &tuples {
                let idx = t[0] as usize * universe + t[1] as usize;
                bits[idx / 64] |= 1 << (idx % 64);
            }
            Some(bits)
        } else {
            None
        };
        Ok(Relation {
            arity,
            tuples,
            pair_table,
            universe,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuples(&self) -> impl Iterator<Item = &[u32]> {
        self.tuples.iter().map(|t| t.as_slice())
    }

    /// Membership test; `tuple` must have the declared arity.
    #[inline]
    pub fn contains(&self, tuple: &[u32]) -> bool {
        debug_assert_eq!(tuple.len(), self.arity);
        if let Some(bits) = &self.pair_table {
            let idx = tuple[0] as usize * self.universe + tuple[1] as usize;
            bits[idx / 64] & (1 << (idx % 64)) != 0
        } else {
            self.tuples.contains(tuple)
        }
    }
}

/// A finite relational structure: a universe `0..n` and named relations.
///
/// Values are immutable after construction and safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationalStructure {
    universe_size: usize,
    relations: BTreeMap<String, Relation>,
}

impl RelationalStructure {
    /// Builds a structure with a nonempty universe, validating arities and
    /// element ranges. Duplicate tuples collapse.
    pub fn new(
        universe_size: usize,
        relations: impl IntoIterator<Item = (String, usize, Vec<Vec<u32>>)>,
    ) -> Result<Self, StructureError> {
        if universe_size == 0 {
            return Err(StructureError::EmptyUniverse);
        }
        Self::build(universe_size, relations)
    }

    // Like `new` but permits the empty universe (used by empty-universe mode).
    fn build(
        universe_size: usize,
        relations: impl IntoIterator<Item = (String, usize, Vec<Vec<u32>>)>,
    ) -> Result<Self, StructureError> {
        if universe_size > u32::MAX as usize {
            return Err(StructureError::UniverseTooLarge(universe_size));
        }
        let mut map = BTreeMap::new();
        for (name, arity, tuples) in relations {
            let rel = Relation::build(&name, arity, tuples, universe_size)?;
            if map.insert(name.clone(), rel).is_some() {
                return Err(StructureError::DuplicateRelation(name));
            }
        }
        Ok(RelationalStructure {
            universe_size,
            relations: map,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.universe_size as u32
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.get(name)
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, &Relation)> {
        self.relations.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// True iff `tuple` is in the named relation.
    pub fn holds(&self, symbol: &str, tuple: &[u32]) -> bool {
        self.relations
            .get(symbol)
            .is_some_and(|r| r.contains(tuple))
    }

    /// Induced substructure on the elements outside `deleted`, together with
    /// the map from new indices to original ones. Rejects deleting the whole
    /// universe.
    pub fn delete_elements(
        &self,
        deleted: &BTreeSet<u32>,
    ) -> Result<(RelationalStructure, Vec<u32>), StructureError> {
        self.delete_impl(deleted, false)
    }

    /// As [`delete_elements`](Self::delete_elements), but the result may have
    /// an empty universe (standard empty-model semantics apply downstream).
    pub fn delete_elements_allow_empty(
        &self,
        deleted: &BTreeSet<u32>,
    ) -> Result<(RelationalStructure, Vec<u32>), StructureError> {
        self.delete_impl(deleted, true)
    }

    fn delete_impl(
        &self,
        deleted: &BTreeSet<u32>,
        allow_empty: bool,
    ) -> Result<(RelationalStructure, Vec<u32>), StructureError> {
        if let Some(&bad) = deleted.iter().find(|&&e| e as usize >= self.universe_size) {
            return Err(StructureError::DeletionOutOfRange {
                index: bad,
                universe: self.universe_size,
            });
        }
        if deleted.len() == self.universe_size && !allow_empty {
            return Err(StructureError::FullDeletion);
        }
        let survivors: Vec<u32> = self.elements().filter(|e| !deleted.contains(e)).collect();
        let mut old_to_new = vec![u32::MAX; self.universe_size];
        for (new, &old) in survivors.iter().enumerate() {
            old_to_new[old as usize] = new as u32;
        }
        let relations = self.relations.iter().map(|(name, rel)| {
            let tuples = rel
                .tuples()
                .filter(|t| t.iter().all(|&e| !deleted.contains(&e)))
                .map(|t| t.iter().map(|&e| old_to_new[e as usize]).collect())
                .collect();
            (name.clone(), rel.arity, tuples)
        });
        let reduced = Self::build(survivors.len(), relations.collect::<Vec<_>>())?;
        Ok((reduced, survivors))
    }
}

/// Checks a graph-shaped structure against a class tag; reports the
/// lexicographically first violating pair.
pub fn validate_class(s: &RelationalStructure, class: GraphClass) -> Result<(), StructureError> {
    let adj = adjacency(s)?;
    if class == GraphClass::Directed {
        return Ok(());
    }
    // Tuples iterate in lexicographic order.
    for t in adj.tuples() {
        let (u, v) = (t[0], t[1]);
        if class == GraphClass::Basic && u == v {
            return Err(StructureError::ClassViolation {
                class,
                pair: (u, v),
            });
        }
        if !adj.contains(&[v, u]) {
            return Err(StructureError::ClassViolation {
                class,
                pair: (u, v),
            });
        }
    }
    Ok(())
}

fn adjacency(s: &RelationalStructure) -> Result<&Relation, StructureError> {
    let mut rels = s.relations();
    match (rels.next(), rels.next()) {
        (Some((name, rel)), None) if name == ADJ && rel.arity() == 2 => Ok(rel),
        _ => Err(StructureError::NotAGraph),
    }
}

/// A graph: a `{adj^2}` structure with a validated class tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    structure: RelationalStructure,
    class: GraphClass,
}

impl Graph {
    /// Builds a graph from an edge list. For `basic` and `undirected` the
    /// symmetric partner of every edge is inserted automatically; `basic`
    /// additionally rejects self-loops.
    pub fn from_edges(
        class: GraphClass,
        n: usize,
        edges: &[(u32, u32)],
    ) -> Result<Graph, StructureError> {
        let mut tuples: BTreeSet<Vec<u32>> = BTreeSet::new();
        for &(u, v) in edges {
            tuples.insert(vec![u, v]);
            if class != GraphClass::Directed {
                tuples.insert(vec![v, u]);
            }
        }
        let structure =
            RelationalStructure::new(n, vec![(ADJ.to_string(), 2, tuples.into_iter().collect())])?;
        Graph::from_structure(structure, class)
    }

    /// Wraps an existing structure, validating vocabulary and class.
    pub fn from_structure(
        structure: RelationalStructure,
        class: GraphClass,
    ) -> Result<Graph, StructureError> {
        validate_class(&structure, class)?;
        Ok(Graph { structure, class })
    }

    pub fn structure(&self) -> &RelationalStructure {
        &self.structure
    }

    pub fn into_structure(self) -> RelationalStructure {
        self.structure
    }

    pub fn class(&self) -> GraphClass {
        self.class
    }

    pub fn n(&self) -> usize {
        self.structure.universe_size()
    }

    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        self.structure.holds(ADJ, &[u, v])
    }

    /// Edge count: unordered pairs for symmetric classes, arcs for directed.
    pub fn edge_count(&self) -> usize {
        let adj = self.structure.relation(ADJ).expect("graph has adj");
        match self.class {
            GraphClass::Directed => adj.len(),
            _ => adj.tuples().filter(|t| t[0] <= t[1]).count(),
        }
    }

    /// Induced subgraph; the class tag is preserved (deletion is
    /// class-preserving).
    pub fn delete_elements(
        &self,
        deleted: &BTreeSet<u32>,
    ) -> Result<(Graph, Vec<u32>), StructureError> {
        let (structure, map) = self.structure.delete_elements(deleted)?;
        debug_assert!(validate_class(&structure, self.class).is_ok());
        Ok((
            Graph {
                structure,
                class: self.class,
            },
            map,
        ))
    }
}

/// A candidate or reported deletion set with its budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeletionSet {
    pub elements: BTreeSet<u32>,
    pub budget: usize,
}

impl DeletionSet {
    pub fn new(elements: BTreeSet<u32>, budget: usize) -> Self {
        DeletionSet { elements, budget }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// All indices in range and the budget respected.
    pub fn is_valid_for(&self, universe_size: usize) -> bool {
        self.elements.len() <= self.budget
            && self.elements.iter().all(|&e| (e as usize) < universe_size)
    }
}

impl fmt::Display for DeletionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.elements {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

/// Result of parsing a structure or graph file.
#[derive(Debug, Clone)]
pub enum ParsedInput {
    Structure(RelationalStructure),
    Graph(Graph),
}

impl ParsedInput {
    pub fn structure(&self) -> &RelationalStructure {
        match self {
            ParsedInput::Structure(s) => s,
            ParsedInput::Graph(g) => g.structure(),
        }
    }

    pub fn declared_class(&self) -> StructureClass {
        match self {
            ParsedInput::Structure(_) => StructureClass::Arbitrary,
            ParsedInput::Graph(g) => g.class().into(),
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> StructureError {
    StructureError::Parse {
        line,
        message: message.into(),
    }
}

// Meaningful lines with their 1-based numbers: comments and blanks stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

/// Parses a structure or graph file (dispatching on the header keyword).
pub fn parse_structure(text: &str) -> Result<ParsedInput, StructureError> {
    let mut lines = content_lines(text);
    let (lno, header) = lines.next().ok_or_else(|| parse_err(0, "empty input"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    match fields[0] {
        "graph" => parse_graph_body(lno, &fields, lines).map(ParsedInput::Graph),
        "structure" => parse_structure_body(lno, &fields, lines).map(ParsedInput::Structure),
        other => Err(parse_err(
            lno,
            format!("expected `graph` or `structure` header, found `{other}`"),
        )),
    }
}

fn parse_usize(lno: usize, s: &str, what: &str) -> Result<usize, StructureError> {
    s.parse()
        .map_err(|_| parse_err(lno, format!("invalid {what}: `{s}`")))
}

fn parse_u32(lno: usize, s: &str, what: &str) -> Result<u32, StructureError> {
    s.parse()
        .map_err(|_| parse_err(lno, format!("invalid {what}: `{s}`")))
}

fn parse_graph_body<'a>(
    hline: usize,
    fields: &[&str],
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<Graph, StructureError> {
    if fields.len() != 3 {
        return Err(parse_err(hline, "graph header must be `graph <class> <n>`"));
    }
    let class: GraphClass = fields[1].parse().map_err(|e: String| parse_err(hline, e))?;
    let n = parse_usize(hline, fields[2], "vertex count")?;
    if n == 0 {
        return Err(parse_err(hline, "universe must be nonempty"));
    }
    let mut edges = Vec::new();
    for (lno, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(parse_err(lno, "edge line must be `<u> <v>`"));
        }
        let u = parse_u32(lno, parts[0], "vertex")?;
        let v = parse_u32(lno, parts[1], "vertex")?;
        if u as usize >= n || v as usize >= n {
            return Err(parse_err(
                lno,
                format!("vertex index out of range (n = {n})"),
            ));
        }
        if class == GraphClass::Basic && u == v {
            return Err(parse_err(
                lno,
                format!("class violation: self-loop {u} {v} in a basic graph"),
            ));
        }
        edges.push((u, v));
    }
    Graph::from_edges(class, n, &edges)
}

fn parse_structure_body<'a>(
    hline: usize,
    fields: &[&str],
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<RelationalStructure, StructureError> {
    if fields.len() != 2 {
        return Err(parse_err(hline, "structure header must be `structure <n>`"));
    }
    let n = parse_usize(hline, fields[1], "universe size")?;
    if n == 0 {
        return Err(parse_err(hline, "universe must be nonempty"));
    }
    let mut relations: Vec<(String, usize, Vec<Vec<u32>>)> = Vec::new();
    let mut current: Option<(usize, String, usize, Vec<Vec<u32>>)> = None;
    for (lno, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts[0] {
            "rel" => {
                if current.is_some() {
                    return Err(parse_err(
                        lno,
                        "previous relation block not closed by `end`",
                    ));
                }
                if parts.len() != 3 {
                    return Err(parse_err(
                        lno,
                        "relation header must be `rel <name> <arity>`",
                    ));
                }
                let arity = parse_usize(lno, parts[2], "arity")?;
                if arity == 0 {
                    return Err(parse_err(lno, "relation arity must be positive"));
                }
                current = Some((lno, parts[1].to_string(), arity, Vec::new()));
            }
            "end" => match current.take() {
                Some((_, name, arity, tuples)) => relations.push((name, arity, tuples)),
                None => return Err(parse_err(lno, "`end` without open relation block")),
            },
            _ => match current.as_mut() {
                Some((_, name, arity, tuples)) => {
                    if parts.len() != *arity {
                        return Err(parse_err(
                            lno,
                            format!(
                                "arity mismatch: relation {name} has arity {arity}, tuple has {} entries",
                                parts.len()
                            ),
                        ));
                    }
                    let mut tuple = Vec::with_capacity(*arity);
                    for p in parts {
                        let e = parse_u32(lno, p, "element")?;
                        if e as usize >= n {
                            return Err(parse_err(
                                lno,
                                format!("element index {e} out of range (n = {n})"),
                            ));
                        }
                        tuple.push(e);
                    }
                    tuples.push(tuple);
                }
                None => {
                    return Err(parse_err(
                        lno,
                        "tuple outside a relation block (expected `rel <name> <arity>`)",
                    ))
                }
            },
        }
    }
    if let Some((lno, name, _, _)) = current {
        return Err(parse_err(
            lno,
            format!("relation {name} not closed by `end`"),
        ));
    }
    RelationalStructure::new(n, relations)
}

/// Renders a graph in the graph file format (symmetric classes list each
/// edge once, smaller endpoint first).
pub fn graph_to_text(g: &Graph) -> String {
    let mut out = format!("graph {} {}\n", g.class(), g.n());
    let adj = g.structure().relation(ADJ).expect("graph has adj");
    for t in adj.tuples() {
        if g.class() != GraphClass::Directed && t[0] > t[1] {
            continue;
        }
        out.push_str(&format!("{} {}\n", t[0], t[1]));
    }
    out
}

/// Renders a structure in the structure file format.
pub fn structure_to_text(s: &RelationalStructure) -> String {
    let mut out = format!("structure {}\n", s.universe_size());
    for (name, rel) in s.relations() {
        out.push_str(&format!("rel {} {}\n", name, rel.arity()));
        for t in rel.tuples() {
            let words: Vec<String> = t.iter().map(|e| e.to_string()).collect();
            out.push_str(&words.join(" "));
            out.push('\n');
        }
        out.push_str("end\n");
    }
    out
}
