//! Shared test support: seeded random graphs and formulas, a test-side
//! matrix AST for metamorphic rewrites, and small combinatorial helpers.
//!
//! Everything is driven by ChaCha8 so corpora are reproducible from seeds.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vdfo::structures::{Graph, GraphClass, RelationalStructure};
use vdfo::Formula;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random structure over the vocabulary `{adj^2, mark^1}` with 1..=n_max
/// elements; adjacency is unconstrained (loops, asymmetry).
pub fn random_structure(rng: &mut ChaCha8Rng, n_max: usize) -> RelationalStructure {
    let n = rng.gen_range(1..=n_max);
    let p: f64 = rng.gen_range(0.15..0.85);
    let mut adj = Vec::new();
    for u in 0..n as u32 {
        for v in 0..n as u32 {
            if rng.gen_bool(p) {
                adj.push(vec![u, v]);
            }
        }
    }
    let marks: Vec<Vec<u32>> = (0..n as u32)
        .filter(|_| rng.gen_bool(0.5))
        .map(|v| vec![v])
        .collect();
    RelationalStructure::new(
        n,
        vec![("adj".to_string(), 2, adj), ("mark".to_string(), 1, marks)],
    )
    .expect("random structure is valid")
}

/// Random graph of the given class with 1..=n_max vertices. Undirected and
/// directed graphs may carry self-loops; basic graphs never do.
pub fn random_graph(rng: &mut ChaCha8Rng, n_max: usize, class: GraphClass) -> Graph {
    let n = rng.gen_range(1..=n_max);
    let p: f64 = rng.gen_range(0.15..0.85);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in 0..n as u32 {
            let keep = match class {
                GraphClass::Basic => u < v,
                GraphClass::Undirected => u <= v,
                GraphClass::Directed => true,
            };
            if keep && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(class, n, &edges).expect("random graph is valid")
}

/// Test-side quantifier-free matrix over variable slots, independent of the
/// library's internal representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TestMatrix {
    Const(bool),
    Adj(usize, usize),
    Mark(usize),
    Eq(usize, usize),
    Not(Box<TestMatrix>),
    And(Box<TestMatrix>, Box<TestMatrix>),
    Or(Box<TestMatrix>, Box<TestMatrix>),
    Implies(Box<TestMatrix>, Box<TestMatrix>),
}

impl TestMatrix {
    /// Random matrix over `vars` variable slots with the given connective
    /// depth budget, over the graph vocabulary.
    pub fn random(rng: &mut ChaCha8Rng, vars: usize, depth: usize) -> TestMatrix {
        Self::random_over(rng, vars, depth, false)
    }

    /// Like [`random`](Self::random) but may also use the unary `mark`
    /// relation.
    pub fn random_over(
        rng: &mut ChaCha8Rng,
        vars: usize,
        depth: usize,
        with_mark: bool,
    ) -> TestMatrix {
        if depth == 0 || vars == 0 || rng.gen_bool(0.3) {
            return Self::random_atom(rng, vars, with_mark);
        }
        match rng.gen_range(0..4) {
            0 => TestMatrix::Not(Box::new(Self::random_over(rng, vars, depth - 1, with_mark))),
            1 => TestMatrix::And(
                Box::new(Self::random_over(rng, vars, depth - 1, with_mark)),
                Box::new(Self::random_over(rng, vars, depth - 1, with_mark)),
            ),
            2 => TestMatrix::Or(
                Box::new(Self::random_over(rng, vars, depth - 1, with_mark)),
                Box::new(Self::random_over(rng, vars, depth - 1, with_mark)),
            ),
            _ => TestMatrix::Implies(
                Box::new(Self::random_over(rng, vars, depth - 1, with_mark)),
                Box::new(Self::random_over(rng, vars, depth - 1, with_mark)),
            ),
        }
    }

    fn random_atom(rng: &mut ChaCha8Rng, vars: usize, with_mark: bool) -> TestMatrix {
        if vars == 0 {
            return TestMatrix::Const(rng.gen_bool(0.5));
        }
        let a = rng.gen_range(0..vars);
        let b = rng.gen_range(0..vars);
        match rng.gen_range(0..12) {
            0 => TestMatrix::Const(rng.gen_bool(0.5)),
            1 | 2 => TestMatrix::Eq(a, b),
            3 | 4 if with_mark => TestMatrix::Mark(a),
            _ => TestMatrix::Adj(a, b),
        }
    }

    /// Renders against variable names, fully parenthesized.
    pub fn render(&self, names: &[String]) -> String {
        match self {
            TestMatrix::Const(b) => if *b { "true" } else { "false" }.to_string(),
            TestMatrix::Mark(a) => format!("mark({})", names[*a]),
            TestMatrix::Adj(a, b) => format!("({} ~ {})", names[*a], names[*b]),
            TestMatrix::Eq(a, b) => format!("({} = {})", names[*a], names[*b]),
            TestMatrix::Not(x) => format!("(!{})", x.render(names)),
            TestMatrix::And(l, r) => format!("({} & {})", l.render(names), r.render(names)),
            TestMatrix::Or(l, r) => format!("({} | {})", l.render(names), r.render(names)),
            TestMatrix::Implies(l, r) => {
                format!("({} -> {})", l.render(names), r.render(names))
            }
        }
    }

    /// Wraps the whole matrix in a double negation.
    pub fn double_negate(&self) -> TestMatrix {
        TestMatrix::Not(Box::new(TestMatrix::Not(Box::new(self.clone()))))
    }

    /// Rewrites every conjunction, disjunction and implication through its
    /// De Morgan dual. Semantically equivalent.
    pub fn demorgan(&self) -> TestMatrix {
        match self {
            TestMatrix::Const(_)
            | TestMatrix::Adj(..)
            | TestMatrix::Mark(_)
            | TestMatrix::Eq(..) => self.clone(),
            TestMatrix::Not(x) => TestMatrix::Not(Box::new(x.demorgan())),
            TestMatrix::And(l, r) => TestMatrix::Not(Box::new(TestMatrix::Or(
                Box::new(TestMatrix::Not(Box::new(l.demorgan()))),
                Box::new(TestMatrix::Not(Box::new(r.demorgan()))),
            ))),
            TestMatrix::Or(l, r) => TestMatrix::Not(Box::new(TestMatrix::And(
                Box::new(TestMatrix::Not(Box::new(l.demorgan()))),
                Box::new(TestMatrix::Not(Box::new(r.demorgan()))),
            ))),
            TestMatrix::Implies(l, r) => TestMatrix::Or(
                Box::new(TestMatrix::Not(Box::new(l.demorgan()))),
                Box::new(r.demorgan()),
            ),
        }
    }

    /// Replaces every equality atom between the two given slots (in either
    /// order) by a constant.
    pub fn fix_equality(&self, a: usize, b: usize, value: bool) -> TestMatrix {
        match self {
            TestMatrix::Eq(x, y) if (*x == a && *y == b) || (*x == b && *y == a) => {
                TestMatrix::Const(value)
            }
            TestMatrix::Const(_)
            | TestMatrix::Adj(..)
            | TestMatrix::Mark(_)
            | TestMatrix::Eq(..) => self.clone(),
            TestMatrix::Not(x) => TestMatrix::Not(Box::new(x.fix_equality(a, b, value))),
            TestMatrix::And(l, r) => TestMatrix::And(
                Box::new(l.fix_equality(a, b, value)),
                Box::new(r.fix_equality(a, b, value)),
            ),
            TestMatrix::Or(l, r) => TestMatrix::Or(
                Box::new(l.fix_equality(a, b, value)),
                Box::new(r.fix_equality(a, b, value)),
            ),
            TestMatrix::Implies(l, r) => TestMatrix::Implies(
                Box::new(l.fix_equality(a, b, value)),
                Box::new(r.fix_equality(a, b, value)),
            ),
        }
    }
}

pub fn var_names(count: usize) -> Vec<String> {
    (0..count).map(|i| format!("v{i}")).collect()
}

/// Builds the formula text for a pattern word and a matrix over that many
/// variables.
pub fn formula_text(pattern: &str, matrix: &TestMatrix) -> String {
    let names = var_names(pattern.len());
    let mut out = String::new();
    for (i, c) in pattern.chars().enumerate() {
        let q = match c {
            'a' => 'A',
            'e' => 'E',
            other => panic!("bad pattern letter {other}"),
        };
        out.push_str(&format!("{q} {} ", names[i]));
    }
    out.push_str(&matrix.render(&names));
    out
}

/// A random formula with exactly the given pattern.
pub fn random_formula(rng: &mut ChaCha8Rng, pattern: &str, depth: usize) -> Formula {
    let matrix = TestMatrix::random(rng, pattern.len(), depth);
    Formula::parse(&formula_text(pattern, &matrix)).expect("generated formula parses")
}

/// All permutations of `0..n`, in a deterministic order.
pub fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut items: Vec<u32> = (0..n as u32).collect();
    permute(&mut items, 0, &mut out);
    out
}

fn permute(items: &mut Vec<u32>, at: usize, out: &mut Vec<Vec<u32>>) {
    if at == items.len() {
        out.push(items.clone());
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permute(items, at + 1, out);
        items.swap(at, i);
    }
}
