//! Prenex first-order formulas: parsing, quantifier patterns, and model
//! checking on relational structures.
//!
//! Formulas are sentences: a quantifier prefix followed by a quantifier-free
//! matrix over atoms `R(x,...)`, `x = y` (with `x != y` and `x ~ y` as
//! sugar) and the constants `true`/`false`. Non-prenex input is rejected,
//! not converted: the quantifier pattern depends on conversion choices, so
//! silent conversion would silently change the classification.

mod eval;
mod parse;

pub(crate) use eval::{bind, Bound, WitnessCache};
pub use eval::{evaluate, evaluate_on_alive, evaluate_partial};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::structures::ADJ;

#[derive(Debug, Error)]
pub enum LogicError {
    #[error("line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("line {line}, column {col}: formula is not prenex (quantifier below a connective)")]
    NonPrenex { line: usize, col: usize },
    #[error("free variable: {0}")]
    FreeVariable(String),
    #[error("duplicate quantified variable: {0}")]
    DuplicateVariable(String),
    #[error("relation {symbol} used with arities {first} and {second}")]
    InconsistentArity {
        symbol: String,
        first: usize,
        second: usize,
    },
    #[error("unknown relation symbol: {0}")]
    UnknownRelation(String),
    #[error("relation {symbol} missing from the structure")]
    RelationNotInStructure { symbol: String },
    #[error(
        "relation {symbol} has arity {structure} in the structure but {formula} in the formula"
    )]
    StructureArityMismatch {
        symbol: String,
        formula: usize,
        structure: usize,
    },
    #[error("partial assignment has {got} values but the prefix has {prefix} variables")]
    PartialTooLong { got: usize, prefix: usize },
    #[error("assignment value {index} out of range (universe size {universe})")]
    AssignmentOutOfRange { index: u32, universe: usize },
}

/// First-order quantifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    /// The pattern letter: `a` for universal, `e` for existential.
    pub fn letter(self) -> char {
        match self {
            Quantifier::Forall => 'a',
            Quantifier::Exists => 'e',
        }
    }
}

/// A quantifier prefix pattern: a word over `{a, e}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(String);

impl Pattern {
    pub fn new(word: &str) -> Result<Pattern, String> {
        if let Some(bad) = word.chars().find(|&c| c != 'a' && c != 'e') {
            return Err(format!(
                "pattern may only contain `a` and `e`, found `{bad}`"
            ));
        }
        Ok(Pattern(word.to_string()))
    }

    pub fn empty() -> Pattern {
        Pattern(String::new())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn chars(&self) -> impl Iterator<Item = char> + '_ {
        self.0.chars()
    }
}

impl FromStr for Pattern {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Pattern::new(s)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

// Quantifier-free matrix with variables resolved to prefix slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Matrix {
    Const(bool),
    Rel { rel: usize, args: Vec<usize> },
    Eq(usize, usize),
    Not(Box<Matrix>),
    And(Box<Matrix>, Box<Matrix>),
    Or(Box<Matrix>, Box<Matrix>),
    Implies(Box<Matrix>, Box<Matrix>),
}

/// A prenex first-order sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    prefix: Vec<(Quantifier, String)>,
    // Relation symbols with their arities, indexed by `Matrix::Rel::rel`.
    symbols: Vec<(String, usize)>,
    matrix: Matrix,
}

impl Formula {
    /// Parses a formula from the textual grammar.
    pub fn parse(text: &str) -> Result<Formula, LogicError> {
        parse::parse(text, None)
    }

    /// Parses and additionally checks every relation symbol against a
    /// declared vocabulary.
    pub fn parse_with_vocab(text: &str, vocab: &[(&str, usize)]) -> Result<Formula, LogicError> {
        parse::parse(text, Some(vocab))
    }

    pub(crate) fn from_parts(
        prefix: Vec<(Quantifier, String)>,
        symbols: Vec<(String, usize)>,
        matrix: Matrix,
    ) -> Formula {
        Formula {
            prefix,
            symbols,
            matrix,
        }
    }

    pub fn prefix(&self) -> impl Iterator<Item = (Quantifier, &str)> {
        self.prefix.iter().map(|(q, v)| (*q, v.as_str()))
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    pub(crate) fn quantifier(&self, depth: usize) -> Quantifier {
        self.prefix[depth].0
    }

    /// The quantifier prefix pattern (`a` for each universal, `e` for each
    /// existential, in prefix order).
    pub fn pattern(&self) -> Pattern {
        Pattern(self.prefix.iter().map(|(q, _)| q.letter()).collect())
    }

    /// Relation symbols with arities, in first-use order.
    pub fn symbols(&self) -> impl Iterator<Item = (&str, usize)> {
        self.symbols.iter().map(|(s, a)| (s.as_str(), *a))
    }

    pub(crate) fn symbol_table(&self) -> &[(String, usize)] {
        &self.symbols
    }

    pub(crate) fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    fn fmt_matrix(&self, m: &Matrix, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match m {
            Matrix::Const(b) => f.write_str(if *b { "true" } else { "false" }),
            Matrix::Eq(a, b) => write!(f, "{} = {}", self.prefix[*a].1, self.prefix[*b].1),
            Matrix::Rel { rel, args } => {
                let (name, _) = &self.symbols[*rel];
                if name == ADJ && args.len() == 2 {
                    write!(f, "{} ~ {}", self.prefix[args[0]].1, self.prefix[args[1]].1)
                } else {
                    let vars: Vec<&str> = args.iter().map(|&a| self.prefix[a].1.as_str()).collect();
                    write!(f, "{}({})", name, vars.join(","))
                }
            }
            Matrix::Not(inner) => {
                f.write_str("!(")?;
                self.fmt_matrix(inner, f)?;
                f.write_str(")")
            }
            Matrix::And(l, r) => self.fmt_binary(l, "&", r, f),
            Matrix::Or(l, r) => self.fmt_binary(l, "|", r, f),
            Matrix::Implies(l, r) => self.fmt_binary(l, "->", r, f),
        }
    }

    fn fmt_binary(
        &self,
        l: &Matrix,
        op: &str,
        r: &Matrix,
        f: &mut fmt::Formatter<'_>,
    ) -> fmt::Result {
        f.write_str("(")?;
        self.fmt_matrix(l, f)?;
        write!(f, " {op} ")?;
        self.fmt_matrix(r, f)?;
        f.write_str(")")
    }
}

impl fmt::Display for Formula {
    /// Canonical text: re-parsing yields an equal formula.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (q, v) in &self.prefix {
            let letter = match q {
                Quantifier::Forall => 'A',
                Quantifier::Exists => 'E',
            };
            write!(f, "{letter} {v} ")?;
        }
        f.write_str("(")?;
        self.fmt_matrix(&self.matrix, f)?;
        f.write_str(")")
    }
}

impl FromStr for Formula {
    type Err = LogicError;

    fn from_str(s: &str) -> Result<Self, LogicError> {
        Formula::parse(s)
    }
}
