//! Model checking by nested iteration over the universe.
//!
//! The cost is `n^(prefix length)` matrix evaluations in the worst case,
//! with two sound shortcuts that never change the result: a three-valued
//! pre-evaluation of the matrix decides quantifier blocks whose value does
//! not depend on the still-unbound variables, and existential levels try
//! the witness that worked for the most recent identical outer assignment
//! first. Quantifiers range over an explicit list of alive elements so that
//! induced substructures can be checked without rebuilding them.

use super::{Formula, LogicError, Matrix, Quantifier};
use crate::structures::{Relation, RelationalStructure};

/// A formula with its relation symbols resolved against one structure.
pub(crate) struct Bound<'a> {
    f: &'a Formula,
    rels: Vec<&'a Relation>,
}

/// Resolves the formula's symbols in `s`, checking arities.
pub(crate) fn bind<'a>(
    s: &'a RelationalStructure,
    f: &'a Formula,
) -> Result<Bound<'a>, LogicError> {
    let mut rels = Vec::with_capacity(f.symbol_table().len());
    for (name, arity) in f.symbol_table() {
        let rel = s
            .relation(name)
            .ok_or_else(|| LogicError::RelationNotInStructure {
                symbol: name.clone(),
            })?;
        if rel.arity() != *arity {
            return Err(LogicError::StructureArityMismatch {
                symbol: name.clone(),
                formula: *arity,
                structure: rel.arity(),
            });
        }
        rels.push(rel);
    }
    Ok(Bound { f, rels })
}

const CACHE_SIZE: usize = 1 << 12;

/// Remembers, per hashed outer assignment, the element that last satisfied
/// an existential level. Entries are only hints: every candidate is
/// re-evaluated, so collisions cannot change results.
pub(crate) struct WitnessCache {
    slots: Vec<(u64, u32)>,
}

impl WitnessCache {
    pub fn new() -> Self {
        WitnessCache {
            slots: vec![(0, 0); CACHE_SIZE],
        }
    }

    #[inline]
    fn get(&self, key: u64) -> Option<u32> {
        let (tag, w) = self.slots[key as usize & (CACHE_SIZE - 1)];
        (tag == key).then_some(w)
    }

    #[inline]
    fn put(&mut self, key: u64, w: u32) {
        self.slots[key as usize & (CACHE_SIZE - 1)] = (key, w);
    }
}

#[inline]
fn level_key(depth: usize, asg: &[u32]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64 ^ depth as u64;
    for &v in &asg[..depth] {
        h ^= v as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h | 1
}

impl<'a> Bound<'a> {
    /// Evaluates the sentence with the leading `partial.len()` prefix
    /// variables fixed, quantifiers ranging over `alive`.
    pub fn eval_sentence(&self, alive: &[u32], partial: &[u32], cache: &mut WitnessCache) -> bool {
        debug_assert!(partial.len() <= self.f.prefix_len());
        let mut asg = vec![0u32; self.f.prefix_len()];
        asg[..partial.len()].copy_from_slice(partial);
        self.eval_level(partial.len(), &mut asg, alive, cache)
    }

    fn eval_level(
        &self,
        depth: usize,
        asg: &mut Vec<u32>,
        alive: &[u32],
        cache: &mut WitnessCache,
    ) -> bool {
        if depth == self.f.prefix_len() {
            return self.eval_matrix(asg);
        }
        let q = self.f.quantifier(depth);
        // Over the empty domain a universal block is vacuously true and an
        // existential one false, regardless of what follows.
        if alive.is_empty() {
            return q == Quantifier::Forall;
        }
        // The domain is nonempty, so a matrix value independent of the
        // remaining variables decides the whole quantifier chain.
        if let Some(b) = self.tri_eval(self.f.matrix(), asg, depth) {
            return b;
        }
        match q {
            Quantifier::Forall => {
                for &v in alive {
                    asg[depth] = v;
                    if !self.eval_level(depth + 1, asg, alive, cache) {
                        return false;
                    }
                }
                true
            }
            Quantifier::Exists => {
                let key = level_key(depth, asg);
                if let Some(w) = cache.get(key) {
                    if alive.binary_search(&w).is_ok() {
                        asg[depth] = w;
                        if self.eval_level(depth + 1, asg, alive, cache) {
                            return true;
                        }
                    }
                }
                for &v in alive {
                    asg[depth] = v;
                    if self.eval_level(depth + 1, asg, alive, cache) {
                        cache.put(key, v);
                        return true;
                    }
                }
                false
            }
        }
    }

    /// Evaluates the quantifier-free matrix under a full assignment.
    pub fn eval_matrix(&self, asg: &[u32]) -> bool {
        self.eval_m(self.f.matrix(), asg)
    }

    fn eval_m(&self, m: &Matrix, asg: &[u32]) -> bool {
        match m {
            Matrix::Const(b) => *b,
            Matrix::Eq(a, b) => asg[*a] == asg[*b],
            Matrix::Rel { rel, args } => self.eval_rel(*rel, args, asg),
            Matrix::Not(x) => !self.eval_m(x, asg),
            Matrix::And(l, r) => self.eval_m(l, asg) && self.eval_m(r, asg),
            Matrix::Or(l, r) => self.eval_m(l, asg) || self.eval_m(r, asg),
            Matrix::Implies(l, r) => !self.eval_m(l, asg) || self.eval_m(r, asg),
        }
    }

    #[inline]
    fn eval_rel(&self, rel: usize, args: &[usize], asg: &[u32]) -> bool {
        let r = self.rels[rel];
        if let [a, b] = args {
            return r.contains(&[asg[*a], asg[*b]]);
        }
        let mut buf = [0u32; 8];
        if args.len() <= buf.len() {
            for (i, &a) in args.iter().enumerate() {
                buf[i] = asg[a];
            }
            r.contains(&buf[..args.len()])
        } else {
            let tuple: Vec<u32> = args.iter().map(|&a| asg[a]).collect();
            r.contains(&tuple)
        }
    }

    // Kleene three-valued evaluation: slots below `known` are bound, the
    // rest unknown. `Some(b)` means every extension evaluates to `b`.
    fn tri_eval(&self, m: &Matrix, asg: &[u32], known: usize) -> Option<bool> {
        match m {
            Matrix::Const(b) => Some(*b),
            Matrix::Eq(a, b) => {
                if a == b {
                    Some(true)
                } else if *a < known && *b < known {
                    Some(asg[*a] == asg[*b])
                } else {
                    None
                }
            }
            Matrix::Rel { rel, args } => {
                if args.iter().all(|&a| a < known) {
                    Some(self.eval_rel(*rel, args, asg))
                } else {
                    None
                }
            }
            Matrix::Not(x) => self.tri_eval(x, asg, known).map(|b| !b),
            Matrix::And(l, r) => {
                match (self.tri_eval(l, asg, known), self.tri_eval(r, asg, known)) {
                    (Some(false), _) | (_, Some(false)) => Some(false),
                    (Some(true), Some(true)) => Some(true),
                    _ => None,
                }
            }
            Matrix::Or(l, r) => {
                match (self.tri_eval(l, asg, known), self.tri_eval(r, asg, known)) {
                    (Some(true), _) | (_, Some(true)) => Some(true),
                    (Some(false), Some(false)) => Some(false),
                    _ => None,
                }
            }
            Matrix::Implies(l, r) => {
                match (self.tri_eval(l, asg, known), self.tri_eval(r, asg, known)) {
                    (Some(false), _) | (_, Some(true)) => Some(true),
                    (Some(true), Some(false)) => Some(false),
                    _ => None,
                }
            }
        }
    }
}

fn check_partial(s: &RelationalStructure, f: &Formula, partial: &[u32]) -> Result<(), LogicError> {
    if partial.len() > f.prefix_len() {
        return Err(LogicError::PartialTooLong {
            got: partial.len(),
            prefix: f.prefix_len(),
        });
    }
    if let Some(&bad) = partial.iter().find(|&&v| v as usize >= s.universe_size()) {
        return Err(LogicError::AssignmentOutOfRange {
            index: bad,
            universe: s.universe_size(),
        });
    }
    Ok(())
}

/// Truth of the sentence `f` in `s` under standard first-order semantics.
pub fn evaluate(s: &RelationalStructure, f: &Formula) -> Result<bool, LogicError> {
    evaluate_partial(s, f, &[])
}

/// Like [`evaluate`] with the leading prefix variables pre-assigned to
/// elements of `s`; the remaining suffix of the prefix is quantified.
pub fn evaluate_partial(
    s: &RelationalStructure,
    f: &Formula,
    partial: &[u32],
) -> Result<bool, LogicError> {
    check_partial(s, f, partial)?;
    let bound = bind(s, f)?;
    let alive: Vec<u32> = s.elements().collect();
    Ok(bound.eval_sentence(&alive, partial, &mut WitnessCache::new()))
}

/// Truth of `f` in the substructure of `s` induced on `alive` (ascending,
/// original indices), with the leading prefix variables optionally fixed.
/// Atoms only ever see alive elements, so this agrees with evaluating the
/// rebuilt induced substructure.
pub fn evaluate_on_alive(
    s: &RelationalStructure,
    f: &Formula,
    alive: &[u32],
    partial: &[u32],
) -> Result<bool, LogicError> {
    check_partial(s, f, partial)?;
    if alive.windows(2).any(|w| w[0] >= w[1])
        || alive
            .last()
            .is_some_and(|&v| v as usize >= s.universe_size())
    {
        return Err(LogicError::AssignmentOutOfRange {
            index: alive.last().copied().unwrap_or(0),
            universe: s.universe_size(),
        });
    }
    let bound = bind(s, f)?;
    Ok(bound.eval_sentence(alive, partial, &mut WitnessCache::new()))
}
