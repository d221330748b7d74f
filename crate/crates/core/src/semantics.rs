//! Forcing relation on validated models.
//!
//! Each subformula is evaluated once, bottom-up, to the set of worlds where
//! it holds. Clauses:
//!
//! - `w ⊨ p` iff `w ∈ V(p)`; `w ⊨ false` iff `w ∈ W⊥`
//! - `w ⊨ a -> b` iff every `v ≽ w` forcing `a` forces `b`
//! - `w ⊨ [] a` iff for all `v ≽ w` and `v R u`, `u ⊨ a`
//! - `w ⊨ <> a` iff every `v ≽ w` has some `v R u` with `u ⊨ a` (guarded)
//!
//! The unguarded variant replaces the last clause by `∃u. w R u ∧ u ⊨ a`;
//! on forward confluent models both agree.

use std::collections::HashMap;

use thiserror::Error;

use crate::formula::Formula;
use crate::kripke::{KripkeModel, WorldSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
}

/// Which clause is used for `<>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiamondClause {
    Guarded,
    Unguarded,
}

/// Evaluation state for one model: caches the truth set of every
/// subformula seen so far.
#[derive(Debug)]
pub struct EvalContext<'m> {
    model: &'m KripkeModel,
    clause: DiamondClause,
    memo: HashMap<Formula, WorldSet>,
}

impl<'m> EvalContext<'m> {
    pub fn new(model: &'m KripkeModel) -> Self {
        Self::with_clause(model, DiamondClause::Guarded)
    }

    pub fn with_clause(model: &'m KripkeModel, clause: DiamondClause) -> Self {
        EvalContext {
            model,
            clause,
            memo: HashMap::new(),
        }
    }

    pub fn model(&self) -> &'m KripkeModel {
        self.model
    }

    /// Worlds forcing `f`.
    pub fn truth_set(&mut self, f: &Formula) -> WorldSet {
        if let Some(&s) = self.memo.get(f) {
            return s;
        }
        let m = self.model;
        let s = match f {
            Formula::Atom(p) => m.value(p),
            Formula::Falsum => m.fallible(),
            Formula::And(l, r) => self.truth_set(l) & self.truth_set(r),
            Formula::Or(l, r) => self.truth_set(l) | self.truth_set(r),
            Formula::Implies(l, r) => {
                let (a, b) = (self.truth_set(l), self.truth_set(r));
                implies_set(m, a, b)
            }
            Formula::Box(g) => {
                let a = self.truth_set(g);
                box_set(m, a)
            }
            Formula::Diamond(g) => {
                let a = self.truth_set(g);
                diamond_set(m, a, self.clause)
            }
        };
        self.memo.insert(f.clone(), s);
        s
    }

    pub fn eval_at(&mut self, w: usize, f: &Formula) -> bool {
        self.truth_set(f).contains(w)
    }

    pub fn cached(&self) -> usize {
        self.memo.len()
    }
}

fn implies_set(m: &KripkeModel, a: WorldSet, b: WorldSet) -> WorldSet {
    // v is a witness against a -> b when v forces a but not b
    let bad = WorldSet(a.0 & !b.0);
    let mut out = WorldSet::EMPTY;
    for w in 0..m.len() {
        if !m.up(w).intersects(bad) {
            out.insert(w);
        }
    }
    out
}

fn box_set(m: &KripkeModel, a: WorldSet) -> WorldSet {
    let mut all_succ_in_a = WorldSet::EMPTY;
    for v in 0..m.len() {
        if m.successors(v).is_subset(a) {
            all_succ_in_a.insert(v);
        }
    }
    let mut out = WorldSet::EMPTY;
    for w in 0..m.len() {
        if m.up(w).is_subset(all_succ_in_a) {
            out.insert(w);
        }
    }
    out
}

fn diamond_set(m: &KripkeModel, a: WorldSet, clause: DiamondClause) -> WorldSet {
    let mut some_succ_in_a = WorldSet::EMPTY;
    for v in 0..m.len() {
        if m.successors(v).intersects(a) {
            some_succ_in_a.insert(v);
        }
    }
    match clause {
        DiamondClause::Unguarded => some_succ_in_a,
        DiamondClause::Guarded => {
            let mut out = WorldSet::EMPTY;
            for w in 0..m.len() {
                if m.up(w).is_subset(some_succ_in_a) {
                    out.insert(w);
                }
            }
            out
        }
    }
}

/// Worlds forcing `f` under the given diamond clause.
pub fn truth_set(m: &KripkeModel, f: &Formula, clause: DiamondClause) -> WorldSet {
    match f {
        Formula::Atom(p) => m.value(p),
        Formula::Falsum => m.fallible(),
        Formula::And(l, r) => truth_set(m, l, clause) & truth_set(m, r, clause),
        Formula::Or(l, r) => truth_set(m, l, clause) | truth_set(m, r, clause),
        Formula::Implies(l, r) => implies_set(m, truth_set(m, l, clause), truth_set(m, r, clause)),
        Formula::Box(g) => box_set(m, truth_set(m, g, clause)),
        Formula::Diamond(g) => diamond_set(m, truth_set(m, g, clause), clause),
    }
}

fn world(m: &KripkeModel, w: &str) -> Result<usize, EvalError> {
    m.world_index(w)
        .ok_or_else(|| EvalError::UnknownWorld(w.to_string()))
}

/// `M, w ⊨ f` with the guarded diamond clause.
pub fn eval(m: &KripkeModel, w: &str, f: &Formula) -> Result<bool, EvalError> {
    let i = world(m, w)?;
    Ok(truth_set(m, f, DiamondClause::Guarded).contains(i))
}

/// `M, w ⊨ f` with `<>` read existentially along `R` throughout.
pub fn eval_diamond_unguarded(m: &KripkeModel, w: &str, f: &Formula) -> Result<bool, EvalError> {
    let i = world(m, w)?;
    Ok(truth_set(m, f, DiamondClause::Unguarded).contains(i))
}

/// `f` holds at every world of `m`.
pub fn valid_in_model(m: &KripkeModel, f: &Formula) -> bool {
    truth_set(m, f, DiamondClause::Guarded) == m.all_worlds()
}

/// First world (by index) refuting `f`, if any.
pub fn refuting_world(m: &KripkeModel, f: &Formula) -> Option<usize> {
    let s = truth_set(m, f, DiamondClause::Guarded);
    (0..m.len()).find(|&w| !s.contains(w))
}
