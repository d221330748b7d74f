//! Birelational Kripke models with fallible worlds.
//!
//! A model is `⟨W, W⊥, ≼, R, V⟩`: a preorder `≼` (intuitionistic order), an
//! arbitrary modal relation `R`, a set of fallible worlds and a monotone
//! valuation. Worlds are stored by index; relations are successor bitsets,
//! which caps a model at 64 worlds.

mod dot;
mod file;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

pub use dot::to_dot;
pub use file::{parse_model_file, write_model_file, ModelFileError};

pub const MAX_WORLDS: usize = 64;

/// A set of world indices.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WorldSet(pub u64);

impl WorldSet {
    pub const EMPTY: WorldSet = WorldSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            WorldSet(u64::MAX)
        } else {
            WorldSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        WorldSet(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: WorldSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: WorldSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

impl std::ops::BitAnd for WorldSet {
    type Output = WorldSet;
    fn bitand(self, rhs: Self) -> Self {
        WorldSet(self.0 & rhs.0)
    }
}

impl std::ops::BitOr for WorldSet {
    type Output = WorldSet;
    fn bitor(self, rhs: Self) -> Self {
        WorldSet(self.0 | rhs.0)
    }
}

impl std::ops::BitOrAssign for WorldSet {
    fn bitor_assign(&mut self, rhs: Self) {
        self.0 |= rhs.0;
    }
}

/// Unvalidated model description, as read from a file or built by hand.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawModel {
    pub worlds: Vec<String>,
    pub fallible: Vec<String>,
    pub preceq: Vec<(String, String)>,
    pub rel: Vec<(String, String)>,
    pub valuation: Vec<(String, Vec<String>)>,
    /// Close the given `≼` pairs reflexively and transitively before checking.
    pub close_preceq: bool,
}

/// One violated well-formedness condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyWorlds,
    TooManyWorlds(usize),
    DuplicateWorld(String),
    UnknownWorld {
        world: String,
        context: String,
    },
    DuplicateProposition(String),
    NotReflexive(String),
    NotTransitive {
        a: String,
        b: String,
        c: String,
    },
    NotMonotone {
        prop: String,
        from: String,
        to: String,
    },
    FallibleNotInValuation {
        prop: String,
        world: String,
    },
    FallibleNotClosed {
        from: String,
        to: String,
        via: &'static str,
    },
    FallibleWithoutSuccessor(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyWorlds => write!(f, "world set is empty"),
            Violation::TooManyWorlds(n) => {
                write!(f, "{n} worlds given, at most {MAX_WORLDS} supported")
            }
            Violation::DuplicateWorld(w) => write!(f, "world {w} declared twice"),
            Violation::UnknownWorld { world, context } => {
                write!(f, "unknown world {world} referenced in {context}")
            }
            Violation::DuplicateProposition(p) => write!(f, "proposition {p} valued twice"),
            Violation::NotReflexive(w) => write!(f, "preceq not reflexive at {w}"),
            Violation::NotTransitive { a, b, c } => {
                write!(
                    f,
                    "preceq not transitive: {a}<={b} and {b}<={c} but not {a}<={c}"
                )
            }
            Violation::NotMonotone { prop, from, to } => write!(
                f,
                "valuation not monotone for {prop}: {from}<={to}, {from} in V({prop}) but {to} not"
            ),
            Violation::FallibleNotInValuation { prop, world } => {
                write!(f, "fallible world {world} missing from V({prop})")
            }
            Violation::FallibleNotClosed { from, to, via } => write!(
                f,
                "fallible world {from} reaches non-fallible {to} via {via}"
            ),
            Violation::FallibleWithoutSuccessor(w) => {
                write!(f, "fallible world {w} has no modal successor")
            }
        }
    }
}

/// A validated model. All well-formedness conditions hold; the stored `≼`
/// is reflexive and transitive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KripkeModel {
    names: Vec<String>,
    fallible: WorldSet,
    preceq: Vec<WorldSet>,
    rel: Vec<WorldSet>,
    valuation: BTreeMap<String, WorldSet>,
}

impl KripkeModel {
    /// Builds a model from parts without checking. Callers guarantee the
    /// well-formedness conditions (used by enumeration).
    pub(crate) fn from_parts_unchecked(
        names: Vec<String>,
        fallible: WorldSet,
        preceq: Vec<WorldSet>,
        rel: Vec<WorldSet>,
        valuation: BTreeMap<String, WorldSet>,
    ) -> Self {
        KripkeModel {
            names,
            fallible,
            preceq,
            rel,
            valuation,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn world_names(&self) -> &[String] {
        &self.names
    }

    pub fn world_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn world_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn all_worlds(&self) -> WorldSet {
        WorldSet::full(self.len())
    }

    pub fn fallible(&self) -> WorldSet {
        self.fallible
    }

    /// `{v : w ≼ v}`
    pub fn up(&self, w: usize) -> WorldSet {
        self.preceq[w]
    }

    /// `{v : w R v}`
    pub fn successors(&self, w: usize) -> WorldSet {
        self.rel[w]
    }

    pub fn preceq_rows(&self) -> &[WorldSet] {
        &self.preceq
    }

    pub fn rel_rows(&self) -> &[WorldSet] {
        &self.rel
    }

    pub fn preceq(&self, w: usize, v: usize) -> bool {
        self.preceq[w].contains(v)
    }

    pub fn related(&self, w: usize, v: usize) -> bool {
        self.rel[w].contains(v)
    }

    /// Truth set of a proposition. Propositions outside the valuation's
    /// domain hold exactly at the fallible worlds.
    pub fn value(&self, prop: &str) -> WorldSet {
        self.valuation.get(prop).copied().unwrap_or(self.fallible)
    }

    pub fn valuation(&self) -> &BTreeMap<String, WorldSet> {
        &self.valuation
    }

    pub fn props(&self) -> impl Iterator<Item = &str> {
        self.valuation.keys().map(String::as_str)
    }

    fn names_of(&self, set: WorldSet) -> Vec<String> {
        set.iter().map(|i| self.names[i].clone()).collect()
    }

    /// Converts back to a raw description with the closed `≼` listed in full
    /// (reflexive pairs omitted, closure requested).
    pub fn to_raw(&self) -> RawModel {
        let mut preceq = Vec::new();
        let mut rel = Vec::new();
        for w in 0..self.len() {
            for v in self.preceq[w].iter() {
                if v != w {
                    preceq.push((self.names[w].clone(), self.names[v].clone()));
                }
            }
            for v in self.rel[w].iter() {
                rel.push((self.names[w].clone(), self.names[v].clone()));
            }
        }
        RawModel {
            worlds: self.names.clone(),
            fallible: self.names_of(self.fallible),
            preceq,
            rel,
            valuation: self
                .valuation
                .iter()
                .map(|(p, s)| (p.clone(), self.names_of(*s)))
                .collect(),
            close_preceq: true,
        }
    }
}

/// Reflexive-transitive closure of a relation given as successor rows.
pub fn reflexive_transitive_closure(rows: &[WorldSet]) -> Vec<WorldSet> {
    let n = rows.len();
    let mut out: Vec<WorldSet> = rows.to_vec();
    for (i, row) in out.iter_mut().enumerate() {
        row.insert(i);
    }
    for k in 0..n {
        for i in 0..n {
            if out[i].contains(k) {
                let via = out[k];
                out[i] |= via;
            }
        }
    }
    out
}

/// Checks `raw` against every model condition, reporting all violations.
pub fn validate_model(raw: &RawModel) -> Result<KripkeModel, Vec<Violation>> {
    let mut errs = Vec::new();
    if raw.worlds.is_empty() {
        return Err(vec![Violation::EmptyWorlds]);
    }
    if raw.worlds.len() > MAX_WORLDS {
        return Err(vec![Violation::TooManyWorlds(raw.worlds.len())]);
    }
    let mut index = BTreeMap::new();
    for (i, w) in raw.worlds.iter().enumerate() {
        if index.insert(w.as_str(), i).is_some() {
            errs.push(Violation::DuplicateWorld(w.clone()));
        }
    }
    let lookup = |w: &str, context: &str, errs: &mut Vec<Violation>| -> Option<usize> {
        let found = index.get(w).copied();
        if found.is_none() {
            errs.push(Violation::UnknownWorld {
                world: w.to_string(),
                context: context.to_string(),
            });
        }
        found
    };

    let n = raw.worlds.len();
    let mut fallible = WorldSet::EMPTY;
    for w in &raw.fallible {
        if let Some(i) = lookup(w, "fallible", &mut errs) {
            fallible.insert(i);
        }
    }
    let mut preceq = vec![WorldSet::EMPTY; n];
    for (a, b) in &raw.preceq {
        let (ia, ib) = (
            lookup(a, "preceq", &mut errs),
            lookup(b, "preceq", &mut errs),
        );
        if let (Some(ia), Some(ib)) = (ia, ib) {
            preceq[ia].insert(ib);
        }
    }
    let mut rel = vec![WorldSet::EMPTY; n];
    for (a, b) in &raw.rel {
        let (ia, ib) = (lookup(a, "rel", &mut errs), lookup(b, "rel", &mut errs));
        if let (Some(ia), Some(ib)) = (ia, ib) {
            rel[ia].insert(ib);
        }
    }
    let mut valuation = BTreeMap::new();
    for (p, ws) in &raw.valuation {
        let mut set = WorldSet::EMPTY;
        for w in ws {
            if let Some(i) = lookup(w, &format!("val {p}"), &mut errs) {
                set.insert(i);
            }
        }
        if valuation.insert(p.clone(), set).is_some() {
            errs.push(Violation::DuplicateProposition(p.clone()));
        }
    }
    if !errs.is_empty() {
        return Err(errs);
    }
    if raw.close_preceq {
        preceq = reflexive_transitive_closure(&preceq);
    }

    let name = |i: usize| raw.worlds[i].clone();
    for w in 0..n {
        if !preceq[w].contains(w) {
            errs.push(Violation::NotReflexive(name(w)));
        }
    }
    for a in 0..n {
        for b in preceq[a].iter() {
            for c in preceq[b].iter() {
                if !preceq[a].contains(c) {
                    errs.push(Violation::NotTransitive {
                        a: name(a),
                        b: name(b),
                        c: name(c),
                    });
                }
            }
        }
    }
    for (p, set) in &valuation {
        for w in set.iter() {
            for v in preceq[w].iter() {
                if !set.contains(v) {
                    errs.push(Violation::NotMonotone {
                        prop: p.clone(),
                        from: name(w),
                        to: name(v),
                    });
                }
            }
        }
        for w in fallible.iter() {
            if !set.contains(w) {
                errs.push(Violation::FallibleNotInValuation {
                    prop: p.clone(),
                    world: name(w),
                });
            }
        }
    }
    for w in fallible.iter() {
        for (via, row) in [("preceq", preceq[w]), ("rel", rel[w])] {
            for v in row.iter() {
                if !fallible.contains(v) {
                    errs.push(Violation::FallibleNotClosed {
                        from: name(w),
                        to: name(v),
                        via,
                    });
                }
            }
        }
        if rel[w].is_empty() {
            errs.push(Violation::FallibleWithoutSuccessor(name(w)));
        }
    }
    if !errs.is_empty() {
        return Err(errs);
    }
    Ok(KripkeModel {
        names: raw.worlds.clone(),
        fallible,
        preceq,
        rel,
        valuation,
    })
}

/// The four model classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelClass {
    CK,
    CKB,
    IK,
    IKB,
}

impl ModelClass {
    pub const ALL: [ModelClass; 4] = [
        ModelClass::CK,
        ModelClass::CKB,
        ModelClass::IK,
        ModelClass::IKB,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelClass::CK => "CK",
            ModelClass::CKB => "CKB",
            ModelClass::IK => "IK",
            ModelClass::IKB => "IKB",
        }
    }

    pub fn requires_symmetric(self) -> bool {
        matches!(self, ModelClass::CKB | ModelClass::IKB)
    }

    pub fn requires_confluence(self) -> bool {
        self != ModelClass::CK
    }

    pub fn forbids_fallible(self) -> bool {
        matches!(self, ModelClass::IK | ModelClass::IKB)
    }
}

impl fmt::Display for ModelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown model class `{0}` (expected ck, ckb, ik or ikb)")]
pub struct UnknownClass(pub String);

impl FromStr for ModelClass {
    type Err = UnknownClass;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ck" => Ok(ModelClass::CK),
            "ckb" => Ok(ModelClass::CKB),
            "ik" => Ok(ModelClass::IK),
            "ikb" => Ok(ModelClass::IKB),
            _ => Err(UnknownClass(s.to_string())),
        }
    }
}

pub fn is_symmetric(rel: &[WorldSet]) -> bool {
    (0..rel.len()).all(|w| rel[w].iter().all(|v| rel[v].contains(w)))
}

/// `w R v` and `w ≼ w'` imply some `v'` with `v ≼ v'` and `w' R v'`.
pub fn is_forward_confluent(preceq: &[WorldSet], rel: &[WorldSet]) -> bool {
    (0..rel.len()).all(|w| {
        rel[w]
            .iter()
            .all(|v| preceq[w].iter().all(|w2| preceq[v].intersects(rel[w2])))
    })
}

/// `w R v` and `v ≼ v'` imply some `w'` with `w ≼ w'` and `w' R v'`.
pub fn is_backward_confluent(preceq: &[WorldSet], rel: &[WorldSet]) -> bool {
    (0..rel.len()).all(|w| {
        rel[w].iter().all(|v| {
            preceq[v]
                .iter()
                .all(|v2| preceq[w].iter().any(|w2| rel[w2].contains(v2)))
        })
    })
}

/// `w R v` and `v ∈ W⊥` imply `w ∈ W⊥`.
pub fn is_fallible_r_back_closed(rel: &[WorldSet], fallible: WorldSet) -> bool {
    (0..rel.len()).all(|w| fallible.contains(w) || !rel[w].intersects(fallible))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameReport {
    pub symmetric: bool,
    pub forward_confluent: bool,
    pub backward_confluent: bool,
    pub fallible_r_back_closed: bool,
    pub classes: BTreeSet<ModelClass>,
}

impl FrameReport {
    pub fn in_class(&self, class: ModelClass) -> bool {
        self.classes.contains(&class)
    }
}

pub(crate) fn classes_of(
    symmetric: bool,
    forward: bool,
    backward: bool,
    no_fallible: bool,
) -> BTreeSet<ModelClass> {
    let mut classes = BTreeSet::from([ModelClass::CK]);
    let confluent = forward && backward;
    if symmetric && confluent {
        classes.insert(ModelClass::CKB);
    }
    if no_fallible && confluent {
        classes.insert(ModelClass::IK);
    }
    if symmetric && confluent && no_fallible {
        classes.insert(ModelClass::IKB);
    }
    classes
}

pub fn frame_report(m: &KripkeModel) -> FrameReport {
    let symmetric = is_symmetric(&m.rel);
    let forward_confluent = is_forward_confluent(&m.preceq, &m.rel);
    let backward_confluent = is_backward_confluent(&m.preceq, &m.rel);
    FrameReport {
        symmetric,
        forward_confluent,
        backward_confluent,
        fallible_r_back_closed: is_fallible_r_back_closed(&m.rel, m.fallible),
        classes: classes_of(
            symmetric,
            forward_confluent,
            backward_confluent,
            m.fallible.is_empty(),
        ),
    }
}

/// The three-world model with a symmetric modal relation that is not
/// forward confluent: `w ~ v`, `v ≼ v'`, `V(p) = {w}`.
pub fn figure2_raw() -> RawModel {
    let s = |x: &str| x.to_string();
    RawModel {
        worlds: vec![s("w"), s("v"), s("v'")],
        fallible: vec![],
        preceq: vec![(s("v"), s("v'"))],
        rel: vec![(s("w"), s("v")), (s("v"), s("w"))],
        valuation: vec![(s("p"), vec![s("w")])],
        close_preceq: true,
    }
}

pub fn figure2_model() -> KripkeModel {
    validate_model(&figure2_raw()).expect("golden model is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> String {
        x.to_string()
    }

    #[test]
    fn figure2_validates_and_reports() {
        let m = figure2_model();
        assert_eq!(m.len(), 3);
        let r = frame_report(&m);
        assert!(r.symmetric);
        assert!(!r.forward_confluent);
        assert!(!r.backward_confluent);
        assert_eq!(r.classes, BTreeSet::from([ModelClass::CK]));
    }

    #[test]
    fn full_preorder_breaks_monotonicity() {
        let mut raw = figure2_raw();
        raw.preceq = raw
            .worlds
            .iter()
            .flat_map(|a| raw.worlds.iter().map(move |b| (a.clone(), b.clone())))
            .collect();
        let errs = validate_model(&raw).unwrap_err();
        assert!(errs.contains(&Violation::NotMonotone {
            prop: s("p"),
            from: s("w"),
            to: s("v"),
        }));
        assert!(errs
            .iter()
            .all(|e| matches!(e, Violation::NotMonotone { .. })));
        // w is the only p-world and reaches both others
        assert_eq!(errs.len(), 2);
    }

    #[test]
    fn single_fallible_world() {
        let raw = RawModel {
            worlds: vec![s("w")],
            fallible: vec![s("w")],
            preceq: vec![],
            rel: vec![(s("w"), s("w"))],
            valuation: vec![(s("P"), vec![s("w")])],
            close_preceq: true,
        };
        let m = validate_model(&raw).unwrap();
        assert_eq!(m.fallible(), WorldSet::singleton(0));
        let r = frame_report(&m);
        assert!(r.in_class(ModelClass::CKB));
        assert!(!r.in_class(ModelClass::IK));
    }

    #[test]
    fn violations_are_reported_individually() {
        let raw = RawModel {
            worlds: vec![s("a"), s("b"), s("c")],
            fallible: vec![s("a")],
            preceq: vec![(s("a"), s("b")), (s("b"), s("c"))],
            rel: vec![(s("b"), s("c"))],
            valuation: vec![(s("p"), vec![s("b")])],
            close_preceq: false,
        };
        let errs = validate_model(&raw).unwrap_err();
        for w in ["a", "b", "c"] {
            assert!(errs.contains(&Violation::NotReflexive(s(w))));
        }
        assert!(errs.contains(&Violation::NotTransitive {
            a: s("a"),
            b: s("b"),
            c: s("c")
        }));
        assert!(errs.contains(&Violation::NotMonotone {
            prop: s("p"),
            from: s("b"),
            to: s("c")
        }));
        assert!(errs.contains(&Violation::FallibleNotInValuation {
            prop: s("p"),
            world: s("a")
        }));
        assert!(errs.contains(&Violation::FallibleNotClosed {
            from: s("a"),
            to: s("b"),
            via: "preceq"
        }));
        assert!(errs.contains(&Violation::FallibleWithoutSuccessor(s("a"))));
    }

    #[test]
    fn structural_errors() {
        assert_eq!(
            validate_model(&RawModel::default()).unwrap_err(),
            vec![Violation::EmptyWorlds]
        );
        let raw = RawModel {
            worlds: vec![s("a"), s("a")],
            rel: vec![(s("a"), s("z"))],
            close_preceq: true,
            ..Default::default()
        };
        let errs = validate_model(&raw).unwrap_err();
        assert!(errs.contains(&Violation::DuplicateWorld(s("a"))));
        assert!(errs.contains(&Violation::UnknownWorld {
            world: s("z"),
            context: s("rel")
        }));
    }

    #[test]
    fn empty_relation_is_vacuously_confluent() {
        let raw = RawModel {
            worlds: vec![s("a"), s("b")],
            preceq: vec![(s("a"), s("b"))],
            close_preceq: true,
            ..Default::default()
        };
        let r = frame_report(&validate_model(&raw).unwrap());
        assert!(r.forward_confluent && r.backward_confluent && r.symmetric);
        assert_eq!(
            r.classes,
            ModelClass::ALL.into_iter().collect::<BTreeSet<_>>()
        );
    }

    #[test]
    fn two_world_total_relation_is_ikb() {
        let raw = RawModel {
            worlds: vec![s("w"), s("v")],
            preceq: vec![(s("w"), s("v"))],
            rel: vec![
                (s("w"), s("w")),
                (s("v"), s("v")),
                (s("w"), s("v")),
                (s("v"), s("w")),
            ],
            valuation: vec![(s("P"), vec![s("v")])],
            close_preceq: true,
            ..Default::default()
        };
        let r = frame_report(&validate_model(&raw).unwrap());
        for c in [ModelClass::CKB, ModelClass::IK, ModelClass::IKB] {
            assert!(r.in_class(c));
        }
    }

    #[test]
    fn revalidation_is_idempotent() {
        let m = figure2_model();
        assert_eq!(validate_model(&m.to_raw()).unwrap(), m);
    }

    #[test]
    fn class_names_round_trip() {
        for c in ModelClass::ALL {
            assert_eq!(c.name().parse::<ModelClass>().unwrap(), c);
        }
        assert!("kt".parse::<ModelClass>().is_err());
    }
}
