//! Finite model enumeration and bounded countermodel search.
//!
//! Models are enumerated over labeled worlds `w1..wn` in a fixed order:
//! world count ascending, then `≼` by bitmask, then `R`, then the fallible
//! set, then the valuation (first proposition varies slowest). A relation
//! on `n` worlds is encoded with bit `i*n + j` for the pair `(wi, wj)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::formula::Formula;
use crate::kripke::{
    frame_report, is_backward_confluent, is_forward_confluent, is_symmetric,
    reflexive_transitive_closure, validate_model, KripkeModel, ModelClass, RawModel, WorldSet,
};
use crate::semantics::refuting_world;

/// Limits guarding against runaway enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchCap {
    pub max_worlds: usize,
    pub max_props: usize,
}

impl Default for SearchCap {
    fn default() -> Self {
        SearchCap {
            max_worlds: 5,
            max_props: 2,
        }
    }
}

/// Extra conditions on the frame `(≼, R, W⊥)`, on top of the class.
#[derive(Debug, Clone, Copy, Default)]
pub struct FramePredicate {
    pub require_symmetric: bool,
    pub require_forward_confluent: bool,
    pub require_backward_confluent: bool,
    pub custom: Option<fn(&[WorldSet], &[WorldSet]) -> bool>,
}

#[derive(Debug, Clone)]
pub struct EnumParams {
    pub max_worlds: usize,
    pub props: Vec<String>,
    pub class_filter: ModelClass,
    /// Ignored (treated as false) for IK and IKB.
    pub allow_fallible: bool,
    pub frame: FramePredicate,
    pub cap: SearchCap,
}

impl EnumParams {
    pub fn new(max_worlds: usize, props: &[&str], class: ModelClass) -> Self {
        EnumParams {
            max_worlds,
            props: props.iter().map(|p| p.to_string()).collect(),
            class_filter: class,
            allow_fallible: !class.forbids_fallible(),
            frame: FramePredicate::default(),
            cap: SearchCap::default(),
        }
    }

    pub fn with_class(&self, class: ModelClass) -> Self {
        let mut p = self.clone();
        p.class_filter = class;
        p
    }

    fn fallible_allowed(&self) -> bool {
        self.allow_fallible && !self.class_filter.forbids_fallible()
    }

    fn check(&self) -> Result<(), SearchError> {
        if self.max_worlds == 0 {
            return Err(SearchError::NoWorlds);
        }
        if self.max_worlds > self.cap.max_worlds {
            return Err(SearchError::CapExceeded {
                what: "worlds",
                requested: self.max_worlds,
                cap: self.cap.max_worlds,
            });
        }
        if self.props.len() > self.cap.max_props {
            return Err(SearchError::CapExceeded {
                what: "propositions",
                requested: self.props.len(),
                cap: self.cap.max_props,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("max_worlds must be at least 1")]
    NoWorlds,
    #[error("{requested} {what} requested, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },
}

fn decode(mask: u64, n: usize) -> Vec<WorldSet> {
    (0..n)
        .map(|i| WorldSet((mask >> (i * n)) & ((1u64 << n) - 1)))
        .collect()
}

fn is_transitive(rows: &[WorldSet]) -> bool {
    rows.iter()
        .all(|row| row.iter().all(|v| rows[v].is_subset(*row)))
}

/// All preorders on `n` labeled worlds as successor rows, in mask order.
pub fn preorders(n: usize) -> Vec<Vec<WorldSet>> {
    let diag: u64 = (0..n).map(|i| 1u64 << (i * n + i)).sum();
    let off: Vec<usize> = (0..n * n).filter(|b| diag >> b & 1 == 0).collect();
    let mut out = Vec::new();
    for code in 0u64..(1u64 << off.len()) {
        let mut mask = diag;
        for (k, &bit) in off.iter().enumerate() {
            if code >> k & 1 == 1 {
                mask |= 1 << bit;
            }
        }
        let rows = decode(mask, n);
        if is_transitive(&rows) {
            out.push(rows);
        }
    }
    out
}

fn symmetric_masks(n: usize) -> Vec<u64> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut out: Vec<u64> = (0u64..(1u64 << pairs.len()))
        .map(|code| {
            let mut mask = 0u64;
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if code >> k & 1 == 1 {
                    mask |= 1 << (i * n + j);
                    mask |= 1 << (j * n + i);
                }
            }
            mask
        })
        .collect();
    out.sort_unstable();
    out
}

fn up_closed(set: WorldSet, preceq: &[WorldSet]) -> bool {
    set.iter().all(|w| preceq[w].is_subset(set))
}

/// Fallible sets allowed on a frame: closed under `≼` and `R`, and every
/// member has an `R`-successor.
fn fallible_sets(preceq: &[WorldSet], rel: &[WorldSet], allowed: bool) -> Vec<WorldSet> {
    if !allowed {
        return vec![WorldSet::EMPTY];
    }
    let n = preceq.len();
    (0u64..(1u64 << n))
        .map(WorldSet)
        .filter(|&f| {
            f.iter()
                .all(|w| preceq[w].is_subset(f) && rel[w].is_subset(f) && !rel[w].is_empty())
        })
        .collect()
}

fn up_sets_containing(preceq: &[WorldSet], floor: WorldSet) -> Vec<WorldSet> {
    let n = preceq.len();
    (0u64..(1u64 << n))
        .map(WorldSet)
        .filter(|&s| floor.is_subset(s) && up_closed(s, preceq))
        .collect()
}

fn frame_ok(p: &EnumParams, preceq: &[WorldSet], rel: &[WorldSet]) -> bool {
    let class = p.class_filter;
    let need_sym = class.requires_symmetric() || p.frame.require_symmetric;
    let need_fwd = class.requires_confluence() || p.frame.require_forward_confluent;
    let need_bwd = class.requires_confluence() || p.frame.require_backward_confluent;
    (!need_sym || is_symmetric(rel))
        && (!need_fwd || is_forward_confluent(preceq, rel))
        && (!need_bwd || is_backward_confluent(preceq, rel))
        && p.frame.custom.is_none_or(|f| f(preceq, rel))
}

fn world_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("w{i}")).collect()
}

/// Lazily enumerates every model admitted by `p`, each exactly once.
pub fn enumerate_models(p: &EnumParams) -> Result<impl Iterator<Item = KripkeModel>, SearchError> {
    p.check()?;
    let p = Arc::new(p.clone());
    let iter = (1..=p.max_worlds).flat_map(move |n| {
        let p = p.clone();
        let names = Arc::new(world_names(n));
        let symmetric_only = p.class_filter.requires_symmetric() || p.frame.require_symmetric;
        let rels: Arc<Vec<u64>> = Arc::new(if symmetric_only {
            symmetric_masks(n)
        } else {
            (0u64..(1u64 << (n * n))).collect()
        });
        preorders(n).into_iter().flat_map(move |preceq| {
            let p = p.clone();
            let names = names.clone();
            let preceq = Arc::new(preceq);
            let rels = rels.clone();
            (0..rels.len()).flat_map(move |ri| {
                let rel = decode(rels[ri], n);
                let p = p.clone();
                let names = names.clone();
                let preceq = preceq.clone();
                let frames: Vec<WorldSet> = if frame_ok(&p, &preceq, &rel) {
                    fallible_sets(&preceq, &rel, p.fallible_allowed())
                } else {
                    vec![]
                };
                let rel = Arc::new(rel);
                frames.into_iter().flat_map(move |fallible| {
                    let ups = up_sets_containing(&preceq, fallible);
                    let k = p.props.len();
                    let total = ups.len().pow(k as u32);
                    let p = p.clone();
                    let names = names.clone();
                    let preceq = preceq.clone();
                    let rel = rel.clone();
                    (0..total).map(move |mut code| {
                        let mut valuation = BTreeMap::new();
                        for prop in p.props.iter().rev() {
                            valuation.insert(prop.clone(), ups[code % ups.len()]);
                            code /= ups.len();
                        }
                        KripkeModel::from_parts_unchecked(
                            (*names).clone(),
                            fallible,
                            (*preceq).clone(),
                            (*rel).clone(),
                            valuation,
                        )
                    })
                })
            })
        })
    });
    Ok(iter)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchVerdict {
    Counterexample {
        model: KripkeModel,
        world: String,
    },
    NoneFound {
        max_worlds: usize,
        props: Vec<String>,
        examined: u64,
    },
}

impl SearchVerdict {
    pub fn is_counterexample(&self) -> bool {
        matches!(self, SearchVerdict::Counterexample { .. })
    }
}

impl fmt::Display for SearchVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchVerdict::Counterexample { model, world } => write!(
                f,
                "COUNTEREXAMPLE\n{}world: {world}",
                crate::kripke::write_model_file(model)
            ),
            SearchVerdict::NoneFound {
                max_worlds,
                examined,
                ..
            } => write!(f, "NONE max_worlds={max_worlds} examined={examined}"),
        }
    }
}

/// First model in enumeration order with a world refuting `f`.
pub fn find_countermodel(f: &Formula, p: &EnumParams) -> Result<SearchVerdict, SearchError> {
    let mut examined = 0u64;
    for model in enumerate_models(p)? {
        examined += 1;
        if let Some(w) = refuting_world(&model, f) {
            let world = model.world_name(w).to_string();
            return Ok(SearchVerdict::Counterexample { model, world });
        }
    }
    Ok(SearchVerdict::NoneFound {
        max_worlds: p.max_worlds,
        props: p.props.clone(),
        examined,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub formula: Formula,
    pub a: SearchVerdict,
    pub b: SearchVerdict,
}

impl Comparison {
    /// One class has a counterexample within the bound and the other has not.
    pub fn mismatch(&self) -> bool {
        self.a.is_counterexample() != self.b.is_counterexample()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonReport {
    pub class_a: ModelClass,
    pub class_b: ModelClass,
    pub rows: Vec<Comparison>,
}

impl ComparisonReport {
    pub fn mismatches(&self) -> usize {
        self.rows.iter().filter(|r| r.mismatch()).count()
    }
}

fn short(v: &SearchVerdict) -> String {
    match v {
        SearchVerdict::Counterexample { model, world } => {
            format!("COUNTEREXAMPLE({} worlds, at {world})", model.len())
        }
        other => other.to_string(),
    }
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(
                f,
                "{}\t{}: {}\t{}: {}{}",
                r.formula,
                self.class_a,
                short(&r.a),
                self.class_b,
                short(&r.b),
                if r.mismatch() { "\tMISMATCH" } else { "" }
            )?;
        }
        write!(f, "mismatches: {}", self.mismatches())
    }
}

/// Runs the same bounded search under two classes for each formula.
pub fn compare_classes(
    formulas: &[Formula],
    a: ModelClass,
    b: ModelClass,
    p: &EnumParams,
) -> Result<ComparisonReport, SearchError> {
    let (pa, pb) = (p.with_class(a), p.with_class(b));
    pa.check()?;
    let rows = formulas
        .iter()
        .map(|f| {
            Ok(Comparison {
                formula: f.clone(),
                a: find_countermodel(f, &pa)?,
                b: find_countermodel(f, &pb)?,
            })
        })
        .collect::<Result<Vec<_>, SearchError>>()?;
    Ok(ComparisonReport {
        class_a: a,
        class_b: b,
        rows,
    })
}

fn random_set<R: Rng>(rng: &mut R, n: usize, density: f64) -> WorldSet {
    let mut s = WorldSet::EMPTY;
    for i in 0..n {
        if rng.gen_bool(density) {
            s.insert(i);
        }
    }
    s
}

// Adds edges until R is forward and backward confluent (and stays symmetric
// when asked). Only ever adds pairs, so it terminates.
fn repair_confluence(preceq: &[WorldSet], rel: &mut [WorldSet], symmetric: bool) {
    let n = preceq.len();
    let add = |rel: &mut [WorldSet], a: usize, b: usize| {
        rel[a].insert(b);
        if symmetric {
            rel[b].insert(a);
        }
    };
    loop {
        let mut changed = false;
        for w in 0..n {
            for v in rel[w].iter() {
                for w2 in preceq[w].iter() {
                    if !preceq[v].intersects(rel[w2]) {
                        add(rel, w2, v);
                        changed = true;
                    }
                }
                for v2 in preceq[v].iter() {
                    if !preceq[w].iter().any(|w2| rel[w2].contains(v2)) {
                        add(rel, w, v2);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// Draws a random model of `class` with exactly `n` worlds. Returns `None`
/// when the draw does not land in the class.
pub fn sample_model<R: Rng>(
    rng: &mut R,
    n: usize,
    props: &[String],
    class: ModelClass,
    allow_fallible: bool,
) -> Option<KripkeModel> {
    let mut preceq = vec![WorldSet::EMPTY; n];
    for (i, row) in preceq.iter_mut().enumerate() {
        *row = random_set(rng, n, 0.25);
        row.insert(i);
    }
    let preceq = reflexive_transitive_closure(&preceq);
    let mut rel: Vec<WorldSet> = (0..n).map(|_| random_set(rng, n, 0.3)).collect();
    let symmetric = class.requires_symmetric();
    if symmetric {
        for w in 0..n {
            for v in rel[w].iter() {
                rel[v].insert(w);
            }
        }
    }
    let confluent = class.requires_confluence();
    if confluent {
        repair_confluence(&preceq, &mut rel, symmetric);
    }
    let mut fallible = WorldSet::EMPTY;
    if allow_fallible && !class.forbids_fallible() && rng.gen_bool(0.5) {
        fallible = random_set(rng, n, 0.3);
        loop {
            let mut next = fallible;
            for w in fallible.iter() {
                next |= preceq[w] | rel[w];
                if rel[w].is_empty() {
                    rel[w].insert(w);
                }
            }
            if confluent {
                repair_confluence(&preceq, &mut rel, symmetric);
            }
            for w in next.iter() {
                next |= rel[w];
            }
            if next == fallible && fallible.iter().all(|w| !rel[w].is_empty()) {
                break;
            }
            fallible = next;
        }
    }
    let names = world_names(n);
    let named = |s: WorldSet| -> Vec<String> { s.iter().map(|i| names[i].clone()).collect() };
    let mut valuation = Vec::new();
    for p in props {
        let mut s = random_set(rng, n, 0.4) | fallible;
        for w in s.iter() {
            s |= preceq[w];
        }
        valuation.push((p.clone(), named(s)));
    }
    let mut raw = RawModel {
        worlds: names.clone(),
        fallible: named(fallible),
        close_preceq: false,
        valuation,
        ..Default::default()
    };
    for w in 0..n {
        for v in preceq[w].iter() {
            raw.preceq.push((names[w].clone(), names[v].clone()));
        }
        for v in rel[w].iter() {
            raw.rel.push((names[w].clone(), names[v].clone()));
        }
    }
    let model = validate_model(&raw).ok()?;
    frame_report(&model).in_class(class).then_some(model)
}

/// `count` random models of `class` with world counts drawn from `worlds`.
pub fn sample_models<R: Rng>(
    rng: &mut R,
    worlds: std::ops::RangeInclusive<usize>,
    props: &[String],
    class: ModelClass,
    count: usize,
) -> Vec<KripkeModel> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(worlds.clone());
        if let Some(m) = sample_model(rng, n, props, class, true) {
            out.push(m);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn preorder_counts() {
        // labeled preorders: 1, 4, 29, 355
        let counts: Vec<usize> = (1..=4).map(|n| preorders(n).len()).collect();
        assert_eq!(counts, vec![1, 4, 29, 355]);
    }

    #[test]
    fn one_world_ck_models() {
        let mut p = EnumParams::new(1, &["p"], ModelClass::CK);
        p.allow_fallible = false;
        assert_eq!(enumerate_models(&p).unwrap().count(), 4);
        p.allow_fallible = true;
        // plus the fallible reflexive world, where V(p) must be {w}
        assert_eq!(enumerate_models(&p).unwrap().count(), 5);
    }

    #[test]
    fn ikb_stream_has_no_fallible_worlds() {
        let mut p = EnumParams::new(3, &["p"], ModelClass::IKB);
        p.allow_fallible = true;
        assert!(enumerate_models(&p)
            .unwrap()
            .all(|m| m.fallible().is_empty()));
    }

    #[test]
    fn emitted_models_validate_and_match_class() {
        for class in ModelClass::ALL {
            let p = EnumParams::new(2, &["p"], class);
            for m in enumerate_models(&p).unwrap() {
                assert_eq!(validate_model(&m.to_raw()).unwrap(), m);
                assert!(frame_report(&m).in_class(class));
            }
        }
    }

    #[test]
    fn caps_are_enforced() {
        let p = EnumParams::new(6, &["p"], ModelClass::CK);
        assert!(matches!(
            enumerate_models(&p).err(),
            Some(SearchError::CapExceeded { what: "worlds", .. })
        ));
        let p = EnumParams::new(2, &["p", "q", "r"], ModelClass::CK);
        assert!(find_countermodel(&parse("p").unwrap(), &p).is_err());
        let p = EnumParams::new(0, &[], ModelClass::CK);
        assert_eq!(enumerate_models(&p).err(), Some(SearchError::NoWorlds));
    }

    #[test]
    fn identity_has_no_countermodel() {
        let p = EnumParams::new(3, &["p"], ModelClass::CK);
        match find_countermodel(&parse("p -> p").unwrap(), &p).unwrap() {
            SearchVerdict::NoneFound {
                max_worlds,
                examined,
                ..
            } => {
                assert_eq!(max_worlds, 3);
                assert_eq!(examined as usize, enumerate_models(&p).unwrap().count());
            }
            v => panic!("unexpected {v}"),
        }
    }

    #[test]
    fn samples_are_in_class() {
        let mut rng = StdRng::seed_from_u64(7);
        let props = vec!["p".to_string(), "q".to_string()];
        for class in ModelClass::ALL {
            for m in sample_models(&mut rng, 4..=5, &props, class, 20) {
                assert!(frame_report(&m).in_class(class));
                assert_eq!(validate_model(&m.to_raw()).unwrap(), m);
            }
        }
    }

    #[test]
    fn verdict_rendering() {
        let v = SearchVerdict::NoneFound {
            max_worlds: 3,
            props: vec!["p".into()],
            examined: 12,
        };
        assert_eq!(v.to_string(), "NONE max_worlds=3 examined=12");
    }
}
