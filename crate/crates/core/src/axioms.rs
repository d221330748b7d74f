//! Axiom schemas and their substitution instances.
//!
//! Schemas are ordinary formulas over the metavariable atoms `A` and `B`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formula::{enumerate_formulas, parse, substitute, Formula};

pub const META_A: &str = "A";
pub const META_B: &str = "B";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomName {
    KBox,
    KDia,
    FS,
    DP,
    N,
    BBox,
    BDia,
    TBox,
    TDia,
    D,
    FourBox,
    FourDia,
    FiveBox,
    FiveDia,
}

impl AxiomName {
    pub const ALL: [AxiomName; 14] = [
        AxiomName::KBox,
        AxiomName::KDia,
        AxiomName::FS,
        AxiomName::DP,
        AxiomName::N,
        AxiomName::BBox,
        AxiomName::BDia,
        AxiomName::TBox,
        AxiomName::TDia,
        AxiomName::D,
        AxiomName::FourBox,
        AxiomName::FourDia,
        AxiomName::FiveBox,
        AxiomName::FiveDia,
    ];

    /// The seven schemas sound on CKB-models.
    pub const CKB_SOUND: [AxiomName; 7] = [
        AxiomName::KBox,
        AxiomName::KDia,
        AxiomName::BBox,
        AxiomName::BDia,
        AxiomName::FS,
        AxiomName::DP,
        AxiomName::N,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AxiomName::KBox => "K_BOX",
            AxiomName::KDia => "K_DIA",
            AxiomName::FS => "FS",
            AxiomName::DP => "DP",
            AxiomName::N => "N",
            AxiomName::BBox => "B_BOX",
            AxiomName::BDia => "B_DIA",
            AxiomName::TBox => "T_BOX",
            AxiomName::TDia => "T_DIA",
            AxiomName::D => "D",
            AxiomName::FourBox => "FOUR_BOX",
            AxiomName::FourDia => "FOUR_DIA",
            AxiomName::FiveBox => "FIVE_BOX",
            AxiomName::FiveDia => "FIVE_DIA",
        }
    }

    fn shape_text(self) -> &'static str {
        match self {
            AxiomName::KBox => "[] (A -> B) -> [] A -> [] B",
            AxiomName::KDia => "[] (A -> B) -> <> A -> <> B",
            AxiomName::FS => "(<> A -> [] B) -> [] (A -> B)",
            AxiomName::DP => "<> (A | B) -> <> A | <> B",
            AxiomName::N => "~ <> false",
            AxiomName::BBox => "A -> [] <> A",
            AxiomName::BDia => "<> [] A -> A",
            AxiomName::TBox => "[] A -> A",
            AxiomName::TDia => "A -> <> A",
            AxiomName::D => "[] A -> <> A",
            AxiomName::FourBox => "[] [] A -> [] A",
            AxiomName::FourDia => "<> <> A -> <> A",
            AxiomName::FiveBox => "<> A -> [] <> A",
            AxiomName::FiveDia => "<> [] A -> [] A",
        }
    }
}

impl fmt::Display for AxiomName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown axiom schema `{0}`")]
pub struct UnknownAxiom(pub String);

impl FromStr for AxiomName {
    type Err = UnknownAxiom;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AxiomName::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| UnknownAxiom(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSchema {
    pub name: AxiomName,
    pub shape: Formula,
}

impl AxiomSchema {
    /// Metavariables occurring in the shape, in `A`, `B` order.
    pub fn metavariables(&self) -> Vec<String> {
        self.shape.atoms().into_iter().collect()
    }
}

pub fn schema(name: AxiomName) -> AxiomSchema {
    AxiomSchema {
        name,
        shape: parse(name.shape_text()).expect("built-in schema parses"),
    }
}

/// The whole catalog, one `NAME: formula` line per schema.
pub fn catalog_listing() -> String {
    AxiomName::ALL
        .iter()
        .map(|&n| format!("{}: {}\n", n, schema(n).shape))
        .collect()
}

/// Bounds on the formulas substituted for metavariables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceBounds {
    pub max_size: usize,
    pub max_depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub name: AxiomName,
    pub assignment: BTreeMap<String, Formula>,
    pub formula: Formula,
}

/// All substitution instances of the named schemas, schema by schema,
/// each over the instantiating formulas in size-then-lexicographic order.
/// Formulas already emitted are skipped.
pub fn instances_detailed(
    names: &[AxiomName],
    atoms: &[String],
    bounds: InstanceBounds,
) -> impl Iterator<Item = Instance> {
    let pool = enumerate_formulas(atoms, bounds.max_size, bounds.max_depth);
    let names = names.to_vec();
    let mut seen: HashSet<Formula> = HashSet::new();
    names
        .into_iter()
        .flat_map(move |name| {
            let sch = schema(name);
            let metas = sch.metavariables();
            let pool = pool.clone();
            let total = pool.len().pow(metas.len() as u32);
            (0..total).map(move |mut code| {
                let mut assignment = BTreeMap::new();
                // first metavariable varies slowest
                for meta in metas.iter().rev() {
                    assignment.insert(meta.clone(), pool[code % pool.len()].clone());
                    code /= pool.len();
                }
                let formula = substitute(&sch.shape, &assignment);
                Instance {
                    name,
                    assignment,
                    formula,
                }
            })
        })
        .filter(move |inst| seen.insert(inst.formula.clone()))
}

pub fn instances(
    names: &[AxiomName],
    atoms: &[String],
    bounds: InstanceBounds,
) -> impl Iterator<Item = Formula> {
    instances_detailed(names, atoms, bounds).map(|i| i.formula)
}
