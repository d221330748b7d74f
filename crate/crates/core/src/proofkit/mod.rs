//! Hilbert-style proof checking for CK, CKB, IK and IKB.
//!
//! A script is a list of steps, each citing earlier steps by their 1-based
//! number. Tautology steps are discharged by [`ipc_valid`]; axiom steps must
//! be the exact substitution instance of an admissible schema.

mod ipc;
mod mutate;
mod script;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use ipc::ipc_valid;
pub use mutate::single_step_mutants;
pub use script::{parse_script, write_script, ScriptError};

use crate::axioms::{schema, AxiomName};
use crate::formula::{parse, substitute, Formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Logic {
    CK,
    CKB,
    IK,
    IKB,
}

impl Logic {
    pub fn as_str(self) -> &'static str {
        match self {
            Logic::CK => "CK",
            Logic::CKB => "CKB",
            Logic::IK => "IK",
            Logic::IKB => "IKB",
        }
    }

    /// Axiom schemas available in this logic.
    pub fn admits(self, name: AxiomName) -> bool {
        use AxiomName::*;
        let b = matches!(name, BBox | BDia);
        let ik = matches!(name, FS | DP | N);
        match name {
            KBox | KDia => true,
            _ => match self {
                Logic::CK => false,
                Logic::CKB => b,
                Logic::IK => ik,
                Logic::IKB => b || ik,
            },
        }
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown logic `{0}` (expected CK, CKB, IK or IKB)")]
pub struct UnknownLogic(pub String);

impl FromStr for Logic {
    type Err = UnknownLogic;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "CK" => Ok(Logic::CK),
            "CKB" => Ok(Logic::CKB),
            "IK" => Ok(Logic::IK),
            "IKB" => Ok(Logic::IKB),
            _ => Err(UnknownLogic(s.to_string())),
        }
    }
}

/// One proof line. Step references are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProofStep {
    Taut(Formula),
    AxiomInst {
        name: AxiomName,
        assignment: BTreeMap<String, Formula>,
        formula: Formula,
    },
    MP {
        minor: usize,
        major: usize,
        formula: Formula,
    },
    Nec {
        premise: usize,
        formula: Formula,
    },
}

impl ProofStep {
    pub fn formula(&self) -> &Formula {
        match self {
            ProofStep::Taut(f) => f,
            ProofStep::AxiomInst { formula, .. }
            | ProofStep::MP { formula, .. }
            | ProofStep::Nec { formula, .. } => formula,
        }
    }

    pub fn formula_mut(&mut self) -> &mut Formula {
        match self {
            ProofStep::Taut(f) => f,
            ProofStep::AxiomInst { formula, .. }
            | ProofStep::MP { formula, .. }
            | ProofStep::Nec { formula, .. } => formula,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofScript {
    pub logic: Logic,
    pub steps: Vec<ProofStep>,
    pub goal: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectReason {
    EmptyScript,
    BadIndex { index: usize },
    NotTautology,
    Inadmissible { name: AxiomName, logic: Logic },
    SchemaMismatch { name: AxiomName },
    ModusPonensMismatch { minor: usize, major: usize },
    NecessitationMismatch { premise: usize },
    GoalMismatch,
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::EmptyScript => write!(f, "script has no steps"),
            RejectReason::BadIndex { index } => {
                write!(f, "reference {index} is not an earlier step")
            }
            RejectReason::NotTautology => write!(f, "not an intuitionistic tautology"),
            RejectReason::Inadmissible { name, logic } => {
                write!(f, "axiom {name} is not admissible in {logic}")
            }
            RejectReason::SchemaMismatch { name } => {
                write!(
                    f,
                    "formula does not match schema {name} under the assignment"
                )
            }
            RejectReason::ModusPonensMismatch { minor, major } => write!(
                f,
                "step {major} is not an implication from step {minor} to this formula"
            ),
            RejectReason::NecessitationMismatch { premise } => {
                write!(f, "formula is not [] applied to step {premise}")
            }
            RejectReason::GoalMismatch => write!(f, "last formula differs from the goal"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected { step: usize, reason: RejectReason },
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        *self == Verdict::Accepted
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accepted => write!(f, "ACCEPTED"),
            Verdict::Rejected { step, reason } => write!(f, "REJECTED step {step}: {reason}"),
        }
    }
}

fn check_step(logic: Logic, proved: &[Formula], step: &ProofStep) -> Result<(), RejectReason> {
    let cite = |k: usize| -> Result<&Formula, RejectReason> {
        if k >= 1 && k <= proved.len() {
            Ok(&proved[k - 1])
        } else {
            Err(RejectReason::BadIndex { index: k })
        }
    };
    match step {
        ProofStep::Taut(f) => {
            if !ipc_valid(f) {
                return Err(RejectReason::NotTautology);
            }
        }
        ProofStep::AxiomInst {
            name,
            assignment,
            formula,
        } => {
            if !logic.admits(*name) {
                return Err(RejectReason::Inadmissible { name: *name, logic });
            }
            if substitute(&schema(*name).shape, assignment) != *formula {
                return Err(RejectReason::SchemaMismatch { name: *name });
            }
        }
        ProofStep::MP {
            minor,
            major,
            formula,
        } => {
            let antecedent = cite(*minor)?;
            let implication = cite(*major)?;
            let ok = matches!(implication, Formula::Implies(a, b)
                if **a == *antecedent && **b == *formula);
            if !ok {
                return Err(RejectReason::ModusPonensMismatch {
                    minor: *minor,
                    major: *major,
                });
            }
        }
        ProofStep::Nec { premise, formula } => {
            let inner = cite(*premise)?;
            if !matches!(formula, Formula::Box(g) if **g == *inner) {
                return Err(RejectReason::NecessitationMismatch { premise: *premise });
            }
        }
    }
    Ok(())
}

/// Checks every step in order; the first failure decides the verdict.
pub fn check_proof(s: &ProofScript) -> Verdict {
    if s.steps.is_empty() {
        return Verdict::Rejected {
            step: 0,
            reason: RejectReason::EmptyScript,
        };
    }
    let mut proved: Vec<Formula> = Vec::with_capacity(s.steps.len());
    for (i, step) in s.steps.iter().enumerate() {
        if let Err(reason) = check_step(s.logic, &proved, step) {
            return Verdict::Rejected {
                step: i + 1,
                reason,
            };
        }
        proved.push(step.formula().clone());
    }
    if proved.last() != Some(&s.goal) {
        return Verdict::Rejected {
            step: s.steps.len(),
            reason: RejectReason::GoalMismatch,
        };
    }
    Verdict::Accepted
}

fn f(text: &str) -> Formula {
    parse(text).expect("built-in formula parses")
}

/// Derivation of `<> false -> false` in CKB from `K_DIA` and `B_DIA`.
pub fn n_in_ckb() -> ProofScript {
    let bot = Formula::Falsum;
    let box_bot = f("[] false");
    ProofScript {
        logic: Logic::CKB,
        goal: f("<> false -> false"),
        steps: vec![
            ProofStep::Taut(f("false -> [] false")),
            ProofStep::Nec {
                premise: 1,
                formula: f("[] (false -> [] false)"),
            },
            ProofStep::AxiomInst {
                name: AxiomName::KDia,
                assignment: BTreeMap::from([("A".into(), bot.clone()), ("B".into(), box_bot)]),
                formula: f("[] (false -> [] false) -> <> false -> <> [] false"),
            },
            ProofStep::MP {
                minor: 2,
                major: 3,
                formula: f("<> false -> <> [] false"),
            },
            ProofStep::AxiomInst {
                name: AxiomName::BDia,
                assignment: BTreeMap::from([("A".into(), bot)]),
                formula: f("<> [] false -> false"),
            },
            ProofStep::Taut(f(
                "(<> false -> <> [] false) -> (<> [] false -> false) -> <> false -> false",
            )),
            ProofStep::MP {
                minor: 4,
                major: 6,
                formula: f("(<> [] false -> false) -> <> false -> false"),
            },
            ProofStep::MP {
                minor: 5,
                major: 7,
                formula: f("<> false -> false"),
            },
        ],
    }
}

pub fn builtin_scripts() -> BTreeMap<&'static str, ProofScript> {
    BTreeMap::from([("n_in_ckb", n_in_ckb())])
}
