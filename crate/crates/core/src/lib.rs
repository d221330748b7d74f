//! Workbench for the constructive and intuitionistic modal logics CK, CKB,
//! IK and IKB.
//!
//! - [`formula`]: syntax, parsing, printing, substitution
//! - [`kripke`]: birelational models with fallible worlds, frame properties
//! - [`semantics`]: forcing on finite models
//! - [`axioms`]: schema catalog and instance generation
//! - [`proofkit`]: Hilbert proof checking with an IPC decision procedure
//! - [`search`]: model enumeration and bounded countermodel search
//! - [`cli`]: the `modalbench` command

pub mod axioms;
pub mod cli;
pub mod formula;
pub mod kripke;
pub mod proofkit;
pub mod search;
pub mod semantics;

pub use formula::{parse, render, Formula};
pub use kripke::{frame_report, validate_model, FrameReport, KripkeModel, ModelClass, RawModel};
pub use proofkit::{check_proof, ProofScript, Verdict};
pub use search::{find_countermodel, EnumParams, SearchVerdict};
pub use semantics::{eval, eval_diamond_unguarded, valid_in_model};
