//! Acceptance criteria. Each test prints one PASS/FAIL line and asserts
//! both the outcome and the time budget.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use modalbench::axioms::{instances, AxiomName, InstanceBounds};
use modalbench::formula::{enumerate_formulas, parse, Formula};
use modalbench::kripke::{frame_report, parse_model_file, validate_model, ModelClass};
use modalbench::proofkit::{builtin_scripts, check_proof, ipc_valid, single_step_mutants};
use modalbench::search::{
    compare_classes, enumerate_models, find_countermodel, sample_models, EnumParams, SearchVerdict,
};
use modalbench::semantics::{eval, eval_diamond_unguarded, valid_in_model};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn report(id: &str, what: &str, ok: bool, elapsed: Duration, budget: Duration) {
    let pass = ok && elapsed < budget;
    println!(
        "[{}] {id} {what} ({:.2?} of {:?})",
        if pass { "PASS" } else { "FAIL" },
        elapsed,
        budget
    );
    assert!(ok, "{id}: criterion violated");
    assert!(
        elapsed < budget,
        "{id}: took {elapsed:?}, budget {budget:?}"
    );
}

fn sound_schemas() -> Vec<AxiomName> {
    AxiomName::CKB_SOUND.to_vec()
}

fn atoms(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

const INST: InstanceBounds = InstanceBounds {
    max_size: 2,
    max_depth: 2,
};

#[test]
fn ac1_figure2_golden_model() {
    let start = Instant::now();
    let text = include_str!("../data/fig2.km");
    let m = validate_model(&parse_model_file(text).unwrap()).unwrap();
    let refuted = !eval(&m, "w", &parse("p -> [] <> p").unwrap()).unwrap();
    let r = frame_report(&m);
    let ok = refuted
        && r.symmetric
        && !r.forward_confluent
        && !r.backward_confluent
        && r.classes == BTreeSet::from([ModelClass::CK]);
    report(
        "AC1",
        "Figure-2 model: B_BOX fails at w, classified CK only",
        ok,
        start.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn ac2_countermodel_rediscovery() {
    let start = Instant::now();
    let f = parse("p -> [] <> p").unwrap();
    let mut p = EnumParams::new(3, &["p"], ModelClass::CK);
    p.frame.require_symmetric = true;
    let ok = match find_countermodel(&f, &p).unwrap() {
        SearchVerdict::Counterexample { model, world } => {
            let r = frame_report(&model);
            model.len() <= 3
                && r.symmetric
                && validate_model(&model.to_raw()).as_ref() == Ok(&model)
                && !eval(&model, &world, &f).unwrap()
        }
        SearchVerdict::NoneFound { .. } => false,
    };
    report(
        "AC2",
        "symmetric CK countermodel to B_BOX within 3 worlds",
        ok,
        start.elapsed(),
        Duration::from_secs(10),
    );
}

#[test]
fn ac3_soundness_suite() {
    let start = Instant::now();
    let mut failures = 0usize;
    let mut checked = 0usize;

    let one: Vec<Formula> = instances(&sound_schemas(), &atoms(&["p"]), INST).collect();
    let p = EnumParams::new(3, &["p"], ModelClass::CKB);
    let mut exhaustive = 0usize;
    for m in enumerate_models(&p).unwrap() {
        exhaustive += 1;
        for f in &one {
            checked += 1;
            if !valid_in_model(&m, f) {
                failures += 1;
            }
        }
    }

    let two: Vec<Formula> = instances(&sound_schemas(), &atoms(&["p", "q"]), INST).collect();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let sampled = sample_models(&mut rng, 4..=5, &atoms(&["p", "q"]), ModelClass::CKB, 500);
    for m in &sampled {
        for f in &two {
            checked += 1;
            if !valid_in_model(m, f) {
                failures += 1;
            }
        }
    }
    println!(
        "AC3: {exhaustive} enumerated + {} sampled CKB models, {} / {} instances, {checked} checks, {failures} failures",
        sampled.len(),
        one.len(),
        two.len()
    );
    report(
        "AC3",
        "K_BOX, K_DIA, B_BOX, B_DIA, FS, DP, N instances valid on CKB models",
        failures == 0 && exhaustive > 0 && sampled.len() >= 500,
        start.elapsed(),
        Duration::from_secs(300),
    );
}

#[test]
fn ac4_diamond_equivalence() {
    let start = Instant::now();
    let formulas = enumerate_formulas(&atoms(&["p"]), 5, 5);
    let mut p = EnumParams::new(3, &["p"], ModelClass::CK);
    p.frame.require_forward_confluent = true;
    let mut models = 0usize;
    let mut mismatches = 0usize;
    for m in enumerate_models(&p).unwrap() {
        models += 1;
        for f in &formulas {
            for w in m.world_names() {
                if eval(&m, w, f).unwrap() != eval_diamond_unguarded(&m, w, f).unwrap() {
                    mismatches += 1;
                }
            }
        }
    }
    println!(
        "AC4: {models} forward-confluent models x {} formulas, {mismatches} mismatches",
        formulas.len()
    );
    report(
        "AC4",
        "guarded and unguarded diamonds agree on forward-confluent models",
        mismatches == 0 && models > 0,
        start.elapsed(),
        Duration::from_secs(300),
    );
}

#[test]
fn ac5_confluence_symmetry_bridge() {
    let start = Instant::now();
    let mut p = EnumParams::new(3, &[], ModelClass::CK);
    p.frame.require_symmetric = true;
    let mut frames = 0usize;
    let mut mismatches = 0usize;
    for m in enumerate_models(&p).unwrap() {
        frames += 1;
        let r = frame_report(&m);
        if r.forward_confluent != r.backward_confluent {
            mismatches += 1;
        }
    }
    println!("AC5: {frames} symmetric frames, {mismatches} mismatches");
    report(
        "AC5",
        "forward confluence iff backward confluence for symmetric R",
        mismatches == 0 && frames > 0,
        start.elapsed(),
        Duration::from_secs(60),
    );
}

#[test]
fn ac6_proof_checking() {
    let start = Instant::now();
    let script = builtin_scripts().remove("n_in_ckb").unwrap();
    let accepted = check_proof(&script).is_accepted();
    let mutants = single_step_mutants(&script);
    let survivors: Vec<&String> = mutants
        .iter()
        .filter(|(_, m)| check_proof(m).is_accepted())
        .map(|(d, _)| d)
        .collect();
    println!(
        "AC6: {} mutants, {} accepted {:?}",
        mutants.len(),
        survivors.len(),
        survivors
    );
    report(
        "AC6",
        "n_in_ckb accepted, every single-step mutant rejected",
        accepted && mutants.len() >= 30 && survivors.is_empty(),
        start.elapsed(),
        Duration::from_secs(10),
    );
}

#[test]
fn ac7_ipc_oracle_agreement() {
    let start = Instant::now();
    let formulas = enumerate_formulas(&atoms(&["p", "q"]), 6, 0);
    let mut mismatches = Vec::new();
    for f in &formulas {
        if ipc_valid(f) != common::ipc_oracle_valid(f, 3) {
            mismatches.push(f.to_string());
        }
    }
    let ex_falso = ipc_valid(&parse("false -> q").unwrap());
    let peirce = ipc_valid(&parse("((p -> q) -> p) -> p").unwrap());
    println!(
        "AC7: {} formulas, mismatches {:?}, ex falso {ex_falso}, Peirce {peirce}",
        formulas.len(),
        mismatches
    );
    report(
        "AC7",
        "IPC decision procedure matches rooted Kripke oracle",
        mismatches.is_empty() && ex_falso && !peirce,
        start.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn ac8_collapse_reflection() {
    let start = Instant::now();
    let names = [
        AxiomName::FS,
        AxiomName::DP,
        AxiomName::N,
        AxiomName::BBox,
        AxiomName::BDia,
        AxiomName::KBox,
        AxiomName::KDia,
    ];
    let formulas: Vec<Formula> = instances(&names, &atoms(&["p"]), INST).collect();
    let p = EnumParams::new(3, &["p"], ModelClass::CKB);
    let rep = compare_classes(&formulas, ModelClass::CKB, ModelClass::IKB, &p).unwrap();
    let refuted = rep.rows.iter().filter(|r| r.a.is_counterexample()).count();
    println!(
        "AC8: {} formulas, {refuted} refuted in CKB, {} mismatches",
        rep.rows.len(),
        rep.mismatches()
    );
    report(
        "AC8",
        "CKB and IKB bounded searches agree on all instances",
        rep.mismatches() == 0 && rep.rows.len() == formulas.len(),
        start.elapsed(),
        Duration::from_secs(600),
    );
}
