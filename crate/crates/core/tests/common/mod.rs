//! Oracles shared by the integration tests. Nothing here calls into the
//! semantics or search modules.

#![allow(dead_code)]

use modalbench::formula::Formula;

/// Preorders on `n` worlds as adjacency matrices, by brute force over all
/// relations.
pub fn brute_preorders(n: usize) -> Vec<Vec<Vec<bool>>> {
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << (n * n)) {
        let r = |i: usize, j: usize| mask >> (i * n + j) & 1 == 1;
        let reflexive = (0..n).all(|i| r(i, i));
        let transitive =
            (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(r(i, j) && r(j, k)) || r(i, k))));
        if reflexive && transitive {
            out.push((0..n).map(|i| (0..n).map(|j| r(i, j)).collect()).collect());
        }
    }
    out
}

/// Subsets of `0..n` (as bool vectors) closed upward under `le`.
pub fn brute_up_sets(le: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = le.len();
    (0u32..(1u32 << n))
        .map(|m| (0..n).map(|i| m >> i & 1 == 1).collect::<Vec<bool>>())
        .filter(|s| (0..n).all(|i| !s[i] || (0..n).all(|j| !le[i][j] || s[j])))
        .collect()
}

fn ipc_eval(f: &Formula, w: usize, le: &[Vec<bool>], val: &[(String, Vec<bool>)]) -> bool {
    match f {
        Formula::Atom(p) => val
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, s)| s[w])
            .unwrap_or(false),
        Formula::Falsum => false,
        Formula::And(a, b) => ipc_eval(a, w, le, val) && ipc_eval(b, w, le, val),
        Formula::Or(a, b) => ipc_eval(a, w, le, val) || ipc_eval(b, w, le, val),
        Formula::Implies(a, b) => (0..le.len())
            .filter(|&v| le[w][v])
            .all(|v| !ipc_eval(a, v, le, val) || ipc_eval(b, v, le, val)),
        Formula::Box(_) | Formula::Diamond(_) => panic!("oracle takes propositional formulas"),
    }
}

/// Intuitionistic validity checked on every rooted Kripke model with at
/// most `max_worlds` worlds (world 0 is the root).
pub fn ipc_oracle_valid(f: &Formula, max_worlds: usize) -> bool {
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    for n in 1..=max_worlds {
        for le in brute_preorders(n) {
            if !(0..n).all(|j| le[0][j]) {
                continue;
            }
            let ups = brute_up_sets(&le);
            let total = ups.len().pow(atoms.len() as u32);
            for mut code in 0..total {
                let mut val = Vec::new();
                for a in &atoms {
                    val.push((a.clone(), ups[code % ups.len()].clone()));
                    code /= ups.len();
                }
                if !ipc_eval(f, 0, &le, &val) {
                    return false;
                }
            }
        }
    }
    true
}
