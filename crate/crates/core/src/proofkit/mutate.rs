use super::{ProofScript, ProofStep};
use crate::axioms::AxiomName;
use crate::formula::Formula;

// Every formula obtained by changing exactly one connective of `f`:
// binary connectives swap among &, |, ->; [] and <> swap with each other.
fn connective_edits(f: &Formula) -> Vec<Formula> {
    let mut out = Vec::new();
    match f {
        Formula::Atom(_) | Formula::Falsum => {}
        Formula::Box(g) => {
            out.push(Formula::Diamond(g.clone()));
            out.extend(connective_edits(g).into_iter().map(Formula::boxed));
        }
        Formula::Diamond(g) => {
            out.push(Formula::Box(g.clone()));
            out.extend(connective_edits(g).into_iter().map(Formula::diamond));
        }
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            let rebuild = |l: Formula, r: Formula| match f {
                Formula::And(..) => Formula::and(l, r),
                Formula::Or(..) => Formula::or(l, r),
                _ => Formula::implies(l, r),
            };
            for other in [Formula::and, Formula::or, Formula::implies] {
                let g = other((**l).clone(), (**r).clone());
                if g != *f {
                    out.push(g);
                }
            }
            for e in connective_edits(l) {
                out.push(rebuild(e, (**r).clone()));
            }
            for e in connective_edits(r) {
                out.push(rebuild((**l).clone(), e));
            }
        }
    }
    out
}

fn shifted(k: usize) -> Vec<usize> {
    let mut v = vec![k + 1];
    if k > 0 {
        v.push(k - 1);
    }
    v
}

/// All scripts differing from `s` in exactly one step: a shifted or swapped
/// step reference, a renamed axiom schema, or one edited connective in the
/// step's formula. Each mutant carries a short description.
pub fn single_step_mutants(s: &ProofScript) -> Vec<(String, ProofScript)> {
    let mut out = Vec::new();
    let mut push = |desc: String, i: usize, step: ProofStep| {
        let mut m = s.clone();
        m.steps[i] = step;
        out.push((desc, m));
    };
    for (i, step) in s.steps.iter().enumerate() {
        let k = i + 1;
        match step {
            ProofStep::MP {
                minor,
                major,
                formula,
            } => {
                for a in shifted(*minor) {
                    push(
                        format!("step {k}: minor {minor}->{a}"),
                        i,
                        ProofStep::MP {
                            minor: a,
                            major: *major,
                            formula: formula.clone(),
                        },
                    );
                }
                for b in shifted(*major) {
                    push(
                        format!("step {k}: major {major}->{b}"),
                        i,
                        ProofStep::MP {
                            minor: *minor,
                            major: b,
                            formula: formula.clone(),
                        },
                    );
                }
                if minor != major {
                    push(
                        format!("step {k}: swap references"),
                        i,
                        ProofStep::MP {
                            minor: *major,
                            major: *minor,
                            formula: formula.clone(),
                        },
                    );
                }
            }
            ProofStep::Nec { premise, formula } => {
                for a in shifted(*premise) {
                    push(
                        format!("step {k}: premise {premise}->{a}"),
                        i,
                        ProofStep::Nec {
                            premise: a,
                            formula: formula.clone(),
                        },
                    );
                }
            }
            ProofStep::AxiomInst {
                name,
                assignment,
                formula,
            } => {
                for other in AxiomName::ALL {
                    if other != *name {
                        push(
                            format!("step {k}: rename {name}->{other}"),
                            i,
                            ProofStep::AxiomInst {
                                name: other,
                                assignment: assignment.clone(),
                                formula: formula.clone(),
                            },
                        );
                    }
                }
            }
            ProofStep::Taut(_) => {}
        }
        for (n, edited) in connective_edits(step.formula()).into_iter().enumerate() {
            let mut changed = step.clone();
            *changed.formula_mut() = edited;
            push(format!("step {k}: connective edit #{n}"), i, changed);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    #[test]
    fn connective_edits_change_one_node() {
        let f = parse("[] p -> q").unwrap();
        let edits: Vec<String> = connective_edits(&f).iter().map(|g| g.to_string()).collect();
        assert_eq!(edits, vec!["[] p & q", "[] p | q", "<> p -> q"]);
    }
}
