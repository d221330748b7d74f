// Proof script files:
//
//   logic: CKB
//   goal: <> false -> false
//   1. taut false -> [] false
//   2. nec 1 [] (false -> [] false)
//   3. axiom K_DIA {A=false; B=[] false} [] (false -> [] false) -> <> false -> <> [] false
//   4. mp 2 3 <> false -> <> [] false

use std::collections::BTreeMap;

use thiserror::Error;

use super::{Logic, ProofScript, ProofStep};
use crate::axioms::AxiomName;
use crate::formula::{check_atom_name, parse, Formula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ScriptError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ScriptError {
    ScriptError {
        line,
        message: message.into(),
    }
}

fn formula(text: &str, line: usize) -> Result<Formula, ScriptError> {
    parse(text).map_err(|e| err(line, e.to_string()))
}

fn index(word: Option<&str>, line: usize) -> Result<usize, ScriptError> {
    let word = word.ok_or_else(|| err(line, "missing step reference"))?;
    word.parse()
        .map_err(|_| err(line, format!("`{word}` is not a step number")))
}

fn parse_step(body: &str, line: usize) -> Result<ProofStep, ScriptError> {
    let (rule, rest) = body
        .split_once(char::is_whitespace)
        .ok_or_else(|| err(line, "step needs a rule and a formula"))?;
    let rest = rest.trim_start();
    match rule {
        "taut" => Ok(ProofStep::Taut(formula(rest, line)?)),
        "mp" => {
            let mut parts = rest.splitn(3, char::is_whitespace);
            let minor = index(parts.next(), line)?;
            let major = index(parts.next(), line)?;
            let f = formula(parts.next().unwrap_or(""), line)?;
            Ok(ProofStep::MP {
                minor,
                major,
                formula: f,
            })
        }
        "nec" => {
            let mut parts = rest.splitn(2, char::is_whitespace);
            let premise = index(parts.next(), line)?;
            let f = formula(parts.next().unwrap_or(""), line)?;
            Ok(ProofStep::Nec {
                premise,
                formula: f,
            })
        }
        "axiom" => {
            let (name, rest) = rest
                .split_once(char::is_whitespace)
                .ok_or_else(|| err(line, "axiom step needs a name, an assignment and a formula"))?;
            let name: AxiomName = name.parse().map_err(|e| err(line, format!("{e}")))?;
            let rest = rest.trim_start();
            let inner = rest
                .strip_prefix('{')
                .ok_or_else(|| err(line, "expected `{` after axiom name"))?;
            let (assign_text, f_text) = inner
                .split_once('}')
                .ok_or_else(|| err(line, "unterminated assignment"))?;
            let mut assignment = BTreeMap::new();
            for item in assign_text
                .split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
            {
                let (var, value) = item
                    .split_once('=')
                    .ok_or_else(|| err(line, format!("malformed binding `{item}`")))?;
                let var = var.trim();
                check_atom_name(var).map_err(|e| err(line, e.to_string()))?;
                if assignment
                    .insert(var.to_string(), formula(value, line)?)
                    .is_some()
                {
                    return Err(err(line, format!("{var} bound twice")));
                }
            }
            Ok(ProofStep::AxiomInst {
                name,
                assignment,
                formula: formula(f_text, line)?,
            })
        }
        other => Err(err(line, format!("unknown rule `{other}`"))),
    }
}

pub fn parse_script(text: &str) -> Result<ProofScript, ScriptError> {
    let mut logic = None;
    let mut goal = None;
    let mut steps = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if let Some(rest) = t.strip_prefix("logic:") {
            let l: Logic = rest.trim().parse().map_err(|e| err(line, format!("{e}")))?;
            if logic.replace(l).is_some() {
                return Err(err(line, "duplicate logic header"));
            }
        } else if let Some(rest) = t.strip_prefix("goal:") {
            if goal.replace(formula(rest, line)?).is_some() {
                return Err(err(line, "duplicate goal header"));
            }
        } else if let Some((num, body)) = t.split_once('.') {
            let k: usize = num
                .trim()
                .parse()
                .map_err(|_| err(line, format!("expected step number, found `{num}`")))?;
            if k != steps.len() + 1 {
                return Err(err(
                    line,
                    format!("step numbered {k}, expected {}", steps.len() + 1),
                ));
            }
            steps.push(parse_step(body.trim(), line)?);
        } else {
            return Err(err(line, format!("unrecognised line `{t}`")));
        }
    }
    Ok(ProofScript {
        logic: logic.ok_or_else(|| err(0, "missing `logic:` header"))?,
        goal: goal.ok_or_else(|| err(0, "missing `goal:` header"))?,
        steps,
    })
}

pub fn write_script(s: &ProofScript) -> String {
    let mut out = format!("logic: {}\ngoal: {}\n", s.logic, s.goal);
    for (i, step) in s.steps.iter().enumerate() {
        let body = match step {
            ProofStep::Taut(f) => format!("taut {f}"),
            ProofStep::MP {
                minor,
                major,
                formula,
            } => format!("mp {minor} {major} {formula}"),
            ProofStep::Nec { premise, formula } => format!("nec {premise} {formula}"),
            ProofStep::AxiomInst {
                name,
                assignment,
                formula,
            } => {
                let binds: Vec<String> =
                    assignment.iter().map(|(k, v)| format!("{k}={v}")).collect();
                format!("axiom {name} {{{}}} {formula}", binds.join("; "))
            }
        };
        out += &format!("{}. {body}\n", i + 1);
    }
    out
}
