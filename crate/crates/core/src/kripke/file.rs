// Line-oriented model files:
//
//   worlds: w v v'
//   fallible:
//   preceq: v<=v'
//   preceq-closure: on
//   rel: w~v v~w
//   val: p = w

use thiserror::Error;

use super::{KripkeModel, RawModel};
use crate::formula::check_atom_name;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ModelFileError {
    pub line: usize,
    pub message: String,
}

fn world_name_ok(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn split_pair(item: &str, sep: &str, line: usize) -> Result<(String, String), ModelFileError> {
    let err = || ModelFileError {
        line,
        message: format!("malformed pair `{item}`, expected a{sep}b"),
    };
    let (a, b) = item.split_once(sep).ok_or_else(err)?;
    if !world_name_ok(a) || !world_name_ok(b) {
        return Err(err());
    }
    Ok((a.to_string(), b.to_string()))
}

fn world_list(rest: &str, line: usize) -> Result<Vec<String>, ModelFileError> {
    rest.split_whitespace()
        .map(|w| {
            if world_name_ok(w) {
                Ok(w.to_string())
            } else {
                Err(ModelFileError {
                    line,
                    message: format!("invalid world name `{w}`"),
                })
            }
        })
        .collect()
}

/// Parses the model file format. The result still has to go through
/// [`validate_model`](super::validate_model).
pub fn parse_model_file(text: &str) -> Result<RawModel, ModelFileError> {
    let mut raw = RawModel {
        close_preceq: true,
        ..Default::default()
    };
    let mut saw_worlds = false;
    for (idx, full) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = full.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, rest) = trimmed.split_once(':').ok_or_else(|| ModelFileError {
            line,
            message: format!("expected `key: value`, found `{trimmed}`"),
        })?;
        let rest = rest.trim();
        match key.trim() {
            "worlds" => {
                if saw_worlds {
                    return Err(ModelFileError {
                        line,
                        message: "duplicate `worlds` line".into(),
                    });
                }
                saw_worlds = true;
                raw.worlds = world_list(rest, line)?;
            }
            "fallible" => raw.fallible.extend(world_list(rest, line)?),
            "preceq" => {
                for item in rest.split_whitespace() {
                    raw.preceq.push(split_pair(item, "<=", line)?);
                }
            }
            "preceq-closure" => {
                raw.close_preceq = match rest {
                    "on" => true,
                    "off" => false,
                    other => {
                        return Err(ModelFileError {
                            line,
                            message: format!("preceq-closure must be on or off, found `{other}`"),
                        })
                    }
                }
            }
            "rel" => {
                for item in rest.split_whitespace() {
                    raw.rel.push(split_pair(item, "~", line)?);
                }
            }
            "val" => {
                let (prop, worlds) = rest.split_once('=').ok_or_else(|| ModelFileError {
                    line,
                    message: "expected `val: P = worlds...`".into(),
                })?;
                let prop = prop.trim();
                check_atom_name(prop).map_err(|e| ModelFileError {
                    line,
                    message: format!("invalid proposition name: {e}"),
                })?;
                raw.valuation
                    .push((prop.to_string(), world_list(worlds, line)?));
            }
            other => {
                return Err(ModelFileError {
                    line,
                    message: format!("unknown key `{other}`"),
                })
            }
        }
    }
    Ok(raw)
}

fn line(key: &str, items: impl IntoIterator<Item = String>) -> String {
    let items: Vec<String> = items.into_iter().collect();
    if items.is_empty() {
        format!("{key}:\n")
    } else {
        format!("{key}: {}\n", items.join(" "))
    }
}

/// Writes a validated model. `≼` is listed without reflexive pairs and read
/// back with closure on.
pub fn write_model_file(m: &KripkeModel) -> String {
    let raw = m.to_raw();
    let mut out = String::new();
    out += &line("worlds", raw.worlds.iter().cloned());
    out += &line("fallible", raw.fallible.iter().cloned());
    out += &line(
        "preceq",
        raw.preceq.iter().map(|(a, b)| format!("{a}<={b}")),
    );
    out += "preceq-closure: on\n";
    out += &line("rel", raw.rel.iter().map(|(a, b)| format!("{a}~{b}")));
    for (p, ws) in &raw.valuation {
        if ws.is_empty() {
            out += &format!("val: {p} =\n");
        } else {
            out += &format!("val: {p} = {}\n", ws.join(" "));
        }
    }
    out
}
