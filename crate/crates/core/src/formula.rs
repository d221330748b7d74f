//! Modal formulas: abstract syntax, concrete syntax, substitution and
//! structural statistics.
//!
//! The AST has exactly seven constructors. Negation and truth are sugar:
//! `~f` parses to `f -> false` and `true` to `false -> false`.
//!
//! Concrete grammar:
//!
//! ```text
//! formula  := implies
//! implies  := or ("->" implies)?
//! or       := and ("|" and)*
//! and      := unary ("&" unary)*
//! unary    := "~" unary | "[]" unary | "<>" unary | atomexpr
//! atomexpr := "false" | "true" | IDENT | "(" formula ")"
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Words that cannot be used as atom names.
pub const RESERVED: &[&str] = &["false", "true"];

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Falsum,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
    Diamond(Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn boxed(f: Formula) -> Self {
        Formula::Box(Box::new(f))
    }

    pub fn diamond(f: Formula) -> Self {
        Formula::Diamond(Box::new(f))
    }

    /// `f -> false`
    pub fn not(f: Formula) -> Self {
        Formula::implies(f, Formula::Falsum)
    }

    /// `false -> false`
    pub fn top() -> Self {
        Formula::implies(Formula::Falsum, Formula::Falsum)
    }

    pub fn is_modal(&self) -> bool {
        matches!(self, Formula::Box(_) | Formula::Diamond(_))
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Falsum => 1,
            Formula::Box(f) | Formula::Diamond(f) => 1 + f.size(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                1 + l.size() + r.size()
            }
        }
    }

    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Falsum => 0,
            Formula::Box(f) | Formula::Diamond(f) => 1 + f.modal_depth(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.modal_depth().max(r.modal_depth())
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(p) => {
                out.insert(p.clone());
            }
            Formula::Falsum => {}
            Formula::Box(f) | Formula::Diamond(f) => f.collect_atoms(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) | Formula::Falsum => vec![],
            Formula::Box(f) | Formula::Diamond(f) => vec![f],
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => vec![l, r],
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("reserved word `{word}` used as atom at position {pos}")]
    Reserved { pos: usize, word: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    False,
    True,
    Not,
    And,
    Or,
    Arrow,
    BoxOp,
    DiaOp,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::False => "`false`".into(),
            Tok::True => "`true`".into(),
            Tok::Not => "`~`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::BoxOp => "`[]`".into(),
            Tok::DiaOp => "`<>`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let two = bytes.get(i..i + 2);
        let tok = match c {
            b'~' => {
                i += 1;
                Tok::Not
            }
            b'&' => {
                i += 1;
                Tok::And
            }
            b'|' => {
                i += 1;
                Tok::Or
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            _ if two == Some(b"->") => {
                i += 2;
                Tok::Arrow
            }
            _ if two == Some(b"[]") => {
                i += 2;
                Tok::BoxOp
            }
            _ if two == Some(b"<>") => {
                i += 2;
                Tok::DiaOp
            }
            _ if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                match &text[start..i] {
                    "false" => Tok::False,
                    "true" => Tok::True,
                    id => Tok::Ident(id.to_string()),
                }
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    pos: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        toks.push((start, tok));
    }
    toks.push((text.len(), Tok::End));
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos(),
            message: format!("expected {expected}, found {}", self.peek().describe()),
        }
    }

    fn implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.and()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::BoxOp => {
                self.bump();
                Ok(Formula::boxed(self.unary()?))
            }
            Tok::DiaOp => {
                self.bump();
                Ok(Formula::diamond(self.unary()?))
            }
            _ => self.atomexpr(),
        }
    }

    fn atomexpr(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::False => {
                self.bump();
                Ok(Formula::Falsum)
            }
            Tok::True => {
                self.bump();
                Ok(Formula::top())
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Atom(name))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.implies()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected("a formula")),
        }
    }
}

/// Parses a formula. Whitespace between tokens is ignored.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0 };
    let f = p.implies()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("end of input"));
    }
    Ok(f)
}

/// Checks that `name` is usable as an atom (identifier syntax, not reserved).
pub fn check_atom_name(name: &str) -> Result<(), ParseError> {
    if RESERVED.contains(&name) {
        return Err(ParseError::Reserved {
            pos: 0,
            word: name.to_string(),
        });
    }
    let mut chars = name.chars();
    let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if ok {
        Ok(())
    } else {
        Err(ParseError::Syntax {
            pos: 0,
            message: format!("`{name}` is not an identifier"),
        })
    }
}

// Binding strength: implication 1, disjunction 2, conjunction 3, unary/atoms 4.
fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Implies(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        _ => 4,
    }
}

fn write_at(out: &mut String, f: &Formula, min: u8) {
    if prec(f) < min {
        out.push('(');
        write_formula(out, f);
        out.push(')');
    } else {
        write_formula(out, f);
    }
}

fn write_formula(out: &mut String, f: &Formula) {
    match f {
        Formula::Atom(p) => out.push_str(p),
        Formula::Falsum => out.push_str("false"),
        Formula::Box(g) => {
            out.push_str("[] ");
            write_at(out, g, 4);
        }
        Formula::Diamond(g) => {
            out.push_str("<> ");
            write_at(out, g, 4);
        }
        Formula::And(l, r) => {
            write_at(out, l, 3);
            out.push_str(" & ");
            write_at(out, r, 4);
        }
        Formula::Or(l, r) => {
            write_at(out, l, 2);
            out.push_str(" | ");
            write_at(out, r, 3);
        }
        Formula::Implies(l, r) => {
            write_at(out, l, 2);
            out.push_str(" -> ");
            write_at(out, r, 1);
        }
    }
}

/// Renders with the minimum parentheses needed to parse back to the same tree.
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(&mut out, f);
    out
}

/// Simultaneous substitution. Atoms missing from `assignment` are kept.
pub fn substitute(schema: &Formula, assignment: &BTreeMap<String, Formula>) -> Formula {
    match schema {
        Formula::Atom(p) => assignment.get(p).cloned().unwrap_or_else(|| schema.clone()),
        Formula::Falsum => Formula::Falsum,
        Formula::And(l, r) => Formula::and(substitute(l, assignment), substitute(r, assignment)),
        Formula::Or(l, r) => Formula::or(substitute(l, assignment), substitute(r, assignment)),
        Formula::Implies(l, r) => {
            Formula::implies(substitute(l, assignment), substitute(r, assignment))
        }
        Formula::Box(g) => Formula::boxed(substitute(g, assignment)),
        Formula::Diamond(g) => Formula::diamond(substitute(g, assignment)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaStats {
    pub modal_depth: usize,
    pub size: usize,
    pub atoms: BTreeSet<String>,
    pub diamond_free: bool,
}

/// Computes all statistics in one traversal.
pub fn analyze(f: &Formula) -> FormulaStats {
    fn go(f: &Formula, stats: &mut FormulaStats) -> usize {
        stats.size += 1;
        match f {
            Formula::Atom(p) => {
                stats.atoms.insert(p.clone());
                0
            }
            Formula::Falsum => 0,
            Formula::Box(g) => 1 + go(g, stats),
            Formula::Diamond(g) => {
                stats.diamond_free = false;
                1 + go(g, stats)
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                go(l, stats).max(go(r, stats))
            }
        }
    }
    let mut stats = FormulaStats {
        modal_depth: 0,
        size: 0,
        atoms: BTreeSet::new(),
        diamond_free: true,
    };
    stats.modal_depth = go(f, &mut stats);
    stats
}

/// All formulas over `atoms` (plus `false`) with at most `max_size` nodes and
/// modal depth at most `max_depth`, ordered by size and then by rendering.
pub fn enumerate_formulas(atoms: &[String], max_size: usize, max_depth: usize) -> Vec<Formula> {
    // by_size[s][d] holds formulas of size s and modal depth exactly d
    let mut by_size: Vec<Vec<Vec<Formula>>> = vec![vec![]; max_size + 1];
    if max_size == 0 {
        return vec![];
    }
    let mut leaves: Vec<Formula> = atoms.iter().map(|a| Formula::atom(a.clone())).collect();
    leaves.push(Formula::Falsum);
    by_size[1] = vec![leaves];
    for s in 2..=max_size {
        let mut layer: Vec<Vec<Formula>> = vec![vec![]; max_depth + 1];
        for d in 0..max_depth {
            if let Some(prev) = by_size[s - 1].get(d) {
                for g in prev {
                    layer[d + 1].push(Formula::boxed(g.clone()));
                    layer[d + 1].push(Formula::diamond(g.clone()));
                }
            }
        }
        for ls in 1..s - 1 {
            let rs = s - 1 - ls;
            for (dl, lefts) in by_size[ls].iter().enumerate() {
                for (dr, rights) in by_size[rs].iter().enumerate() {
                    let d = dl.max(dr);
                    for l in lefts {
                        for r in rights {
                            layer[d].push(Formula::and(l.clone(), r.clone()));
                            layer[d].push(Formula::or(l.clone(), r.clone()));
                            layer[d].push(Formula::implies(l.clone(), r.clone()));
                        }
                    }
                }
            }
        }
        by_size[s] = layer;
    }
    let mut out = Vec::new();
    for layer in by_size.into_iter().skip(1) {
        let mut flat: Vec<(String, Formula)> = layer
            .into_iter()
            .flatten()
            .map(|f| (render(&f), f))
            .collect();
        flat.sort_by(|a, b| a.0.cmp(&b.0));
        flat.dedup_by(|a, b| a.0 == b.0);
        out.extend(flat.into_iter().map(|(_, f)| f));
    }
    out
}
