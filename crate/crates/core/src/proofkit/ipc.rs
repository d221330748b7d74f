//! Intuitionistic propositional validity by contraction-free sequent search
//! (Dyckhoff's G4ip). Modal subformulas are treated as opaque atoms.

use std::collections::HashMap;
use std::rc::Rc;

use crate::formula::Formula;

#[derive(Debug, PartialEq, Eq)]
enum Prop {
    Var(usize),
    Bot,
    And(Rc<Prop>, Rc<Prop>),
    Or(Rc<Prop>, Rc<Prop>),
    Imp(Rc<Prop>, Rc<Prop>),
}

type P = Rc<Prop>;

fn imp(a: P, b: P) -> P {
    Rc::new(Prop::Imp(a, b))
}

#[derive(Default)]
struct Abstraction {
    vars: HashMap<Formula, usize>,
}

impl Abstraction {
    fn var(&mut self, f: &Formula) -> P {
        let next = self.vars.len();
        let id = *self.vars.entry(f.clone()).or_insert(next);
        Rc::new(Prop::Var(id))
    }

    fn lower(&mut self, f: &Formula) -> P {
        match f {
            Formula::Atom(_) | Formula::Box(_) | Formula::Diamond(_) => self.var(f),
            Formula::Falsum => Rc::new(Prop::Bot),
            Formula::And(l, r) => Rc::new(Prop::And(self.lower(l), self.lower(r))),
            Formula::Or(l, r) => Rc::new(Prop::Or(self.lower(l), self.lower(r))),
            Formula::Implies(l, r) => imp(self.lower(l), self.lower(r)),
        }
    }
}

fn without(ctx: &[P], i: usize) -> Vec<P> {
    let mut out = ctx.to_vec();
    out.swap_remove(i);
    out
}

fn prove(mut ctx: Vec<P>, goal: P) -> bool {
    // invertible right rules
    match &*goal {
        Prop::And(a, b) => return prove(ctx.clone(), a.clone()) && prove(ctx, b.clone()),
        Prop::Imp(a, b) => {
            ctx.push(a.clone());
            return prove(ctx, b.clone());
        }
        _ => {}
    }
    // invertible left rules
    for i in 0..ctx.len() {
        let h = ctx[i].clone();
        match &*h {
            Prop::Bot => return true,
            Prop::Var(_) if h == goal => return true,
            Prop::And(a, b) => {
                ctx.swap_remove(i);
                ctx.push(a.clone());
                ctx.push(b.clone());
                return prove(ctx, goal);
            }
            Prop::Or(a, b) => {
                let mut left = without(&ctx, i);
                let mut right = left.clone();
                left.push(a.clone());
                right.push(b.clone());
                return prove(left, goal.clone()) && prove(right, goal);
            }
            Prop::Imp(c, b) => match &**c {
                Prop::Bot => {
                    ctx.swap_remove(i);
                    return prove(ctx, goal);
                }
                Prop::Var(_) if ctx.contains(c) => {
                    ctx[i] = b.clone();
                    return prove(ctx, goal);
                }
                Prop::And(c1, c2) => {
                    ctx[i] = imp(c1.clone(), imp(c2.clone(), b.clone()));
                    return prove(ctx, goal);
                }
                Prop::Or(c1, c2) => {
                    ctx.swap_remove(i);
                    ctx.push(imp(c1.clone(), b.clone()));
                    ctx.push(imp(c2.clone(), b.clone()));
                    return prove(ctx, goal);
                }
                _ => {}
            },
            _ => {}
        }
    }
    // non-invertible choices
    if let Prop::Or(a, b) = &*goal {
        if prove(ctx.clone(), a.clone()) || prove(ctx.clone(), b.clone()) {
            return true;
        }
    }
    for i in 0..ctx.len() {
        if let Prop::Imp(cd, b) = &*ctx[i] {
            if let Prop::Imp(c, d) = &**cd {
                let rest = without(&ctx, i);
                let mut first = rest.clone();
                first.push(imp(d.clone(), b.clone()));
                if !prove(first, imp(c.clone(), d.clone())) {
                    continue;
                }
                let mut second = rest;
                second.push(b.clone());
                if prove(second, goal.clone()) {
                    return true;
                }
            }
        }
    }
    false
}

/// Whether `f` is an intuitionistic tautology once each distinct `[]`/`<>`
/// subformula is replaced by a fresh atom.
pub fn ipc_valid(f: &Formula) -> bool {
    let goal = Abstraction::default().lower(f);
    prove(Vec::new(), goal)
}
