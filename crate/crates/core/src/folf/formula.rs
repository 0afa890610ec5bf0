//! Relational first-order formulas with de Bruijn variables.
//!
//! Variable `i` refers to the `i`-th enclosing binder, counting outward from
//! zero. Binder names survive only as printing hints and never take part in
//! equality, ordering or hashing, so alpha-equivalent formulas are equal.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

/// A binder's preferred display name. All hints compare equal.
#[derive(Debug, Clone)]
pub struct Hint(pub String);

impl PartialEq for Hint {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Hint {}

impl PartialOrd for Hint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Hint {
    fn cmp(&self, _: &Self) -> Ordering {
        Ordering::Equal
    }
}

impl Hash for Hint {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

impl From<&str> for Hint {
    fn from(s: &str) -> Self {
        Hint(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom { symbol: String, args: Vec<usize> },
    Eq(usize, usize),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(Hint, Box<Formula>),
    Exists(Hint, Box<Formula>),
}

impl Formula {
    pub fn atom(symbol: impl Into<String>, args: impl IntoIterator<Item = usize>) -> Self {
        Formula::Atom {
            symbol: symbol.into(),
            args: args.into_iter().collect(),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(hint: &str, body: Formula) -> Self {
        Formula::Forall(hint.into(), Box::new(body))
    }

    pub fn exists(hint: &str, body: Formula) -> Self {
        Formula::Exists(hint.into(), Box::new(body))
    }

    /// Number of binders a variable must reach past to be bound; zero for
    /// sentences.
    pub fn free_depth(&self) -> usize {
        match self {
            Formula::Atom { args, .. } => args.iter().map(|&i| i + 1).max().unwrap_or(0),
            Formula::Eq(a, b) => (*a).max(*b) + 1,
            Formula::Not(f) => f.free_depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => a.free_depth().max(b.free_depth()),
            Formula::Forall(_, f) | Formula::Exists(_, f) => f.free_depth().saturating_sub(1),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_depth() == 0
    }

    /// `(symbol, arity)` for every atom, in order of first occurrence.
    pub fn symbol_uses(&self) -> Vec<(&str, usize)> {
        let mut out = Vec::new();
        self.visit_atoms(&mut |s, n| {
            if !out.iter().any(|(t, _)| *t == s) {
                out.push((s, n));
            }
        });
        out
    }

    pub fn symbols(&self) -> BTreeSet<&str> {
        self.symbol_uses().into_iter().map(|(s, _)| s).collect()
    }

    fn visit_atoms<'a>(&'a self, f: &mut impl FnMut(&'a str, usize)) {
        match self {
            Formula::Atom { symbol, args } => f(symbol, args.len()),
            Formula::Eq(..) => {}
            Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => g.visit_atoms(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
        }
    }

    /// Renames every relation symbol; symbols `rename` returns `None` for are
    /// kept.
    pub fn rename(&self, rename: &impl Fn(&str) -> Option<String>) -> Formula {
        match self {
            Formula::Atom { symbol, args } => Formula::Atom {
                symbol: rename(symbol).unwrap_or_else(|| symbol.clone()),
                args: args.clone(),
            },
            Formula::Eq(a, b) => Formula::Eq(*a, *b),
            Formula::Not(g) => Formula::not(g.rename(rename)),
            Formula::And(a, b) => Formula::and(a.rename(rename), b.rename(rename)),
            Formula::Or(a, b) => Formula::or(a.rename(rename), b.rename(rename)),
            Formula::Implies(a, b) => Formula::implies(a.rename(rename), b.rename(rename)),
            Formula::Forall(h, g) => Formula::Forall(h.clone(), Box::new(g.rename(rename))),
            Formula::Exists(h, g) => Formula::Exists(h.clone(), Box::new(g.rename(rename))),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Forall(..) | Formula::Exists(..) => 0,
            _ => 4,
        }
    }
}

struct Printer {
    /// Names of enclosing binders, innermost last.
    scope: Vec<String>,
}

impl Printer {
    fn fresh(&self, hint: &str) -> String {
        let base = if hint.is_empty() { "x" } else { hint };
        if !self.scope.iter().any(|n| n == base) {
            return base.to_string();
        }
        (1..)
            .map(|k| format!("{base}{k}"))
            .find(|c| !self.scope.iter().any(|n| n == c))
            .expect("unbounded supply")
    }

    fn var(&self, i: usize) -> String {
        match self.scope.len().checked_sub(i + 1) {
            Some(pos) => self.scope[pos].clone(),
            None => format!("#{i}"),
        }
    }

    fn write(&mut self, out: &mut String, f: &Formula) {
        match f {
            Formula::Atom { symbol, args } => {
                out.push_str(symbol);
                out.push('(');
                let names: Vec<String> = args.iter().map(|&i| self.var(i)).collect();
                out.push_str(&names.join(","));
                out.push(')');
            }
            Formula::Eq(a, b) => {
                out.push_str(&format!("{} = {}", self.var(*a), self.var(*b)));
            }
            Formula::Not(g) => {
                out.push('~');
                self.operand(out, g, g.precedence() < 4);
            }
            Formula::And(a, b) => self.binary(out, a, " & ", b, 3, false),
            Formula::Or(a, b) => self.binary(out, a, " | ", b, 2, false),
            Formula::Implies(a, b) => self.binary(out, a, " -> ", b, 1, true),
            Formula::Forall(h, g) | Formula::Exists(h, g) => {
                let name = self.fresh(&h.0);
                let kw = if matches!(f, Formula::Forall(..)) {
                    "forall"
                } else {
                    "exists"
                };
                out.push_str(&format!("{kw} {name}. "));
                self.scope.push(name);
                self.write(out, g);
                self.scope.pop();
            }
        }
    }

    fn binary(&mut self, out: &mut String, a: &Formula, op: &str, b: &Formula, level: u8, right_assoc: bool) {
        let (pa, pb) = (a.precedence(), b.precedence());
        let left_parens = pa == 0 || if right_assoc { pa <= level } else { pa < level };
        let right_parens = pb == 0 || if right_assoc { pb < level } else { pb <= level };
        self.operand(out, a, left_parens);
        out.push_str(op);
        self.operand(out, b, right_parens);
    }

    fn operand(&mut self, out: &mut String, f: &Formula, parens: bool) {
        if parens {
            out.push('(');
            self.write(out, f);
            out.push(')');
        } else {
            self.write(out, f);
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        Printer { scope: Vec::new() }.write(&mut out, self);
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn refl() -> Formula {
        Formula::forall("x", Formula::atom("R", [0, 0]))
    }

    fn sym() -> Formula {
        Formula::forall(
            "x",
            Formula::forall(
                "y",
                Formula::implies(Formula::atom("R", [1, 0]), Formula::atom("R", [0, 1])),
            ),
        )
    }

    #[test]
    fn hints_do_not_affect_equality() {
        let a = Formula::forall("x", Formula::atom("R", [0, 0]));
        let b = Formula::forall("zz", Formula::atom("R", [0, 0]));
        assert_eq!(a, b);
        assert!(refl() < sym());
    }

    #[test]
    fn printing() {
        assert_eq!(refl().to_string(), "forall x. R(x,x)");
        assert_eq!(sym().to_string(), "forall x. forall y. R(x,y) -> R(y,x)");
        let nested = Formula::forall("x", Formula::forall("x", Formula::atom("R", [1, 0])));
        assert_eq!(nested.to_string(), "forall x. forall x1. R(x,x1)");
        let q = Formula::and(refl(), Formula::not(refl()));
        assert_eq!(q.to_string(), "(forall x. R(x,x)) & ~(forall x. R(x,x))");
    }

    #[test]
    fn free_depth() {
        assert!(refl().is_closed());
        assert_eq!(Formula::atom("R", [0, 2]).free_depth(), 3);
        assert_eq!(Formula::forall("x", Formula::Eq(0, 1)).free_depth(), 1);
    }
}
