//! Schema-generated sentence universes.
//!
//! A template is a sentence over placeholder symbols `P0, P1, ..`. Its
//! instances over a signature substitute every arity-respecting choice of
//! symbols, repetitions included, so the universe of the target of any
//! arity-preserving morphism contains the translation of every source
//! universe sentence.

use std::collections::BTreeSet;
use std::fmt;

use super::formula::Formula;
use super::parser::parse_formula;
use super::Signature;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Template {
    formula: Formula,
    /// Arity of `P0, P1, ..` in order.
    params: Vec<usize>,
}

fn param(i: usize) -> String {
    format!("P{i}")
}

impl Template {
    /// Abstracts a sentence by replacing its symbols, in order of first
    /// occurrence, with `P0, P1, ..`.
    pub fn abstract_from(f: &Formula) -> Self {
        let uses = f.symbol_uses();
        let names: Vec<String> = uses.iter().map(|(s, _)| s.to_string()).collect();
        let formula = f.rename(&|s| names.iter().position(|n| n == s).map(param));
        Self {
            formula,
            params: uses.into_iter().map(|(_, n)| n).collect(),
        }
    }

    /// Parses a template whose placeholders have the given arities.
    pub fn parse(text: &str, params: &[usize]) -> Result<Self> {
        let sig = Signature::new(params.iter().enumerate().map(|(i, &n)| (param(i), n)))?;
        Ok(Self::abstract_from(&parse_formula(text, &sig)?))
    }

    pub fn params(&self) -> &[usize] {
        &self.params
    }

    /// Every instance over `sig`.
    pub fn instances(&self, sig: &Signature) -> Vec<Formula> {
        let choices: Vec<Vec<&str>> = self
            .params
            .iter()
            .map(|&n| sig.iter().filter(|(_, a)| *a == n).map(|(s, _)| s).collect())
            .collect();
        if choices.iter().any(Vec::is_empty) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut pick = vec![0usize; choices.len()];
        loop {
            let chosen: Vec<&str> = pick.iter().zip(&choices).map(|(&k, c)| c[k]).collect();
            out.push(self.formula.rename(&|s| {
                s.strip_prefix('P')
                    .and_then(|i| i.parse::<usize>().ok())
                    .map(|i| chosen[i].to_string())
            }));
            let mut i = pick.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    break;
                }
                pick[i] = 0;
            }
        }
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.formula.fmt(f)
    }
}

/// Templates generating the sentence universe of every signature.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SchemaSet {
    templates: BTreeSet<Template>,
}

/// Binary-relation laws and unary unit clauses.
const DEFAULT_TEMPLATES: &[(&str, &[usize])] = &[
    ("forall x. P0(x,x)", &[2]),
    ("forall x. forall y. P0(x,y) -> P0(y,x)", &[2]),
    ("forall x. forall y. forall z. P0(x,y) & P0(y,z) -> P0(x,z)", &[2]),
    ("forall x. forall y. P0(x,y) | P0(y,x)", &[2]),
    ("forall x. ~P0(x,x)", &[2]),
    ("forall x. forall y. P0(x,y) & P0(y,x) -> x = y", &[2]),
    ("forall x. P0(x)", &[1]),
    ("forall x. ~P0(x)", &[1]),
];

impl Default for SchemaSet {
    fn default() -> Self {
        let templates = DEFAULT_TEMPLATES
            .iter()
            .map(|(text, params)| Template::parse(text, params).expect("default template parses"))
            .collect();
        Self { templates }
    }
}

impl SchemaSet {
    pub fn empty() -> Self {
        Self {
            templates: BTreeSet::new(),
        }
    }

    pub fn templates(&self) -> impl Iterator<Item = &Template> {
        self.templates.iter()
    }

    pub fn insert(&mut self, t: Template) -> bool {
        self.templates.insert(t)
    }

    /// Adds the abstraction of every given sentence.
    pub fn with_sentences<'a>(mut self, sentences: impl IntoIterator<Item = &'a Formula>) -> Self {
        for s in sentences {
            self.templates.insert(Template::abstract_from(s));
        }
        self
    }

    /// The sorted, duplicate-free union of all template instances over `sig`.
    pub fn universe(&self, sig: &Signature) -> Vec<Formula> {
        let all: BTreeSet<Formula> = self.templates.iter().flat_map(|t| t.instances(sig)).collect();
        all.into_iter().collect()
    }
}
