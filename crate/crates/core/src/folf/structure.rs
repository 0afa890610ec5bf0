//! Finite relational structures over a carrier `{0, .., n-1}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::formula::Formula;
use super::Signature;
use crate::error::{Error, Result};

/// A carrier size and one dense truth table per relation symbol.
///
/// Table entry `k` of an `m`-ary symbol is the tuple whose base-`n` digits,
/// most significant first, spell `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteStructure {
    signature: Signature,
    size: usize,
    tables: BTreeMap<String, Vec<bool>>,
}

fn tuple_index(n: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &a| acc * n + a)
}

fn index_tuple(n: usize, arity: usize, mut k: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = k % n;
        k /= n;
    }
    out
}

impl FiniteStructure {
    /// Builds a structure from explicit tuple sets; symbols without an entry
    /// are empty.
    pub fn new(signature: Signature, size: usize, relations: BTreeMap<String, BTreeSet<Vec<usize>>>) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidStructure("carrier must be nonempty".into()));
        }
        let mut tables = BTreeMap::new();
        for (name, arity) in signature.iter() {
            tables.insert(name.to_string(), vec![false; size.pow(arity as u32)]);
        }
        for (name, tuples) in relations {
            let arity = signature
                .arity(&name)
                .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
            let table = tables.get_mut(&name).expect("symbol in signature");
            for t in tuples {
                if t.len() != arity {
                    return Err(Error::ArityMismatch {
                        symbol: name.clone(),
                        expected: arity,
                        found: t.len(),
                    });
                }
                if let Some(&bad) = t.iter().find(|&&a| a >= size) {
                    return Err(Error::InvalidStructure(format!(
                        "tuple of `{name}` mentions element {bad} outside carrier of size {size}"
                    )));
                }
                table[tuple_index(size, &t)] = true;
            }
        }
        Ok(Self {
            signature,
            size,
            tables,
        })
    }

    pub(crate) fn from_tables(signature: Signature, size: usize, tables: BTreeMap<String, Vec<bool>>) -> Self {
        Self {
            signature,
            size,
            tables,
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn table(&self, symbol: &str) -> Option<&[bool]> {
        self.tables.get(symbol).map(Vec::as_slice)
    }

    pub fn holds(&self, symbol: &str, tuple: &[usize]) -> bool {
        self.tables[symbol][tuple_index(self.size, tuple)]
    }

    /// Tuples in `symbol`'s relation, lexicographically.
    pub fn tuples(&self, symbol: &str) -> Vec<Vec<usize>> {
        let arity = self.signature.arity(symbol).unwrap_or(0);
        self.tables
            .get(symbol)
            .map(|t| {
                t.iter()
                    .enumerate()
                    .filter(|(_, b)| **b)
                    .map(|(k, _)| index_tuple(self.size, arity, k))
                    .collect()
            })
            .unwrap_or_default()
    }

    /// Checks `s` is a sentence over this structure's signature, then
    /// evaluates it.
    pub fn evaluate(&self, s: &Formula) -> Result<bool> {
        if !s.is_closed() {
            return Err(Error::UnboundVariable(format!("#{}", s.free_depth() - 1)));
        }
        for (sym, n) in s.symbol_uses() {
            match self.signature.arity(sym) {
                None => return Err(Error::UnknownSymbol(sym.to_string())),
                Some(a) if a != n => {
                    return Err(Error::ArityMismatch {
                        symbol: sym.to_string(),
                        expected: a,
                        found: n,
                    })
                }
                Some(_) => {}
            }
        }
        Ok(self.eval(s))
    }

    /// Evaluation of a checked sentence.
    pub(crate) fn eval(&self, s: &Formula) -> bool {
        self.eval_in(s, &mut Vec::new())
    }

    fn eval_in(&self, f: &Formula, env: &mut Vec<usize>) -> bool {
        let lookup = |env: &[usize], i: usize| env[env.len() - 1 - i];
        match f {
            Formula::Atom { symbol, args } => {
                let k = args.iter().fold(0, |acc, &i| acc * self.size + lookup(env, i));
                self.tables[symbol][k]
            }
            Formula::Eq(a, b) => lookup(env, *a) == lookup(env, *b),
            Formula::Not(g) => !self.eval_in(g, env),
            Formula::And(a, b) => self.eval_in(a, env) && self.eval_in(b, env),
            Formula::Or(a, b) => self.eval_in(a, env) || self.eval_in(b, env),
            Formula::Implies(a, b) => !self.eval_in(a, env) || self.eval_in(b, env),
            Formula::Forall(_, g) => (0..self.size).all(|x| {
                env.push(x);
                let v = self.eval_in(g, env);
                env.pop();
                v
            }),
            Formula::Exists(_, g) => (0..self.size).any(|x| {
                env.push(x);
                let v = self.eval_in(g, env);
                env.pop();
                v
            }),
        }
    }

    /// The structure with every symbol of `signature` interpreted by the
    /// table of its image under `image`.
    pub(crate) fn pull_back(&self, signature: &Signature, image: impl Fn(&str) -> String) -> Self {
        let tables = signature
            .iter()
            .map(|(name, _)| (name.to_string(), self.tables[&image(name)].clone()))
            .collect();
        Self {
            signature: signature.clone(),
            size: self.size,
            tables,
        }
    }
}

impl fmt::Display for FiniteStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.size)?;
        for (name, _) in self.signature.iter() {
            let tuples: Vec<String> = self
                .tuples(name)
                .iter()
                .map(|t| format!("({})", t.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            write!(f, "; {name}={{{}}}", tuples.join(","))?;
        }
        Ok(())
    }
}

/// Number of structures with the given carrier size, or `None` on overflow.
pub(crate) fn structure_count(sig: &Signature, size: usize) -> Option<u128> {
    let mut bits: u32 = 0;
    for (_, arity) in sig.iter() {
        let cells = u32::try_from((size as u128).checked_pow(arity as u32)?).ok()?;
        bits = bits.checked_add(cells)?;
    }
    1u128.checked_shl(bits).filter(|_| bits < 128)
}

/// All structures with carrier sizes `1..=max_size`, by size and then by the
/// table bitmask, where the first symbol's tuples take the low bits.
pub fn enumerate_structures<'a>(
    sig: &'a Signature,
    max_size: usize,
    cap_per_size: u128,
) -> Result<Box<dyn Iterator<Item = FiniteStructure> + 'a>> {
    for size in 1..=max_size {
        match structure_count(sig, size) {
            Some(c) if c <= cap_per_size => {}
            other => {
                return Err(Error::EnumerationCap {
                    required: other.unwrap_or(u128::MAX),
                    cap: cap_per_size,
                })
            }
        }
    }
    Ok(Box::new((1..=max_size).flat_map(move |size| {
        let layout: Vec<(String, usize)> = sig
            .iter()
            .map(|(name, arity)| (name.to_string(), size.pow(arity as u32)))
            .collect();
        let count = structure_count(sig, size).expect("checked above") as u64;
        (0..count).map(move |mask| {
            let mut tables = BTreeMap::new();
            let mut offset = 0;
            for (name, cells) in &layout {
                let table = (0..*cells).map(|k| mask >> (offset + k) & 1 == 1).collect();
                offset += cells;
                tables.insert(name.clone(), table);
            }
            FiniteStructure::from_tables(sig.clone(), size, tables)
        })
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folf::parse_formula;

    fn r() -> Signature {
        Signature::new([("R", 2)]).unwrap()
    }

    fn with_r(n: usize, tuples: &[[usize; 2]]) -> FiniteStructure {
        let rel = tuples.iter().map(|t| t.to_vec()).collect();
        FiniteStructure::new(r(), n, [("R".to_string(), rel)].into()).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let sig = r();
        let refl = parse_formula("forall x. R(x,x)", &sig).unwrap();
        let sym = parse_formula("forall x. forall y. R(x,y) -> R(y,x)", &sig).unwrap();
        let trans = parse_formula("forall x. forall y. forall z. R(x,y) & R(y,z) -> R(x,z)", &sig).unwrap();
        assert!(with_r(2, &[[0, 0], [1, 1]]).evaluate(&refl).unwrap());
        assert!(!with_r(2, &[[0, 1]]).evaluate(&sym).unwrap());
        assert!(!with_r(3, &[[0, 1], [1, 2]]).evaluate(&trans).unwrap());
    }

    #[test]
    fn evaluation_rejects_bad_input() {
        let m = with_r(1, &[]);
        assert!(m.evaluate(&Formula::atom("R", [0, 0])).is_err());
        assert!(matches!(
            m.evaluate(&Formula::forall("x", Formula::atom("S", [0]))),
            Err(Error::UnknownSymbol(_))
        ));
    }

    #[test]
    fn enumeration_counts() {
        let sig = r();
        let cap = 1 << 20;
        let one: Vec<_> = enumerate_structures(&sig, 1, cap).unwrap().collect();
        assert_eq!(one.len(), 2);
        assert_eq!(one[1].tuples("R"), vec![vec![0, 0]]);
        assert_eq!(enumerate_structures(&sig, 2, cap).unwrap().count(), 18);
        let three = Signature::new([("A", 2), ("B", 2), ("C", 2)]).unwrap();
        assert_eq!(
            enumerate_structures(&three, 3, cap).err(),
            Some(Error::EnumerationCap { required: 1 << 27, cap })
        );
    }

    #[test]
    fn tuple_order_is_lexicographic() {
        let m = with_r(2, &[[1, 0], [0, 1]]);
        assert_eq!(m.tuples("R"), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(m.to_string(), "n=2; R={(0,1),(1,0)}");
    }
}
