//! Formal `Z/n`-linear combinations of cup products `a ⌣ [B]` of torsor
//! symbols with Brauer symbols, under rewrite rules on Brauer symbols.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TorsorSymbol(pub String);

impl TorsorSymbol {
    pub fn new(name: impl Into<String>) -> Self {
        TorsorSymbol(name.into())
    }
}

impl fmt::Display for TorsorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An opaque Brauer class. `formal_unit` marks a class known only up to an
/// unspecified unit factor `m`, rendered `m[D]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BrauerSymbol {
    pub name: String,
    pub formal_unit: bool,
}

impl BrauerSymbol {
    pub fn new(name: impl Into<String>) -> Self {
        BrauerSymbol {
            name: name.into(),
            formal_unit: false,
        }
    }

    pub fn with_unit(name: impl Into<String>) -> Self {
        BrauerSymbol {
            name: name.into(),
            formal_unit: true,
        }
    }

    pub fn without_unit(&self) -> Self {
        BrauerSymbol::new(self.name.clone())
    }
}

impl fmt::Display for BrauerSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.formal_unit {
            write!(f, "m[{}]", self.name)
        } else {
            write!(f, "[{}]", self.name)
        }
    }
}

/// Rewrite rules keyed by Brauer-symbol name: `[head] → Σ c·[target]`.
pub type Relations = BTreeMap<String, Vec<(String, u64)>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalCupExpression {
    modulus: u64,
    terms: BTreeMap<(TorsorSymbol, BrauerSymbol), u64>,
    relations: Relations,
}

impl FormalCupExpression {
    /// The zero expression. A modulus of 0 is treated as 1.
    pub fn zero(modulus: u64, relations: Relations) -> Self {
        FormalCupExpression {
            modulus: modulus.max(1),
            terms: BTreeMap::new(),
            relations,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn relations(&self) -> &Relations {
        &self.relations
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TorsorSymbol, &BrauerSymbol, u64)> {
        self.terms.iter().map(|((t, b), &c)| (t, b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, torsor: &TorsorSymbol, brauer: &BrauerSymbol) -> u64 {
        self.terms
            .get(&(torsor.clone(), brauer.clone()))
            .copied()
            .unwrap_or(0)
    }

    /// Adds `c · (torsor ⌣ brauer)`.
    pub fn add_term(&mut self, torsor: TorsorSymbol, brauer: BrauerSymbol, c: u64) {
        let n = self.modulus;
        let key = (torsor, brauer);
        let value = (self.terms.get(&key).copied().unwrap_or(0) + c % n) % n;
        if value == 0 {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, value);
        }
    }

    /// Termwise sum; both sides must share modulus and relations.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus || self.relations != other.relations {
            return Err(Error::DimensionMismatch {
                expected: self.modulus as usize,
                got: other.modulus as usize,
            });
        }
        let mut out = self.clone();
        for ((t, b), &c) in &other.terms {
            out.add_term(t.clone(), b.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, k: u64) -> Self {
        let mut out = FormalCupExpression::zero(self.modulus, self.relations.clone());
        for ((t, b), &c) in &self.terms {
            out.add_term(
                t.clone(),
                b.clone(),
                (c % self.modulus) * (k % self.modulus),
            );
        }
        out
    }

    /// Drops every formal unit marker.
    pub fn forget_units(&self) -> Self {
        let mut out = FormalCupExpression::zero(self.modulus, self.relations.clone());
        for ((t, b), &c) in &self.terms {
            out.add_term(t.clone(), b.without_unit(), c);
        }
        out
    }

    /// Brauer-side coefficient of a torsor symbol: the class `X` with
    /// `a ⌣ X` the part of this expression involving `a`.
    pub fn brauer_part(&self, torsor: &TorsorSymbol) -> Vec<(BrauerSymbol, u64)> {
        self.terms
            .iter()
            .filter(|((t, _), _)| t == torsor)
            .map(|((_, b), &c)| (b.clone(), c))
            .collect()
    }

    /// Rewrites until no stored Brauer symbol heads a relation.
    pub fn normalize(&self) -> Result<Self> {
        check_acyclic(&self.relations)?;
        let mut out = FormalCupExpression::zero(self.modulus, self.relations.clone());
        for ((t, b), &c) in &self.terms {
            for (target, k) in expand(&self.relations, &b.name) {
                let symbol = BrauerSymbol {
                    name: target,
                    formal_unit: b.formal_unit,
                };
                out.add_term(t.clone(), symbol, (c * (k % self.modulus)) % self.modulus);
            }
        }
        Ok(out)
    }

    /// True when the expression contains no rewritable head.
    pub fn is_normal(&self) -> bool {
        self.terms
            .keys()
            .all(|(_, b)| !self.relations.contains_key(&b.name))
    }
}

/// Full expansion of a symbol into relation-free symbols; relations must be acyclic.
fn expand(relations: &Relations, name: &str) -> Vec<(String, u64)> {
    match relations.get(name) {
        None => vec![(name.to_string(), 1)],
        Some(targets) => targets
            .iter()
            .flat_map(|(t, c)| {
                expand(relations, t)
                    .into_iter()
                    .map(move |(leaf, k)| (leaf, k * c))
            })
            .collect(),
    }
}

fn check_acyclic(relations: &Relations) -> Result<()> {
    fn visit(
        relations: &Relations,
        name: &str,
        path: &mut Vec<String>,
        done: &mut BTreeSet<String>,
    ) -> Result<()> {
        if done.contains(name) {
            return Ok(());
        }
        if let Some(pos) = path.iter().position(|p| p == name) {
            return Err(Error::CyclicRelations(path[pos..].join(", ")));
        }
        path.push(name.to_string());
        for (t, _) in relations.get(name).into_iter().flatten() {
            visit(relations, t, path, done)?;
        }
        path.pop();
        done.insert(name.to_string());
        Ok(())
    }
    let mut done = BTreeSet::new();
    for head in relations.keys() {
        visit(relations, head, &mut Vec::new(), &mut done)?;
    }
    Ok(())
}

/// Renders as `a⌣[Q] + 2·a⌣m[D]`, or `0`.
impl fmt::Display for FormalCupExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((t, b), &c)| {
                if c == 1 {
                    format!("{t}⌣{b}")
                } else {
                    format!("{c}·{t}⌣{b}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Renders a Brauer-side combination such as `[Q]` or `[Q_3] + [Q_4]`.
pub fn render_brauer(part: &[(BrauerSymbol, u64)]) -> String {
    if part.is_empty() {
        return "0".to_string();
    }
    part.iter()
        .map(|(b, c)| {
            if *c == 1 {
                b.to_string()
            } else {
                format!("{c}·{b}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> TorsorSymbol {
        TorsorSymbol::new("a")
    }

    fn q_relation() -> Relations {
        BTreeMap::from([(
            "Q".to_string(),
            vec![("Q_1".to_string(), 1), ("Q_2".to_string(), 1)],
        )])
    }

    #[test]
    fn zero_normalizes_to_zero() {
        let e = FormalCupExpression::zero(2, Relations::new());
        assert!(e.normalize().unwrap().is_zero());
        assert_eq!(e.to_string(), "0");
    }

    #[test]
    fn relation_splits_q() {
        let mut e = FormalCupExpression::zero(2, q_relation());
        e.add_term(a(), BrauerSymbol::new("Q"), 1);
        let n = e.normalize().unwrap();
        assert_eq!(n.to_string(), "a⌣[Q_1] + a⌣[Q_2]");
        assert!(n.is_normal());
        assert!(!e.is_normal());
    }

    #[test]
    fn four_is_one_mod_three() {
        let mut e = FormalCupExpression::zero(3, Relations::new());
        e.add_term(a(), BrauerSymbol::new("D"), 4);
        assert_eq!(e.normalize().unwrap().to_string(), "a⌣[D]");
        let mut f = FormalCupExpression::zero(3, Relations::new());
        f.add_term(a(), BrauerSymbol::with_unit("D"), 2);
        f.add_term(a(), BrauerSymbol::with_unit("D"), 2);
        assert_eq!(f.to_string(), "a⌣m[D]");
    }

    #[test]
    fn cancellation() {
        let mut e = FormalCupExpression::zero(2, Relations::new());
        e.add_term(a(), BrauerSymbol::new("Q"), 1);
        e.add_term(a(), BrauerSymbol::new("Q"), 1);
        assert!(e.is_zero());
    }

    #[test]
    fn cycles_are_rejected() {
        let rel = BTreeMap::from([
            ("X".to_string(), vec![("Y".to_string(), 1)]),
            ("Y".to_string(), vec![("X".to_string(), 1)]),
        ]);
        let mut e = FormalCupExpression::zero(2, rel);
        e.add_term(a(), BrauerSymbol::new("X"), 1);
        assert!(matches!(e.normalize(), Err(Error::CyclicRelations(_))));
    }

    #[test]
    fn nested_relations() {
        let rel = BTreeMap::from([
            (
                "X".to_string(),
                vec![("Y".to_string(), 2), ("Z".to_string(), 1)],
            ),
            ("Y".to_string(), vec![("Z".to_string(), 1)]),
        ]);
        let mut e = FormalCupExpression::zero(5, rel);
        e.add_term(a(), BrauerSymbol::new("X"), 1);
        assert_eq!(e.normalize().unwrap().to_string(), "3·a⌣[Z]");
    }

    #[test]
    fn mismatched_sum() {
        let e = FormalCupExpression::zero(2, Relations::new());
        let f = FormalCupExpression::zero(3, Relations::new());
        assert!(e.add(&f).is_err());
    }

    #[test]
    fn brauer_parts() {
        let mut e = FormalCupExpression::zero(2, Relations::new());
        e.add_term(a(), BrauerSymbol::new("Q"), 3);
        assert_eq!(render_brauer(&e.brauer_part(&a())), "[Q]");
        assert_eq!(render_brauer(&e.brauer_part(&TorsorSymbol::new("b"))), "0");
    }
}
