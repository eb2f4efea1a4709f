//! Restriction of the Rost invariant to the center, computed through `G′`:
//! each center generator is pushed into the simple factors of `G′`, where the
//! invariant of a type-A factor is a cup product with its Brauer class.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::cup::{BrauerSymbol, FormalCupExpression, Relations, TorsorSymbol};
use super::pairing::PairingSpec;
use super::theorem::{center_order, Subgroup};
use crate::center::{center, lift_by_fundamentals, zmap, CenterPresentation, CocharacterMap};
use crate::error::{Error, Result};
use crate::lattice::{lattice_quotient, FiniteAbelianGroup, RationalVector};
use crate::reduction::{g_prime_of, Component, GPrimeDecomposition, TitsIndex};
use crate::roots::{Family, RootSystem};

/// Brauer symbols for the classes of `Λ/Λ_r`.
///
/// Basic symbols correspond to the generators of `Λ/Λ_r`, lifted to
/// minuscule fundamental weights where possible. For `D_ℓ` with `ℓ` even the basic
/// symbols are `Q_{ℓ-1}`, `Q_ℓ` and the third nonzero class is `Q`, with
/// the relation `[Q] = [Q_{ℓ-1}] + [Q_ℓ]`.
#[derive(Clone, Debug)]
pub struct BrauerBasis {
    rank: usize,
    group: FiniteAbelianGroup,
    basic: Vec<BrauerSymbol>,
    basic_weights: Vec<Option<usize>>,
    derived: BTreeMap<Vec<BigInt>, BrauerSymbol>,
    relations: Relations,
}

impl BrauerBasis {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        let l = rs.rank();
        let t = rs.system_type();
        let d_even = t.family() == Family::D && l.is_multiple_of(2);
        let quotient = lattice_quotient(rs.cartan())?;
        let preferred = d_even.then(|| vec![l - 1, l]);
        let (group, basic_weights) =
            lift_by_fundamentals(&quotient, l, preferred, &rs.dual().delta_c());
        let mut derived = BTreeMap::new();
        let mut relations = Relations::new();
        let basic: Vec<BrauerSymbol> = if d_even {
            let names = [format!("Q_{}", l - 1), format!("Q_{l}")];
            let q = BrauerSymbol::new("Q");
            derived.insert(vec![BigInt::from(1), BigInt::from(1)], q);
            relations.insert(
                "Q".to_string(),
                names.iter().map(|n| (n.clone(), 1)).collect(),
            );
            names.into_iter().map(BrauerSymbol::new).collect()
        } else if group.is_cyclic() {
            let name = match (t.family(), group.order().to_u64()) {
                (Family::A, _) => "A",
                (_, Some(2)) => "Q",
                _ => "D",
            };
            group
                .invariant_factors()
                .iter()
                .map(|_| BrauerSymbol::new(name))
                .collect()
        } else {
            (0..group.invariant_factors().len())
                .map(|k| BrauerSymbol::new(format!("B{k}")))
                .collect()
        };
        Ok(BrauerBasis {
            rank: l,
            group,
            basic,
            basic_weights,
            derived,
            relations,
        })
    }

    pub fn relations(&self) -> &Relations {
        &self.relations
    }

    pub fn basic_symbols(&self) -> &[BrauerSymbol] {
        &self.basic
    }

    /// Fundamental weights lifting the basic classes.
    pub fn basic_weights(&self) -> &[Option<usize>] {
        &self.basic_weights
    }

    /// The Brauer class attached to `ω_j`, as a combination of symbols.
    pub fn symbol_of_weight(&self, j: usize) -> Vec<(BrauerSymbol, u64)> {
        let v = RationalVector::unit(self.rank, j - 1)
            .to_integers()
            .expect("unit vector");
        let class = self.group.class_of(&v);
        if let Some(symbol) = self.derived.get(&class) {
            return vec![(symbol.clone(), 1)];
        }
        class
            .iter()
            .zip(&self.basic)
            .filter_map(|(c, b)| {
                let c = c.to_u64().expect("small class coordinate");
                (c != 0).then(|| (b.clone(), c))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentImage {
    pub generator: usize,
    pub component: usize,
    /// The generator maps to `k` times the standard generator of the component's center.
    pub k: u64,
    pub multiplier: u64,
}

#[derive(Clone, Debug)]
pub struct Composition {
    pub decomposition: GPrimeDecomposition,
    pub center: CenterPresentation,
    pub torsors: Vec<TorsorSymbol>,
    pub images: Vec<ComponentImage>,
    pub expression: FormalCupExpression,
    pub tits_expression: FormalCupExpression,
    pub pairing: PairingSpec,
    pub verdict: Subgroup,
}

pub fn torsor_symbols(count: usize) -> Vec<TorsorSymbol> {
    match count {
        1 => vec![TorsorSymbol::new("a")],
        _ => (0..count)
            .map(|k| TorsorSymbol::new(format!("a{k}")))
            .collect(),
    }
}

fn pairing_for(rs: &RootSystem) -> PairingSpec {
    let t = rs.system_type();
    if t.family() == Family::D && t.rank().is_multiple_of(2) {
        PairingSpec::d_even(t.rank())
    } else {
        PairingSpec::standard(center_order(t))
    }
}

fn check_shape(rs: &RootSystem, c: &Component) -> Result<()> {
    let t = rs.system_type();
    let ct = c.system_type;
    let ok = ct.family() == Family::A
        && (ct.rank() == 1
            || t.family() == Family::A
            || (t.family() == Family::E && t.rank() == 6));
    if ok {
        Ok(())
    } else {
        Err(Error::UnsupportedShape(format!(
            "{ct} component on vertices {:?} inside {t}",
            c.vertices
        )))
    }
}

/// The `k` with `z|_component = k · z_{ω̌'_1}` in the component's center.
fn component_image(z: &CocharacterMap, c: &Component) -> Result<u64> {
    let local = RootSystem::build(c.system_type);
    let w = &local.fundamental_coweights()[0];
    let n_c = zmap(w).order;
    let n = BigRational::from_integer(BigInt::from(z.order));
    let slice = RationalVector::new(
        c.bourbaki_order
            .iter()
            .map(|&v| BigRational::from_integer(BigInt::from(z.exponent(v))) / &n)
            .collect(),
    );
    let k = (0..n_c)
        .find(|&k| {
            slice
                .sub(&w.scale(&BigRational::from_integer(BigInt::from(k))))
                .is_integral()
        })
        .ok_or_else(|| {
            Error::UnsupportedShape(format!("center does not map into {}", c.system_type))
        })?;
    if k != 0 && n_c != z.order {
        return Err(Error::UnsupportedShape(format!(
            "center of order {} meets {} of order {n_c}",
            z.order, c.system_type
        )));
    }
    Ok(k)
}

/// `Σ_{p,q} gram[p][q] · χ_p(x) ⌣ χ_q(t_G)`, where `χ_p(z_k)` is the exponent
/// of `h_{w_p}` in `z_k` and `χ_q(t_G)` the Brauer symbol of `ω_{w_q}`.
pub fn tits_expression(
    center: &CenterPresentation,
    basis: &BrauerBasis,
    pairing: &PairingSpec,
) -> Result<FormalCupExpression> {
    let exponent = center.group.exponent().to_u64().expect("small center");
    let mut expr = FormalCupExpression::zero(exponent, basis.relations().clone());
    if center.zmaps.is_empty() {
        return Ok(expr);
    }
    let weights: Vec<usize> = basis
        .basic_weights()
        .iter()
        .map(|w| w.ok_or_else(|| Error::UnsupportedShape("no fundamental lift".to_string())))
        .collect::<Result<_>>()?;
    if weights.len() != pairing.gram.len() {
        return Err(Error::DimensionMismatch {
            expected: pairing.gram.len(),
            got: weights.len(),
        });
    }
    let torsors = torsor_symbols(center.zmaps.len());
    for (z, a) in center.zmaps.iter().zip(&torsors) {
        for (p, &wp) in weights.iter().enumerate() {
            let chi = z.exponent(wp);
            for (q, &wq) in weights.iter().enumerate() {
                let g = pairing.gram[p][q];
                for (symbol, c) in basis.symbol_of_weight(wq) {
                    expr.add_term(a.clone(), symbol, g * chi % exponent * c);
                }
            }
        }
    }
    expr.normalize()
}

fn compare(expression: &FormalCupExpression, tits: &FormalCupExpression) -> Subgroup {
    let r = expression.forget_units();
    let t = tits.forget_units();
    if r.is_zero() {
        return Subgroup::Zero;
    }
    let n = r.modulus();
    let same = (1..n.max(2))
        .filter(|u| u.gcd(&n) == 1)
        .any(|u| t.scale(u) == r);
    if same {
        Subgroup::SameAsTitsClass
    } else {
        Subgroup::Unrelated
    }
}

/// `Σ_i m_i · r_{G′_i}(a_i)` for every center generator, normalized, along
/// with the Tits-class expression it is compared with.
pub fn restriction_composition(idx: &TitsIndex) -> Result<Composition> {
    let rs = RootSystem::build(idx.system_type());
    restriction_composition_of(&rs, idx)
}

/// As [`restriction_composition`], over an already built root system.
pub fn restriction_composition_of(rs: &RootSystem, idx: &TitsIndex) -> Result<Composition> {
    let decomposition = g_prime_of(rs, idx)?;
    if !idx.is_inner() {
        return Err(Error::UnsupportedShape(format!(
            "{} forms are not computed through G′",
            idx.form_kind()
        )));
    }
    for c in &decomposition.components {
        check_shape(rs, c)?;
    }
    let center = center(rs)?;
    let basis = BrauerBasis::new(rs)?;
    let pairing = pairing_for(rs);
    let exponent = center.group.exponent().to_u64().expect("small center");
    let torsors = torsor_symbols(center.zmaps.len());
    let mut expression = FormalCupExpression::zero(exponent, basis.relations().clone());
    let mut images = Vec::new();
    for (g, (z, a)) in center.zmaps.iter().zip(&torsors).enumerate() {
        for (ci, c) in decomposition.components.iter().enumerate() {
            let k = component_image(z, c)?;
            let m = decomposition.multipliers[ci];
            images.push(ComponentImage {
                generator: g,
                component: ci,
                k,
                multiplier: m,
            });
            let with_unit = c.system_type.rank() >= 2;
            for (symbol, s) in basis.symbol_of_weight(c.bourbaki_order[0]) {
                let symbol = if with_unit {
                    BrauerSymbol::with_unit(symbol.name)
                } else {
                    symbol
                };
                expression.add_term(a.clone(), symbol, m * k % exponent * s);
            }
        }
    }
    let expression = expression.normalize()?;
    let tits_expression = tits_expression(&center, &basis, &pairing)?;
    let verdict = compare(&expression, &tits_expression);
    Ok(Composition {
        decomposition,
        center,
        torsors,
        images,
        expression,
        tits_expression,
        pairing,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(s: &str) -> Composition {
        restriction_composition(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn e7() {
        let c = run("E7 inner circled=1,3,4,6");
        assert_eq!(c.expression.to_string(), "a⌣[Q]");
        assert_eq!(c.verdict, Subgroup::SameAsTitsClass);
    }

    #[test]
    fn c_parity() {
        assert!(run("C4 inner circled=2,4").expression.is_zero());
        assert_eq!(run("C5 inner circled=2,4").expression.to_string(), "a⌣[Q]");
        assert_eq!(run("C4 inner circled=2,4").verdict, Subgroup::Zero);
    }

    #[test]
    fn e6() {
        let c = run("E6 inner circled=2,4");
        assert_eq!(c.expression.to_string(), "a⌣m[D]");
        assert_eq!(c.images.iter().map(|i| i.k).collect::<Vec<_>>(), vec![2, 2]);
        assert_eq!(c.verdict, Subgroup::SameAsTitsClass);
    }

    #[test]
    fn d_even() {
        assert_eq!(
            run("D4 inner circled=2").expression.to_string(),
            "a0⌣[Q_3] + a1⌣[Q_4]"
        );
        assert_eq!(
            run("D6 inner circled=2,4").expression.to_string(),
            "a0⌣[Q_6] + a1⌣[Q_5]"
        );
    }

    #[test]
    fn base_case_and_trivial() {
        let a3 = run("A3 inner circled=");
        assert_eq!(a3.expression.to_string(), "a⌣m[A]");
        assert_eq!(a3.verdict, Subgroup::SameAsTitsClass);
        let g2 = run("G2 inner circled=1,2");
        assert!(g2.expression.is_zero());
        assert_eq!(g2.verdict, Subgroup::Zero);
        let b3 = run("B3 inner circled=1,2");
        assert!(b3.expression.is_zero());
    }

    #[test]
    fn unsupported() {
        let d5 = restriction_composition(&"D5 inner circled=2".parse().unwrap());
        assert!(matches!(d5, Err(Error::UnsupportedShape(_))));
        let outer = restriction_composition(&"E6 outer2 circled=2,4".parse().unwrap());
        assert!(matches!(outer, Err(Error::UnsupportedShape(_))));
    }
}
