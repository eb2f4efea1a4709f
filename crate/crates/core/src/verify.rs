//! Replays the published worked examples as a suite of exact checks.
//!
//! Every root system used by the suite comes from a caller-supplied Cartan
//! provider, so a broken convention makes the affected checks fail.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use crate::center::{center, vanish_criterion, zmap};
use crate::error::Result;
use crate::invariant::{
    classify_f2_form, restriction_composition_of, theorem_verdict, BrauerSymbol, FormClass,
    FormalCupExpression, Relations, Subgroup, TorsorSymbol,
};
use crate::lattice::{lattice_quotient, solve_rational, IntegerMatrix, RationalVector};
use crate::reduction::{g_prime_of, rost_multiplier, uncircled_delta_r, TitsIndex};
use crate::report::{Report, Status};
use crate::roots::{cartan_matrix, RootSystem, SystemType};

pub type CartanProvider<'a> = &'a dyn Fn(SystemType) -> IntegerMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

type Check = std::result::Result<(), String>;

struct Suite<'a> {
    provider: CartanProvider<'a>,
    results: Vec<CheckResult>,
}

fn expect<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> Check {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

fn set(xs: &[usize]) -> BTreeSet<usize> {
    xs.iter().copied().collect()
}

fn frac(xs: &[(i64, i64)]) -> RationalVector {
    RationalVector::from_fractions(xs)
}

impl<'a> Suite<'a> {
    fn system(&self, s: &str) -> std::result::Result<RootSystem, String> {
        let t: SystemType = s.parse().map_err(|e: crate::Error| e.to_string())?;
        RootSystem::from_cartan(t, (self.provider)(t)).map_err(|e| e.to_string())
    }

    fn index(&self, s: &str) -> std::result::Result<(RootSystem, TitsIndex), String> {
        let idx: TitsIndex = s.parse().map_err(|e: crate::Error| e.to_string())?;
        Ok((self.system(&idx.system_type().to_string())?, idx))
    }

    fn run(&mut self, name: &str, f: impl FnOnce(&Self) -> Check) {
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| f(self)))
            .unwrap_or_else(|_| Err("check panicked".to_string()));
        self.results.push(CheckResult {
            name: name.to_string(),
            passed: outcome.is_ok(),
            detail: outcome.err().unwrap_or_default(),
        });
    }
}

fn e<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Runs the suite against the given Cartan provider.
pub fn run_checks(provider: CartanProvider<'_>) -> Vec<CheckResult> {
    let mut s = Suite {
        provider,
        results: Vec::new(),
    };

    s.run("A2 first fundamental weight", |s| {
        let a2 = s.system("A2")?;
        let w = e(solve_rational(a2.cartan(), &RationalVector::unit(2, 0)))?;
        expect(w, frac(&[(2, 3), (1, 3)]))
    });
    s.run("E7 seventh fundamental weight", |s| {
        let e7 = s.system("E7")?;
        let w = e(solve_rational(e7.cartan(), &RationalVector::unit(7, 6)))?;
        expect(
            w,
            frac(&[(1, 1), (3, 2), (2, 1), (3, 1), (5, 2), (2, 1), (3, 2)]),
        )
    });
    s.run("E6 first fundamental weight", |s| {
        let e6 = s.system("E6")?;
        expect(
            e6.fundamental_weights()[0].clone(),
            frac(&[(4, 3), (1, 1), (5, 3), (2, 1), (4, 3), (2, 3)]),
        )
    });
    s.run("D even fork weight tails", |s| {
        for l in (4..=12).step_by(2) {
            let d = s.system(&format!("D{l}"))?;
            let w = &d.fundamental_weights()[l - 2];
            let tail = w.select(&[l - 2, l - 1]);
            expect(tail, frac(&[(l as i64, 4), (l as i64 - 2, 4)]))
                .map_err(|m| format!("D{l}: {m}"))?;
        }
        Ok(())
    });
    s.run("A2 and D4 weight-lattice quotients", |s| {
        let a2 = e(lattice_quotient(s.system("A2")?.cartan()))?;
        let d4 = e(lattice_quotient(s.system("D4")?.cartan()))?;
        let f = |g: &crate::lattice::FiniteAbelianGroup| -> Vec<String> {
            g.invariant_factors()
                .iter()
                .map(|d| d.to_string())
                .collect()
        };
        expect(
            (f(&a2), f(&d4)),
            (vec!["3".into()], vec!["2".into(), "2".into()]),
        )
    });
    s.run("dual of B3 is C3", |s| {
        let b3 = s.system("B3")?;
        let c3 = s.system("C3")?;
        expect(b3.dual().cartan().clone(), c3.cartan().clone())
    });
    s.run("weights in the root lattice", |s| {
        let e7 = s.system("E7")?;
        let b3 = s.system("B3")?;
        expect(
            (
                e(e7.weight_in_root_lattice(7))?,
                e(b3.weight_in_root_lattice(2))?,
            ),
            (false, true),
        )
    });
    s.run("delta_r of B4, E7, A5", |s| {
        expect(
            (
                s.system("B4")?.delta_r(),
                s.system("E7")?.delta_r(),
                s.system("A5")?.delta_r(),
            ),
            (set(&[1, 2, 3]), set(&[1, 3, 4, 6]), set(&[])),
        )
    });
    s.run("delta_c of B2..B10", |s| {
        for l in 2..=10 {
            expect(s.system(&format!("B{l}"))?.delta_c(), set(&[1]))
                .map_err(|m| format!("B{l}: {m}"))?;
        }
        Ok(())
    });
    s.run("E7 cocharacter h_2(-1) h_5(-1) h_7(-1)", |s| {
        let z = zmap(&s.system("E7")?.fundamental_coweights()[6]);
        expect(z.to_string(), "h_2(-1) h_5(-1) h_7(-1)".to_string())
    });
    s.run("E6 cocharacter h_1(z) h_3(z^2) h_5(z) h_6(z^2)", |s| {
        let z = zmap(&s.system("E6")?.fundamental_coweights()[0]);
        expect(
            (z.exponents.clone(), z.to_string()),
            (
                vec![1, 0, 2, 0, 1, 2],
                "h_1(z) h_3(z^2) h_5(z) h_6(z^2)".to_string(),
            ),
        )
    });
    s.run("A2 cocharacter h_1(z^2) h_2(z)", |s| {
        let z = zmap(&s.system("A2")?.fundamental_coweights()[0]);
        expect(z.exponents, vec![2, 1])
    });
    s.run("C cocharacters on odd vertices", |s| {
        for l in 2..=10 {
            let z = zmap(&s.system(&format!("C{l}"))?.fundamental_coweights()[l - 1]);
            let odd: BTreeSet<usize> = (1..=l).filter(|i| i % 2 == 1).collect();
            expect((z.order, z.support()), (2, odd)).map_err(|m| format!("C{l}: {m}"))?;
        }
        Ok(())
    });
    s.run("G2 has trivial center", |s| {
        let c = e(center(&s.system("G2")?))?;
        expect((c.group.is_trivial(), c.zmaps.len()), (true, 0))
    });
    s.run("E7 center", |s| {
        let c = e(center(&s.system("E7")?))?;
        expect(
            (c.invariant_factors(), c.zmaps[0].support()),
            (vec![2], set(&[2, 5, 7])),
        )
    });
    s.run("D even center generators z_0 and z_1", |s| {
        for l in (4..=12).step_by(2) {
            let c = e(center(&s.system(&format!("D{l}"))?))?;
            let odd: Vec<usize> = (1..=l - 3).step_by(2).collect();
            let mut s0 = set(&odd);
            s0.insert(l);
            let mut s1 = set(&odd);
            s1.insert(l - 1);
            let got: Vec<BTreeSet<usize>> = c.zmaps.iter().map(|z| z.support()).collect();
            expect(got, vec![s0, s1]).map_err(|m| format!("D{l}: {m}"))?;
        }
        Ok(())
    });
    s.run("B3 vanish criterion", |s| {
        let b3 = s.system("B3")?;
        expect(
            (
                vanish_criterion(&b3, &set(&[1])),
                vanish_criterion(&b3, &set(&[3])),
            ),
            (true, false),
        )
    });
    s.run("index conditions for E7 and B4", |s| {
        let (e7, i) = s.index("E7 inner circled=1,3,4,6")?;
        let (b4, j) = s.index("B4 inner circled=4")?;
        expect(
            (uncircled_delta_r(&e7, &i), uncircled_delta_r(&b4, &j)),
            (vec![], vec![1, 2, 3]),
        )
    });
    s.run("E7 subgroup G'", |s| {
        let (rs, i) = s.index("E7 inner circled=1,3,4,6")?;
        let g = e(g_prime_of(&rs, &i))?;
        let verts: Vec<Vec<usize>> = g.components.iter().map(|c| c.vertices.clone()).collect();
        expect(
            (verts, g.center_restriction),
            (
                vec![vec![2], vec![5], vec![7]],
                vec![vec![vec![1], vec![1], vec![1]]],
            ),
        )
    });
    s.run("C5 subgroup G' multipliers", |s| {
        let (rs, i) = s.index("C5 inner circled=2,4")?;
        expect(e(g_prime_of(&rs, &i))?.multipliers, vec![2, 2, 1])
    });
    s.run("D6 restriction of z_0", |s| {
        let (rs, i) = s.index("D6 inner circled=2,4")?;
        expect(
            e(g_prime_of(&rs, &i))?.center_restriction[0].clone(),
            vec![vec![1], vec![1], vec![0], vec![1]],
        )
    });
    s.run("Rost multipliers", |s| {
        let e7 = s.system("E7")?;
        let c5 = s.system("C5")?;
        let e7_all = (1..=7)
            .map(|i| rost_multiplier(&e7, i))
            .collect::<Result<Vec<_>>>();
        expect(
            (
                e(e7_all)?,
                e(rost_multiplier(&c5, 1))?,
                e(rost_multiplier(&c5, 5))?,
            ),
            (vec![1; 7], 2, 1),
        )
    });
    s.run("relation [Q] = [Q_{l-1}] + [Q_l]", |_| {
        let rel = Relations::from([(
            "Q".to_string(),
            vec![("Q_1".to_string(), 1), ("Q_2".to_string(), 1)],
        )]);
        let mut x = FormalCupExpression::zero(2, rel);
        x.add_term(TorsorSymbol::new("a"), BrauerSymbol::new("Q"), 1);
        expect(
            e(x.normalize())?.to_string(),
            "a⌣[Q_1] + a⌣[Q_2]".to_string(),
        )
    });
    s.run("4a = a modulo 3", |_| {
        let mut x = FormalCupExpression::zero(3, Relations::new());
        x.add_term(TorsorSymbol::new("a"), BrauerSymbol::new("D"), 4);
        expect(e(x.normalize())?.to_string(), "a⌣[D]".to_string())
    });
    s.run("E7 restriction is the Tits class", |s| {
        let (rs, i) = s.index("E7 inner circled=1,3,4,6")?;
        let c = e(restriction_composition_of(&rs, &i))?;
        expect(
            (c.expression.to_string(), c.verdict),
            ("a⌣[Q]".to_string(), Subgroup::SameAsTitsClass),
        )
    });
    s.run("C restriction vanishes exactly for even rank", |s| {
        for l in 2..=10 {
            let circled: Vec<String> = (2..=l).step_by(2).map(|i| i.to_string()).collect();
            let (rs, i) = s.index(&format!("C{l} inner circled={}", circled.join(",")))?;
            let c = e(restriction_composition_of(&rs, &i))?;
            let want = if l % 2 == 0 { "0" } else { "a⌣[Q]" };
            expect(c.expression.to_string(), want.to_string()).map_err(|m| format!("C{l}: {m}"))?;
        }
        Ok(())
    });
    s.run("E6 restriction a⌣m[D]", |s| {
        let (rs, i) = s.index("E6 inner circled=2,4")?;
        expect(
            e(restriction_composition_of(&rs, &i))?
                .expression
                .to_string(),
            "a⌣m[D]".to_string(),
        )
    });
    s.run("D even restriction with the l mod 4 swap", |s| {
        for l in (4..=12).step_by(2) {
            let circled: Vec<String> = (2..=l - 2).step_by(2).map(|i| i.to_string()).collect();
            let (rs, i) = s.index(&format!("D{l} inner circled={}", circled.join(",")))?;
            let c = e(restriction_composition_of(&rs, &i))?;
            let want = if l % 4 == 0 {
                format!("a0⌣[Q_{}] + a1⌣[Q_{l}]", l - 1)
            } else {
                format!("a0⌣[Q_{l}] + a1⌣[Q_{}]", l - 1)
            };
            expect(c.expression.to_string(), want).map_err(|m| format!("D{l}: {m}"))?;
        }
        Ok(())
    });
    s.run("F2 form classification", |_| {
        expect(
            (
                classify_f2_form(&[[0, 1], [1, 0]]),
                classify_f2_form(&[[1, 0], [0, 1]]),
            ),
            (FormClass::Hyperbolic, FormClass::MetabolicNotHyperbolic),
        )
    });
    s.run("answer table for E7, C6, G2", |_| {
        let v = |t: &str| theorem_verdict(t.parse().expect("valid type")).subgroup;
        expect(
            (v("E7"), v("C6"), v("G2")),
            (Subgroup::SameAsTitsClass, Subgroup::Zero, Subgroup::Zero),
        )
    });
    s.results
}

/// The standard Bourbaki provider.
pub fn standard_provider(t: SystemType) -> IntegerMatrix {
    cartan_matrix(t)
}

pub fn cmd_verify() -> Report {
    cmd_verify_with(&standard_provider)
}

pub fn cmd_verify_with(provider: CartanProvider<'_>) -> Report {
    let results = run_checks(provider);
    let failed = results.iter().filter(|r| !r.passed).count();
    let mut text = String::new();
    for r in &results {
        if r.passed {
            writeln!(text, "PASS  {}", r.name).unwrap();
        } else {
            writeln!(text, "FAIL  {}: {}", r.name, r.detail).unwrap();
        }
    }
    writeln!(
        text,
        "{} of {} checks passed",
        results.len() - failed,
        results.len()
    )
    .unwrap();
    let status = if failed == 0 {
        Status::Ok
    } else {
        Status::Error(format!("{failed} checks failed"))
    };
    Report::with_text(
        "verify",
        json!({}),
        json!({ "checks": results }),
        status,
        text,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_suite_passes() {
        let r = cmd_verify();
        assert!(r.is_ok(), "{}", r.to_text());
    }

    #[test]
    fn reversed_labels_break_e7() {
        let reversed = |t: SystemType| {
            let m = cartan_matrix(t);
            let rev: Vec<usize> = (0..t.rank()).rev().collect();
            m.submatrix(&rev)
        };
        let results = run_checks(&reversed);
        let e7 = results
            .iter()
            .find(|r| r.name == "E7 seventh fundamental weight")
            .unwrap();
        assert!(!e7.passed);
        assert!(!cmd_verify_with(&reversed).is_ok());
    }

    #[test]
    fn byte_stable() {
        assert_eq!(cmd_verify().to_text(), cmd_verify().to_text());
        assert_eq!(cmd_verify().to_json(), cmd_verify().to_json());
    }
}
