//! Structured reports for the command-line front end.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::center::{center, vanish_criterion, zmap, CenterPresentation};
use crate::error::{Error, Result};
use crate::invariant::{
    classify_f2_form, render_brauer, restriction_composition, theorem_verdict, Composition,
    Subgroup, TheoremVerdict,
};
use crate::reduction::{g_prime, uncircled_delta_r, GPrimeDecomposition, TitsIndex};
use crate::roots::{RootSystem, SystemType};

pub const MAX_RANK: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub payload: Value,
    pub status: Status,
    #[serde(skip)]
    text: String,
}

impl Report {
    fn ok(command: &str, inputs: Value, payload: Value, text: String) -> Report {
        Report {
            command: command.to_string(),
            inputs,
            payload,
            status: Status::Ok,
            text,
        }
    }

    pub(crate) fn with_text(
        command: &str,
        inputs: Value,
        payload: Value,
        status: Status,
        text: String,
    ) -> Report {
        Report {
            command: command.to_string(),
            inputs,
            payload,
            status,
            text,
        }
    }

    pub fn error(command: &str, inputs: Value, message: String) -> Report {
        Report {
            command: command.to_string(),
            inputs,
            payload: Value::Null,
            text: format!("error: {message}\n"),
            status: Status::Error(message),
        }
    }

    fn from_result(command: &str, inputs: Value, r: Result<(Value, String)>) -> Report {
        match r {
            Ok((payload, text)) => Report::ok(command, inputs, payload, text),
            Err(e) => Report::error(command, inputs, e.to_string()),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> &str {
        &self.text
    }
}

pub fn parse_type(s: &str) -> Result<SystemType> {
    let t: SystemType = s.trim().parse()?;
    if t.rank() > MAX_RANK {
        return Err(Error::Parse(format!(
            "rank {} exceeds {MAX_RANK}",
            t.rank()
        )));
    }
    Ok(t)
}

pub fn parse_index(s: &str) -> Result<TitsIndex> {
    let idx: TitsIndex = s.parse()?;
    parse_type(&idx.system_type().to_string())?;
    Ok(idx)
}

fn set_text(s: &BTreeSet<usize>) -> String {
    let items: Vec<String> = s.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn center_json(c: &CenterPresentation) -> Value {
    let gens: Vec<Value> = c
        .zmaps
        .iter()
        .zip(&c.source_weights)
        .map(|(z, w)| {
            json!({
                "coweight": w,
                "order": z.order,
                "exponents": z.exponents,
                "h": z.to_string(),
            })
        })
        .collect();
    json!({
        "invariant_factors": c.invariant_factors(),
        "order": c.order().to_string(),
        "generators": gens,
    })
}

fn group_text(factors: &[u64]) -> String {
    if factors.is_empty() {
        "trivial".to_string()
    } else {
        factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub fn cmd_info(type_str: &str) -> Report {
    let inputs = json!({ "type": type_str });
    Report::from_result("info", inputs, info(type_str))
}

fn info(type_str: &str) -> Result<(Value, String)> {
    let t = parse_type(type_str)?;
    let rs = RootSystem::build(t);
    let c = center(&rs)?;
    let cartan: Vec<Vec<String>> = (0..rs.rank())
        .map(|i| rs.cartan().row(i).iter().map(|x| x.to_string()).collect())
        .collect();
    let weights: Vec<Vec<String>> = rs
        .fundamental_weights()
        .iter()
        .map(|w| w.coords().iter().map(|x| x.to_string()).collect())
        .collect();
    let payload = json!({
        "type": t.to_string(),
        "cartan": cartan,
        "root_count": rs.roots().len(),
        "positive_root_count": rs.positive_roots().count(),
        "fundamental_weights": weights,
        "delta_r": rs.delta_r(),
        "delta_c": rs.delta_c(),
        "center": center_json(&c),
    });
    let mut text = String::new();
    writeln!(text, "type: {t}").unwrap();
    writeln!(text, "cartan matrix:").unwrap();
    for i in 0..rs.rank() {
        let row: Vec<String> = rs
            .cartan()
            .row(i)
            .iter()
            .map(|x| format!("{x:>2}"))
            .collect();
        writeln!(text, "  {}", row.join(" ")).unwrap();
    }
    writeln!(text, "roots: {}", rs.roots().len()).unwrap();
    for (j, w) in rs.fundamental_weights().iter().enumerate() {
        writeln!(text, "omega_{} = {w}", j + 1).unwrap();
    }
    writeln!(text, "delta_r: {}", set_text(&rs.delta_r())).unwrap();
    writeln!(text, "delta_c: {}", set_text(&rs.delta_c())).unwrap();
    writeln!(text, "center: {}", group_text(&c.invariant_factors())).unwrap();
    for (z, w) in c.zmaps.iter().zip(&c.source_weights) {
        let label = w.map_or_else(|| "lift".to_string(), |j| format!("coweight {j}"));
        writeln!(text, "  {label}: {z}").unwrap();
    }
    Ok((payload, text))
}

pub fn cmd_zmap(type_str: &str, weight_index: usize) -> Report {
    let inputs = json!({ "type": type_str, "weight_index": weight_index });
    Report::from_result("zmap", inputs, zmap_report(type_str, weight_index))
}

fn zmap_report(type_str: &str, j: usize) -> Result<(Value, String)> {
    let rs = RootSystem::build(parse_type(type_str)?);
    rs.check_vertex(j)?;
    let w = &rs.fundamental_coweights()[j - 1];
    let z = zmap(w);
    let payload = json!({
        "coweight": w.coords().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "order": z.order,
        "exponents": z.exponents,
        "h": z.to_string(),
    });
    let text = format!("coweight {j} = {w}\norder: {}\nz: {z}\n", z.order);
    Ok((payload, text))
}

fn gprime_json(g: &GPrimeDecomposition) -> Value {
    let comps: Vec<Value> = g
        .components
        .iter()
        .zip(&g.multipliers)
        .map(|(c, m)| {
            json!({
                "type": c.system_type,
                "vertices": c.vertices,
                "bourbaki_order": c.bourbaki_order,
                "multiplier": m,
            })
        })
        .collect();
    json!({ "components": comps, "center_restriction": g.center_restriction })
}

fn gprime_text(g: &GPrimeDecomposition, out: &mut String) {
    writeln!(out, "G' components:").unwrap();
    for (c, m) in g.components.iter().zip(&g.multipliers) {
        let verts: Vec<String> = c.vertices.iter().map(usize::to_string).collect();
        writeln!(
            out,
            "  {} on {{{}}}, multiplier {m}",
            c.system_type,
            verts.join(", ")
        )
        .unwrap();
    }
    for (k, per) in g.center_restriction.iter().enumerate() {
        let parts: Vec<String> = per
            .iter()
            .map(|e| {
                let xs: Vec<String> = e.iter().map(u64::to_string).collect();
                format!("({})", xs.join(","))
            })
            .collect();
        writeln!(out, "  generator {k} restricts to {}", parts.join(" ")).unwrap();
    }
}

pub fn cmd_gprime(index: &str) -> Report {
    let inputs = json!({ "index": index });
    let r = parse_index(index).and_then(|idx| {
        let g = g_prime(&idx)?;
        let mut text = String::new();
        gprime_text(&g, &mut text);
        Ok((gprime_json(&g), text))
    });
    Report::from_result("gprime", inputs, r)
}

pub fn cmd_classify_form(bits: &str) -> Report {
    let inputs = json!({ "bits": bits });
    let r = parse_bits(bits).map(|g| {
        let class = classify_f2_form(&g);
        (
            json!({ "gram": g, "class": class.to_string() }),
            format!(
                "[[{},{}],[{},{}]]: {class}\n",
                g[0][0], g[0][1], g[1][0], g[1][1]
            ),
        )
    });
    Report::from_result("classify-form", inputs, r)
}

/// Four bits in row-major order; whitespace and commas are ignored.
pub fn parse_bits(bits: &str) -> Result<[[u8; 2]; 2]> {
    let digits: Vec<u8> = bits
        .chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Parse(format!("'{c}' is not a bit"))),
        })
        .collect::<Result<_>>()?;
    match digits.as_slice() {
        [a, b, c, d] => Ok([[*a, *b], [*c, *d]]),
        _ => Err(Error::Parse(format!(
            "expected 4 bits, got {}",
            digits.len()
        ))),
    }
}

fn verdict_json(v: &TheoremVerdict) -> Value {
    json!({
        "subgroup": v.subgroup,
        "pairing": { "kind": v.pairing.kind, "modulus": v.pairing.modulus, "gram": v.pairing.gram },
        "notes": v.notes,
    })
}

fn composition_json(c: &Composition) -> Value {
    let tits_parts: Vec<Value> = c
        .torsors
        .iter()
        .map(|a| json!({ "torsor": a, "class": render_brauer(&c.expression.brauer_part(a)) }))
        .collect();
    json!({
        "expression": c.expression.to_string(),
        "classes": tits_parts,
        "tits_expression": c.tits_expression.to_string(),
        "verdict": c.verdict,
    })
}

pub fn cmd_rost(index: &str) -> Report {
    let inputs = json!({ "index": index });
    Report::from_result("rost", inputs, rost(index))
}

fn rost(index: &str) -> Result<(Value, String)> {
    let idx = parse_index(index)?;
    let t = idx.system_type();
    let rs = RootSystem::build(t);
    let theorem = theorem_verdict(t);
    let uncircled = uncircled_delta_r(&rs, &idx);
    let condition = uncircled.is_empty();
    let mut text = String::new();
    writeln!(text, "index: {idx}").unwrap();
    writeln!(text, "delta_r: {}", set_text(&rs.delta_r())).unwrap();
    writeln!(
        text,
        "condition: {}",
        if condition { "holds" } else { "fails" }
    )
    .unwrap();

    let (verdict, method, computed) = if !idx.is_inner() {
        (theorem.subgroup, "answer table (outer form)", None)
    } else if vanish_criterion(&rs, idx.circled()) {
        let computed = if condition {
            restriction_composition(&idx).ok()
        } else {
            None
        };
        (Subgroup::Zero, "vanish criterion", computed)
    } else if !condition {
        return Err(Error::ConditionViolated { uncircled });
    } else {
        match restriction_composition(&idx) {
            Ok(c) => (c.verdict, "restriction through G'", Some(c)),
            Err(Error::UnsupportedShape(_)) => {
                (theorem.subgroup, "answer table (shape not computed)", None)
            }
            Err(e) => return Err(e),
        }
    };

    let mut payload = json!({
        "index": idx.to_string(),
        "condition": { "holds": condition, "uncircled": uncircled },
        "vanish_criterion": idx.is_inner() && vanish_criterion(&rs, idx.circled()),
        "method": method,
        "verdict": verdict,
        "theorem": verdict_json(&theorem),
        "agrees_with_theorem": verdict == theorem.subgroup,
    });
    if let Some(c) = &computed {
        payload["gprime"] = gprime_json(&c.decomposition);
        payload["composition"] = composition_json(c);
        gprime_text(&c.decomposition, &mut text);
        writeln!(text, "expression: {}", c.expression).unwrap();
        for a in &c.torsors {
            writeln!(
                text,
                "  class of {a}: {}",
                render_brauer(&c.expression.brauer_part(a))
            )
            .unwrap();
        }
        writeln!(text, "tits expression: {}", c.tits_expression).unwrap();
    }
    writeln!(text, "method: {method}").unwrap();
    writeln!(text, "verdict: {verdict}").unwrap();
    writeln!(text, "theorem: {} ({})", theorem.subgroup, theorem.notes).unwrap();
    writeln!(text, "pairing: {}", theorem.pairing).unwrap();
    Ok((payload, text))
}
