//! Canonical JSON, CSV and text renderings of the symbolic artifacts.
//!
//! JSON is canonical: fixed key order, entries in the owning container's
//! order, rationals as `"p/q"` (or `"p"`). CSV flattens index vectors as
//! semicolon-joined integers.

use num_bigint::BigInt;
use serde_json::{json, Value};
use spintau_core::exactcore::{parse_rational, GradedSeries, Monomial};
use spintau_core::kappa::KappaPolynomial;
use spintau_core::spectral::{OddDifferentialTable, PI2, S2};
use spintau_core::supervol::VolumePolynomial;
use spintau_core::virasoro::{CorrelatorTable, Engine};
use spintau_core::{FormalPolynomial, Rational, Truncation};
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub fn rational(r: &Rational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse(s: &str) -> Result<Rational, String> {
    parse_rational(s)
}

pub fn truncation(t: &Truncation) -> Value {
    json!({"gmax": t.gmax, "kmax": t.kmax, "dmax": t.dmax, "smax": t.smax})
}

fn sparse(m: &Monomial) -> Value {
    Value::Array(m.sparse().into_iter().map(|(i, e)| json!([i, e])).collect())
}

pub fn series(s: &GradedSeries) -> Value {
    Value::Array(
        s.iter()
            .map(|(k, v)| json!({"h": k.h, "s2": k.a, "t": sparse(&k.t), "v": rational(v)}))
            .collect(),
    )
}

pub fn table(t: &CorrelatorTable) -> Value {
    let entries: Vec<Value> = t
        .iter()
        .map(|(g, k, v)| json!({"g": g, "k": k, "v": rational(v)}))
        .collect();
    json!({"engine": t.engine.tag(), "trunc": truncation(&t.trunc), "entries": entries})
}

pub fn table_from_json(v: &Value) -> Result<CorrelatorTable, String> {
    let engine = v["engine"]
        .as_str()
        .and_then(Engine::from_tag)
        .ok_or("missing or unknown engine")?;
    let tr = &v["trunc"];
    let field = |name: &str| tr[name].as_u64().map(|x| x as u32).ok_or(format!("trunc.{name}"));
    let trunc = Truncation::new(field("gmax")?, field("kmax")?, field("dmax")?, field("smax")?);
    let mut t = CorrelatorTable::new(engine, trunc);
    for e in v["entries"].as_array().ok_or("entries")? {
        let g = e["g"].as_u64().ok_or("entry.g")? as u32;
        let k: Vec<u32> = e["k"]
            .as_array()
            .ok_or("entry.k")?
            .iter()
            .map(|x| x.as_u64().map(|x| x as u32).ok_or("entry.k[]"))
            .collect::<Result<_, _>>()?;
        let val = parse(e["v"].as_str().ok_or("entry.v")?)?;
        t.insert(g, &k, val);
    }
    Ok(t)
}

fn join(k: &[u32]) -> String {
    k.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

pub fn table_csv(t: &CorrelatorTable) -> String {
    let mut s = String::from("g,k,v\n");
    for (g, k, v) in t.iter() {
        writeln!(s, "{g},{},{}", join(k), rational(v)).unwrap();
    }
    s
}

pub fn table_text(t: &CorrelatorTable) -> String {
    let mut s = String::new();
    for (g, k, v) in t.iter() {
        let taus: Vec<String> = k.iter().map(|i| format!("tau_{i}")).collect();
        writeln!(s, "<{}>_{g} = {}", taus.join(" "), rational(v)).unwrap();
    }
    s
}

pub fn kappa_polynomial(p: &KappaPolynomial) -> Value {
    let terms: Vec<Value> = p
        .poly
        .terms()
        .map(|(e, c)| {
            let kappa: Vec<Value> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(j, &x)| json!([j + 1, x]))
                .collect();
            json!({"kappa": kappa, "v": rational(c)})
        })
        .collect();
    json!({"m": p.m, "terms": terms})
}

fn pi2_terms(v: &FormalPolynomial) -> Value {
    Value::Array(
        v.terms()
            .map(|(e, c)| json!([e.first().copied().unwrap_or(0), rational(c)]))
            .collect(),
    )
}

pub fn volume(v: &VolumePolynomial) -> Value {
    let terms: Vec<Value> = v
        .terms
        .iter()
        .map(|((a, k), c)| json!({"s2": a, "k": k, "pi2": pi2_terms(c)}))
        .collect();
    json!({"g": v.g, "n": v.n, "smax": v.smax, "terms": terms})
}

pub fn volume_csv(v: &VolumePolynomial) -> String {
    let mut s = String::from("s2,k,pi2,v\n");
    for ((a, k), c) in &v.terms {
        for (e, x) in c.terms() {
            writeln!(s, "{a},{},{},{}", join(k), e.first().copied().unwrap_or(0), rational(x)).unwrap();
        }
    }
    s
}

pub fn volume_text(v: &VolumePolynomial) -> String {
    format!("{}\n", v.render())
}

fn spectral_coefficient(v: &FormalPolynomial) -> Value {
    Value::Array(
        v.terms()
            .map(|(e, c)| {
                let at = |i: usize| e.get(i).copied().unwrap_or(0);
                json!({"s2": at(S2), "pi2": at(PI2), "v": rational(c)})
            })
            .collect(),
    )
}

pub fn spectral_tag(t: &OddDifferentialTable, eta: bool) -> String {
    if eta {
        format!("tr-{}-eta", t.label.tag())
    } else {
        format!("tr-{}", t.label.tag())
    }
}

pub fn spectral(t: &OddDifferentialTable, eta: bool) -> Value {
    let mut entries = Vec::new();
    for (&(g, _), m) in &t.entries {
        for (k, v) in m {
            entries.push(json!({"g": g, "k": k, "v": spectral_coefficient(v)}));
        }
    }
    json!({"engine": spectral_tag(t, eta), "entries": entries})
}

pub fn spectral_csv(t: &OddDifferentialTable) -> String {
    let mut s = String::from("g,k,s2,pi2,v\n");
    for (&(g, _), m) in &t.entries {
        for (k, v) in m {
            for (e, c) in v.terms() {
                let at = |i: usize| e.get(i).copied().unwrap_or(0);
                writeln!(s, "{g},{},{},{},{}", join(k), at(S2), at(PI2), rational(c)).unwrap();
            }
        }
    }
    s
}

pub fn spectral_text(t: &OddDifferentialTable) -> String {
    t.render()
}

/// Canonical byte form: compact JSON plus a trailing newline.
pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("JSON values serialise");
    s.push('\n');
    s
}
