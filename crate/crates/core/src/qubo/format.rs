//! `.qubo` (qbsolv) text output and QUBO-Plus JSON.
//!
//! The qbsolv format has no constant term, so the offset travels in a
//! `c offset` comment together with a `c var` dump of the registry.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::{Entry, QuboModel, QuboPlusModel};
use crate::error::{Error, Result};
use crate::mps::format_number;

pub fn write_qubo(model: &QuboModel) -> String {
    let mut out = String::new();
    let reg = model.registry();
    let _ = writeln!(out, "c symqubo {} n={} m={}", model.formulation(), reg.n(), reg.m());
    let _ = writeln!(out, "c offset {}", format_number(model.offset()));
    for (k, e) in reg.entries().iter().enumerate() {
        let (a, b) = e.pair();
        let _ = writeln!(out, "c var {k} {} {a} {b}", e.kind());
    }
    for e in reg.fixed_ones() {
        let (a, b) = e.pair();
        let _ = writeln!(out, "c fixed {} {a} {b}", e.kind());
    }
    let _ = writeln!(out, "p qubo 0 {} {} {}", reg.len(), model.linear().len(), model.quadratic().len());
    for (k, v) in model.linear() {
        let _ = writeln!(out, "{k} {k} {}", format_number(*v));
    }
    for ((a, b), v) in model.quadratic() {
        let _ = writeln!(out, "{a} {b} {}", format_number(*v));
    }
    out
}

/// Contents of a `.qubo` file as read back.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct QuboFile {
    pub max_node: usize,
    pub offset: f64,
    pub variables: Vec<Entry>,
    pub fixed_ones: Vec<Entry>,
    pub linear: BTreeMap<usize, f64>,
    pub quadratic: BTreeMap<(usize, usize), f64>,
}

fn parse_entry(kind: &str, a: &str, b: &str, line: usize) -> Result<Entry> {
    let bad = |message: String| Error::QuboFormat { line, message };
    let a: usize = a.parse().map_err(|_| bad(format!("bad index `{a}`")))?;
    let b: usize = b.parse().map_err(|_| bad(format!("bad index `{b}`")))?;
    match kind {
        "pi" => Ok(Entry::Pi(a, b)),
        "sigma" => Ok(Entry::Sigma(a, b)),
        other => Err(bad(format!("bad variable kind `{other}`"))),
    }
}

pub fn read_qubo(text: &str) -> Result<QuboFile> {
    let mut file = QuboFile::default();
    let mut header: Option<(usize, usize)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t: Vec<&str> = raw.split_whitespace().collect();
        let bad = |message: &str| Error::QuboFormat { line, message: message.to_string() };
        match t.as_slice() {
            [] => {}
            ["c", "offset", v] => file.offset = v.parse().map_err(|_| bad("bad offset"))?,
            ["c", "var", _, kind, a, b] => file.variables.push(parse_entry(kind, a, b, line)?),
            ["c", "fixed", kind, a, b] => file.fixed_ones.push(parse_entry(kind, a, b, line)?),
            ["c", ..] => {}
            ["p", "qubo", _, max_node, n_diag, n_coupler] => {
                file.max_node = max_node.parse().map_err(|_| bad("bad header"))?;
                header = Some((
                    n_diag.parse().map_err(|_| bad("bad header"))?,
                    n_coupler.parse().map_err(|_| bad("bad header"))?,
                ));
            }
            [a, b, v] => {
                if header.is_none() {
                    return Err(bad("coefficient before header"));
                }
                let a: usize = a.parse().map_err(|_| bad("bad index"))?;
                let b: usize = b.parse().map_err(|_| bad("bad index"))?;
                let v: f64 = v.parse().map_err(|_| bad("bad value"))?;
                if a >= file.max_node || b >= file.max_node {
                    return Err(bad("index exceeds maxNode"));
                }
                if a == b {
                    file.linear.insert(a, v);
                } else {
                    file.quadratic.insert((a.min(b), a.max(b)), v);
                }
            }
            _ => return Err(bad("unrecognised line")),
        }
    }
    let (n_diag, n_coupler) = header.ok_or(Error::QuboFormat { line: 0, message: "missing header".into() })?;
    if n_diag != file.linear.len() || n_coupler != file.quadratic.len() {
        return Err(Error::QuboFormat { line: 0, message: "term counts disagree with header".into() });
    }
    Ok(file)
}

#[derive(Serialize)]
struct VarJson {
    index: usize,
    kind: &'static str,
    from: usize,
    to: usize,
}

#[derive(Serialize)]
struct FixedJson {
    kind: &'static str,
    from: usize,
    to: usize,
}

#[derive(Serialize)]
struct ObjectiveJson {
    offset: f64,
    linear: Vec<(usize, f64)>,
    quadratic: Vec<(usize, usize, f64)>,
}

#[derive(Serialize)]
struct ConstraintJson<'a> {
    coeffs: &'a [(usize, f64)],
    sense: &'static str,
    rhs: f64,
}

#[derive(Serialize)]
struct QuboPlusJson<'a> {
    formulation: String,
    variables: Vec<VarJson>,
    objective: ObjectiveJson,
    constraints: Vec<ConstraintJson<'a>>,
    fixed_ones: Vec<FixedJson>,
}

pub fn quboplus_to_json(model: &QuboPlusModel) -> String {
    let obj = &model.objective;
    let reg = obj.registry();
    let doc = QuboPlusJson {
        formulation: obj.formulation().to_string(),
        variables: reg
            .entries()
            .iter()
            .enumerate()
            .map(|(index, e)| {
                let (from, to) = e.pair();
                VarJson { index, kind: e.kind(), from, to }
            })
            .collect(),
        objective: ObjectiveJson {
            offset: obj.offset(),
            linear: obj.linear().iter().map(|(&k, &v)| (k, v)).collect(),
            quadratic: obj.quadratic().iter().map(|(&(a, b), &v)| (a, b, v)).collect(),
        },
        constraints: model
            .constraints
            .iter()
            .map(|c| ConstraintJson { coeffs: &c.coeffs, sense: "=", rhs: c.rhs })
            .collect(),
        fixed_ones: reg
            .fixed_ones()
            .iter()
            .map(|e| {
                let (from, to) = e.pair();
                FixedJson { kind: e.kind(), from, to }
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mps::parse_mps;
    use crate::qubo::{build_decomposed, build_quboplus_full, build_reduced, FixMode, PenaltyWeights};
    use crate::reasonability::{build_partition, SignatureConfig};

    fn knapsack() -> (crate::mip::MipInstance, crate::reasonability::ReasonabilityPartition) {
        let mip = parse_mps(include_str!("../../tests/data/knapsack.mps")).unwrap();
        let p = build_partition(&mip, &SignatureConfig { sharpen_var_coeffs: true, ..Default::default() });
        (mip, p)
    }

    #[test]
    fn qubo_text_reads_back() {
        let (mip, p) = knapsack();
        let model = build_reduced(&mip, &p, &PenaltyWeights::default()).unwrap();
        let text = write_qubo(&model);
        assert!(text.contains("p qubo 0 16 "));
        let back = read_qubo(&text).unwrap();
        assert_eq!(back.max_node, 16);
        assert_eq!(back.offset, model.offset());
        assert_eq!(&back.linear, model.linear());
        assert_eq!(&back.quadratic, model.quadratic());
        assert_eq!(back.variables, model.registry().entries());
    }

    #[test]
    fn fixed_entries_listed() {
        let (mip, p) = knapsack();
        let model = build_decomposed(&mip, &p, 2, &PenaltyWeights::default(), FixMode::Constants).unwrap();
        let back = read_qubo(&write_qubo(&model)).unwrap();
        assert_eq!(back.fixed_ones, model.registry().fixed_ones());
    }

    #[test]
    fn quboplus_json_shape() {
        let (mip, p) = knapsack();
        let plus = build_quboplus_full(&mip, &p, &PenaltyWeights::default()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&quboplus_to_json(&plus)).unwrap();
        assert_eq!(v["variables"].as_array().unwrap().len(), 50);
        assert_eq!(v["constraints"].as_array().unwrap().len(), 16);
        assert_eq!(v["constraints"][0]["sense"], "=");
        assert_eq!(v["constraints"][0]["rhs"], 1.0);
    }

    #[test]
    fn malformed_qubo_rejected() {
        assert!(read_qubo("0 0 1\n").is_err());
        assert!(read_qubo("p qubo 0 2 1 0\n0 0 1\n3 3 1\n").is_err());
        assert!(read_qubo("p qubo 0 2 2 0\n0 0 1\n").is_err());
    }
}
