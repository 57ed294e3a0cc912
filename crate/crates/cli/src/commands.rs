use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use symqubo::qubo::format::{quboplus_to_json, write_qubo};
use symqubo::*;

use crate::args::{Cli, Command, FixArg, Global, MethodArg, OutputFormat, WeightArgs};
use crate::format::{error_record, sig6, stats_record, STATS_HEADER};
use crate::input::{collect_inputs, instance_name, read_instance, read_text};
use crate::{Failure, ResultExt};

type CmdResult = Result<(), Failure>;

pub fn run(cli: &Cli) -> CmdResult {
    let g = &cli.global;
    match &cli.command {
        Command::Analyze { paths, max_n, max_q } => analyze(g, paths, *max_n, *max_q),
        Command::Build { mps, form, weights } => build(g, mps, form, weights),
        Command::Detect { mps, form, method, seed, restarts, sweeps, exact_limit, brute_limit, max_q, weights } => {
            let config = DetectConfig {
                method: match method {
                    MethodArg::Auto => DetectMethod::Auto,
                    MethodArg::Exact => DetectMethod::Exact,
                    MethodArg::Anneal => DetectMethod::Anneal,
                    MethodArg::Brute => DetectMethod::Brute,
                },
                exact_limit: *exact_limit,
                brute_limit: *brute_limit,
                anneal: AnnealConfig { seed: *seed, restarts: *restarts, sweeps: *sweeps, ..Default::default() },
            };
            detect(g, mps, form, &config, *max_q, weights)
        }
        Command::Estimate { q, mps } => estimate(g, *q, mps.as_deref()),
        Command::Regress { stats } => regress(g, stats),
    }
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> CmdResult {
    match out {
        Some(path) => std::fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display())).usage(),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes).and_then(|_| stdout.flush()).context("cannot write to stdout").usage()
        }
    }
}

fn csv_bytes(header: &[&str], rows: &[Vec<String>]) -> anyhow::Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.into_inner().map_err(|e| anyhow!("{}", e.error()))
}

fn json_bytes<T: Serialize>(value: &T) -> anyhow::Result<Vec<u8>> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s.into_bytes())
}

fn load(g: &Global, path: &Path) -> Result<(MipInstance, ReasonabilityPartition), Failure> {
    let mip = read_instance(path, g.mps_format.into()).failed()?;
    let partition = build_partition(&mip, &g.signature.config());
    Ok((mip, partition))
}

fn analyze_one(g: &Global, path: &Path, max_n: Option<usize>, max_q: Option<usize>) -> anyhow::Result<InstanceStats> {
    let mip = read_instance(path, g.mps_format.into())?;
    if let Some(limit) = max_n.filter(|&l| mip.n() > l) {
        bail!("n={} exceeds --max-n {limit}", mip.n());
    }
    let partition = build_partition(&mip, &g.signature.config());
    let mut stats = instance_stats(&mip, &partition, max_q)?;
    stats.name = instance_name(path);
    Ok(stats)
}

fn analyze(g: &Global, paths: &[PathBuf], max_n: Option<usize>, max_q: Option<usize>) -> CmdResult {
    let inputs = collect_inputs(paths).usage()?;
    if inputs.is_empty() {
        return Err(Failure::Instances(anyhow!("no MPS files found")));
    }
    let results: Vec<(String, anyhow::Result<InstanceStats>)> =
        inputs.par_iter().map(|p| (instance_name(p), analyze_one(g, p, max_n, max_q))).collect();
    for (name, r) in &results {
        if let Err(e) = r {
            log::warn!("{name}: {e:#}");
        }
    }
    let bytes = match g.format {
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = results
                .iter()
                .map(|(name, r)| match r {
                    Ok(s) => stats_record(s),
                    Err(e) => error_record(name, &format!("{e:#}")),
                })
                .collect();
            csv_bytes(&STATS_HEADER, &rows)
        }
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = results
                .iter()
                .map(|(name, r)| match r {
                    Ok(s) => {
                        let mut v = serde_json::to_value(s).expect("serializable");
                        v["error"] = serde_json::Value::Null;
                        v
                    }
                    Err(e) => json!({ "name": name, "error": format!("{e:#}") }),
                })
                .collect();
            json_bytes(&rows)
        }
    }
    .usage()?;
    emit(g.out.as_deref(), &bytes)?;
    let failed = results.iter().filter(|(_, r)| r.is_err()).count();
    if failed == results.len() {
        return Err(Failure::Instances(anyhow!("all {failed} instances failed")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
enum ClassSel {
    Max,
    Id(usize),
    Var(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Form {
    Full,
    Reduced,
    Decomp(ClassSel),
    PlusFull,
    PlusReduced,
    PlusDecomp(ClassSel),
}

fn parse_class(s: &str) -> anyhow::Result<ClassSel> {
    if s.is_empty() {
        bail!("missing class after `:`");
    }
    Ok(match (s, s.parse::<usize>()) {
        ("max", _) => ClassSel::Max,
        (_, Ok(id)) => ClassSel::Id(id),
        _ => ClassSel::Var(s.to_string()),
    })
}

fn parse_form(s: &str) -> anyhow::Result<Form> {
    Ok(match s {
        "full" => Form::Full,
        "reduced" => Form::Reduced,
        "plus-full" => Form::PlusFull,
        "plus-reduced" => Form::PlusReduced,
        _ => {
            if let Some(c) = s.strip_prefix("decomp:") {
                Form::Decomp(parse_class(c)?)
            } else if let Some(c) = s.strip_prefix("plus-decomp:") {
                Form::PlusDecomp(parse_class(c)?)
            } else {
                bail!("unknown form `{s}` (expected full, reduced, decomp:<class>, plus-full, plus-reduced or plus-decomp:<class>)")
            }
        }
    })
}

fn resolve_class(sel: &ClassSel, mip: &MipInstance, p: &ReasonabilityPartition) -> anyhow::Result<usize> {
    match sel {
        ClassSel::Max => Ok(p.max_decomp_class()?.0),
        ClassSel::Id(id) if *id < p.var_classes().len() => Ok(*id),
        ClassSel::Id(id) => bail!("class {id} does not exist ({} classes)", p.var_classes().len()),
        ClassSel::Var(name) => mip
            .var_names()
            .iter()
            .position(|v| v == name)
            .map(|j| p.var_class_of(j))
            .ok_or_else(|| anyhow!("no variable named `{name}`")),
    }
}

enum Built {
    Qubo(QuboModel),
    Plus(QuboPlusModel),
}

/// Number of live variables the form would register.
fn predicted_size(form: &Form, mip: &MipInstance, p: &ReasonabilityPartition, w: &WeightArgs) -> anyhow::Result<usize> {
    let (n, m) = (mip.n(), mip.m());
    Ok(match form {
        Form::Full | Form::PlusFull => n * n + m * m,
        Form::Reduced | Form::PlusReduced => p.nu() + p.mu(),
        Form::Decomp(sel) => {
            let c = resolve_class(sel, mip, p)?;
            match w.fix_mode {
                FixArg::Penalty => p.decomposed_size(c)?,
                FixArg::Constants => p.var_classes()[c].len().pow(2) + p.mu(),
            }
        }
        Form::PlusDecomp(sel) => p.decomposed_size(resolve_class(sel, mip, p)?)?,
    })
}

fn build_form(form: &Form, mip: &MipInstance, p: &ReasonabilityPartition, w: &WeightArgs) -> Result<Built, Failure> {
    let weights = w.weights();
    let fix = match w.fix_mode {
        FixArg::Constants => FixMode::Constants,
        FixArg::Penalty => FixMode::Penalty,
    };
    let built = match form {
        Form::Full => build_full(mip, p, &weights).map(Built::Qubo),
        Form::Reduced => build_reduced(mip, p, &weights).map(Built::Qubo),
        Form::Decomp(sel) => {
            let c = resolve_class(sel, mip, p).usage()?;
            build_decomposed(mip, p, c, &weights, fix).map(Built::Qubo)
        }
        Form::PlusFull => build_quboplus_full(mip, p, &weights).map(Built::Plus),
        Form::PlusReduced => build_quboplus_reduced(mip, p, &weights).map(Built::Plus),
        Form::PlusDecomp(sel) => {
            let c = resolve_class(sel, mip, p).usage()?;
            build_quboplus_decomposed(mip, p, c, &weights).map(Built::Plus)
        }
    };
    built.failed()
}

fn check_weights(w: &WeightArgs) -> CmdResult {
    w.weights().validate().usage()?;
    if !(w.penalty.is_finite() && w.penalty > 0.0) {
        return Err(Failure::Usage(anyhow!("--penalty must be positive")));
    }
    Ok(())
}

fn build(g: &Global, mps: &Path, form: &str, w: &WeightArgs) -> CmdResult {
    let form = parse_form(form).usage()?;
    check_weights(w)?;
    let (mip, p) = load(g, mps)?;
    let text = match build_form(&form, &mip, &p, w)? {
        Built::Qubo(model) => write_qubo(&model),
        Built::Plus(plus) => quboplus_to_json(&plus),
    };
    emit(g.out.as_deref(), text.as_bytes())
}

fn detect(g: &Global, mps: &Path, form: &str, config: &DetectConfig, max_q: Option<usize>, w: &WeightArgs) -> CmdResult {
    let form = parse_form(form).usage()?;
    check_weights(w)?;
    let (mip, p) = load(g, mps)?;
    let size = predicted_size(&form, &mip, &p, w).usage()?;
    if let Some(limit) = max_q.filter(|&l| size > l) {
        return Err(Failure::Instances(anyhow!("{}: model has {size} variables, over --max-q {limit}", mps.display())));
    }
    let model = match build_form(&form, &mip, &p, w)? {
        Built::Qubo(model) => model,
        Built::Plus(plus) => quboplus_to_qubo(&plus, w.penalty).failed()?,
    };
    let report = detect_symmetries(&mip, &p, &model, config).failed()?;
    emit(g.out.as_deref(), &json_bytes(&report).usage()?)
}

fn estimate(g: &Global, q: Option<usize>, mps: Option<&Path>) -> CmdResult {
    let mut rows: Vec<(&str, usize)> = Vec::new();
    match (q, mps) {
        (Some(q), _) => rows.push(("given", q)),
        (None, Some(path)) => {
            let (mip, p) = load(g, path)?;
            let n = mip.n();
            if n == 0 {
                return Err(Failure::Instances(anyhow!("{}: instance has no variables", path.display())));
            }
            let (c, _) = p.max_decomp_class().failed()?;
            rows.push(("full", n * n + mip.m() * mip.m()));
            rows.push(("reduced", p.nu() + p.mu()));
            rows.push(("maxdecomp", p.decomposed_size(c).failed()?));
        }
        (None, None) => return Err(Failure::Usage(anyhow!("give --q or --mps"))),
    }
    let estimates: Vec<(&str, ZephyrEstimate)> =
        rows.into_iter().map(|(form, q)| zephyr_estimate(q).map(|e| (form, e))).collect::<Result<_>>().usage()?;
    let bytes = match g.format {
        OutputFormat::Csv => {
            let recs: Vec<Vec<String>> = estimates
                .iter()
                .map(|(form, e)| {
                    vec![form.to_string(), e.q.to_string(), e.g.to_string(), e.qubit_bound.to_string(), e.zephyr_total.to_string()]
                })
                .collect();
            csv_bytes(&["form", "q", "g", "qubit_bound", "zephyr_total"], &recs)
        }
        OutputFormat::Json => {
            let v: Vec<serde_json::Value> = estimates
                .iter()
                .map(|(form, e)| {
                    let mut v = serde_json::to_value(e).expect("serializable");
                    v["form"] = json!(form);
                    v
                })
                .collect();
            json_bytes(&v)
        }
    }
    .usage()?;
    emit(g.out.as_deref(), &bytes)
}

#[derive(Debug, Serialize)]
struct Fit {
    fit: &'static str,
    value: Option<f64>,
    points: usize,
    note: String,
}

fn fit_row(fit: &'static str, points: &[(f64, f64)], f: fn(&[(f64, f64)]) -> Result<f64>) -> Fit {
    match f(points) {
        Ok(v) => Fit { fit, value: Some(v), points: points.len(), note: String::new() },
        Err(e) => Fit { fit, value: None, points: points.len(), note: e.to_string() },
    }
}

fn regress(g: &Global, stats: &Path) -> CmdResult {
    let text = read_text(stats).usage()?;
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers().context("reading CSV header").usage()?.clone();
    let col: HashMap<&str, usize> = headers.iter().enumerate().map(|(i, h)| (h, i)).collect();
    for needed in ["n", "m", "nu", "mu"] {
        if !col.contains_key(needed) {
            return Err(Failure::Usage(anyhow!("{}: missing column `{needed}`", stats.display())));
        }
    }
    let qubits_col = if col.contains_key("qubits") { "qubits" } else { "qubit_bound" };
    let num = |rec: &csv::StringRecord, name: &str| -> Option<f64> {
        col.get(name).and_then(|&i| rec.get(i)).and_then(|s| s.trim().parse::<f64>().ok())
    };
    let (mut nu_pts, mut mu_pts, mut q_pts) = (Vec::new(), Vec::new(), Vec::new());
    let mut usable = 0;
    for rec in reader.records() {
        let rec = rec.context("reading CSV row").usage()?;
        if col.get("error").and_then(|&i| rec.get(i)).is_some_and(|e| !e.is_empty()) {
            continue;
        }
        let (Some(n), Some(m), Some(nu), Some(mu)) = (num(&rec, "n"), num(&rec, "m"), num(&rec, "nu"), num(&rec, "mu")) else {
            continue;
        };
        usable += 1;
        if n > 0.0 && nu > 0.0 {
            nu_pts.push((n, nu));
        }
        if m > 0.0 && mu > 0.0 {
            mu_pts.push((m, mu));
        }
        if let (Some(t), Some(q)) = (num(&rec, "n_terms_reduced"), num(&rec, qubits_col)) {
            q_pts.push((t, q));
        }
    }
    if usable < 2 {
        return Err(Failure::Instances(anyhow!("{}: need at least 2 usable rows, found {usable}", stats.display())));
    }
    let qubit_fit = if qubits_col == "qubits" { "qubits_vs_terms" } else { "qubit_bound_vs_terms" };
    let fits = [
        fit_row("nu_vs_n", &nu_pts, power_fit),
        fit_row("mu_vs_m", &mu_pts, power_fit),
        fit_row(qubit_fit, &q_pts, linear_fit_zero_intercept),
    ];
    let bytes = match g.format {
        OutputFormat::Csv => {
            let recs: Vec<Vec<String>> = fits
                .iter()
                .map(|f| vec![f.fit.to_string(), f.value.map(sig6).unwrap_or_default(), f.points.to_string(), f.note.clone()])
                .collect();
            csv_bytes(&["fit", "value", "points", "note"], &recs)
        }
        OutputFormat::Json => json_bytes(&fits),
    }
    .usage()?;
    emit(g.out.as_deref(), &bytes)
}
