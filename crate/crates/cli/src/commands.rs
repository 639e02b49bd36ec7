use std::fs;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Value};
use ucplab_core::interference::corridor_sample;
use ucplab_core::suites::{
    corridor_configuration, default_tolerance, i3_suite, verify_all, CheckResult, SuiteConfig,
};
use ucplab_core::Descriptor;
use ucplab_finite::polytope::MAX_VERTICES;
use ucplab_finite::report::check_logic;
use ucplab_finite::search::{run_search, SearchConfig};
use ucplab_finite::FiniteLogic;

use crate::{CheckArgs, CorridorArgs, Format, ModelArgs, SearchArgs, TableArgs};

pub enum Failure {
    Usage(String),
    Run(String),
}

type Outcome = Result<bool, Failure>;

fn run_err(e: impl std::fmt::Display) -> Failure {
    Failure::Run(e.to_string())
}

/// Sizes the rayon pool from `UCPLAB_THREADS` when set.
pub fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("UCPLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("UCPLAB_THREADS must be a positive integer, got `{v}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Run(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(run_err),
    }
}

fn suite_config(a: &ModelArgs) -> Result<SuiteConfig, Failure> {
    let desc = Descriptor::new(a.algebra, a.dim).map_err(|e| Failure::Usage(e.to_string()))?;
    if a.trials == 0 {
        return Err(Failure::Usage("--trials must be at least 1".into()));
    }
    let tol = a.tol.unwrap_or_else(|| default_tolerance(desc));
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::Usage(format!("--tol must be positive, got {tol}")));
    }
    Ok(SuiteConfig::new(desc, a.trials, a.seed, tol))
}

fn config_echo(cfg: &SuiteConfig) -> Value {
    json!({
        "algebra": cfg.desc.level.symbol(),
        "dim": cfg.desc.n,
        "model": cfg.desc.to_string(),
        "trials": cfg.trials,
        "seed": cfg.seed,
        "tol": cfg.tol,
    })
}

fn header(command: &str, config: Value) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("tool".into(), json!("ucplab"));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("command".into(), json!(command));
    m.insert("config".into(), config);
    m
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn checks_csv(checks: &[CheckResult]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["name", "anchor", "model", "trials", "max_residual", "tolerance", "pass"])
        .map_err(run_err)?;
    for c in checks {
        w.write_record([
            c.name.clone(),
            c.anchor.clone(),
            c.model.clone(),
            c.trials.to_string(),
            format!("{:e}", c.max_residual),
            format!("{:e}", c.tolerance),
            c.pass.to_string(),
        ])
        .map_err(run_err)?;
    }
    String::from_utf8(w.into_inner().map_err(run_err)?).map_err(run_err)
}

fn checks_report(command: &str, cfg: &SuiteConfig, checks: &[CheckResult], extra: &[(&str, Value)], format: Format) -> Result<(String, bool), Failure> {
    let pass = checks.iter().all(|c| c.pass);
    let text = match format {
        Format::Csv => checks_csv(checks)?,
        Format::Json => {
            let mut m = header(command, config_echo(cfg));
            for (k, v) in extra {
                m.insert((*k).into(), v.clone());
            }
            m.insert("checks".into(), json!(checks));
            m.insert("pass".into(), json!(pass));
            pretty(&Value::Object(m))
        }
    };
    Ok((text, pass))
}

pub fn verify(a: &ModelArgs) -> Outcome {
    let cfg = suite_config(a)?;
    let checks = verify_all(&cfg).map_err(run_err)?;
    let (text, pass) = checks_report("verify", &cfg, &checks, &[], a.format)?;
    emit(a.out.as_deref(), &text)?;
    Ok(pass)
}

pub fn i3(a: &ModelArgs) -> Outcome {
    let cfg = suite_config(a)?;
    let checks = i3_suite(&cfg).map_err(run_err)?;
    let max_norm = json!(checks[0].max_residual);
    let (text, pass) = checks_report("i3", &cfg, &checks, &[("max_norm", max_norm)], a.format)?;
    emit(a.out.as_deref(), &text)?;
    Ok(pass)
}

pub fn corridor(a: &CorridorArgs) -> Outcome {
    let cfg = suite_config(&a.model)?;
    let slack = cfg.tol;
    let points = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| {
            let (mu, e, f) = corridor_configuration(cfg.desc, cfg.seed, t, a.classical)?;
            Ok(corridor_sample(&mu, &e, &f))
        })
        .collect::<ucplab_core::Result<Vec<_>>>()
        .map_err(run_err)?;
    let pass = points.iter().all(|p| p.lower_ok(slack) && p.upper_ok(slack));
    let model = cfg.desc.to_string();
    let text = match a.model.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["p", "q", "lower_ok", "upper_ok", "model", "seed", "trial"])
                .map_err(run_err)?;
            for (t, p) in points.iter().enumerate() {
                w.write_record([
                    p.p.to_string(),
                    p.q.to_string(),
                    p.lower_ok(slack).to_string(),
                    p.upper_ok(slack).to_string(),
                    model.clone(),
                    cfg.seed.to_string(),
                    t.to_string(),
                ])
                .map_err(run_err)?;
            }
            String::from_utf8(w.into_inner().map_err(run_err)?).map_err(run_err)?
        }
        Format::Json => {
            let mut echo = config_echo(&cfg);
            echo["classical"] = json!(a.classical);
            let mut m = header("corridor", echo);
            let rows: Vec<Value> = points
                .iter()
                .enumerate()
                .map(|(t, p)| {
                    json!({
                        "p": p.p,
                        "q": p.q,
                        "lower_ok": p.lower_ok(slack),
                        "upper_ok": p.upper_ok(slack),
                        "trial": t,
                    })
                })
                .collect();
            m.insert("anchor".into(), json!("2μ(f|e)μ(e) + 2μ(f|e′)μ(e′) − 1 ≤ μ(f) ≤ 2μ(f|e)μ(e) + 2μ(f|e′)μ(e′)"));
            m.insert("rows".into(), Value::Array(rows));
            m.insert("pass".into(), json!(pass));
            pretty(&Value::Object(m))
        }
    };
    emit(a.model.out.as_deref(), &text)?;
    Ok(pass)
}

pub fn search(a: &SearchArgs) -> Outcome {
    let cfg = SearchConfig {
        max_atoms: a.max_atoms,
        max_blocks: a.blocks,
        block_size_min: a.block_size_min,
        block_size_max: a.block_size_max,
        vertex_limit: MAX_VERTICES,
        out: a.out.clone(),
    };
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let (_, summary) = run_search(&cfg).map_err(run_err)?;
    print!("{}", summary.table());
    Ok(true)
}

pub fn check(a: &CheckArgs) -> Outcome {
    let text = fs::read_to_string(&a.file)
        .map_err(|e| Failure::Run(format!("{}: {e}", a.file.display())))?;
    let logic = FiniteLogic::parse(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", a.file.display())))?;
    let report = check_logic(&logic, MAX_VERTICES).map_err(run_err)?;
    let mut m = header("check", json!({ "file": a.file.display().to_string() }));
    if let Value::Object(r) = report.json {
        m.extend(r);
    }
    emit(a.out.as_deref(), &pretty(&Value::Object(m)))?;
    Ok(report.pass)
}

pub fn table(a: &TableArgs) -> Outcome {
    emit(a.out.as_deref(), &ucplab_core::scalar::octonion_table_csv())?;
    Ok(true)
}
