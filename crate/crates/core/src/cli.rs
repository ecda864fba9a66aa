//! Command-line front end.
//!
//! Exit-code contract: 0 when every applicable check passes (or is
//! not-applicable), 2 on any margin failure (with the counterexample dumped
//! to stderr), 1 on usage or runtime errors. That makes the binary usable as
//! a property-test oracle in CI. Output is byte-identical for identical
//! invocations and seeds.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::constants::ConstantTable;
use crate::error::Error;
use crate::inequal;
use crate::norms;
use crate::report::InequalityReport;
use crate::repr::{self, HarmonicFunction};
use crate::search::{self, FamilySpec, SearchTarget};
use crate::suite::{self, CheckParams, SuiteInput, Theorem};

#[derive(Parser, Debug)]
#[command(name = "disk-ineq", version, about = "Hardy/Bergman inequality toolkit for harmonic functions on the unit disk")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute a Hardy or Bergman norm of a function descriptor.
    Norm {
        #[arg(long, value_parser = ["hardy", "bergman"])]
        space: String,
        #[arg(long)]
        p: f64,
        /// Inline JSON descriptor, or a file path (optionally @-prefixed).
        #[arg(long)]
        func: String,
        #[arg(long, default_value_t = norms::DEFAULT_TOL)]
        tol: f64,
    },
    /// Dump the constant table for an exponent as JSON.
    Constants {
        #[arg(long)]
        p: f64,
    },
    /// Check one theorem on a function or on a seeded random suite.
    Verify {
        /// One of: isoper, carleman-exp, cp, c4, riesz, hed, newt, ipl,
        /// lemma-new, green, abx.
        #[arg(long)]
        thm: String,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 0.01)]
        eps: f64,
        /// Radius for the Green-identity check.
        #[arg(long, default_value_t = 0.8)]
        r: f64,
        /// Function descriptor; for ipl/abx the taylor_pair fields g and h
        /// are the two analytic functions.
        #[arg(long)]
        func: Option<String>,
        /// Suite mode; only "random" is supported and requires --seed.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 8)]
        degree: usize,
        #[arg(long, default_value_t = norms::DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV of Q(s) over the 720-point s-grid.
    Qsurface {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sharpness sweep of the f_a family: CSV curve plus extrapolated limit.
    SweepFa {
        #[arg(long)]
        p: f64,
        /// Comma-separated a values; defaults to 0.9,0.99,0.999.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// CSV destination; with --out set, the JSON summary goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extremal ratio search over the trig-polynomial family.
    Search {
        /// One of: cp, c4, riesz-upper, riesz-lower, newt.
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = search::DEFAULT_RESTARTS)]
        restarts: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Full invocation echo attached to machine-readable outputs.
#[derive(Debug, Clone, Default, Serialize)]
pub struct RunConfig {
    pub subcommand: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thm: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub space: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub func: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    config: &'a RunConfig,
    reports: &'a [InequalityReport],
    passes: usize,
    failures: usize,
    not_applicable: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    errors: Vec<String>,
}

/// Caps the rayon pool from `DISK_INEQ_THREADS` when set.
pub fn init_threads() {
    if let Ok(raw) = std::env::var("DISK_INEQ_THREADS") {
        if let Ok(threads) = raw.parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn main() -> i32 {
    init_threads();
    match Cli::try_parse() {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            code
        }
    }
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    1
}

fn runtime_error(e: &Error) -> i32 {
    eprintln!("error: {e}");
    1
}

fn emit(out: Option<&Path>, content: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, content),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            if !content.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn load_func_text(arg: &str) -> io::Result<String> {
    if let Some(path) = arg.strip_prefix('@') {
        fs::read_to_string(path)
    } else if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        fs::read_to_string(arg)
    }
}

fn parse_func(arg: &str) -> Result<HarmonicFunction, String> {
    let text = load_func_text(arg).map_err(|e| format!("cannot read function descriptor: {e}"))?;
    repr::parse_function(&text).map_err(|e| e.to_string())
}

/// Exit code from a report set: 2 on any failure, else 1 on errors, else 0.
pub fn exit_code(reports: &[InequalityReport], errors: &[String]) -> i32 {
    if reports.iter().any(|r| r.is_failure()) {
        2
    } else if !errors.is_empty() {
        1
    } else {
        0
    }
}

fn dump_counterexample(function_json: &str, report: &InequalityReport) {
    let function: serde_json::Value = serde_json::from_str(function_json)
        .unwrap_or_else(|_| serde_json::Value::String(function_json.to_string()));
    let payload = serde_json::json!({ "counterexample": { "function": function, "report": report } });
    eprintln!("{payload}");
}

fn needs_p(thm: Theorem) -> bool {
    matches!(
        thm,
        Theorem::Cp | Theorem::Riesz | Theorem::Hed | Theorem::Newt | Theorem::Ipl | Theorem::LemmaNew
    )
}

fn single_input_for(thm: Theorem, f: HarmonicFunction) -> Result<SuiteInput, String> {
    match thm {
        Theorem::Isoper | Theorem::CarlemanExp | Theorem::Cp | Theorem::C4 => {
            Ok(SuiteInput::Function(f))
        }
        Theorem::Riesz | Theorem::Hed | Theorem::Newt | Theorem::LemmaNew | Theorem::Green => f
            .as_holomorphic()
            .map(SuiteInput::Series)
            .ok_or_else(|| format!("--thm {} needs a holomorphic function", thm.name())),
        Theorem::Ipl | Theorem::Abx => match f {
            HarmonicFunction::TaylorPair { g, h } => Ok(SuiteInput::Pair(g, h)),
            _ => Err(format!(
                "--thm {} takes a taylor_pair whose g and h are the two analytic functions",
                thm.name()
            )),
        },
    }
}

pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Norm { space, p, func, tol } => {
            let f = match parse_func(&func) {
                Ok(f) => f,
                Err(e) => return usage_error(&e),
            };
            let res = if space == "hardy" {
                norms::hardy_norm(&f, p, tol)
            } else {
                norms::bergman_norm(&f, p, tol)
            };
            match res {
                Ok(norm) => {
                    let body = serde_json::to_string_pretty(&norm).expect("norm serializes");
                    emit(None, &body).ok();
                    0
                }
                Err(e) => runtime_error(&e),
            }
        }

        Command::Constants { p } => match ConstantTable::for_p(p) {
            Ok(table) => {
                let body = serde_json::to_string_pretty(&table).expect("table serializes");
                emit(None, &body).ok();
                0
            }
            Err(e) => runtime_error(&e),
        },

        Command::Verify {
            thm,
            p,
            eps,
            r,
            func,
            suite,
            count,
            seed,
            degree,
            tol,
            out,
        } => {
            let theorem = match Theorem::parse(&thm) {
                Some(t) => t,
                None => return usage_error(&format!("unknown theorem {thm:?}")),
            };
            if needs_p(theorem) && p.is_none() {
                return usage_error(&format!("--thm {} requires --p", theorem.name()));
            }
            let params = CheckParams {
                p: p.unwrap_or(3.0),
                eps,
                r,
                tol,
                seed: seed.unwrap_or(0),
            };
            let mut config = RunConfig {
                subcommand: "verify".into(),
                thm: Some(theorem.name().into()),
                p,
                eps: Some(eps),
                r: Some(r),
                tol,
                count: None,
                seed,
                degree: None,
                ..RunConfig::default()
            };

            let (reports, counterexamples, errors) = match (&func, &suite) {
                (Some(descriptor), None) => {
                    let f = match parse_func(descriptor) {
                        Ok(f) => f,
                        Err(e) => return usage_error(&e),
                    };
                    config.func = serde_json::from_str(&repr::function_to_json(&f)).ok();
                    let input = match single_input_for(theorem, f) {
                        Ok(i) => i,
                        Err(e) => return usage_error(&e),
                    };
                    match suite::run_check(theorem, &input, &params) {
                        Ok(reports) => {
                            let ces: Vec<(String, InequalityReport)> = reports
                                .iter()
                                .filter(|r| r.is_failure())
                                .map(|r| (input.to_json(), r.clone()))
                                .collect();
                            (reports, ces, Vec::new())
                        }
                        Err(e) => return runtime_error(&e),
                    }
                }
                (None, Some(mode)) => {
                    if mode != "random" {
                        return usage_error("only --suite random is supported");
                    }
                    let seed = match seed {
                        Some(s) => s,
                        None => return usage_error("randomized suites require --seed"),
                    };
                    config.suite = Some("random".into());
                    config.count = Some(count);
                    config.degree = Some(degree);
                    let run = suite::run_suite(theorem, count, seed, degree, &params);
                    (run.reports, run.counterexamples, run.errors)
                }
                _ => return usage_error("verify takes exactly one of --func or --suite random"),
            };

            let passes = reports
                .iter()
                .filter(|r| r.verdict == crate::report::Verdict::Pass)
                .count();
            let failures = reports.iter().filter(|r| r.is_failure()).count();
            let not_applicable = reports
                .iter()
                .filter(|r| r.verdict == crate::report::Verdict::NotApplicable)
                .count();
            let output = VerifyOutput {
                config: &config,
                reports: &reports,
                passes,
                failures,
                not_applicable,
                errors: errors.clone(),
            };
            let body = serde_json::to_string_pretty(&output).expect("verify output serializes");
            if emit(out.as_deref(), &body).is_err() {
                return 1;
            }
            for (function_json, report) in &counterexamples {
                dump_counterexample(function_json, report);
            }
            for e in &errors {
                eprintln!("error: {e}");
            }
            exit_code(&reports, &errors)
        }

        Command::Qsurface { p, r, eps, out } => {
            // Validate parameters once up front.
            if let Err(e) = inequal::q_value(0.0, r, eps, p) {
                return runtime_error(&e);
            }
            let mut csv = String::from("s,q\n");
            for k in 0..inequal::QREPORT_GRID {
                let s = 2.0 * std::f64::consts::PI * k as f64 / inequal::QREPORT_GRID as f64;
                let q = inequal::q_value(s, r, eps, p).expect("validated parameters");
                csv.push_str(&format!("{s:.17e},{q:.17e}\n"));
            }
            if emit(out.as_deref(), &csv).is_err() {
                return 1;
            }
            0
        }

        Command::SweepFa { p, grid, tol, out } => {
            let grid_values: Vec<f64> = match grid {
                Some(raw) => {
                    let parsed: Result<Vec<f64>, _> =
                        raw.split(',').map(|s| s.trim().parse::<f64>()).collect();
                    match parsed {
                        Ok(v) if !v.is_empty() => v,
                        _ => return usage_error("could not parse --grid as comma-separated reals"),
                    }
                }
                None => vec![0.9, 0.99, 0.999],
            };
            let curve = match search::sweep_fa(p, &grid_values, tol) {
                Ok(c) => c,
                Err(e) => return runtime_error(&e),
            };
            let mut csv = String::from("a,ratio,err_est\n");
            for pt in &curve.points {
                csv.push_str(&format!("{:.17e},{:.17e},{:.17e}\n", pt.a, pt.ratio, pt.err_est));
            }
            if emit(out.as_deref(), &csv).is_err() {
                return 1;
            }
            if out.is_some() {
                let config = RunConfig {
                    subcommand: "sweep-fa".into(),
                    p: Some(p),
                    tol,
                    grid: Some(grid_values),
                    ..RunConfig::default()
                };
                let summary = serde_json::json!({ "config": config, "curve": curve });
                let body =
                    serde_json::to_string_pretty(&summary).expect("sweep summary serializes");
                emit(None, &body).ok();
            }
            0
        }

        Command::Search {
            target,
            p,
            degree,
            seed,
            restarts,
            tol,
            out,
        } => {
            let target_kind = match SearchTarget::parse(&target) {
                Some(t) => t,
                None => return usage_error(&format!("unknown search target {target:?}")),
            };
            let spec = match FamilySpec::trig_poly(degree, p, target_kind) {
                Ok(s) => s,
                Err(e) => return runtime_error(&e),
            };
            let result = match search::extremal_search(&spec, seed, restarts, tol) {
                Ok(r) => r,
                Err(e) => return runtime_error(&e),
            };
            let config = RunConfig {
                subcommand: "search".into(),
                target: Some(target),
                p: Some(p),
                tol,
                seed: Some(seed),
                degree: Some(degree),
                restarts: Some(restarts),
                ..RunConfig::default()
            };
            let envelope = serde_json::json!({ "config": config, "result": result });
            let body = serde_json::to_string_pretty(&envelope).expect("search output serializes");
            if emit(out.as_deref(), &body).is_err() {
                return 1;
            }
            if !result.sound {
                if let Some(spec) = &result.counterexample {
                    let path = format!("counterexample-{}-{}.json", spec_tag(target_kind), seed);
                    let dump = serde_json::json!({ "function": spec, "result": result });
                    let _ = fs::write(&path, serde_json::to_string_pretty(&dump).unwrap());
                    eprintln!("counterexample: ratio {} exceeds bound {}; dumped to {path}", result.best_ratio, result.bound);
                }
                return 2;
            }
            0
        }
    }
}

fn spec_tag(target: SearchTarget) -> &'static str {
    match target {
        SearchTarget::Cp => "cp",
        SearchTarget::C4 => "c4",
        SearchTarget::RieszUpper => "riesz-upper",
        SearchTarget::RieszLower => "riesz-lower",
        SearchTarget::Newt => "newt",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Quadrature;

    fn report(margin: f64, hyp: bool) -> InequalityReport {
        InequalityReport::new(
            "t",
            0.0,
            margin,
            1.0,
            Quadrature {
                n: 16,
                m: 0,
                err_est: 1e-12,
            },
        )
        .with_hypothesis(hyp, "h")
    }

    #[test]
    fn exit_codes_follow_the_contract() {
        assert_eq!(exit_code(&[report(1.0, true)], &[]), 0);
        assert_eq!(exit_code(&[report(-1.0, true)], &[]), 2);
        // Failed hypothesis is not-applicable, never a failure.
        assert_eq!(exit_code(&[report(-1.0, false)], &[]), 0);
        assert_eq!(exit_code(&[report(1.0, true)], &["boom".into()]), 1);
        // Failures trump errors.
        assert_eq!(exit_code(&[report(-1.0, true)], &["boom".into()]), 2);
    }
}
