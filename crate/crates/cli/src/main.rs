//! `superalg`: list the registry, verify rows, run the property suites and dump algebras.
//!
//! Exit codes: 0 all expectations met, 1 verdict mismatch or failed property,
//! 2 bad row, parameters or names, 3 internal inconsistency.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use superalg::algebras::by_name;
use superalg::maxcheck::{
    markdown_table, parse_params, registry, run_suite, verify_row, MaximalityReport, Mode, RunOptions, Section,
};
use superalg::Error;

#[derive(Parser, Debug)]
#[command(name = "superalg", version, about = "Exact checks of maximal subalgebras of Lie superalgebras")]
struct Cli {
    /// Output format; `verify` and `dump` default to json, `list` and `suite` to md.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for `verify` over several rows.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
    /// Include wall time (`elapsed_ms`) in reports; reports are then no longer reproducible byte for byte.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Certify,
    Evidence,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Registry rows with their conditions and default parameters.
    List,
    /// Verify rows: a single id, a comma-separated list, or `all`.
    Verify {
        #[arg(long)]
        row: String,
        /// `k=v,...`, overriding the row defaults; only with a single row.
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Certify)]
        mode: ModeArg,
        /// Random trials in evidence mode (also used by the certify fallback).
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a property suite: signs, lemma241, reps, quantize or all.
    Suite {
        #[arg(long)]
        name: String,
    },
    /// JSON of a named algebra, e.g. `gl(2|1)`, `pe_lambda(3;1/2)`, `as`.
    Dump {
        #[arg(long)]
        algebra: String,
    },
}

const MISMATCH: u8 = 1;
const USER: u8 = 2;
const INTERNAL: u8 = 3;

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Admissibility(_) | Error::Parse(_) | Error::Unknown(_) => USER,
        _ => INTERNAL,
    }
}

struct Output {
    text: String,
    code: u8,
}

fn list(format: Format) -> Output {
    let rows = registry();
    let text = match format {
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "id": r.id,
                        "section": r.section.heading(),
                        "h": r.h,
                        "g": r.g,
                        "conditions": r.conditions,
                        "defaults": r.default_params(),
                        "expected": r.expected,
                        "note": r.note,
                    })
                })
                .collect();
            pretty(&Value::Array(v))
        }
        Format::Md => {
            let mut s = String::new();
            let mut current: Option<Section> = None;
            for r in &rows {
                if current != Some(r.section) {
                    if current.is_some() {
                        s.push('\n');
                    }
                    s.push_str(&format!("## {}\n\n", r.section.heading()));
                    current = Some(r.section);
                }
                s.push_str(&r.list_line());
                s.push('\n');
            }
            s
        }
    };
    Output { text, code: 0 }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn select_rows(spec: &str) -> Result<Vec<String>, Error> {
    let all = registry();
    if spec == "all" {
        return Ok(all.iter().map(|r| r.id.to_string()).collect());
    }
    let ids: Vec<String> = spec.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    for id in &ids {
        if !all.iter().any(|r| r.id == id) {
            return Err(Error::Unknown(format!("row {id}")));
        }
    }
    if ids.is_empty() {
        return Err(Error::Parse("no row given".into()));
    }
    Ok(ids)
}

fn verify(cli: &Cli, row: &str, params: &str, mode: ModeArg, trials: u64, seed: u64) -> Output {
    let format = cli.format.unwrap_or(Format::Json);
    let fail = |e: Error| Output { text: String::new(), code: report_error(None, &e) };
    let ids = match select_rows(row) {
        Ok(ids) => ids,
        Err(e) => return fail(e),
    };
    let params = match parse_params(params) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    if ids.len() > 1 && !params.is_empty() {
        return fail(Error::Parse("--params needs a single --row".into()));
    }
    let trials = trials as usize;
    let opts = RunOptions {
        mode: match mode {
            ModeArg::Certify => Mode::Certify,
            ModeArg::Evidence => Mode::Evidence { trials, seed },
        },
        fallback: (trials, seed),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs as usize).build() {
        Ok(p) => p,
        Err(e) => return fail(Error::Internal(e.to_string())),
    };
    let results: Vec<Result<MaximalityReport, Error>> =
        pool.install(|| ids.par_iter().map(|id| verify_row(id, &params, opts)).collect());

    let mut code = 0;
    let mut reports = Vec::new();
    for (id, r) in ids.iter().zip(results) {
        match r {
            Ok(rep) => {
                if !rep.matches_expected {
                    code = code.max(MISMATCH);
                }
                reports.push(rep);
            }
            Err(e) => code = code.max(report_error(Some(id), &e)),
        }
    }
    let text = match format {
        Format::Json if ids.len() == 1 => reports.first().map(|r| pretty(&r.to_json(cli.timing))).unwrap_or_default(),
        Format::Json => pretty(&Value::Array(reports.iter().map(|r| r.to_json(cli.timing)).collect())),
        Format::Md => markdown_table(&reports),
    };
    if cli.out.is_some() {
        for r in &reports {
            println!("{}", r.summary_line());
        }
    }
    Output { text, code }
}

fn report_error(row: Option<&str>, e: &Error) -> u8 {
    let code = error_code(e);
    let kind = if matches!(e, Error::Admissibility(_)) { "AdmissibilityError" } else { "error" };
    match row {
        Some(r) => eprintln!("{r}: {kind}: {e}"),
        None => eprintln!("{kind}: {e}"),
    }
    code
}

fn suite(cli: &Cli, name: &str) -> Output {
    let checks = match run_suite(name) {
        Ok(c) => c,
        Err(e) => return Output { text: String::new(), code: report_error(None, &e) },
    };
    let passed = checks.iter().all(|c| c.passed);
    let text = match cli.format.unwrap_or(Format::Md) {
        Format::Json => pretty(&json!({"suite": name, "passed": passed, "checks": checks})),
        Format::Md => {
            let mut s: String = checks.iter().map(|c| format!("{}\n", c.line())).collect();
            let failed = checks.iter().filter(|c| !c.passed).count();
            s.push_str(&format!("{} checks, {failed} failed\n", checks.len()));
            s
        }
    };
    Output { text, code: if passed { 0 } else { MISMATCH } }
}

fn dump(cli: &Cli, name: &str) -> Output {
    match by_name(name) {
        Ok(a) => {
            let v = a.to_json();
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => pretty(&v),
                Format::Md => format!("```json\n{}```\n", pretty(&v)),
            };
            Output { text, code: 0 }
        }
        Err(e) => Output { text: String::new(), code: report_error(None, &e) },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.command {
        Command::List => list(cli.format.unwrap_or(Format::Md)),
        Command::Verify { row, params, mode, trials, seed } => verify(&cli, row, params, *mode, *trials, *seed),
        Command::Suite { name } => suite(&cli, name),
        Command::Dump { algebra } => dump(&cli, algebra),
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &out.text),
        None => std::io::stdout().write_all(out.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(INTERNAL);
    }
    ExitCode::from(out.code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_codes() {
        assert_eq!(error_code(&Error::Admissibility("n ≠ 3".into())), USER);
        assert_eq!(error_code(&Error::Unknown("X".into())), USER);
        assert_eq!(error_code(&Error::Internal("witness".into())), INTERNAL);
    }

    #[test]
    fn row_selection() {
        assert_eq!(select_rows("T1R1, T1R2").unwrap(), vec!["T1R1", "T1R2"]);
        assert!(matches!(select_rows("T9R9"), Err(Error::Unknown(_))));
        assert_eq!(select_rows("all").unwrap().len(), registry().len());
    }

    #[test]
    fn cli_parses() {
        Cli::try_parse_from(["superalg", "verify", "--row", "T1R1", "--mode", "evidence", "--trials", "5"]).unwrap();
        assert!(Cli::try_parse_from(["superalg", "verify", "--row", "T1R1", "--trials", "0"]).is_err());
    }
}
