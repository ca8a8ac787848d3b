//! The `coincidence` command line.
//!
//! Exit codes: 0 success, 1 inequality violations found, 2 usage, parameter
//! or domain error, 3 backend consistency or identity failure.

pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coincidence::{chebyshev_gauss_rule, evaluate, ic_closed, EvalRequest, Integrand, Method};
use crate::entropy::{EntropyPoint, LogBase};
use crate::error::Error;
use crate::grid::linspace;
use crate::identities::check_identities;
use crate::inequality_lab::{all_ids, verify_grid};
use crate::pmf::{Family, FamilySpec};
use output::{to_csv, CsvRow, EntropyRow, IdentityRow, Output, QuadRow, Sig17, VerifyRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "coincidence", version, about = "Indices of coincidence, entropies and inequality checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate S, Rényi and Tsallis entropies at one point.
    Eval(EvalArgs),
    /// Tabulate a profile over an x-grid.
    Table(TableArgs),
    /// Check inequality catalog entries over a grid.
    Verify(VerifyArgs),
    /// Check the exact relations between families.
    Identities(IdentitiesArgs),
    /// Quadrature convergence for a list of node counts.
    QuadStudy(QuadArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    /// binomial, poisson, negbinomial, bbh, mkz or general
    #[arg(long)]
    family: Family,
    #[arg(long, allow_negative_numbers = true)]
    n: f64,
    /// Family parameter; general family only.
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec, Error> {
        FamilySpec::new(self.family, self.n, self.c)
    }
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, allow_negative_numbers = true)]
    x: f64,
    /// auto, direct, closed, recurrence, quadrature or legendre
    #[arg(long, default_value = "auto")]
    method: Method,
    /// Base of the Rényi logarithm: e or 2.
    #[arg(long, default_value = "e")]
    log_base: LogBase,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// start:stop:count, endpoints included.
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    #[arg(long, default_value = "auto")]
    method: Method,
    #[arg(long, default_value = "e")]
    log_base: LogBase,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Comma-separated catalog ids, or `all`.
    #[arg(long, default_value = "all")]
    ids: String,
    #[arg(long, default_value_t = 40)]
    n_max: u64,
    #[arg(long, default_value_t = 99)]
    x_points: usize,
    #[arg(long, default_value_t = 1e-12)]
    tolerance: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct IdentitiesArgs {
    #[arg(long, default_value_t = 20)]
    n_max: u64,
    #[arg(long, default_value_t = 49)]
    x_points: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct QuadArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    x: f64,
    /// Comma-separated node counts.
    #[arg(long, value_delimiter = ',', required = true)]
    m_list: Vec<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointEcho {
    pub name: String,
    pub family: String,
    pub n: Sig17,
    pub c: Option<Sig17>,
    pub x: Sig17,
    pub method: String,
    pub log_base: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableEcho {
    pub name: String,
    pub family: String,
    pub n: Sig17,
    pub c: Option<Sig17>,
    pub grid: String,
    pub method: String,
    pub log_base: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyEcho {
    pub name: String,
    pub ids: Vec<String>,
    pub n_max: u64,
    pub x_points: usize,
    pub tolerance: Sig17,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentitiesEcho {
    pub name: String,
    pub n_max: u64,
    pub x_points: usize,
    pub tolerance: Sig17,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadEcho {
    pub name: String,
    pub family: String,
    pub n: Sig17,
    pub c: Option<Sig17>,
    pub x: Sig17,
    pub reference: Sig17,
    /// `closed` or `largest_m`.
    pub reference_kind: String,
}

/// What a command produced: text for standard output and an exit code.
struct Emission {
    text: String,
    code: i32,
}

fn emit<E: Serialize, R: Serialize + CsvRow>(format: Format, echo: E, rows: Vec<R>, code: i32) -> Emission {
    let text = match format {
        Format::Json => Output::new(echo, rows).to_json(),
        Format::Csv => to_csv(&rows),
    };
    Emission { text, code }
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err.root() {
        Error::Domain { .. } | Error::Parameter(_) | Error::Unsupported(_) | Error::UnknownId(_) => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    }
}

fn entropy_row(spec: &FamilySpec, x: f64, method: Method, s: f64, err: f64, base: LogBase) -> Result<EntropyRow, Error> {
    let p = EntropyPoint::from_s(x, s)?;
    Ok(EntropyRow {
        family: spec.family().name().to_string(),
        n: spec.order().into(),
        c: spec.c().map(Sig17),
        x: x.into(),
        method: method.name().to_string(),
        s: s.into(),
        renyi: base.from_nats(p.renyi).into(),
        tsallis: p.tsallis.into(),
        err_estimate: err.into(),
    })
}

fn point_row(spec: &FamilySpec, x: f64, method: Method, base: LogBase) -> Result<EntropyRow, Error> {
    let v = evaluate(&EvalRequest::new(*spec, x, method))?;
    entropy_row(spec, x, v.method, v.value, v.err_estimate, base)
}

fn cmd_eval(a: &EvalArgs) -> Result<Emission, Error> {
    let spec = a.family.spec()?;
    let row = point_row(&spec, a.x, a.method, a.log_base)?;
    let echo = PointEcho {
        name: "eval".into(),
        family: spec.family().name().into(),
        n: spec.order().into(),
        c: spec.c().map(Sig17),
        x: a.x.into(),
        method: a.method.name().into(),
        log_base: a.log_base.to_string(),
    };
    Ok(emit(a.format, echo, vec![row], EXIT_OK))
}

fn parse_grid(s: &str) -> Result<Vec<f64>, Error> {
    let bad = || Error::Parameter(format!("grid must be start:stop:count, got `{s}`"));
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(bad());
    };
    let start: f64 = start.trim().parse().map_err(|_| bad())?;
    let stop: f64 = stop.trim().parse().map_err(|_| bad())?;
    let count: usize = count.trim().parse().map_err(|_| bad())?;
    if count == 0 || !start.is_finite() || !stop.is_finite() {
        return Err(bad());
    }
    Ok(linspace(start, stop, count))
}

fn cmd_table(a: &TableArgs) -> Result<Emission, Error> {
    let spec = a.family.spec()?;
    let grid = parse_grid(&a.grid)?;
    for (index, &x) in grid.iter().enumerate() {
        spec.check_x(x).map_err(|e| Error::AtGridPoint {
            index,
            x,
            source: Box::new(e),
        })?;
    }
    let rows = grid
        .par_iter()
        .enumerate()
        .map(|(index, &x)| {
            point_row(&spec, x, a.method, a.log_base).map_err(|e| Error::AtGridPoint {
                index,
                x,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let echo = TableEcho {
        name: "table".into(),
        family: spec.family().name().into(),
        n: spec.order().into(),
        c: spec.c().map(Sig17),
        grid: a.grid.clone(),
        method: a.method.name().into(),
        log_base: a.log_base.to_string(),
    };
    Ok(emit(a.format, echo, rows, EXIT_OK))
}

fn cmd_verify(a: &VerifyArgs) -> Result<Emission, Error> {
    let ids: Vec<&str> = if a.ids.trim() == "all" {
        all_ids()
    } else {
        a.ids.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
    };
    let reports = verify_grid(&ids, a.n_max, a.x_points, a.tolerance)?;
    let violated = reports.iter().any(|r| !r.violations.is_empty());
    let rows = reports
        .iter()
        .map(|r| VerifyRow {
            id: r.id.clone(),
            kind: crate::inequality_lab::descriptor(&r.id)
                .map(|d| d.statement_kind.name().to_string())
                .unwrap_or_default(),
            points: r.points.len(),
            min_margin: r.min_margin.into(),
            violations: r.violations.len(),
        })
        .collect();
    let echo = VerifyEcho {
        name: "verify".into(),
        ids: reports.iter().map(|r| r.id.clone()).collect(),
        n_max: a.n_max,
        x_points: a.x_points,
        tolerance: a.tolerance.into(),
    };
    let code = if violated { EXIT_VIOLATIONS } else { EXIT_OK };
    Ok(emit(a.format, echo, rows, code))
}

fn cmd_identities(a: &IdentitiesArgs) -> Result<Emission, Error> {
    let reports = check_identities(a.n_max, a.x_points)?;
    let ok = reports.iter().all(|r| r.passed());
    let rows = reports
        .iter()
        .map(|r| IdentityRow {
            id: r.id.to_string(),
            points: r.points,
            max_rel_deviation: r.max_rel_deviation.into(),
            passed: r.passed(),
        })
        .collect();
    let echo = IdentitiesEcho {
        name: "identities".into(),
        n_max: a.n_max,
        x_points: a.x_points,
        tolerance: crate::identities::IDENTITY_TOL.into(),
    };
    Ok(emit(a.format, echo, rows, if ok { EXIT_OK } else { EXIT_INTERNAL }))
}

fn cmd_quad_study(a: &QuadArgs) -> Result<Emission, Error> {
    let spec = a.family.spec()?;
    spec.check_x(a.x)?;
    let integrand = Integrand::for_family(&spec, a.x)?;
    if a.m_list.contains(&0) {
        return Err(Error::Parameter("node counts must be positive".into()));
    }
    let values: Vec<(usize, f64)> = a
        .m_list
        .iter()
        .map(|&m| (m, integrand.integrate(&chebyshev_gauss_rule(m))))
        .collect();
    let (reference, kind) = match ic_closed(&spec, a.x) {
        Ok(v) => (v.value, "closed"),
        Err(_) => {
            let &(_, v) = values.iter().max_by_key(|(m, _)| *m).expect("m-list is non-empty");
            (v, "largest_m")
        }
    };
    let rows = values
        .iter()
        .map(|&(m, v)| QuadRow {
            m,
            value: v.into(),
            abs_error: (v - reference).abs().into(),
        })
        .collect();
    let echo = QuadEcho {
        name: "quad-study".into(),
        family: spec.family().name().into(),
        n: spec.order().into(),
        c: spec.c().map(Sig17),
        x: a.x.into(),
        reference: reference.into(),
        reference_kind: kind.into(),
    };
    Ok(emit(a.format, echo, rows, EXIT_OK))
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Table(a) => cmd_table(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Identities(a) => cmd_identities(a),
        Command::QuadStudy(a) => cmd_quad_study(a),
    };
    match result {
        Ok(em) => {
            if let Err(e) = stdout.write_all(em.text.as_bytes()).and_then(|_| stdout.flush()) {
                let _ = writeln!(stderr, "error: writing output: {e}");
                return EXIT_INTERNAL;
            }
            em.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("coincidence").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("a:1:2").is_err());
    }

    #[test]
    fn eval_closed() {
        let (code, out, _) = call(&["eval", "--family", "binomial", "--n", "2", "--x", "0.25", "--method", "closed"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"s\": 4.6093750000000000e-1"), "{out}");
    }

    #[test]
    fn parameter_errors_exit_two() {
        let (code, _, err) = call(&["eval", "--family", "general", "--c", "-2", "--n", "3", "--x", "0.1"]);
        assert_eq!(code, 2);
        assert_eq!(err.lines().count(), 1);
        let (code, _, _) = call(&["eval", "--family", "nosuch", "--n", "3", "--x", "0.1"]);
        assert_eq!(code, 2);
    }
}
