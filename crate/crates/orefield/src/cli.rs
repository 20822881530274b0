//! Argument parsing and command dispatch.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use orefield_core::skewfrac::center_basis;
use orefield_core::{catalog, GroundField, TwistedSeries, MAX_CENTER_DEGREE};
use serde_json::json;

use crate::checks::{self, Settings};
use crate::expr::{self, Context, EvalError, ExprError, Value};
use crate::report::Report;
use crate::scenario::{self, Loaded};
use crate::{CliError, EXIT_CHECK_FAILED, EXIT_OK};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "orefield", version, about = "Exact twisted rational functions, scalar extensions and towers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Scenario file (TOML).
    #[arg(long, global = true, value_name = "FILE", conflicts_with = "catalog")]
    pub scenario: Option<PathBuf>,
    /// Built-in scenario or tower, see `orefield catalog`.
    #[arg(long, global = true, value_name = "NAME")]
    pub catalog: Option<String>,
    /// Ground field when no scenario is given: q, qi (Q(i) with conjugation) or hq (Hamilton quaternions).
    #[arg(long, global = true, default_value = "qi")]
    pub field: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Series precision: default 64 for expressions, 48 for checks.
    #[arg(long, global = true)]
    pub precision: Option<i64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Degree bound: center search (default 8) or coordinates of random
    /// elements to invert (default 4, or 0 for extensions of degree 4 and more).
    #[arg(long = "max-deg", global = true)]
    pub max_deg: Option<usize>,
    /// Random elements inverted per extension (default 200, or 4 for degree 4 and more).
    #[arg(long, global = true)]
    pub samples: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an expression and print its canonical form.
    Eval { expr: String },
    /// Right division f = q·g + r.
    Divmod { f: String, g: String },
    /// Inverse of a fraction, series or extension element.
    Invert { expr: String },
    /// Basis of the center of H[t, σ] up to --max-deg.
    Center,
    /// Checks of one extension scenario.
    Extend,
    /// Compatibility, ledger and functoriality checks of a tower.
    Tower,
    /// Every check of a scenario or tower, including each tower level.
    Verify,
    /// List the built-in scenarios and towers.
    Catalog,
    /// Print a built-in entry as an annotated scenario file.
    Export { name: String },
}

pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

fn ok(stdout: String) -> Outcome {
    Outcome { stdout, code: EXIT_OK }
}

fn named_field(name: &str) -> Result<GroundField, CliError> {
    match name {
        "q" | "rationals" => Ok(GroundField::rationals()),
        "qi" | "gaussian" => Ok(GroundField::gaussian_conjugation()),
        "hq" | "hamilton" => Ok(GroundField::hamilton()),
        _ => Err(CliError::validation(format!("unknown field '{name}', expected q, qi or hq"))),
    }
}

/// The scenario named on the command line, with the checks its file requests.
fn subject(cli: &Cli) -> Result<Option<(Loaded, Vec<String>)>, CliError> {
    if let Some(path) = &cli.scenario {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
        let file = scenario::parse_file(&text)?;
        let loaded = scenario::load(&file)?;
        return Ok(Some((loaded, file.checks)));
    }
    if let Some(name) = &cli.catalog {
        let loaded = if catalog::TOWERS.contains(&name.as_str()) {
            Loaded::Tower(catalog::tower_scenario(name).map_err(|e| CliError::validation(e.to_string()))?)
        } else {
            Loaded::Extension(catalog::extension(name).map_err(|e| CliError::validation(e.to_string()))?)
        };
        return Ok(Some((loaded, Vec::new())));
    }
    Ok(None)
}

fn context(cli: &Cli, default_precision: i64) -> Result<Context, CliError> {
    let mut ctx = match subject(cli)? {
        Some((loaded, _)) => Context::with_scenario(loaded.top().clone()),
        None => Context::new(named_field(&cli.field)?),
    };
    ctx.precision = cli.precision.unwrap_or(default_precision);
    Ok(ctx)
}

fn expr_error(e: ExprError) -> CliError {
    match e {
        ExprError::Syntax(e) => CliError::parse(e.to_string()),
        ExprError::Eval(e @ EvalError::Unknown { .. }) => CliError::parse(e.to_string()),
        ExprError::Eval(e) => CliError::validation(e.to_string()),
    }
}

fn settings(cli: &Cli, requested: &[String]) -> Settings {
    let d = Settings::default();
    Settings {
        seed: cli.seed,
        samples: cli.samples,
        series_samples: d.series_samples,
        max_deg: cli.max_deg,
        precision: cli.precision.unwrap_or(d.precision),
        only: requested.to_vec(),
    }
}

fn emit(cli: &Cli, mut report: Report, requested: &[String]) -> Result<Outcome, CliError> {
    let unmatched = report.restrict(requested);
    if !unmatched.is_empty() {
        return Err(CliError::validation(format!("unknown checks requested: {}", unmatched.join(", "))));
    }
    let stdout = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    let code = if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok(Outcome { stdout, code })
}

fn required_subject(cli: &Cli, command: &str) -> Result<(Loaded, Vec<String>), CliError> {
    subject(cli)?.ok_or_else(|| CliError::validation(format!("{command} needs --scenario FILE or --catalog NAME")))
}

fn json_line(value: serde_json::Value) -> String {
    serde_json::to_string_pretty(&value).expect("plain data serializes") + "\n"
}

fn eval(cli: &Cli, text: &str) -> Result<Outcome, CliError> {
    let ctx = context(cli, orefield_core::DEFAULT_PRECISION)?;
    let v = expr::evaluate(text, &ctx).map_err(expr_error)?;
    Ok(ok(match cli.format {
        Format::Text => format!("{v}\n"),
        Format::Json => json_line(json!({ "input": text, "kind": v.kind(), "value": v.to_string() })),
    }))
}

fn polynomial(text: &str, ctx: &Context) -> Result<orefield_core::SkewPolynomial, CliError> {
    match expr::evaluate(text, ctx).map_err(expr_error)? {
        Value::Poly(p) => Ok(p),
        v => Err(CliError::validation(format!("'{text}' is a {}, not a polynomial", v.kind()))),
    }
}

fn divmod(cli: &Cli, f: &str, g: &str) -> Result<Outcome, CliError> {
    let ctx = context(cli, orefield_core::DEFAULT_PRECISION)?;
    let (f, g) = (polynomial(f, &ctx)?, polynomial(g, &ctx)?);
    let (q, r, identity) = checks::divmod_checked(&f, &g).map_err(|e| CliError::validation(e.to_string()))?;
    let stdout = match cli.format {
        Format::Text => format!("q = {q}\nr = {r}\n"),
        Format::Json => json_line(json!({
            "f": f.to_string(), "g": g.to_string(), "q": q.to_string(), "r": r.to_string(), "identity": identity,
        })),
    };
    Ok(Outcome {
        stdout,
        code: if identity { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}

fn invert(cli: &Cli, text: &str) -> Result<Outcome, CliError> {
    let ctx = context(cli, orefield_core::DEFAULT_PRECISION)?;
    let v = expr::evaluate(text, &ctx).map_err(expr_error)?;
    let math = |e: orefield_core::Error| CliError::validation(e.to_string());
    let (inverse, verified) = match &v {
        Value::Poly(_) | Value::Frac(_) => {
            let (y, ok) = checks::fraction_round_trip(&v.as_fraction().expect("exact value")).map_err(math)?;
            (y.to_string(), ok)
        }
        Value::Series(s) => {
            let y = s.inv().map_err(math)?;
            let prod = s.checked_mul(&y).map_err(math)?;
            let ok = prod.agrees_with(&TwistedSeries::one(s.field(), prod.precision()));
            (y.to_string(), ok)
        }
        Value::Tensor(a) => {
            let b = a.inv().map_err(math)?;
            let one = a.scenario().one();
            let ok = a.mul(&b).map_err(math)?.equals(&one) && b.mul(a).map_err(math)?.equals(&one);
            (b.to_string(), ok)
        }
    };
    let stdout = match cli.format {
        Format::Text => format!("{inverse}\n"),
        Format::Json => json_line(json!({ "input": text, "inverse": inverse, "verified": verified })),
    };
    Ok(Outcome {
        stdout,
        code: if verified { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}

fn center(cli: &Cli) -> Result<Outcome, CliError> {
    let ctx = context(cli, orefield_core::DEFAULT_PRECISION)?;
    let max_deg = cli.max_deg.unwrap_or(MAX_CENTER_DEGREE);
    let basis = center_basis(&ctx.field, max_deg).map_err(|e| CliError::validation(e.to_string()))?;
    let shown: Vec<String> = basis.iter().map(ToString::to_string).collect();
    Ok(ok(match cli.format {
        Format::Text => shown.iter().map(|b| format!("{b}\n")).collect(),
        Format::Json => json_line(json!({ "max-deg": max_deg, "basis": shown })),
    }))
}

fn listing(cli: &Cli) -> Outcome {
    let entries: Vec<(&str, &str)> = catalog::SCENARIOS
        .iter()
        .map(|n| (*n, "extension"))
        .chain(catalog::TOWERS.iter().map(|n| (*n, "tower")))
        .collect();
    ok(match cli.format {
        Format::Text => entries.iter().map(|(n, k)| format!("{n}\t{k}\n")).collect(),
        Format::Json => json_line(json!(entries
            .iter()
            .map(|(n, k)| json!({ "name": n, "kind": k }))
            .collect::<Vec<_>>())),
    })
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Eval { expr } => eval(cli, expr),
        Command::Divmod { f, g } => divmod(cli, f, g),
        Command::Invert { expr } => invert(cli, expr),
        Command::Center => center(cli),
        Command::Extend => match required_subject(cli, "extend")? {
            (Loaded::Extension(sc), requested) => {
                let report = Report::new("extend", sc.name(), cli.seed, checks::extension_checks(&sc, &settings(cli, &requested), ""));
                emit(cli, report, &requested)
            }
            (Loaded::Tower(t), _) => Err(CliError::validation(format!("{} is a tower; use tower or verify", t.name()))),
        },
        Command::Tower => match required_subject(cli, "tower")? {
            (Loaded::Tower(t), requested) => {
                let report = Report::new("tower", t.name(), cli.seed, checks::tower_checks(&t, &settings(cli, &requested), false));
                emit(cli, report, &requested)
            }
            (Loaded::Extension(sc), _) => Err(CliError::validation(format!("{} is not a tower", sc.name()))),
        },
        Command::Verify => {
            let (loaded, requested) = required_subject(cli, "verify")?;
            let s = settings(cli, &requested);
            let found = match &loaded {
                Loaded::Extension(sc) => checks::extension_checks(sc, &s, ""),
                Loaded::Tower(t) => checks::tower_checks(t, &s, true),
            };
            emit(cli, Report::new("verify", loaded.name(), cli.seed, found), &requested)
        }
        Command::Catalog => Ok(listing(cli)),
        Command::Export { name } => Ok(ok(scenario::render(&scenario::catalog_file(name)?))),
    }
}
