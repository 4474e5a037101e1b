//! `qfock`: verify the correlation-function identities, emit exact series,
//! evaluate the correlators and theta functions, and list partitions.

mod complex;
mod suites;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use complex::{format_complex, parse_complex};
use num_complex::Complex64;
use qfock_core::correlators::{
    closed_form_onepoint, corrected_onepoint, euler_identity, max_length, normal_ordered_npoint,
    theta_logderiv_form, Convention,
};
use qfock_core::numeric::{b_function, eval_correlator, theta, BRoute, CorrelatorFn, EvalConfig};
use qfock_core::partitions::{count_table, enumerate, PartitionKind};
use qfock_core::ring::{Profile, Series};
use serde::Deserialize;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use suites::{run_suite, Suite, VerifyParams};

#[derive(Parser)]
#[command(
    name = "qfock",
    version,
    about = "Exact and numeric verification of correlation functions on twisted fermionic Fock spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an identity verification suite
    Verify(VerifyArgs),
    /// Emit an exact truncated series
    Series(SeriesArgs),
    /// Evaluate a correlator, theta function or B(q,t) at a point
    Eval(EvalArgs),
    /// List partitions or their counts
    Partitions(PartitionsArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run
    #[arg(long, value_enum)]
    suite: Suite,
    /// q-window of the exact checks (base grading variable)
    #[arg(long)]
    q_order: Option<u32>,
    /// Laurent band of the exact checks
    #[arg(long)]
    t_band: Option<u32>,
    /// z-window of the z-graded checks
    #[arg(long)]
    z_order: Option<u32>,
    /// Evaluation nome for numeric checks, as a+bi
    #[arg(long, value_parser = parse_complex)]
    q: Option<Complex64>,
    /// Evaluation points (repeatable) for the difference-equation checks
    #[arg(long = "t", value_parser = parse_complex)]
    ts: Vec<Complex64>,
    /// Residual tolerance override for numeric checks
    #[arg(long)]
    tol: Option<f64>,
    /// Partition-weight cap for numeric summation
    #[arg(long)]
    cutoff: Option<u32>,
    /// Annulus guard margin
    #[arg(long)]
    guard: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
    /// Write the report here instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
    /// JSON config file with the same keys; flags win
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Optional config-file counterpart of the verify flags.
#[derive(Default, Deserialize)]
struct VerifyConfigFile {
    q_order: Option<u32>,
    t_band: Option<u32>,
    z_order: Option<u32>,
    q: Option<String>,
    t: Option<Vec<String>>,
    tol: Option<f64>,
    cutoff: Option<u32>,
    guard: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SeriesTarget {
    Nr,
    Ns,
    RMinusConv,
    RPlusConv,
    SMinusConv,
    SPlusConv,
    RSuper,
    ClosedR,
    ClosedS,
    ThetaLogderivR,
    ThetaLogderivS,
    EulerLhs,
    EulerRhs,
}

#[derive(Args)]
struct SeriesArgs {
    /// Which series to build
    #[arg(long, value_enum)]
    target: SeriesTarget,
    #[arg(long, default_value_t = 10)]
    q_order: u32,
    /// Laurent band; defaults to the q-order
    #[arg(long)]
    t_band: Option<u32>,
    #[arg(long, default_value_t = 10)]
    z_order: u32,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EvalFunc {
    R,
    S,
    RMinus,
    Theta,
    B,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    func: EvalFunc,
    #[arg(long, value_parser = parse_complex)]
    q: Complex64,
    /// Evaluation point(s); repeat for n-point correlators
    #[arg(long = "t", value_parser = parse_complex, required = true)]
    ts: Vec<Complex64>,
    /// Theta index (0 or 1)
    #[arg(long, default_value_t = 0)]
    j: u8,
    /// Route for B(q,t)
    #[arg(long, value_enum, default_value = "theta")]
    route: EvalRoute,
    #[arg(long, default_value_t = 48)]
    cutoff: u32,
    #[arg(long, default_value_t = 1e-12)]
    tail_tol: f64,
    #[arg(long, default_value_t = 0.02)]
    guard: f64,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EvalRoute {
    Theta,
    Product,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Strict,
    OddStrict,
}

#[derive(Args)]
struct PartitionsArgs {
    #[arg(long, value_enum, default_value = "strict")]
    kind: KindArg,
    #[arg(long)]
    max_weight: u32,
    /// Print `weight,count` rows instead of the partitions themselves
    #[arg(long)]
    count: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Verify(args) => run_verify(args),
        Command::Series(args) => run_series(args).map(|()| ExitCode::SUCCESS),
        Command::Eval(args) => run_eval(args).map(|()| ExitCode::SUCCESS),
        Command::Partitions(args) => run_partitions(args).map(|()| ExitCode::SUCCESS),
    }
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, content)
            .with_context(|| format!("writing {}", path.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode> {
    let file: VerifyConfigFile = match &args.config {
        Some(path) => {
            let raw = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&raw).with_context(|| format!("parsing {}", path.display()))?
        }
        None => VerifyConfigFile::default(),
    };
    let defaults = VerifyParams::default();
    let file_q = file
        .q
        .as_deref()
        .map(|s| parse_complex(s).map_err(anyhow::Error::msg))
        .transpose()?;
    let file_ts = file
        .t
        .as_ref()
        .map(|v| {
            v.iter()
                .map(|s| parse_complex(s).map_err(anyhow::Error::msg))
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;

    let explicit_order = args.q_order.or(file.q_order);
    let q_order = explicit_order.unwrap_or(defaults.q_order);
    let params = VerifyParams {
        q_order,
        t_band: args.t_band.or(file.t_band).unwrap_or(q_order),
        z_order: args.z_order.or(file.z_order).unwrap_or(defaults.z_order),
        // the shifted checks default to a lighter window (their weight
        // cutoff is q-order + band) unless an order was given explicitly
        shift_order: explicit_order.unwrap_or(defaults.shift_order),
        q: args.q.or(file_q).unwrap_or(defaults.q),
        ts: if args.ts.is_empty() {
            file_ts.unwrap_or_default()
        } else {
            args.ts.clone()
        },
        tol: args.tol.or(file.tol),
        cutoff: args.cutoff.or(file.cutoff).unwrap_or(defaults.cutoff),
        guard: args.guard.or(file.guard).unwrap_or(defaults.guard),
    };

    let result = run_suite(args.suite, &params);
    let rendered = match args.format {
        OutputFormat::Json => serde_json::to_string_pretty(&result)? + "\n",
        _ => {
            // report lines only: byte-identical across identical invocations
            // of the exact suites; the timing summary goes to stderr
            let mut out = String::new();
            for check in &result.checks {
                out.push_str(&check.to_string());
                out.push('\n');
            }
            out
        }
    };
    emit(&args.output, &rendered)?;
    eprintln!(
        "suite {}: {} ({} checks, {} ms)",
        result.suite,
        if result.pass { "PASS" } else { "FAIL" },
        result.checks.len(),
        result.duration_ms
    );
    Ok(if result.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn build_series(args: &SeriesArgs) -> Result<Series> {
    use SeriesTarget::*;
    let n = args.q_order;
    let band = args.t_band.unwrap_or(n).max(n);
    let t_profile = Profile::univariate(n, "t", band);
    let series = match args.target {
        Nr => normal_ordered_npoint(PartitionKind::Strict, &t_profile)?,
        Ns => normal_ordered_npoint(PartitionKind::OddStrict, &t_profile)?,
        RMinusConv => corrected_onepoint(PartitionKind::Strict, Convention::Minus, &t_profile, false)?,
        RPlusConv => corrected_onepoint(PartitionKind::Strict, Convention::Plus, &t_profile, false)?,
        SMinusConv => corrected_onepoint(PartitionKind::OddStrict, Convention::Minus, &t_profile, false)?,
        SPlusConv => corrected_onepoint(PartitionKind::OddStrict, Convention::Plus, &t_profile, false)?,
        RSuper => {
            let zp = Profile::new(n, &[("t", band)], args.z_order.max(max_length(n)));
            corrected_onepoint(PartitionKind::Strict, Convention::Minus, &zp, true)?
        }
        ClosedR => closed_form_onepoint(PartitionKind::Strict, &t_profile)?,
        ClosedS => closed_form_onepoint(PartitionKind::OddStrict, &t_profile)?,
        ThetaLogderivR => theta_logderiv_form(PartitionKind::Strict, &t_profile)?,
        ThetaLogderivS => theta_logderiv_form(PartitionKind::OddStrict, &t_profile)?,
        EulerLhs | EulerRhs => {
            let zp = Profile::new(n, &[], args.z_order);
            let (lhs, rhs) = euler_identity(&zp)?;
            if args.target == EulerLhs {
                lhs
            } else {
                rhs
            }
        }
    };
    Ok(series)
}

fn run_series(args: SeriesArgs) -> Result<()> {
    let series = build_series(&args)?;
    let terms = series.canonical_terms();
    let rendered = match args.format {
        OutputFormat::Json => serde_json::to_string_pretty(&terms)? + "\n",
        OutputFormat::Csv => {
            let mut cols = vec!["q".to_string()];
            cols.extend(series.profile().vars().iter().map(|v| v.name.clone()));
            cols.push("z".to_string());
            let mut out = format!("{},num,den\n", cols.join(","));
            for term in &terms {
                let exps: Vec<String> = cols
                    .iter()
                    .map(|c| term.exponents.get(c).copied().unwrap_or(0).to_string())
                    .collect();
                out.push_str(&format!("{},{},{}\n", exps.join(","), term.num, term.den));
            }
            out
        }
        OutputFormat::Text => {
            let mut out = String::new();
            for (key, coeff) in series.terms() {
                out.push_str(&format!(
                    "{}\t{}\n",
                    key.display(series.profile()),
                    coeff
                ));
            }
            out
        }
    };
    emit(&args.output, &rendered)
}

fn run_eval(args: EvalArgs) -> Result<()> {
    let cfg = EvalConfig {
        weight_cutoff: args.cutoff,
        tail_tol: args.tail_tol,
        annulus_guard: args.guard,
    };
    let t0 = args.ts[0];
    let (value, cutoff, tail) = match args.func {
        EvalFunc::R | EvalFunc::S | EvalFunc::RMinus => {
            let func = match args.func {
                EvalFunc::R => CorrelatorFn::R,
                EvalFunc::S => CorrelatorFn::S,
                _ => CorrelatorFn::RMinus,
            };
            let out = eval_correlator(func, args.q, &args.ts, &cfg)?;
            (out.value, Some(out.cutoff_used), Some(out.tail_estimate))
        }
        EvalFunc::Theta => {
            if args.j > 1 {
                bail!("theta index must be 0 or 1");
            }
            (theta(args.j, args.q, t0, args.tail_tol)?, None, None)
        }
        EvalFunc::B => {
            let route = match args.route {
                EvalRoute::Theta => BRoute::Theta,
                EvalRoute::Product => BRoute::Product,
            };
            (
                b_function(args.q, t0, route, args.tail_tol, args.guard)?,
                None,
                None,
            )
        }
    };
    match args.format {
        OutputFormat::Json => {
            let payload = serde_json::json!({
                "func": format!("{:?}", args.func),
                "q": format_complex(args.q),
                "t": args.ts.iter().map(|t| format_complex(*t)).collect::<Vec<_>>(),
                "value": format_complex(value),
                "cutoff": cutoff,
                "tail_estimate": tail,
            });
            println!("{}", serde_json::to_string_pretty(&payload)?);
        }
        _ => {
            println!("{}", format_complex(value));
        }
    }
    Ok(())
}

fn run_partitions(args: PartitionsArgs) -> Result<()> {
    let kind = match args.kind {
        KindArg::Strict => PartitionKind::Strict,
        KindArg::OddStrict => PartitionKind::OddStrict,
    };
    let mut out = String::new();
    if args.count {
        for (n, c) in count_table(kind, args.max_weight).iter().enumerate() {
            out.push_str(&format!("{n},{c}\n"));
        }
    } else {
        for p in enumerate(kind, args.max_weight) {
            out.push_str(&p.to_string());
            out.push('\n');
        }
    }
    emit(&args.output, &out)
}
