//! Command-line entry point: count tables, series dumps, constants reports,
//! the verification battery, empirical fits, reconciliation and the
//! brute-force oracle.

use std::fs;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;

use chordal_core::asymptotics::{
    empirical_fit, reconcile_graph_theorem, reconcile_map_theorem, Scaling,
};
use chordal_core::graphs::{self, GraphFamily};
use chordal_core::maps::{self, MapFamily};
use chordal_core::oracle;
use chordal_core::singular::{subcriticality_report, theorem1_report, theorem2_report};
use chordal_core::verify;
use chordal_core::Result;

const DEFAULT_PRECISION: usize = 256;

#[derive(Parser)]
#[command(
    name = "chordal",
    about = "Exact enumeration and singularity analysis of chordal planar graphs and maps",
    version
)]
struct Cli {
    /// Float precision in bits for all numeric work
    /// (env CHORDAL_PRECISION_BITS overrides the default).
    #[arg(long, global = true)]
    precision: Option<usize>,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact counting tables for a family.
    Count(CountArgs),
    /// Dump the exact rational coefficients of a generating function.
    Series(SeriesArgs),
    /// The analytic constants of one of the two main theorems.
    Constants(ConstantsArgs),
    /// Run the full invariant battery; exits 1 on any failure.
    Verify(VerifyArgs),
    /// Fit singularity location, exponent and constant from exact coefficients.
    Fit(FitArgs),
    /// Compare analytic, empirical and printed leading constants.
    Reconcile(ConstantsArgs),
    /// Brute-force census over all labelled graphs on n vertices.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    /// All labelled chordal planar graphs (g_n).
    All,
    /// Connected chordal planar graphs (c_n).
    Connected,
    /// 2-connected chordal planar graphs (b_n).
    #[value(name = "2conn")]
    TwoConn,
    /// 3-connected chordal planar graphs, i.e. planar triangulations (t_n).
    #[value(name = "3conn")]
    ThreeConn,
    /// Unrooted planar triangulations by EGF pipeline (same counts as 3conn).
    Triangulations,
    /// Rooted simple chordal planar maps (M_n, by edges).
    Maps,
    /// Rooted 2-connected simple chordal planar maps (B_n, by edges).
    #[value(name = "2conn-maps")]
    TwoConnMaps,
    /// Ternary trees (the closed-form calibration family).
    Ternary,
    /// Networks (2-connected graphs rooted at an oriented virtual edge).
    Networks,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long, default_value_t = 20)]
    n_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Truncation order N (series dumped through z^N).
    #[arg(long, default_value_t = 64)]
    order: usize,
}

#[derive(Args)]
struct ConstantsArgs {
    #[arg(long)]
    theorem: u8,
    /// Truncation order for the empirical side of `reconcile`.
    #[arg(long, default_value_t = 200)]
    order: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Series truncation order for the exact-identity checks.
    #[arg(long, default_value_t = 64)]
    order: usize,
    /// Largest vertex count for the exhaustive census (max 6).
    #[arg(long, default_value_t = 6)]
    oracle_n: usize,
}

#[derive(Args)]
struct FitArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Number of exact coefficients to fit from.
    #[arg(long, default_value_t = 200)]
    order: usize,
}

#[derive(Args)]
struct OracleArgs {
    /// Vertex count (1..=6).
    #[arg(long)]
    n: usize,
}

fn precision(cli: &Cli) -> usize {
    cli.precision
        .or_else(|| {
            std::env::var("CHORDAL_PRECISION_BITS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_PRECISION)
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.output {
        Some(path) => {
            fs::write(path, text).map_err(|e| {
                chordal_core::Error::Domain(format!("cannot write {}: {e}", path.display()))
            })?;
        }
        None => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
        }
    }
    Ok(())
}

fn count_table(family: Family, n_max: usize) -> Result<chordal_core::graphs::CountTable> {
    match family {
        Family::All => graphs::count_table(GraphFamily::All, n_max),
        Family::Connected => graphs::count_table(GraphFamily::Connected, n_max),
        Family::TwoConn => graphs::count_table(GraphFamily::TwoConnected, n_max),
        Family::ThreeConn => graphs::count_table(GraphFamily::ThreeConnected, n_max),
        Family::Triangulations => graphs::count_table(GraphFamily::TriangulationsUnrooted, n_max),
        Family::Networks => graphs::count_table(GraphFamily::Networks, n_max),
        Family::Maps => maps::map_count_table(MapFamily::AllMaps, n_max),
        Family::TwoConnMaps => maps::map_count_table(MapFamily::TwoConnectedMaps, n_max),
        Family::Ternary => Err(chordal_core::Error::Domain(
            "ternary trees have no labelled count table; use `series`".into(),
        )),
    }
}

fn run_count(cli: &Cli, args: &CountArgs) -> Result<()> {
    let table = count_table(args.family, args.n_max)?;
    let text = match args.format {
        Format::Csv => {
            let mut s = String::from("n,count\n");
            for (n, v) in &table.rows {
                s.push_str(&format!("{n},{v}\n"));
            }
            s
        }
        Format::Json => {
            let rows: Vec<_> = table
                .rows
                .iter()
                .map(|(n, v)| json!({ "n": n, "count": v.to_string() }))
                .collect();
            let doc = json!({ "family": table.family, "rows": rows });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
    };
    emit(cli, &text)
}

fn family_series(family: Family, order: usize) -> Result<chordal_core::series::RatSeries> {
    match family {
        Family::Ternary => graphs::ternary_series(order),
        Family::Triangulations | Family::ThreeConn => graphs::unrooted_triangulation_series(order),
        Family::Networks => Ok(graphs::network_series_univariate(order)),
        Family::TwoConn => Ok(graphs::two_connected_series_closed(order)),
        Family::Connected => Ok(graphs::connected_series_univariate(order)),
        Family::All => graphs::all_graphs_series_univariate(order),
        Family::Maps => Ok(maps::all_maps_series(order)),
        Family::TwoConnMaps => Ok(maps::two_connected_maps_series(order)),
    }
}

fn run_series(cli: &Cli, args: &SeriesArgs) -> Result<()> {
    let s = family_series(args.family, args.order)?;
    let rows: Vec<_> = (0..=args.order)
        .map(|n| {
            let c = s.coeff(n);
            json!({
                "n": n,
                "numerator": c.numer().to_string(),
                "denominator": c.denom().to_string(),
            })
        })
        .collect();
    emit(cli, &format!("{}\n", serde_json::to_string_pretty(&rows).unwrap()))
}

fn run_constants(cli: &Cli, args: &ConstantsArgs) -> Result<()> {
    let prec = precision(cli);
    let report = match args.theorem {
        1 => theorem1_report(prec)?,
        2 => theorem2_report(prec)?,
        t => {
            return Err(chordal_core::Error::Domain(format!(
                "no theorem {t}; use 1 (graphs) or 2 (maps)"
            )))
        }
    };
    let sub = subcriticality_report(prec)?;
    let doc = json!({ "report": report, "subcriticality": sub });
    emit(cli, &format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))
}

fn run_verify(cli: &Cli, args: &VerifyArgs) -> Result<bool> {
    let prec = precision(cli);
    let outcomes = verify::run_battery(args.order, args.oracle_n, prec);
    let mut text = String::new();
    let mut ok = true;
    for o in &outcomes {
        ok &= o.passed;
        let status = if o.passed { "PASS" } else { "FAIL" };
        let order = o
            .first_failing_order
            .map(|n| format!(" (first failing order {n})"))
            .unwrap_or_default();
        text.push_str(&format!(
            "{status} {} / {}{}{}{}\n",
            o.module,
            o.invariant,
            if o.detail.is_empty() { "" } else { ": " },
            o.detail,
            order
        ));
    }
    text.push_str(if ok {
        "verify: all checks passed\n"
    } else {
        "verify: FAILED\n"
    });
    emit(cli, &text)?;
    Ok(ok)
}

fn run_fit(cli: &Cli, args: &FitArgs) -> Result<()> {
    let s = family_series(args.family, args.order)?;
    let scaling = match args.family {
        Family::Maps | Family::TwoConnMaps | Family::Ternary => Scaling::Ogf,
        _ => Scaling::Egf,
    };
    let coeffs: Vec<BigRational> = (0..=args.order).map(|n| s.coeff(n)).collect();
    let fit = empirical_fit(&coeffs, scaling)?;
    emit(cli, &format!("{}\n", serde_json::to_string_pretty(&fit).unwrap()))
}

fn run_reconcile(cli: &Cli, args: &ConstantsArgs) -> Result<()> {
    let prec = precision(cli);
    let reports = match args.theorem {
        1 => reconcile_graph_theorem(args.order, prec)?,
        2 => reconcile_map_theorem(args.order, prec)?,
        t => {
            return Err(chordal_core::Error::Domain(format!(
                "no theorem {t}; use 1 (graphs) or 2 (maps)"
            )))
        }
    };
    emit(cli, &format!("{}\n", serde_json::to_string_pretty(&reports).unwrap()))
}

fn run_oracle(cli: &Cli, args: &OracleArgs) -> Result<()> {
    let row = oracle::census(args.n)?;
    let doc = json!({
        "n": row.n,
        "all": row.all.to_string(),
        "connected": row.connected.to_string(),
        "two_connected": row.two_connected.to_string(),
        "triangulations": row.triangulations.to_string(),
    });
    emit(cli, &format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Count(args) => run_count(&cli, args).map(|_| true),
        Command::Series(args) => run_series(&cli, args).map(|_| true),
        Command::Constants(args) => run_constants(&cli, args).map(|_| true),
        Command::Verify(args) => run_verify(&cli, args),
        Command::Fit(args) => run_fit(&cli, args).map(|_| true),
        Command::Reconcile(args) => run_reconcile(&cli, args).map(|_| true),
        Command::Oracle(args) => run_oracle(&cli, args).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
