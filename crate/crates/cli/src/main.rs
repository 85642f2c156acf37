use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use tap_core::catalog::catalog;
use tap_core::finite::{
    dedupe_by_kernel, enumerate_homs, regular_of_hom, HomAssignmentJson, HomSearchOptions, Representation,
    RepresentationJson,
};
use tap_core::io::{parse_input, Input};
use tap_core::obstructions::{
    fiber_check, genus_degree_report, ribbon_screen, FiberOptions, FiberStatus, GenusInfo, RibbonOptions,
    RibbonVerdict,
};
use tap_core::twisted::{twisted_report, TwistedPolyReport};
use tap_core::{Budget, Error};

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 2;
const EXIT_CERTIFIED: u8 = 10;
const EXIT_BUDGET: u8 = 20;
const DEFAULT_BUDGET_SECS: f64 = 300.0;

/// Twisted Alexander polynomials and the fibering and ribbon concordance
/// obstructions they give.
#[derive(Parser)]
#[command(name = "tap", version)]
struct Cli {
    /// Single-line JSON output.
    #[arg(long, global = true)]
    compact: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classical Alexander polynomial (trivial representation).
    Alex { input: String },
    /// Twisted polynomials for every finite quotient of degree n.
    Twisted {
        input: String,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        /// Largest regular representation evaluated.
        #[arg(long, default_value_t = 120)]
        max_rep_dim: usize,
        /// Integer matrix representation file instead of the quotient search.
        #[arg(long)]
        rep: Option<String>,
        /// Seconds; defaults to TAP_BUDGET_SECS or 300.
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Search for a certificate that the class is not fibered.
    FiberCheck {
        input: String,
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
        #[arg(long)]
        budget: Option<f64>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = 120)]
        max_rep_dim: usize,
        /// Omit the per-representation reports from the log.
        #[arg(long)]
        summary: bool,
    },
    /// Screen a ribbon concordance upper >= lower.
    RibbonCheck {
        #[arg(long)]
        lower: String,
        #[arg(long)]
        upper: String,
        /// Mark the upper input as fibered (catalog entries carry this already).
        #[arg(long)]
        upper_fibered: bool,
        #[arg(long, default_value_t = 1)]
        max_degree: usize,
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Built-in knots and links.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AlexOutput {
    input: String,
    #[serde(flatten)]
    report: TwistedPolyReport,
    genus: Option<GenusInfo>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct TwistedEntry {
    hom: Option<HomAssignmentJson>,
    report: TwistedPolyReport,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct TwistedOutput {
    input: String,
    degree: Option<usize>,
    hom_count: usize,
    skipped_over_cap: usize,
    reports: Vec<TwistedEntry>,
}

fn budget_from(flag: Option<f64>) -> Result<Budget, Error> {
    let secs = match flag {
        Some(s) => s,
        None => match std::env::var("TAP_BUDGET_SECS") {
            Ok(v) => v.trim().parse::<f64>().map_err(|_| Error::Parse {
                location: "TAP_BUDGET_SECS".into(),
                message: format!("`{v}` is not a number of seconds"),
            })?,
            Err(_) => DEFAULT_BUDGET_SECS,
        },
    };
    if !(secs.is_finite() && secs > 0.0) {
        return Err(Error::Parse { location: "budget".into(), message: format!("{secs} is not a positive duration") });
    }
    Ok(Budget::with_secs(secs))
}

fn emit<T: Serialize>(value: &T, compact: bool) {
    let s = if compact { serde_json::to_string(value) } else { serde_json::to_string_pretty(value) };
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{}", s.expect("reports serialize"));
}

fn run(cli: Cli) -> Result<u8, Error> {
    let compact = cli.compact;
    match cli.command {
        Command::Alex { input } => {
            let inp = parse_input(&input)?;
            let p = &inp.presentation;
            let report = twisted_report(p, &Representation::trivial(p.num_generators()), &Budget::unlimited())?;
            let knot = p.num_components() == 1;
            let genus = if knot { genus_degree_report(&report, 1).ok() } else { None };
            emit(&AlexOutput { input: inp.name, report, genus }, compact);
            Ok(EXIT_OK)
        }
        Command::Twisted { input, degree, max_rep_dim, rep, budget } => {
            let inp = parse_input(&input)?;
            let budget = budget_from(budget)?;
            let out = twisted_all(&inp, degree, max_rep_dim, rep.as_deref(), &budget)?;
            emit(&out, compact);
            Ok(EXIT_OK)
        }
        Command::FiberCheck { input, max_degree, budget, jobs, max_rep_dim, summary } => {
            let inp = parse_input(&input)?;
            let opts = FiberOptions { max_degree, max_rep_dim, budget: budget_from(budget)?, jobs, keep_reports: !summary };
            let v = fiber_check(&inp.presentation, &opts)?;
            emit(&v, compact);
            Ok(match v.status {
                FiberStatus::NonfiberedCertified => EXIT_CERTIFIED,
                FiberStatus::BudgetExhausted => EXIT_BUDGET,
                FiberStatus::NoObstructionFound => EXIT_OK,
            })
        }
        Command::RibbonCheck { lower, upper, upper_fibered, max_degree, budget } => {
            let lo = parse_input(&lower)?;
            let up = parse_input(&upper)?;
            let fibered = if upper_fibered { Some(true) } else { up.entry.as_ref().map(|e| e.fibered) };
            let opts = RibbonOptions {
                lower_name: Some(lo.name.clone()),
                upper_name: Some(up.name.clone()),
                upper_fibered: fibered,
                fiber: Some(FiberOptions { max_degree, budget: budget_from(budget)?, keep_reports: false, ..Default::default() }),
                conditional_pairs: Vec::new(),
            };
            let r = ribbon_screen(&lo.presentation, &up.presentation, &opts)?;
            emit(&r, compact);
            Ok(if r.verdict == RibbonVerdict::Obstructed { EXIT_CERTIFIED } else { EXIT_OK })
        }
        Command::Catalog { action: CatalogAction::List } => {
            emit(&catalog(), compact);
            Ok(EXIT_OK)
        }
    }
}

fn twisted_all(
    inp: &Input,
    degree: usize,
    max_rep_dim: usize,
    rep_file: Option<&str>,
    budget: &Budget,
) -> Result<TwistedOutput, Error> {
    let p = &inp.presentation;
    if let Some(path) = rep_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse { location: path.to_string(), message: e.to_string() })?;
        let rj: RepresentationJson = serde_json::from_str(&text).map_err(|e| Error::Parse {
            location: format!("{path}: line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        let rep = rj.build(p)?;
        let report = twisted_report(p, &rep, budget)?;
        return Ok(TwistedOutput {
            input: inp.name.clone(),
            degree: None,
            hom_count: 0,
            skipped_over_cap: 0,
            reports: vec![TwistedEntry { hom: None, report }],
        });
    }
    if degree == 0 {
        return Err(Error::Parse { location: "--degree".into(), message: "must be at least 1".into() });
    }
    let opts = HomSearchOptions { meridional: p.is_link_exterior(), dedupe: true, budget: budget.clone() };
    let homs = enumerate_homs(p, degree, &opts)?;
    let distinct = dedupe_by_kernel(&homs);
    let mut reports = Vec::new();
    let mut skipped = 0;
    for h in &distinct {
        if h.image_order() > max_rep_dim {
            skipped += 1;
            continue;
        }
        let report = twisted_report(p, &regular_of_hom(h), budget)?;
        reports.push(TwistedEntry { hom: Some(h.to_json(p.generators())), report });
    }
    Ok(TwistedOutput { input: inp.name.clone(), degree: Some(degree), hom_count: homs.len(), skipped_over_cap: skipped, reports })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::BudgetExhausted => EXIT_BUDGET,
                Error::Inconsistent(_) | Error::ChainCondition => 1,
                _ => EXIT_INPUT,
            })
        }
    }
}
