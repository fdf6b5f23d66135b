//! `ddc`: construct, verify, search, bound, extract, render, and catalog
//! distinct-difference configurations.
//!
//! Exit codes: 0 on success (and PASS verdicts), 1 on a FAIL verdict from
//! `verify`, 2 on usage or parameter errors.

mod catalog;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use ddc_core::algebra::SidonSet;
use ddc_core::bounds;
use ddc_core::config::{ConfigRecord, Configuration, DdcClass, PeriodicArray};
use ddc_core::constructions;
use ddc_core::extraction;
use ddc_core::grid::pt;
use ddc_core::search::{max_ddc, SearchOptions};
use ddc_core::REPORT_VERSION;

#[derive(Parser)]
#[command(
    name = "ddc",
    version,
    about = "Distinct-difference configurations on square and hexagonal grids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a construction and emit its canonical JSON record.
    Construct {
        #[command(subcommand)]
        construction: Construction,
    },
    /// Check a configuration file; exits 0 on PASS, 1 on FAIL.
    Verify(VerifyArgs),
    /// Upper-bound reports (covering-inequality sweep, honeycomb scan,
    /// coefficient table).
    Bounds(BoundsArgs),
    /// Exhaustive backtrack search for the optimal dot count.
    Search(SearchArgs),
    /// Extraction pipelines producing verified configurations.
    Extract(ExtractArgs),
    /// Render a configuration as ASCII (square grid) or SVG.
    Render(RenderArgs),
    /// Persist and browse configurations in a catalog directory.
    Catalog(catalog::CatalogArgs),
}

#[derive(Subcommand)]
enum Construction {
    /// Welch array: dot at (i, j) iff alpha^i = j (mod p).
    Welch {
        #[arg(long)]
        p: u64,
        /// Primitive root mod p; default: the smallest.
        #[arg(long)]
        alpha: Option<u64>,
    },
    /// Golomb array over GF(q): dot at (i, j) iff alpha^i + beta^j = 1.
    Golomb {
        #[arg(long)]
        q: u64,
        /// Primitive element codes; default: the canonical generator.
        #[arg(long)]
        alpha: Option<u64>,
        #[arg(long)]
        beta: Option<u64>,
    },
    /// Folded Golomb ruler: an l-rows by k-columns rectangle.
    Folded {
        /// Ruler marks, e.g. 0,1,4,6.
        #[arg(long, value_delimiter = ',')]
        ruler: Vec<u64>,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        k: u64,
    },
    /// Doubly periodic folding of a Sidon set mod n.
    Dpf {
        #[arg(long, value_delimiter = ',')]
        sidon: Vec<u64>,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        k: u64,
    },
    /// Chinese-remainder construction (n = l*k, gcd(l,k) = 1).
    Crt {
        #[arg(long, value_delimiter = ',')]
        sidon: Vec<u64>,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        k: u64,
    },
    /// LeeDD folding of a ruler into the Lee sphere of radius floor(r/2).
    Leedd {
        #[arg(long)]
        r: u64,
        #[arg(long, value_delimiter = ',')]
        ruler: Vec<u64>,
    },
    /// Doubly periodic LeeDD over a Sidon set mod n (n >= 2R^2 + 2R + 1).
    Dpleedd {
        #[arg(long, name = "R")]
        radius: u64,
        #[arg(long, value_delimiter = ',')]
        sidon: Vec<u64>,
        #[arg(long)]
        n: u64,
    },
    /// Full extraction pipeline (same as `extract --pipeline ...`).
    #[command(name = "pipeline-dd-euclid-square")]
    PipelineDdEuclidSquare {
        #[arg(long)]
        r: u64,
    },
    #[command(name = "pipeline-ddbar-lee")]
    PipelineDdbarLee {
        #[arg(long)]
        r: u64,
    },
    #[command(name = "pipeline-ddbarstar-hex")]
    PipelineDdbarstarHex {
        #[arg(long)]
        r: u64,
    },
    #[command(name = "pipeline-dd-euclid-hex")]
    PipelineDdEuclidHex {
        #[arg(long)]
        r: u64,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Configuration JSON file (canonical record).
    file: PathBuf,
    /// Override the class check (dd | ddbar | ddstar | ddbarstar).
    #[arg(long)]
    class: Option<String>,
    /// Override the radius for the class check.
    #[arg(long)]
    r: Option<u64>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    class: Option<String>,
    #[arg(long)]
    r: Option<u64>,
    /// Honeycomb-array nonexistence: single order test.
    #[arg(long)]
    honeycomb: bool,
    #[arg(long)]
    m: Option<u64>,
    /// Scan a range lo:hi of honeycomb orders.
    #[arg(long)]
    scan: Option<String>,
    /// Print the asymptotic coefficient table.
    #[arg(long)]
    table1: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    class: String,
    #[arg(long)]
    r: u64,
    /// Node budget (default 10^9); the report flags inexact results.
    #[arg(long)]
    budget: Option<u64>,
    /// Disable first-dot symmetry reduction.
    #[arg(long)]
    no_symmetry: bool,
    /// Worker threads for the branch scan (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Checkpoint file: completed branches are recorded and a restarted
    /// search with identical parameters resumes after them.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PipelineName {
    #[value(name = "dd-euclid-square")]
    DdEuclidSquare,
    #[value(name = "ddbar-lee")]
    DdbarLee,
    #[value(name = "ddbarstar-hex")]
    DdbarstarHex,
    #[value(name = "dd-euclid-hex")]
    DdEuclidHex,
}

#[derive(Args)]
struct ExtractArgs {
    #[arg(long)]
    pipeline: PipelineName,
    #[arg(long)]
    r: u64,
}

#[derive(Args)]
struct RenderArgs {
    file: PathBuf,
    #[arg(long, default_value = "ascii")]
    format: String,
    /// Output file; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Construct { construction } => {
            let out = construct(construction)?;
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => verify(args),
        Command::Bounds(args) => {
            let out = bounds_cmd(args)?;
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Search(args) => {
            let out = search_cmd(args)?;
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Extract(args) => {
            let rep = match args.pipeline {
                PipelineName::DdEuclidSquare => extraction::build_dd_euclid_square(args.r),
                PipelineName::DdbarLee => extraction::build_ddbar_lee(args.r),
                PipelineName::DdbarstarHex => extraction::build_ddbarstar_hex(args.r),
                PipelineName::DdEuclidHex => extraction::build_dd_euclid_hex(args.r),
            }?;
            println!("{}", serde_json::to_string_pretty(&rep)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Render(args) => {
            let record = read_record(&args.file)?;
            let text = match args.format.as_str() {
                "ascii" => render::ascii(&record)?,
                "svg" => render::svg(&record)?,
                other => bail!("unknown format {other:?} (expected ascii or svg)"),
            };
            match args.output {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog(args) => catalog::run(args),
    }
}

fn read_record(path: &PathBuf) -> Result<ConfigRecord> {
    let raw =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let record: ConfigRecord = serde_json::from_str(&raw)
        .with_context(|| format!("parsing {} as a configuration record", path.display()))?;
    record.validate()?;
    Ok(record)
}

/// Canonical record for a finite configuration under its natural metric,
/// with `r` equal to the measured diameter.
fn record_for(config: &Configuration, class: DdcClass) -> Result<ConfigRecord> {
    let r = if config.is_empty() {
        0
    } else {
        let d = config.diameter(class.metric())?;
        if class.euclidean() {
            // smallest integer radius admitting the squared diameter
            let mut r = (d as f64).sqrt().floor() as u64;
            while r * r < d {
                r += 1;
            }
            r
        } else {
            d
        }
    };
    Ok(ConfigRecord::new(config, class.metric(), r))
}

#[derive(Serialize)]
struct ArrayOutput {
    version: String,
    construction: serde_json::Value,
    period: [u64; 2],
    density: ddc_core::config::Ratio,
    /// Dots of one fundamental domain as a canonical record.
    configuration: ConfigRecord,
}

fn array_output(
    descriptor: serde_json::Value,
    array: &PeriodicArray,
    class: DdcClass,
) -> Result<ArrayOutput> {
    let (eta, kappa) = array.period();
    let window = array.window(pt(0, 0), eta, kappa);
    Ok(ArrayOutput {
        version: REPORT_VERSION.to_string(),
        construction: descriptor,
        period: [eta, kappa],
        density: array.density(),
        configuration: record_for(&window, class)?,
    })
}

#[derive(Serialize)]
struct FiniteOutput {
    version: String,
    construction: serde_json::Value,
    configuration: ConfigRecord,
}

fn construct(c: Construction) -> Result<serde_json::Value> {
    match c {
        Construction::Welch { p, alpha } => {
            let array = constructions::periodic_welch(p, alpha)?;
            let descriptor = json!({"construction": "welch", "p": p, "alpha": alpha});
            Ok(serde_json::to_value(array_output(
                descriptor,
                &array,
                DdcClass::DdBar,
            )?)?)
        }
        Construction::Golomb { q, alpha, beta } => {
            let array = constructions::periodic_golomb(q, alpha, beta)?;
            let descriptor =
                json!({"construction": "golomb", "q": q, "alpha": alpha, "beta": beta});
            Ok(serde_json::to_value(array_output(
                descriptor,
                &array,
                DdcClass::DdBar,
            )?)?)
        }
        Construction::Folded { ruler, l, k } => {
            let s = SidonSet::new_ruler(ruler.clone());
            if !s.is_sidon() {
                bail!("{ruler:?} is not a Golomb ruler");
            }
            let config = constructions::folded_ruler(&s, l, k)?;
            let descriptor = json!({"construction": "folded", "ruler": ruler, "l": l, "k": k});
            Ok(serde_json::to_value(FiniteOutput {
                version: REPORT_VERSION.to_string(),
                construction: descriptor,
                configuration: record_for(&config, DdcClass::DdBar)?,
            })?)
        }
        Construction::Dpf { sidon, n, l, k } => {
            let d = sidon_mod(&sidon, n)?;
            let array = constructions::doubly_periodic_folding(&d, l, k)?;
            let descriptor = json!({"construction": "dpf", "sidon": sidon, "n": n, "l": l, "k": k});
            Ok(serde_json::to_value(array_output(
                descriptor,
                &array,
                DdcClass::DdBar,
            )?)?)
        }
        Construction::Crt { sidon, n, l, k } => {
            let d = sidon_mod(&sidon, n)?;
            let array = constructions::crt_construction(&d, l, k)?;
            let descriptor = json!({"construction": "crt", "sidon": sidon, "n": n, "l": l, "k": k});
            Ok(serde_json::to_value(array_output(
                descriptor,
                &array,
                DdcClass::DdBar,
            )?)?)
        }
        Construction::Leedd { r, ruler } => {
            let s = SidonSet::new_ruler(ruler.clone());
            if !s.is_sidon() {
                bail!("{ruler:?} is not a Golomb ruler");
            }
            let config = constructions::leedd(r, &s)?;
            let descriptor = json!({"construction": "leedd", "r": r, "ruler": ruler});
            Ok(serde_json::to_value(FiniteOutput {
                version: REPORT_VERSION.to_string(),
                construction: descriptor,
                configuration: ConfigRecord::new(&config, ddc_core::grid::Metric::Manhattan, r),
            })?)
        }
        Construction::Dpleedd { radius, sidon, n } => {
            let d = sidon_mod(&sidon, n)?;
            let array = constructions::doubly_periodic_leedd(radius, &d)?;
            let descriptor =
                json!({"construction": "dpleedd", "R": radius, "sidon": sidon, "n": n});
            Ok(serde_json::to_value(array_output(
                descriptor,
                &array,
                DdcClass::DdBar,
            )?)?)
        }
        Construction::PipelineDdEuclidSquare { r } => Ok(serde_json::to_value(
            extraction::build_dd_euclid_square(r)?,
        )?),
        Construction::PipelineDdbarLee { r } => {
            Ok(serde_json::to_value(extraction::build_ddbar_lee(r)?)?)
        }
        Construction::PipelineDdbarstarHex { r } => {
            Ok(serde_json::to_value(extraction::build_ddbarstar_hex(r)?)?)
        }
        Construction::PipelineDdEuclidHex { r } => {
            Ok(serde_json::to_value(extraction::build_dd_euclid_hex(r)?)?)
        }
    }
}

fn sidon_mod(elements: &[u64], n: u64) -> Result<SidonSet> {
    let d = SidonSet::new_mod(elements.to_vec(), n)?;
    if !d.is_sidon() {
        bail!("{elements:?} is not a Sidon set mod {n}");
    }
    Ok(d)
}

fn parse_class(s: &str) -> Result<DdcClass> {
    DdcClass::parse(s)
        .ok_or_else(|| anyhow!("unknown class {s:?} (expected dd|ddbar|ddstar|ddbarstar)"))
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let record = read_record(&args.file)?;
    let config = record.configuration();
    let class = match &args.class {
        Some(s) => {
            let class = parse_class(s)?;
            if class.grid_kind() != record.grid {
                bail!(
                    "class {s} expects the {:?} grid, file has {:?}",
                    class.grid_kind(),
                    record.grid
                );
            }
            class
        }
        None => match (record.grid, record.metric()) {
            (ddc_core::grid::GridKind::Square, ddc_core::grid::Metric::Manhattan) => {
                DdcClass::DdBar
            }
            (ddc_core::grid::GridKind::Square, _) => DdcClass::Dd,
            (ddc_core::grid::GridKind::Hexagonal, ddc_core::grid::Metric::HexDistance) => {
                DdcClass::DdBarStar
            }
            (ddc_core::grid::GridKind::Hexagonal, _) => DdcClass::DdStar,
        },
    };
    let r = args.r.unwrap_or(record.r);
    let m = config.len();
    let ddc_ok = config.verify_ddc();
    let diameter = if config.is_empty() {
        0
    } else {
        config.diameter(class.metric())?
    };
    let within = diameter <= class.diameter_limit(r);
    if ddc_ok && within {
        println!(
            "PASS class={} r={r} m={m} diameter={diameter}",
            class.name()
        );
        Ok(ExitCode::SUCCESS)
    } else {
        if let Some(((a1, b1), (a2, b2))) = config.first_repeated_difference() {
            println!(
                "FAIL class={} r={r} m={m}: difference {} -> {} repeats {} -> {}",
                class.name(),
                a1,
                b1,
                a2,
                b2
            );
        } else {
            println!(
                "FAIL class={} r={r} m={m}: diameter {diameter} exceeds {}",
                class.name(),
                class.diameter_limit(r)
            );
        }
        Ok(ExitCode::from(1))
    }
}

fn bounds_cmd(args: BoundsArgs) -> Result<serde_json::Value> {
    if args.table1 {
        let rows: Vec<_> = bounds::table1_constants()
            .iter()
            .map(|(class, lo, hi)| json!({"class": class.name(), "lower": lo, "upper": hi}))
            .collect();
        return Ok(json!({"version": REPORT_VERSION, "table": rows}));
    }
    if args.honeycomb {
        if let Some(spec) = &args.scan {
            let (lo, hi) = spec
                .split_once(':')
                .and_then(|(a, b)| Some((a.parse::<u64>().ok()?, b.parse::<u64>().ok()?)))
                .ok_or_else(|| anyhow!("--scan expects lo:hi, got {spec:?}"))?;
            let scan = bounds::honeycomb_scan(hi)?;
            let all_in_range = scan.threshold.is_some_and(|t| t <= lo);
            return Ok(json!({
                "version": REPORT_VERSION,
                "scan": [lo, hi],
                "all_ruled_out_in_range": all_in_range,
                "smallest_fully_ruled_out": scan.threshold,
                "ruled_out_below_threshold": scan.ruled_out_below_threshold,
            }));
        }
        let m = args
            .m
            .ok_or_else(|| anyhow!("--honeycomb needs --m or --scan"))?;
        let (ruled, witness) = bounds::honeycomb_ruled_out(m)?;
        return Ok(json!({
            "version": REPORT_VERSION,
            "m": m,
            "ruled_out": ruled,
            "witness_l": witness,
        }));
    }
    let class = parse_class(
        args.class
            .as_deref()
            .ok_or_else(|| anyhow!("--class required"))?,
    )?;
    let r = args.r.ok_or_else(|| anyhow!("--r required"))?;
    let report = bounds::erdos_turan_upper(r, class)?;
    Ok(serde_json::to_value(report)?)
}

fn search_cmd(args: SearchArgs) -> Result<serde_json::Value> {
    let class = parse_class(&args.class)?;
    let options = SearchOptions {
        node_budget: args.budget.unwrap_or(1_000_000_000),
        symmetry_reduction: !args.no_symmetry,
        checkpoint: args.checkpoint.clone(),
    };
    let run = move || max_ddc(class, args.r, options);
    let result = match args.threads {
        Some(n) => rayon_pool(n)?.install(run),
        None => run(),
    }?;
    Ok(serde_json::to_value(result)?)
}

fn rayon_pool(n: usize) -> Result<rayon::ThreadPool> {
    Ok(rayon::ThreadPoolBuilder::new().num_threads(n).build()?)
}
