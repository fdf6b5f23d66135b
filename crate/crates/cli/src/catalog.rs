//! A directory-backed catalog of configurations with a JSON index.
//!
//! Each entry stores the canonical configuration record in its own file;
//! `index.json` lists entry metadata. Stored configurations are
//! re-verified whenever they are loaded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Subcommand};
use serde::{Deserialize, Serialize};

use ddc_core::config::{ConfigRecord, DdcClass};
use ddc_core::REPORT_VERSION;

#[derive(Args)]
pub struct CatalogArgs {
    /// Catalog directory.
    #[arg(long, default_value = "catalog")]
    dir: PathBuf,
    #[command(subcommand)]
    action: CatalogAction,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Add a configuration file under an identifier.
    Add {
        file: PathBuf,
        #[arg(long)]
        id: String,
        /// Class recorded with the entry (dd|ddbar|ddstar|ddbarstar);
        /// inferred from the record's grid and metric when omitted.
        #[arg(long)]
        class: Option<String>,
        /// Free-form provenance note (e.g. a construction descriptor).
        #[arg(long)]
        note: Option<String>,
    },
    /// List catalog entries.
    List,
    /// Print one entry's record (re-verified).
    Show { id: String },
}

#[derive(Serialize, Deserialize)]
struct Index {
    version: String,
    entries: Vec<Entry>,
}

#[derive(Serialize, Deserialize, Clone)]
struct Entry {
    id: String,
    class: String,
    r: u64,
    m: u64,
    file: String,
    created_unix: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

fn load_index(dir: &Path) -> Result<Index> {
    let path = dir.join("index.json");
    if !path.exists() {
        return Ok(Index {
            version: REPORT_VERSION.to_string(),
            entries: Vec::new(),
        });
    }
    let raw = std::fs::read_to_string(&path)?;
    serde_json::from_str(&raw).context("parsing catalog index")
}

fn save_index(dir: &Path, index: &Index) -> Result<()> {
    std::fs::write(dir.join("index.json"), serde_json::to_string_pretty(index)?)?;
    Ok(())
}

fn infer_class(record: &ConfigRecord) -> DdcClass {
    use ddc_core::grid::{GridKind, Metric};
    match (record.grid, record.metric()) {
        (GridKind::Square, Metric::Manhattan) => DdcClass::DdBar,
        (GridKind::Square, _) => DdcClass::Dd,
        (GridKind::Hexagonal, Metric::HexDistance) => DdcClass::DdBarStar,
        (GridKind::Hexagonal, _) => DdcClass::DdStar,
    }
}

fn reverify(record: &ConfigRecord, class: DdcClass) -> Result<()> {
    record.validate()?;
    let ok = record.configuration().is_ddc_class(class, record.r)?;
    if !ok {
        bail!(
            "stored configuration fails its {} check at r={}",
            class.name(),
            record.r
        );
    }
    Ok(())
}

pub fn run(args: CatalogArgs) -> Result<ExitCode> {
    std::fs::create_dir_all(&args.dir)?;
    match args.action {
        CatalogAction::Add {
            file,
            id,
            class,
            note,
        } => {
            if !id
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
            {
                bail!("id must be alphanumeric with - or _");
            }
            let raw = std::fs::read_to_string(&file)
                .with_context(|| format!("reading {}", file.display()))?;
            let record: ConfigRecord = serde_json::from_str(&raw)?;
            let class = match class {
                Some(s) => DdcClass::parse(&s).ok_or_else(|| anyhow!("unknown class {s:?}"))?,
                None => infer_class(&record),
            };
            reverify(&record, class)?;
            let mut index = load_index(&args.dir)?;
            if index.entries.iter().any(|e| e.id == id) {
                bail!("id {id:?} already catalogued");
            }
            let file_name = format!("{id}.json");
            std::fs::write(
                args.dir.join(&file_name),
                serde_json::to_string_pretty(&record)?,
            )?;
            index.entries.push(Entry {
                id: id.clone(),
                class: class.name().to_string(),
                r: record.r,
                m: record.dots.len() as u64,
                file: file_name,
                created_unix: SystemTime::now().duration_since(UNIX_EPOCH)?.as_secs(),
                note,
            });
            index.entries.sort_by(|a, b| a.id.cmp(&b.id));
            save_index(&args.dir, &index)?;
            println!("catalogued {id}");
            Ok(ExitCode::SUCCESS)
        }
        CatalogAction::List => {
            let index = load_index(&args.dir)?;
            for e in &index.entries {
                println!(
                    "{}  class={} r={} m={} file={}",
                    e.id, e.class, e.r, e.m, e.file
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        CatalogAction::Show { id } => {
            let index = load_index(&args.dir)?;
            let entry = index
                .entries
                .iter()
                .find(|e| e.id == id)
                .ok_or_else(|| anyhow!("no catalog entry {id:?}"))?;
            let raw = std::fs::read_to_string(args.dir.join(&entry.file))?;
            let record: ConfigRecord = serde_json::from_str(&raw)?;
            let class =
                DdcClass::parse(&entry.class).ok_or_else(|| anyhow!("corrupt class in index"))?;
            reverify(&record, class)?;
            println!("{}", serde_json::to_string_pretty(&record)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}
