//! `kstab` -- exact verification of K-stability computations for del Pezzo
//! pairs with line boundaries.
//!
//! Exit codes: 0 verified/ok, 1 verification mismatch or negative verdict,
//! 2 input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kstab::catalog::{Catalog, CatalogEntry, Payload};
use kstab::exactnum::Rational;
use kstab::model;
use kstab::picard;
use kstab::report::{
    verify_text, BetaReportRendered, ChainLctReport, ContractionLctReport, InterpolateReport,
    LinesReport, OrbitsReport, PullbackReport, WallsReport,
};
use kstab::verify;

const CATALOG_DIR_ENV: &str = "KSTAB_CATALOG_DIR";

#[derive(Parser)]
#[command(
    name = "kstab",
    about = "Exact K-stability computations for del Pezzo pairs with line boundaries",
    version
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in catalog entries.
    List,
    /// Show one catalog entry: payloads, expectations, metadata.
    Show { id: String },
    /// Enumerate the line classes of the blown-up plane.
    Lines {
        /// Number of blown-up points (1..=8).
        #[arg(long)]
        n: usize,
        /// Print every class, not just the count.
        #[arg(long)]
        classes: bool,
    },
    /// Line-degeneration orbits of a contraction model.
    Orbits {
        /// Catalog id or path to a model file.
        #[arg(long)]
        model: String,
        /// Restrict to one variant of a catalog entry.
        #[arg(long)]
        variant: Option<String>,
    },
    /// Mumford pull-back of a class, written as {"H": d, "E": [m1, ...]}.
    Pullback {
        #[arg(long)]
        model: String,
        #[arg(long)]
        class: String,
        #[arg(long)]
        variant: Option<String>,
    },
    /// Log-canonicity / threshold report over (0, cmax).
    Lct {
        #[arg(long)]
        model: String,
        /// Right end of the working interval, as "p/q"; defaults to the
        /// catalog entry's value (required for file models).
        #[arg(long)]
        cmax: Option<String>,
        #[arg(long)]
        variant: Option<String>,
    },
    /// A, S, beta per invariant divisor of a weighted-plane pair.
    Beta {
        #[arg(long)]
        model: String,
        #[arg(long)]
        cmax: Option<String>,
        #[arg(long)]
        variant: Option<String>,
    },
    /// Scan all catalog entries of one degree for wall candidates.
    Walls {
        #[arg(long)]
        degree: i64,
    },
    /// Recompute every expected value and compare.
    Verify {
        /// Verify the whole catalog (the default).
        #[arg(long)]
        all: bool,
        /// Verify a single entry.
        #[arg(long, conflicts_with = "all")]
        id: Option<String>,
    },
    /// Combine an lc certificate up to 1/r with base K-semistability.
    Interpolate {
        #[arg(long)]
        model: String,
        #[arg(long)]
        r: i64,
    },
    /// Export a catalog entry (one variant) to the model-file format.
    Export {
        #[arg(long)]
        model: String,
        #[arg(long)]
        variant: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn emit<T: Serialize>(format: Format, value: &T, text: &str) -> anyhow::Result<()> {
    match format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(value)?),
    }
    Ok(())
}

fn ok() -> ExitCode {
    ExitCode::SUCCESS
}

fn negative() -> ExitCode {
    ExitCode::from(1)
}

/// A model argument resolves to one or more labelled payloads: a file gives
/// a single "file" variant; a catalog id gives the entry's variants.
struct Resolved {
    label: String,
    variants: Vec<(String, Payload)>,
    entry_cmax: Option<Rational>,
}

fn resolve_model(catalog: &Catalog, arg: &str, variant: Option<&str>) -> anyhow::Result<Resolved> {
    if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg)?;
        let payload = model::parse(&text)?;
        return Ok(Resolved {
            label: arg.to_string(),
            variants: vec![("file".to_string(), payload)],
            entry_cmax: None,
        });
    }
    if let Ok(entry) = catalog.get(arg) {
        let variants: Vec<(String, Payload)> = match variant {
            Some(label) => {
                let v = entry.variant(label)?;
                vec![(v.label.to_string(), v.payload.clone())]
            }
            None => entry
                .variants
                .iter()
                .map(|v| (v.label.to_string(), v.payload.clone()))
                .collect(),
        };
        return Ok(Resolved {
            label: entry.id.to_string(),
            variants,
            entry_cmax: Some(entry.cmax.clone()),
        });
    }
    if let Ok(dir) = std::env::var(CATALOG_DIR_ENV) {
        let candidate = PathBuf::from(dir).join(format!("{arg}.json"));
        if candidate.is_file() {
            let text = std::fs::read_to_string(&candidate)?;
            let payload = model::parse(&text)?;
            return Ok(Resolved {
                label: candidate.display().to_string(),
                variants: vec![("file".to_string(), payload)],
                entry_cmax: None,
            });
        }
    }
    anyhow::bail!("{arg:?} is neither a file nor a catalog id (see `kstab list`)");
}

fn parse_cmax(explicit: &Option<String>, fallback: &Option<Rational>) -> anyhow::Result<Rational> {
    let cmax = match explicit {
        Some(text) => text.parse::<Rational>().map_err(anyhow::Error::from)?,
        None => fallback
            .clone()
            .ok_or_else(|| anyhow::anyhow!("--cmax is required for file models"))?,
    };
    if !cmax.is_positive() {
        anyhow::bail!("cmax must be positive, got {cmax}");
    }
    Ok(cmax)
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    let catalog = Catalog::new();
    match &cli.command {
        Command::List => {
            #[derive(Serialize)]
            struct Row<'a> {
                id: &'a str,
                degree: i64,
                r: i64,
                cmax: &'a Rational,
                variants: Vec<&'a str>,
                kinds: Vec<&'static str>,
            }
            let rows: Vec<Row> = catalog
                .entries()
                .iter()
                .map(|e| Row {
                    id: e.id,
                    degree: e.degree,
                    r: e.r,
                    cmax: &e.cmax,
                    variants: e.variants.iter().map(|v| v.label).collect(),
                    kinds: e.variants.iter().map(|v| v.payload.kind()).collect(),
                })
                .collect();
            let mut text = String::new();
            for row in &rows {
                text.push_str(&format!(
                    "{:<18} degree {} (r = {:>3}, cmax = {:>6})  variants: {}\n",
                    row.id,
                    row.degree,
                    row.r,
                    row.cmax.to_string(),
                    row.variants
                        .iter()
                        .zip(&row.kinds)
                        .map(|(v, k)| format!("{v} [{k}]"))
                        .collect::<Vec<_>>()
                        .join(", ")
                ));
            }
            emit(cli.format, &rows, &text)?;
            Ok(ok())
        }
        Command::Show { id } => {
            let entry = catalog.get(id)?;
            #[derive(Serialize)]
            struct VariantView<'a> {
                label: &'a str,
                kind: &'static str,
                payload_name: &'a str,
                expectations: Vec<String>,
            }
            #[derive(Serialize)]
            struct EntryView<'a> {
                id: &'a str,
                degree: i64,
                r: i64,
                cmax: &'a Rational,
                base_k_semistable: bool,
                base_note: &'a str,
                variants: Vec<VariantView<'a>>,
            }
            let view = EntryView {
                id: entry.id,
                degree: entry.degree,
                r: entry.r,
                cmax: &entry.cmax,
                base_k_semistable: entry.base_k_semistable,
                base_note: entry.base_note,
                variants: entry
                    .variants
                    .iter()
                    .map(|v| VariantView {
                        label: v.label,
                        kind: v.payload.kind(),
                        payload_name: v.payload.name(),
                        expectations: v.expected.iter().map(|e| e.quantity.name()).collect(),
                    })
                    .collect(),
            };
            let mut text = format!(
                "{}: degree {}, lines sum to -{}K, working interval (0, {})\n",
                view.id, view.degree, view.r, view.cmax
            );
            text.push_str(&format!(
                "base surface K-semistable at c = 0: {} ({})\n",
                view.base_k_semistable, view.base_note
            ));
            for v in &view.variants {
                text.push_str(&format!(
                    "  variant {} [{}] payload {}\n    expectations: {}\n",
                    v.label,
                    v.kind,
                    v.payload_name,
                    v.expectations.join(", ")
                ));
            }
            emit(cli.format, &view, &text)?;
            Ok(ok())
        }
        Command::Lines { n, classes } => {
            let lines = picard::enumerate_lines(*n)?;
            let report = LinesReport {
                n: *n,
                count: lines.len(),
                classes: classes.then_some(lines),
            };
            let text = report.text();
            emit(cli.format, &report, &text)?;
            Ok(ok())
        }
        Command::Orbits { model, variant } => {
            let resolved = resolve_model(&catalog, model, variant.as_deref())?;
            let mut reports = Vec::new();
            for (label, payload) in &resolved.variants {
                if let Payload::Contraction(m) = payload {
                    reports.push(OrbitsReport::build(
                        &format!("{} [{label}]", resolved.label),
                        m,
                    )?);
                }
            }
            if reports.is_empty() {
                anyhow::bail!("model {} has no contraction payload", resolved.label);
            }
            let text: String = reports.iter().map(OrbitsReport::text).collect();
            emit(cli.format, &reports, &text)?;
            Ok(ok())
        }
        Command::Pullback {
            model,
            class,
            variant,
        } => {
            let resolved = resolve_model(&catalog, model, variant.as_deref())?;
            let class: kstab::DivisorClass = serde_json::from_str(class)
                .map_err(|e| anyhow::anyhow!("cannot parse --class: {e}"))?;
            let mut reports = Vec::new();
            for (label, payload) in &resolved.variants {
                if let Payload::Contraction(m) = payload {
                    reports.push(PullbackReport::build(
                        &format!("{} [{label}]", resolved.label),
                        m,
                        class.clone(),
                    )?);
                }
            }
            if reports.is_empty() {
                anyhow::bail!("model {} has no contraction payload", resolved.label);
            }
            let text: String = reports.iter().map(PullbackReport::text).collect();
            emit(cli.format, &reports, &text)?;
            Ok(ok())
        }
        Command::Lct {
            model,
            cmax,
            variant,
        } => {
            let resolved = resolve_model(&catalog, model, variant.as_deref())?;
            let cmax = parse_cmax(cmax, &resolved.entry_cmax)?;
            #[derive(Serialize)]
            #[serde(untagged)]
            enum AnyLct {
                Contraction(ContractionLctReport),
                Chain(ChainLctReport),
            }
            let mut reports = Vec::new();
            let mut any_negative = false;
            for (label, payload) in &resolved.variants {
                match payload {
                    Payload::Contraction(m) => {
                        let r = ContractionLctReport::build(&resolved.label, label, m, &cmax)
                            .map_err(|e| anyhow::anyhow!(e))?;
                        any_negative |= r.negative();
                        reports.push(AnyLct::Contraction(r));
                    }
                    Payload::Chain(chain) => {
                        let lc = chain.lc_verdict(&cmax)?;
                        let r = ChainLctReport::build(&resolved.label, label, lc, &cmax);
                        any_negative |= r.negative();
                        reports.push(AnyLct::Chain(r));
                    }
                    Payload::Wps { .. } => {}
                }
            }
            if reports.is_empty() {
                anyhow::bail!(
                    "model {} has no contraction or chain payload (use `beta`)",
                    resolved.label
                );
            }
            let text: String = reports
                .iter()
                .map(|r| match r {
                    AnyLct::Contraction(c) => c.text(),
                    AnyLct::Chain(c) => c.text(),
                })
                .collect();
            emit(cli.format, &reports, &text)?;
            Ok(if any_negative { negative() } else { ok() })
        }
        Command::Beta {
            model,
            cmax,
            variant,
        } => {
            let resolved = resolve_model(&catalog, model, variant.as_deref())?;
            let cmax = parse_cmax(cmax, &resolved.entry_cmax)?;
            let mut reports = Vec::new();
            let mut any_negative = false;
            for (label, payload) in &resolved.variants {
                if let Payload::Wps { pair, divisors } = payload {
                    let report = pair.beta_report(divisors, &cmax)?;
                    let rendered = BetaReportRendered::build(&resolved.label, label, report, &cmax);
                    any_negative |= rendered.negative();
                    reports.push(rendered);
                }
            }
            if reports.is_empty() {
                anyhow::bail!("model {} has no weighted-plane payload", resolved.label);
            }
            let text: String = reports.iter().map(BetaReportRendered::text).collect();
            emit(cli.format, &reports, &text)?;
            Ok(if any_negative { negative() } else { ok() })
        }
        Command::Walls { degree } => {
            let entries: Vec<&CatalogEntry> = catalog
                .entries()
                .iter()
                .filter(|e| e.degree == *degree)
                .collect();
            if entries.is_empty() {
                anyhow::bail!("no catalog entries of degree {degree}");
            }
            let report = WallsReport::build(*degree, &entries);
            let text = report.text();
            emit(cli.format, &report, &text)?;
            Ok(ok())
        }
        Command::Verify { all: _, id } => {
            let report = match id {
                Some(id) => verify::verify_entry(catalog.get(id)?),
                None => verify::verify_all(&catalog),
            };
            #[derive(Serialize)]
            struct StructureRow {
                entry: String,
                variant: String,
                ok: bool,
                detail: String,
            }
            let structure: Vec<StructureRow> = catalog
                .validate_all()
                .into_iter()
                .filter(|c| id.as_deref().is_none_or(|want| c.entry == want))
                .map(|c| {
                    let (ok, detail) = match c.summary {
                        Ok(d) => (true, d),
                        Err(e) => (false, e),
                    };
                    StructureRow { entry: c.entry, variant: c.variant, ok, detail }
                })
                .collect();
            let structure_ok = structure.iter().all(|s| s.ok);
            let mut text = String::new();
            for s in &structure {
                text.push_str(&format!(
                    "{} {}/{} structure: {}\n",
                    if s.ok { "OK  " } else { "FAIL" },
                    s.entry,
                    s.variant,
                    s.detail
                ));
            }
            text.push_str(&verify_text(&report));
            #[derive(Serialize)]
            struct Combined<'a> {
                structure: &'a [StructureRow],
                #[serde(flatten)]
                report: &'a verify::VerifyReport,
            }
            emit(cli.format, &Combined { structure: &structure, report: &report }, &text)?;
            Ok(if report.passed() && structure_ok { ok() } else { negative() })
        }
        Command::Interpolate { model, r } => {
            let entry = catalog.get(model)?;
            if *r != entry.r {
                anyhow::bail!(
                    "entry {} has r = {} (its lines sum to -{}K); got --r {}",
                    entry.id,
                    entry.r,
                    entry.r,
                    r
                );
            }
            let report = InterpolateReport::build(entry, *r);
            let text = report.text();
            emit(cli.format, &report, &text)?;
            Ok(if report.negative() { negative() } else { ok() })
        }
        Command::Export { model, variant } => {
            let resolved = resolve_model(&catalog, model, variant.as_deref())?;
            let (label, payload) = match resolved.variants.as_slice() {
                [only] => only,
                many => many
                    .iter()
                    .find(|(l, _)| l == "default" || l == "contraction")
                    .ok_or_else(|| {
                        anyhow::anyhow!(
                            "entry {} has several variants ({}); pick one with --variant",
                            resolved.label,
                            many.iter()
                                .map(|(l, _)| l.as_str())
                                .collect::<Vec<_>>()
                                .join(", ")
                        )
                    })?,
            };
            let _ = label;
            print!("{}", model::to_json_pretty(payload));
            Ok(ok())
        }
    }
}
