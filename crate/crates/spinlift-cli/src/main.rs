use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use spinlift::catalog::{
    bundled_catalog, bundled_expectations, classify, load_catalog, load_expectations,
    render_classification, render_report, verify, Catalog, Format,
};
use spinlift::export::{export_catalog, export_json, spin_to_json};
use spinlift::extension::lift_group;
use spinlift::spin::{preimage, OrthMatrix};
use spinlift::{Error, ErrorKind};

const EXIT_FAILURES: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

/// Spin structures on almost-flat 4-manifolds.
#[derive(Parser)]
#[command(name = "spinlift", version)]
struct Cli {
    /// Catalog JSON; the bundled catalog when omitted.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// text, json, csv or markdown.
    #[arg(long, global = true, default_value = "text")]
    format: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Selection {
    #[arg(long)]
    family: Option<String>,
    /// `k1=1,k2=0,...` or `1,0,...`; needs --family.
    #[arg(long, allow_hyphen_values = true)]
    params: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Spin-structure counts per family and parameter class.
    Classify(Selection),
    /// Recompute an expected-count table and report mismatches.
    Verify {
        /// Expectations JSON; the bundled table when omitted.
        #[arg(long)]
        expected: Option<PathBuf>,
    },
    /// Both preimages in Spin(n) of a matrix in SO(n).
    Preimage {
        /// `diag:1,1,-1,-1`, `identity`, `identity:n`, `r11,r12,..;r21,..` or `[[..],..]`.
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// The preimage of the holonomy group in Spin(4).
    LiftGroup {
        #[arg(long)]
        family: String,
    },
    /// Decomposition of the holonomy character.
    Char {
        #[arg(long)]
        family: String,
    },
    /// Counts, valid sign assignments and exact base preimages.
    Export(Selection),
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn open_catalog(path: &Option<PathBuf>) -> Result<Catalog, Error> {
    match path {
        Some(p) => load_catalog(p),
        None => bundled_catalog(),
    }
}

fn parse_params(catalog: &Catalog, sel: &Selection) -> Result<Option<Vec<i64>>, Error> {
    let Some(text) = &sel.params else {
        return Ok(None);
    };
    let family = sel
        .family
        .as_deref()
        .ok_or_else(|| invalid("--params needs --family"))?;
    let names = catalog.get(family)?.parameters();
    let parse_int = |s: &str| {
        s.trim()
            .parse::<i64>()
            .map_err(|_| invalid(format!("{s:?} is not an integer")))
    };
    let parts: Vec<&str> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    let values = if parts.iter().any(|p| p.contains('=')) {
        let mut values = vec![None; names.len()];
        for p in parts {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| invalid(format!("expected name=value, got {p:?}")))?;
            let i = names
                .iter()
                .position(|n| n == k.trim())
                .ok_or_else(|| invalid(format!("family {family} has no parameter {k:?}")))?;
            values[i] = Some(parse_int(v)?);
        }
        names
            .iter()
            .zip(values)
            .map(|(n, v)| v.ok_or_else(|| invalid(format!("missing parameter {n}"))))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        parts
            .into_iter()
            .map(parse_int)
            .collect::<Result<Vec<_>, _>>()?
    };
    if values.len() != names.len() {
        return Err(invalid(format!(
            "family {family} takes {} parameters, got {}",
            names.len(),
            values.len()
        )));
    }
    Ok(Some(values))
}

fn parse_matrix(text: &str) -> Result<OrthMatrix, Error> {
    let ints = |s: &str| -> Result<Vec<i64>, Error> {
        s.split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| invalid(format!("{x:?} is not an integer")))
            })
            .collect()
    };
    let text = text.trim();
    if let Some(d) = text.strip_prefix("diag:") {
        return OrthMatrix::diag(&ints(d)?);
    }
    if text == "identity" {
        return OrthMatrix::identity(4);
    }
    if let Some(n) = text.strip_prefix("identity:") {
        let n = n
            .trim()
            .parse()
            .map_err(|_| invalid(format!("{n:?} is not a dimension")))?;
        return OrthMatrix::identity(n);
    }
    let rows: Vec<Vec<i64>> = if text.starts_with('[') {
        serde_json::from_str(text).map_err(|e| invalid(format!("matrix literal: {e}")))?
    } else {
        text.split(';').map(ints).collect::<Result<_, _>>()?
    };
    OrthMatrix::from_ints(&rows)
}

fn run(cli: Cli, out: &mut String) -> Result<u8, Error> {
    let format: Format = cli.format.parse()?;
    match cli.command {
        Command::Classify(sel) => {
            let catalog = open_catalog(&cli.catalog)?;
            let params = parse_params(&catalog, &sel)?;
            let rows = classify(&catalog, sel.family.as_deref(), params.as_deref())?;
            out.push_str(&render_classification(&rows, format));
        }
        Command::Verify { expected } => {
            let catalog = open_catalog(&cli.catalog)?;
            let expectations = match expected {
                Some(p) => load_expectations(p)?,
                None => bundled_expectations()?,
            };
            if expectations.rows.is_empty() {
                eprintln!("warning: expectations file has no rows");
            }
            let report = verify(&catalog, &expectations);
            out.push_str(&render_report(&report, format));
            if !report.passed() {
                return Ok(EXIT_FAILURES);
            }
        }
        Command::Preimage { matrix } => {
            let m = parse_matrix(&matrix)?;
            let [x, y] = preimage(&m)?.pair();
            match format {
                Format::Json => {
                    let doc = json!({ "preimage": [spin_to_json(&x), spin_to_json(&y)] });
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string_pretty(&doc).expect("serializable")
                    )
                    .unwrap();
                }
                _ => writeln!(out, "{x}\n{y}").unwrap(),
            }
        }
        Command::LiftGroup { family } => {
            let catalog = open_catalog(&cli.catalog)?;
            let g = lift_group(catalog.get(&family)?)?;
            match format {
                Format::Json => {
                    let doc = json!({
                        "family": family,
                        "group": g.name.to_string(),
                        "order": g.order,
                        "holonomy_order": g.holonomy_order,
                        "route": g.route.to_string(),
                        "elements": g.elements,
                    });
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string_pretty(&doc).expect("serializable")
                    )
                    .unwrap();
                }
                _ => {
                    writeln!(
                        out,
                        "{} (order {}, |F| = {}, {} route)",
                        g.name, g.order, g.holonomy_order, g.route
                    )
                    .unwrap();
                    for e in &g.elements {
                        writeln!(out, "  {e}").unwrap();
                    }
                }
            }
        }
        Command::Char { family } => {
            let catalog = open_catalog(&cli.catalog)?;
            let record = catalog.get(&family)?;
            let chi = record.character()?;
            match format {
                Format::Json => {
                    let doc = json!({ "family": family, "holonomy": record.holonomy.to_string(), "character": chi.to_string() });
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string_pretty(&doc).expect("serializable")
                    )
                    .unwrap();
                }
                _ => writeln!(out, "{chi}").unwrap(),
            }
        }
        Command::Export(sel) => {
            let catalog = open_catalog(&cli.catalog)?;
            let params = parse_params(&catalog, &sel)?;
            match format {
                Format::Json => out.push_str(&export_json(&export_catalog(
                    &catalog,
                    sel.family.as_deref(),
                    params.as_deref(),
                )?)),
                _ => {
                    let rows = classify(&catalog, sel.family.as_deref(), params.as_deref())?;
                    out.push_str(&render_classification(&rows, format));
                }
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli, &mut out);
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout
        .write_all(out.as_bytes())
        .and_then(|()| stdout.flush())
    {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_IO);
        }
    }
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::InvalidInput => EXIT_INVALID,
                ErrorKind::Io => EXIT_IO,
                ErrorKind::Internal => EXIT_INTERNAL,
            })
        }
    }
}
