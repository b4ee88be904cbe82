//! The JSON catalog of families, the expected-count table, and the reports
//! built from them.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt::{self, Write as _};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::{ExponentExpr, GeneratorId, Presentation, Role, Word};
use crate::holonomy::IntMatrix;
use crate::lift::{lift, LiftResult, Strategy};
use crate::named::GroupName;
use crate::record::AlmostBieberbachRecord;

pub const FORMAT_VERSION: u32 = 1;

const BUNDLED_CATALOG: &str = include_str!("../data/catalog.json");
const BUNDLED_EXPECTATIONS: &str = include_str!("../data/expectations.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExponentSpec {
    Int(i64),
    Expr(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LetterSpec(pub String, pub ExponentSpec);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationSpec {
    pub lhs: Vec<LetterSpec>,
    #[serde(default)]
    pub rhs: Vec<LetterSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub role: RoleSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RoleSpec {
    Lattice,
    Holonomy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecordSpec {
    pub family: String,
    pub holonomy: String,
    pub nilpotency_class: u8,
    #[serde(default)]
    pub source: String,
    pub orientable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(default)]
    pub parameters: Vec<String>,
    pub generators: Vec<GeneratorSpec>,
    pub relations: Vec<RelationSpec>,
    pub holonomy_matrices: BTreeMap<String, Vec<Vec<i64>>>,
    #[serde(default)]
    pub parameter_classes: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sylow_pullback: Option<Box<RecordSpec>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogFile {
    pub format_version: u32,
    pub records: Vec<RecordSpec>,
}

fn schema(family: &str, detail: impl fmt::Display) -> Error {
    Error::Schema(format!("family {family}: {detail}"))
}

impl RecordSpec {
    /// Builds the record, normalizing `lhs = rhs` to the relator `lhs·rhs⁻¹`,
    /// and checks its invariants.
    pub fn to_record(&self) -> Result<AlmostBieberbachRecord> {
        let family = self.family.as_str();
        let holonomy = GroupName::parse(&self.holonomy).ok_or_else(|| {
            schema(
                family,
                format!("unknown holonomy group {:?}", self.holonomy),
            )
        })?;
        let generators: Vec<GeneratorId> = self
            .generators
            .iter()
            .map(|g| {
                let role = match g.role {
                    RoleSpec::Lattice => Role::Lattice,
                    RoleSpec::Holonomy => Role::Holonomy,
                };
                GeneratorId::new(&g.name, role)
            })
            .collect();
        let index = |name: &str| {
            self.generators
                .iter()
                .position(|g| g.name == name)
                .ok_or_else(|| schema(family, format!("undeclared generator {name:?}")))
        };
        let word = |letters: &[LetterSpec]| -> Result<Word> {
            letters
                .iter()
                .map(|LetterSpec(g, e)| {
                    let e = match e {
                        ExponentSpec::Int(n) => ExponentExpr::constant(*n),
                        ExponentSpec::Expr(s) => ExponentExpr::parse(s)
                            .map_err(|err| schema(family, format!("exponent {s:?}: {err}")))?,
                    };
                    Ok((index(g)?, e))
                })
                .collect::<Result<Vec<_>>>()
                .map(Word)
        };
        let relators = self
            .relations
            .iter()
            .map(|r| Ok(word(&r.lhs)?.concat(&word(&r.rhs)?.inverse())))
            .collect::<Result<Vec<_>>>()?;
        let presentation = Presentation::new(generators, relators, self.parameters.clone())
            .map_err(|e| schema(family, e))?;
        let mut holonomy_matrices = BTreeMap::new();
        for (name, rows) in &self.holonomy_matrices {
            let m = IntMatrix::new(rows.clone())
                .map_err(|e| schema(family, format!("matrix of {name}: {e}")))?;
            holonomy_matrices.insert(index(name)?, m);
        }
        let dimension = self.dimension.unwrap_or(4);
        if let Some(v) = self
            .parameter_classes
            .iter()
            .find(|v| v.len() != self.parameters.len())
        {
            return Err(schema(
                family,
                format!(
                    "parameter class {v:?} has {} entries for {} parameters",
                    v.len(),
                    self.parameters.len()
                ),
            ));
        }
        let sylow_pullback = self
            .sylow_pullback
            .as_ref()
            .map(|s| s.to_record().map(Box::new))
            .transpose()?;
        let record = AlmostBieberbachRecord {
            family: self.family.clone(),
            holonomy,
            nilpotency_class: self.nilpotency_class,
            source: self.source.clone(),
            orientable: self.orientable,
            dimension,
            presentation,
            holonomy_matrices,
            parameter_classes: self.parameter_classes.clone(),
            sylow_pullback,
        };
        record.validate()?;
        Ok(record)
    }
}

/// Validated catalog, records in file order.
#[derive(Clone, Debug)]
pub struct Catalog {
    records: Vec<AlmostBieberbachRecord>,
}

impl Catalog {
    pub fn records(&self) -> &[AlmostBieberbachRecord] {
        &self.records
    }

    pub fn get(&self, family: &str) -> Result<&AlmostBieberbachRecord> {
        self.records
            .iter()
            .find(|r| r.family == family)
            .ok_or_else(|| Error::FamilyNotFound(family.to_string()))
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let inner = e.inner();
        Error::Schema(format!(
            "{} at line {} column {}: {inner}",
            e.path(),
            inner.line(),
            inner.column()
        ))
    })
}

fn check_version(found: u32) -> Result<()> {
    if found == FORMAT_VERSION {
        Ok(())
    } else {
        Err(Error::Schema(format!(
            "format_version {found} is not supported (expected {FORMAT_VERSION})"
        )))
    }
}

pub fn parse_catalog(text: &str) -> Result<Catalog> {
    let file: CatalogFile = parse_json(text)?;
    check_version(file.format_version)?;
    let mut seen = HashSet::new();
    if let Some(r) = file
        .records
        .iter()
        .find(|r| !seen.insert(r.family.as_str()))
    {
        return Err(Error::Schema(format!("family {} listed twice", r.family)));
    }
    let records = file
        .records
        .par_iter()
        .map(RecordSpec::to_record)
        .collect::<Result<Vec<_>>>()?;
    Ok(Catalog { records })
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Catalog> {
    parse_catalog(&read(path.as_ref())?)
}

pub fn bundled_catalog() -> Result<Catalog> {
    parse_catalog(BUNDLED_CATALOG)
}

pub fn bundled_catalog_json() -> &'static str {
    BUNDLED_CATALOG
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectationRow {
    pub family: String,
    pub holonomy: String,
    pub params: Vec<i64>,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectationsFile {
    pub format_version: u32,
    pub rows: Vec<ExpectationRow>,
}

pub fn parse_expectations(text: &str) -> Result<ExpectationsFile> {
    let file: ExpectationsFile = parse_json(text)?;
    check_version(file.format_version)?;
    let mut seen = HashSet::new();
    for row in &file.rows {
        let key = (
            row.family.as_str(),
            row.params
                .iter()
                .map(|p| p.rem_euclid(2))
                .collect::<Vec<_>>(),
        );
        if !seen.insert(key) {
            return Err(Error::Schema(format!(
                "expectation for family {} {:?} listed twice",
                row.family, row.params
            )));
        }
    }
    Ok(file)
}

pub fn load_expectations(path: impl AsRef<Path>) -> Result<ExpectationsFile> {
    parse_expectations(&read(path.as_ref())?)
}

pub fn bundled_expectations() -> Result<ExpectationsFile> {
    parse_expectations(BUNDLED_EXPECTATIONS)
}

/// Numbered families first, in numeric order, then the lettered ones.
pub fn family_order(a: &str, b: &str) -> Ordering {
    fn key(f: &str) -> (bool, u64, &str) {
        let alpha = f.starts_with(|c: char| !c.is_ascii_digit());
        let body = f.trim_start_matches(|c: char| !c.is_ascii_digit());
        let digits = body.len() - body.trim_start_matches(|c: char| c.is_ascii_digit()).len();
        (alpha, body[..digits].parse().unwrap_or(0), &body[digits..])
    }
    key(a).cmp(&key(b)).then_with(|| a.cmp(b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifyRow {
    pub family: String,
    pub holonomy: String,
    pub params: Vec<i64>,
    pub params_mod2: Vec<i64>,
    pub exists: bool,
    pub count: u64,
    pub parallelizable: bool,
    pub strategy: String,
}

impl ClassifyRow {
    fn new(record: &AlmostBieberbachRecord, params: Vec<i64>, result: &LiftResult) -> Self {
        ClassifyRow {
            family: record.family.clone(),
            holonomy: record.holonomy.to_string(),
            params_mod2: params.iter().map(|p| p.rem_euclid(2)).collect(),
            params,
            exists: result.exists,
            count: result.count,
            parallelizable: result.parallelizable,
            strategy: result.strategy.to_string(),
        }
    }
}

pub fn classify_record(
    record: &AlmostBieberbachRecord,
    params: &[i64],
) -> Result<(ClassifyRow, LiftResult)> {
    if !record.is_orientable() {
        return Err(Error::NonOrientable(record.family.clone()));
    }
    let result = lift(record, &record.params(params)?)?;
    Ok((ClassifyRow::new(record, params.to_vec(), &result), result))
}

/// Every listed parameter class of every record (or only `family`), or the
/// given parameters when a family is named.
pub fn classify(
    catalog: &Catalog,
    family: Option<&str>,
    params: Option<&[i64]>,
) -> Result<Vec<ClassifyRow>> {
    let records: Vec<&AlmostBieberbachRecord> = match family {
        Some(f) => vec![catalog.get(f)?],
        None => catalog.records().iter().collect(),
    };
    if params.is_some() && family.is_none() {
        return Err(Error::InvalidInput("parameters need a family".into()));
    }
    let jobs: Vec<(&AlmostBieberbachRecord, Vec<i64>)> = records
        .into_iter()
        .flat_map(|r| match params {
            Some(p) => vec![(r, p.to_vec())],
            None => r.parameter_classes.iter().map(|p| (r, p.clone())).collect(),
        })
        .collect();
    let mut rows = jobs
        .par_iter()
        .map(|(r, p)| classify_record(r, p).map(|(row, _)| row))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| family_order(&a.family, &b.family).then_with(|| a.params.cmp(&b.params)));
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub family: String,
    pub holonomy: String,
    pub params: Vec<i64>,
    pub expected: u64,
    pub computed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub rows: usize,
    pub failures: usize,
    pub zero_rows: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub rows: Vec<ReportRow>,
    pub summary: Summary,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.failures == 0
    }

    /// `(family, params)` of every row computed as zero.
    pub fn zero_rows(&self) -> Vec<(String, Vec<i64>)> {
        self.rows
            .iter()
            .filter(|r| r.computed == Some(0))
            .map(|r| (r.family.clone(), r.params.clone()))
            .collect()
    }
}

fn verify_row(catalog: &Catalog, row: &ExpectationRow) -> ReportRow {
    let outcome = catalog.get(&row.family).and_then(|r| {
        if GroupName::parse(&row.holonomy) != Some(r.holonomy) {
            return Err(Error::InvalidInput(format!(
                "expected holonomy {}, catalog has {}",
                row.holonomy, r.holonomy
            )));
        }
        classify_record(r, &row.params)
    });
    let (computed, strategy, error) = match outcome {
        Ok((_, res)) => (Some(res.count), Some(res.strategy), None),
        Err(e) => (None, None, Some(e.to_string())),
    };
    ReportRow {
        family: row.family.clone(),
        holonomy: row.holonomy.clone(),
        params: row.params.clone(),
        expected: row.count,
        computed,
        strategy: strategy.map(|s: Strategy| s.to_string()),
        error,
        pass: computed == Some(row.count),
    }
}

/// Recomputes every expected row; a missing family or a failed computation is
/// a failing row.
pub fn verify(catalog: &Catalog, expectations: &ExpectationsFile) -> Report {
    let mut rows: Vec<ReportRow> = expectations
        .rows
        .par_iter()
        .map(|row| verify_row(catalog, row))
        .collect();
    rows.sort_by(|a, b| family_order(&a.family, &b.family).then_with(|| a.params.cmp(&b.params)));
    let summary = Summary {
        rows: rows.len(),
        failures: rows.iter().filter(|r| !r.pass).count(),
        zero_rows: rows.iter().filter(|r| r.computed == Some(0)).count(),
    };
    Report { rows, summary }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(Error::InvalidInput(format!("unknown format {s:?}"))),
        }
    }
}

fn vector(v: &[i64]) -> String {
    format!(
        "({})",
        v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
    )
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn table(format: Format, header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            writeln!(out, "{}", header.join(",")).unwrap();
            for r in rows {
                writeln!(
                    out,
                    "{}",
                    r.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",")
                )
                .unwrap();
            }
        }
        Format::Markdown => {
            writeln!(out, "| {} |", header.join(" | ")).unwrap();
            writeln!(out, "|{}", "---|".repeat(header.len())).unwrap();
            for r in rows {
                writeln!(out, "| {} |", r.join(" | ")).unwrap();
            }
        }
        _ => {
            let widths: Vec<usize> = (0..header.len())
                .map(|i| {
                    rows.iter()
                        .map(|r| r[i].chars().count())
                        .chain([header[i].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, &w)| format!("{c:<w$}"))
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            writeln!(out, "{}", line(header.to_vec())).unwrap();
            for r in rows {
                writeln!(out, "{}", line(r.iter().map(String::as_str).collect())).unwrap();
            }
        }
    }
    out
}

pub fn render_classification(rows: &[ClassifyRow], format: Format) -> String {
    if format == Format::Json {
        return serde_json::to_string_pretty(rows).expect("serializable") + "\n";
    }
    let header = [
        "family",
        "holonomy",
        "params",
        "params mod 2",
        "count",
        "parallelizable",
        "strategy",
    ];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.family.clone(),
                r.holonomy.clone(),
                vector(&r.params),
                vector(&r.params_mod2),
                r.count.to_string(),
                r.parallelizable.to_string(),
                r.strategy.clone(),
            ]
        })
        .collect();
    table(format, &header, &cells)
}

pub fn render_report(report: &Report, format: Format) -> String {
    if format == Format::Json {
        return serde_json::to_string_pretty(report).expect("serializable") + "\n";
    }
    let header = [
        "family", "holonomy", "params", "expected", "computed", "status",
    ];
    let cells: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.family.clone(),
                r.holonomy.clone(),
                vector(&r.params),
                r.expected.to_string(),
                r.computed
                    .map_or_else(|| "-".to_string(), |c| c.to_string()),
                match (&r.error, r.pass) {
                    (Some(e), _) => format!("ERROR {e}"),
                    (None, true) => "PASS".to_string(),
                    (None, false) => "FAIL".to_string(),
                },
            ]
        })
        .collect();
    let mut out = table(format, &header, &cells);
    let s = &report.summary;
    match format {
        Format::Csv => {}
        Format::Markdown => writeln!(
            out,
            "\n{} rows, {} failures, {} zero rows",
            s.rows, s.failures, s.zero_rows
        )
        .unwrap(),
        _ => writeln!(
            out,
            "{} rows, {} failures, {} zero rows",
            s.rows, s.failures, s.zero_rows
        )
        .unwrap(),
    }
    out
}
