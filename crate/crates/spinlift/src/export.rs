//! Machine-readable dumps of classification results with exact Spin coefficients.

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{family_order, Catalog, FORMAT_VERSION};
use crate::clifford::Rational;
use crate::error::{Error, Result};
use crate::lift::{base_preimages, lift, LiftResult};
use crate::record::AlmostBieberbachRecord;
use crate::spin::SpinElement;

fn number(q: &num_bigint::BigInt) -> Value {
    q.to_i64()
        .map_or_else(|| Value::String(q.to_string()), Value::from)
}

fn quadruple(a: &Rational, b: &Rational) -> Value {
    json!({
        "a_num": number(a.numer()),
        "a_den": number(a.denom()),
        "b_num": number(b.numer()),
        "b_den": number(b.denom()),
    })
}

/// `{"dim": n, "terms": [{"blade": "e1e2", "a_num": .., "a_den": .., "b_num": .., "b_den": ..}]}`
/// with each coefficient `a + b√2`.
pub fn spin_to_json(x: &SpinElement) -> Value {
    let terms: Vec<Value> = x
        .value()
        .terms()
        .map(|(blade, c)| {
            let mut t = quadruple(c.rational_part(), c.sqrt2_part());
            t["blade"] = Value::String(blade.to_string());
            t
        })
        .collect();
    json!({ "dim": x.dim(), "terms": terms })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExportRow {
    pub params: Vec<i64>,
    pub params_mod2: Vec<i64>,
    pub count: u64,
    pub strategy: String,
    pub parallelizable: bool,
    pub valid_assignments: Vec<Vec<i8>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExportFamily {
    pub family: String,
    pub holonomy: String,
    pub generators: Vec<String>,
    /// `None` when the holonomy has no signed-permutation realization.
    pub base_preimages: Option<Vec<Value>>,
    pub rows: Vec<ExportRow>,
}

fn export_row(params: &[i64], result: &LiftResult) -> ExportRow {
    ExportRow {
        params: params.to_vec(),
        params_mod2: params.iter().map(|p| p.rem_euclid(2)).collect(),
        count: result.count,
        strategy: result.strategy.to_string(),
        parallelizable: result.parallelizable,
        valid_assignments: result.valid_assignments.iter().map(|a| a.signs()).collect(),
    }
}

pub fn export_family(
    record: &AlmostBieberbachRecord,
    params: Option<&[i64]>,
) -> Result<ExportFamily> {
    let base = match base_preimages(record) {
        Ok(b) => Some(b.iter().map(spin_to_json).collect()),
        Err(Error::UnsupportedScalar) => None,
        Err(e) => return Err(e),
    };
    let classes: Vec<Vec<i64>> = match params {
        Some(p) => vec![p.to_vec()],
        None => record.parameter_classes.clone(),
    };
    let rows = classes
        .iter()
        .map(|p| Ok(export_row(p, &lift(record, &record.params(p)?)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExportFamily {
        family: record.family.clone(),
        holonomy: record.holonomy.to_string(),
        generators: record.presentation.names(),
        base_preimages: base,
        rows,
    })
}

pub fn export_catalog(
    catalog: &Catalog,
    family: Option<&str>,
    params: Option<&[i64]>,
) -> Result<Vec<ExportFamily>> {
    let records: Vec<&AlmostBieberbachRecord> = match family {
        Some(f) => vec![catalog.get(f)?],
        None => catalog.records().iter().collect(),
    };
    let mut out = records
        .par_iter()
        .map(|r| export_family(r, params))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| family_order(&a.family, &b.family));
    Ok(out)
}

pub fn export_json(families: &[ExportFamily]) -> String {
    let doc = json!({ "format_version": FORMAT_VERSION, "families": families });
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}
