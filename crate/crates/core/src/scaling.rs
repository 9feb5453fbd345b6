//! Conceptual scaling of tabular data into formal contexts.
//!
//! Numeric features are cut at `k - 1` equidistant points between the
//! observed minimum and maximum, `c_j = lo + j·(hi - lo)/k`:
//!
//! * nominal: `k` attributes, one per bin `[c_{j-1}, c_j)` (last bin closed),
//! * ordinal: `k - 1` attributes `≥ c_j`,
//! * interordinal: `2(k - 1)` attributes, all `≤ c_j` followed by all `≥ c_j`.
//!
//! Categorical features always get one attribute per distinct value, in
//! sorted order. Missing cells contribute no attribute.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::AttributeSet;
use crate::context::FormalContext;
use crate::error::{Error, Result};

/// Cell text treated as a missing value (besides an empty cell).
pub const MISSING_TOKEN: &str = "?";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColumnKind {
    Numeric,
    Categorical,
}

impl FromStr for ColumnKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "n" | "num" | "numeric" => Ok(ColumnKind::Numeric),
            "c" | "cat" | "categorical" => Ok(ColumnKind::Categorical),
            other => Err(Error::InvalidParameter(format!(
                "unknown column kind `{other}`"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Column {
    pub name: String,
    pub kind: ColumnKind,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Number(f64),
    Category(String),
    Missing,
}

/// Rectangular many-valued table.
#[derive(Clone, Debug, PartialEq)]
pub struct DataTable {
    columns: Vec<Column>,
    rows: Vec<Vec<Cell>>,
}

impl DataTable {
    pub fn new(columns: Vec<Column>, rows: Vec<Vec<Cell>>) -> Result<Self> {
        for (r, row) in rows.iter().enumerate() {
            if row.len() != columns.len() {
                return Err(Error::InvalidParameter(format!(
                    "row {} has {} cells, expected {}",
                    r + 1,
                    row.len(),
                    columns.len()
                )));
            }
            for (cell, col) in row.iter().zip(&columns) {
                let ok = match (cell, col.kind) {
                    (Cell::Missing, _) => true,
                    (Cell::Number(v), ColumnKind::Numeric) => v.is_finite(),
                    (Cell::Category(_), ColumnKind::Categorical) => true,
                    _ => false,
                };
                if !ok {
                    return Err(Error::InvalidParameter(format!(
                        "row {}: cell {cell:?} does not fit column `{}`",
                        r + 1,
                        col.name
                    )));
                }
            }
        }
        Ok(Self { columns, rows })
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    /// Removes rows with a missing cell; returns how many were removed.
    pub fn drop_missing_rows(&mut self) -> usize {
        let before = self.rows.len();
        self.rows
            .retain(|row| !row.iter().any(|c| matches!(c, Cell::Missing)));
        before - self.rows.len()
    }
}

fn is_missing(text: &str) -> bool {
    text.is_empty() || text == MISSING_TOKEN
}

fn parse_number(text: &str) -> Option<f64> {
    text.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Parses CSV into a table.
///
/// Without a header, columns are named `f1, f2, ..`. When `kinds` is `None`
/// a column is numeric if every non-missing cell parses as a finite number.
pub fn read_csv(bytes: &[u8], header: bool, kinds: Option<&[ColumnKind]>) -> Result<DataTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(header)
        .trim(csv::Trim::All)
        .from_reader(bytes);

    let mut raw: Vec<(usize, Vec<String>)> = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        raw.push((line, record.iter().map(str::to_string).collect()));
    }
    let names: Vec<String> = if header {
        reader.headers()?.iter().map(str::to_string).collect()
    } else {
        let width = raw.first().map_or(0, |(_, r)| r.len());
        (1..=width).map(|i| format!("f{i}")).collect()
    };

    let kinds: Vec<ColumnKind> = match kinds {
        Some(k) if k.len() != names.len() => {
            return Err(Error::InvalidParameter(format!(
                "{} column kinds for {} columns",
                k.len(),
                names.len()
            )))
        }
        Some(k) => k.to_vec(),
        None => (0..names.len())
            .map(|c| {
                let numeric = raw
                    .iter()
                    .map(|(_, r)| r[c].as_str())
                    .filter(|t| !is_missing(t))
                    .all(|t| parse_number(t).is_some());
                if numeric {
                    ColumnKind::Numeric
                } else {
                    ColumnKind::Categorical
                }
            })
            .collect(),
    };

    let mut rows = Vec::with_capacity(raw.len());
    for (line, record) in raw {
        let mut row = Vec::with_capacity(record.len());
        for (text, (kind, name)) in record.into_iter().zip(kinds.iter().zip(&names)) {
            let cell = if is_missing(&text) {
                Cell::Missing
            } else if *kind == ColumnKind::Numeric {
                Cell::Number(parse_number(&text).ok_or_else(|| {
                    Error::parse(line, format!("column `{name}`: `{text}` is not a number"))
                })?)
            } else {
                Cell::Category(text)
            };
            row.push(cell);
        }
        rows.push(row);
    }
    let columns = names
        .into_iter()
        .zip(kinds)
        .map(|(name, kind)| Column { name, kind })
        .collect();
    DataTable::new(columns, rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalingMethod {
    #[serde(rename = "nom")]
    Nominal,
    #[serde(rename = "ord")]
    Ordinal,
    #[serde(rename = "inter")]
    Interordinal,
}

impl ScalingMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            ScalingMethod::Nominal => "nom",
            ScalingMethod::Ordinal => "ord",
            ScalingMethod::Interordinal => "inter",
        }
    }
}

impl fmt::Display for ScalingMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScalingMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "nom" | "nominal" => Ok(ScalingMethod::Nominal),
            "ord" | "ordinal" => Ok(ScalingMethod::Ordinal),
            "inter" | "interordinal" => Ok(ScalingMethod::Interordinal),
            other => Err(Error::InvalidParameter(format!(
                "unknown scaling `{other}`"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScalingSpec {
    method: ScalingMethod,
    k: usize,
}

impl ScalingSpec {
    pub fn new(method: ScalingMethod, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!(
                "k must be at least 2, got {k}"
            )));
        }
        Ok(Self { method, k })
    }

    pub fn method(&self) -> ScalingMethod {
        self.method
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// How one feature was scaled.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureReport {
    pub name: String,
    pub kind: ColumnKind,
    /// Empty for categorical and constant features.
    pub cutpoints: Vec<f64>,
    pub attributes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub method: ScalingMethod,
    pub k: usize,
    pub features: Vec<FeatureReport>,
}

#[derive(Clone, Debug)]
pub struct Scaled {
    pub context: FormalContext,
    pub report: ScalingReport,
}

fn format_cut(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Per-row attribute indices local to one feature.
type LocalRows = Vec<Vec<usize>>;

fn scale_numeric(
    name: &str,
    values: &[Option<f64>],
    spec: ScalingSpec,
) -> (FeatureReport, LocalRows) {
    let present = values.iter().flatten().copied();
    let lo = present.clone().fold(f64::INFINITY, f64::min);
    let hi = present.fold(f64::NEG_INFINITY, f64::max);
    let mut report = FeatureReport {
        name: name.to_string(),
        kind: ColumnKind::Numeric,
        cutpoints: Vec::new(),
        attributes: Vec::new(),
        note: None,
    };

    if lo >= hi {
        let why = if lo.is_finite() {
            "constant"
        } else {
            "all values missing"
        };
        let rows = match spec.method {
            ScalingMethod::Nominal if lo.is_finite() => {
                report.attributes.push(format!("{name}=bin1"));
                values
                    .iter()
                    .map(|v| v.map(|_| 0).into_iter().collect())
                    .collect()
            }
            _ => vec![Vec::new(); values.len()],
        };
        report.note = Some(format!("{why}, {} attribute(s)", report.attributes.len()));
        return (report, rows);
    }

    let k = spec.k;
    let cuts: Vec<f64> = (1..k)
        .map(|j| lo + j as f64 * (hi - lo) / k as f64)
        .collect();
    report.attributes = match spec.method {
        ScalingMethod::Nominal => (1..=k).map(|j| format!("{name}=bin{j}")).collect(),
        ScalingMethod::Ordinal => cuts
            .iter()
            .map(|&c| format!("{name}>={}", format_cut(c)))
            .collect(),
        ScalingMethod::Interordinal => cuts
            .iter()
            .map(|&c| format!("{name}<={}", format_cut(c)))
            .chain(cuts.iter().map(|&c| format!("{name}>={}", format_cut(c))))
            .collect(),
    };
    let rows = values
        .iter()
        .map(|v| {
            let Some(v) = *v else {
                return Vec::new();
            };
            match spec.method {
                ScalingMethod::Nominal => vec![cuts.iter().filter(|&&c| c <= v).count()],
                ScalingMethod::Ordinal => (0..k - 1).filter(|&j| v >= cuts[j]).collect(),
                ScalingMethod::Interordinal => (0..k - 1)
                    .filter(|&j| v <= cuts[j])
                    .chain((0..k - 1).filter(|&j| v >= cuts[j]).map(|j| j + k - 1))
                    .collect(),
            }
        })
        .collect();
    report.cutpoints = cuts;
    (report, rows)
}

fn scale_categorical(name: &str, values: &[Option<&str>]) -> (FeatureReport, LocalRows) {
    let mut categories: Vec<&str> = values.iter().flatten().copied().collect();
    categories.sort_unstable();
    categories.dedup();
    let rows = values
        .iter()
        .map(|v| {
            v.map(|v| categories.binary_search(&v).expect("collected above"))
                .into_iter()
                .collect()
        })
        .collect();
    let report = FeatureReport {
        name: name.to_string(),
        kind: ColumnKind::Categorical,
        cutpoints: Vec::new(),
        attributes: categories.iter().map(|c| format!("{name}={c}")).collect(),
        note: None,
    };
    (report, rows)
}

/// Binarizes `table`. Objects are the table rows in order, named `r1, r2, ..`.
pub fn scale(table: &DataTable, spec: ScalingSpec) -> Result<Scaled> {
    if table.n_rows() == 0 {
        return Err(Error::InvalidParameter(
            "cannot scale an empty table".into(),
        ));
    }
    let n_rows = table.n_rows();
    let mut features = Vec::with_capacity(table.columns.len());
    let mut local = Vec::with_capacity(table.columns.len());
    for (c, col) in table.columns.iter().enumerate() {
        let (report, rows) = match col.kind {
            ColumnKind::Numeric => {
                let values: Vec<Option<f64>> = table
                    .rows
                    .iter()
                    .map(|r| match r[c] {
                        Cell::Number(v) => Some(v),
                        _ => None,
                    })
                    .collect();
                scale_numeric(&col.name, &values, spec)
            }
            ColumnKind::Categorical => {
                let values: Vec<Option<&str>> = table
                    .rows
                    .iter()
                    .map(|r| match &r[c] {
                        Cell::Category(s) => Some(s.as_str()),
                        _ => None,
                    })
                    .collect();
                scale_categorical(&col.name, &values)
            }
        };
        features.push(report);
        local.push(rows);
    }

    let n_attributes: usize = features.iter().map(|f| f.attributes.len()).sum();
    let mut rows = vec![AttributeSet::empty(n_attributes); n_rows];
    let mut offset = 0;
    for (report, feature_rows) in features.iter().zip(&local) {
        for (row, attrs) in rows.iter_mut().zip(feature_rows) {
            for &a in attrs {
                row.insert(offset + a);
            }
        }
        offset += report.attributes.len();
    }
    let attribute_names = features.iter().flat_map(|f| f.attributes.clone()).collect();
    let object_names = (1..=n_rows).map(|i| format!("r{i}")).collect();
    let context = FormalContext::with_names(String::new(), rows, object_names, attribute_names)?;
    Ok(Scaled {
        context,
        report: ScalingReport {
            method: spec.method,
            k: spec.k,
            features,
        },
    })
}

/// Drops every attribute shared by all objects.
pub fn remove_full_columns(ctx: &FormalContext) -> FormalContext {
    let keep: Vec<usize> = (0..ctx.n_attributes())
        .filter(|&y| ctx.columns()[y].len() != ctx.n_objects())
        .collect();
    ctx.select_attributes(&keep)
        .expect("selected attributes are in range")
}
