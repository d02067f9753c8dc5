//! Regeneration of the published error tables from the shipped fixtures.

use serde::{Deserialize, Serialize};

use super::baselines::baseline;
use super::{nls, reference_solution, ruina_dieterich, signed_residual, thomas_fermi};
use super::{percent_error, Approximant, ProblemDefinition};
use crate::error::{Error, Result};

pub const TABLES: [usize; 8] = [1, 2, 3, 4, 5, 6, 7, 8];

const FIXTURES: [&str; 8] = [
    include_str!("../../fixtures/table1.json"),
    include_str!("../../fixtures/table2.json"),
    include_str!("../../fixtures/table3.json"),
    include_str!("../../fixtures/table4.json"),
    include_str!("../../fixtures/table5.json"),
    include_str!("../../fixtures/table6.json"),
    include_str!("../../fixtures/table7.json"),
    include_str!("../../fixtures/table8.json"),
];

/// Numbers are kept as printed; [`parse`] converts them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub table: usize,
    pub problem: String,
    pub variable: String,
    pub abscissa: Vec<String>,
    pub reference: FixtureReference,
    pub rows: Vec<FixtureRow>,
    #[serde(default)]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureReference {
    /// `computed`: errors are taken against the in-repo reference solution;
    /// `published`: against `values`.
    pub source: String,
    #[serde(default)]
    pub values: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureRow {
    pub approximant: String,
    pub printed: String,
    #[serde(default)]
    pub values: Option<Vec<String>>,
    #[serde(default)]
    pub errors: Option<Vec<String>>,
    #[serde(default)]
    pub defects: Option<Vec<String>>,
}

pub fn parse(v: &[String]) -> Result<Vec<f64>> {
    v.iter()
        .map(|s| s.parse::<f64>().map_err(|e| Error::Parameter(format!("fixture number {s:?}: {e}"))))
        .collect()
}

pub fn fixture(table: usize) -> Result<Fixture> {
    let text = table
        .checked_sub(1)
        .and_then(|i| FIXTURES.get(i))
        .ok_or_else(|| Error::Parameter(format!("no table {table}; tables are numbered 1 to 8")))?;
    serde_json::from_str(text).map_err(|e| Error::Parameter(format!("fixture for table {table}: {e}")))
}

/// Default problem for a case-study key (`tf`, `nls`, `rd`).
pub fn case_problem(key: &str) -> Result<ProblemDefinition> {
    match key {
        "tf" => Ok(thomas_fermi::problem()),
        "nls" => nls::problem(nls::C_GS),
        "rd" => ruina_dieterich::problem(ruina_dieterich::B, ruina_dieterich::M, ruina_dieterich::F0),
        _ => Err(Error::Parameter(format!("unknown case study {key:?}"))),
    }
}

fn corrected_order(name: &str) -> Option<usize> {
    name.strip_prefix('f')?.strip_suffix('*')?.parse().ok()
}

/// A corrected approximant `f<k>*` of the case study, or a named baseline.
pub fn approximant(key: &str, p: &ProblemDefinition, name: &str) -> Result<Box<dyn Approximant>> {
    if let Some(k) = corrected_order(name) {
        let f = match key {
            "tf" => thomas_fermi::corrected(p, k)?,
            "nls" if k == 4 => nls::f4_star(p)?,
            "nls" => return Err(Error::Parameter(format!("NLS has the corrected approximant f4* only, not {name}"))),
            "rd" => ruina_dieterich::corrected(p, k)?,
            _ => return Err(Error::Parameter(format!("unknown case study {key:?}"))),
        };
        return Ok(Box::new(f));
    }
    Ok(Box::new(baseline(name)?))
}

/// One cell of a regenerated table. `reference` is the value the percent
/// error is taken against.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub table: usize,
    pub approximant: String,
    pub x: f64,
    pub value: f64,
    pub reference: f64,
    pub percent_error: Option<f64>,
    /// Signed residual `E[f](x)`.
    pub defect: f64,
}

pub fn regenerate(table: usize) -> Result<Vec<TableRow>> {
    let fx = fixture(table)?;
    let p = case_problem(&fx.problem)?;
    let xs = parse(&fx.abscissa)?;
    let reference = match fx.reference.source.as_str() {
        "published" => parse(fx.reference.values.as_deref().unwrap_or_default())?,
        "computed" => reference_solution(&p, &xs)?.values,
        s => return Err(Error::Parameter(format!("unknown reference source {s:?} in table {table}"))),
    };
    if reference.len() != xs.len() {
        return Err(Error::Parameter(format!("table {table}: reference and abscissa differ in length")));
    }
    let mut rows = Vec::new();
    for r in &fx.rows {
        let f = approximant(&fx.problem, &p, &r.approximant)?;
        for (x, rf) in xs.iter().zip(&reference) {
            let value = f.value(*x);
            rows.push(TableRow {
                table,
                approximant: r.approximant.clone(),
                x: *x,
                value,
                reference: *rf,
                percent_error: percent_error(value, *rf),
                defect: signed_residual(&p, f.as_ref(), *x),
            });
        }
    }
    Ok(rows)
}

pub const CSV_HEADER: &str = "table,approximant,x,value,reference,percent_error,defect";

/// Long-format CSV with full double precision.
pub fn to_csv(rows: &[TableRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let pe = r.percent_error.map(|v| format!("{v:e}")).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{:e},{:e},{:e},{},{:e}\n",
            r.table, r.approximant, r.x, r.value, r.reference, pe, r.defect
        ));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableSummary {
    pub table: usize,
    pub cells: usize,
    /// Largest `|regenerated - published| / |published|` over value cells.
    pub max_value_deviation: f64,
    /// Largest difference of percent errors, in percentage points.
    pub max_error_deviation: f64,
    pub max_defect_deviation: f64,
    /// Largest relative deviation of the in-repo reference from the
    /// published reference row, when the table prints one.
    pub max_reference_deviation: Option<f64>,
}

pub fn compare(table: usize, rows: &[TableRow]) -> Result<TableSummary> {
    let fx = fixture(table)?;
    let n = fx.abscissa.len();
    let mut s = TableSummary {
        table,
        cells: 0,
        max_value_deviation: 0.0,
        max_error_deviation: 0.0,
        max_defect_deviation: 0.0,
        max_reference_deviation: None,
    };
    for (i, r) in fx.rows.iter().enumerate() {
        let regen = rows
            .get(i * n..(i + 1) * n)
            .filter(|c| c.iter().all(|c| c.approximant == r.approximant))
            .ok_or_else(|| Error::Parameter(format!("regenerated rows do not follow table {table}")))?;
        if let Some(v) = &r.values {
            for (c, p) in regen.iter().zip(parse(v)?) {
                s.max_value_deviation = s.max_value_deviation.max(((c.value - p) / p).abs());
                s.cells += 1;
            }
        }
        if let Some(v) = &r.errors {
            for (c, p) in regen.iter().zip(parse(v)?) {
                let e = c.percent_error.unwrap_or(f64::NAN);
                s.max_error_deviation = s.max_error_deviation.max((e - p).abs());
                s.cells += 1;
            }
        }
        if let Some(v) = &r.defects {
            for (c, p) in regen.iter().zip(parse(v)?) {
                s.max_defect_deviation = s.max_defect_deviation.max((c.defect - p).abs());
                s.cells += 1;
            }
        }
    }
    if let (Some(v), "computed") = (&fx.reference.values, fx.reference.source.as_str()) {
        let published = parse(v)?;
        let dev = rows
            .iter()
            .take(n)
            .zip(&published)
            .map(|(c, p)| ((c.reference - p) / p).abs())
            .fold(0.0, f64::max);
        s.max_reference_deviation = Some(dev);
    }
    Ok(s)
}
