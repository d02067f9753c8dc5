use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use sspade::problems::tables::{self, TableSummary};
use sspade::problems::{
    nls, reference_solution, ruina_dieterich, signed_residual, thomas_fermi, ProblemDefinition,
};
use sspade::{
    large_variable_exponent, match_parameters, AsymptoticForm, CorrectedApproximant, GeneralizedSeries, LevelTemplate,
    NestedRootApproximant, PadeApproximant, RootMixture,
};

use crate::args::{CaseArgs, Cli, Command, CorrectedCmd, ExponentArgs, Format, PadeCmd, RootCmd, RunConfig};
use crate::output::{display, emit, num, opt, to_value, write_text, Document};
use crate::CliError;

pub fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(&cli.global)?;
    match cli.command {
        Command::Tf(a) => case_study(&cfg, Case::Tf, &a),
        Command::Nls(a) => case_study(&cfg, Case::Nls, &a),
        Command::Rd(a) => case_study(&cfg, Case::Rd, &a),
        Command::Pade(c) => pade(&cfg, c),
        Command::Root(c) => root(&cfg, c),
        Command::Corrected(c) => corrected(&cfg, c),
        Command::Exponent(a) => exponent(&cfg, a),
        Command::Tables => all_tables(&cfg),
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// A root mixture, or a single root approximant taken with weight one.
fn read_irr(path: &Path) -> Result<RootMixture, CliError> {
    let v: serde_json::Value = read_json(path)?;
    if v.is_array() {
        serde_json::from_value(v).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
    } else {
        let r: NestedRootApproximant =
            serde_json::from_value(v).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        Ok(RootMixture::single(r))
    }
}

#[derive(Clone, Copy)]
enum Case {
    Tf,
    Nls,
    Rd,
}

#[derive(Serialize)]
struct CaseRow {
    approximant: String,
    x: f64,
    value: f64,
    reference: f64,
    percent_error: Option<f64>,
    defect: f64,
}

#[derive(Serialize)]
struct CaseSummary {
    max_abs_percent_error: f64,
    max_abs_defect: f64,
    /// Ruina-Dieterich only: sup |f* - f| on 10^4 uniform points of [0, t_c].
    #[serde(skip_serializing_if = "Option::is_none")]
    max_deviation: Option<f64>,
}

const TF_GRID: [f64; 5] = [0.1, 1.0, 40.0, 100.0, 1000.0];
const NLS_GRID: [f64; 6] = [0.1, 1.0, 2.0, 3.0, 5.0, 7.0];
const RD_GRID: [f64; 6] = [0.05, 0.1, 0.2, 0.25, 0.3, 0.32];

fn case_study(cfg: &RunConfig, case: Case, a: &CaseArgs) -> Result<(), CliError> {
    let (p, f, default_grid): (ProblemDefinition, CorrectedApproximant, &[f64]) = match case {
        Case::Tf => {
            let p = thomas_fermi::problem();
            let f = thomas_fermi::corrected(&p, a.order.unwrap_or(8))?;
            (p, f, &TF_GRID)
        }
        Case::Nls => {
            let p = nls::problem(nls::C_GS)?;
            if let Some(k) = a.order.filter(|k| *k != 4) {
                return Err(sspade::Error::Parameter(format!("NLS has the corrected approximant f4* only, not f{k}*")).into());
            }
            let f = nls::f4_star(&p)?;
            (p, f, &NLS_GRID)
        }
        Case::Rd => {
            let p = ruina_dieterich::default_problem();
            let f = ruina_dieterich::corrected(&p, a.order.unwrap_or(10))?;
            (p, f, &RD_GRID)
        }
    };
    let grid = cfg.grid(&a.grid, default_grid)?;
    let reference = reference_solution(&p, &grid)?;
    let mut rows = Vec::with_capacity(grid.len());
    for &x in &grid {
        let r = reference.at(x).expect("reference covers its grid");
        let value = f.evaluate(x)?;
        rows.push(CaseRow {
            approximant: f.label.clone(),
            x,
            value,
            reference: r,
            percent_error: sspade::problems::percent_error(value, r),
            defect: signed_residual(&p, &f, x),
        });
    }
    let max_deviation = match case {
        Case::Rd => Some(ruina_dieterich::deviation_sup(&p, &f, 10_000)?),
        _ => None,
    };
    let summary = CaseSummary {
        max_abs_percent_error: rows.iter().filter_map(|r| r.percent_error).map(f64::abs).fold(0.0, f64::max),
        max_abs_defect: rows.iter().map(|r| r.defect.abs()).filter(|d| d.is_finite()).fold(0.0, f64::max),
        max_deviation,
    };

    let d = cfg.precision;
    eprintln!(
        "{}: {} max |error| = {}%, max |defect| = {}",
        p.name,
        f.label,
        display(summary.max_abs_percent_error, d),
        display(summary.max_abs_defect, d)
    );
    if let Some(m) = summary.max_deviation {
        eprintln!("{}: {} max deviation on [0, t_c] = {}", p.name, f.label, display(m, d));
    }

    let mut csv = String::from("approximant,x,value,reference,percent_error,defect\n");
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.approximant,
            num(r.x),
            num(r.value),
            num(r.reference),
            opt(r.percent_error),
            num(r.defect)
        ));
    }
    let json = json!({
        "problem": p.name,
        "approximant": to_value(&f)?,
        "reference": to_value(&reference.metadata)?,
        "rows": to_value(&rows)?,
        "summary": to_value(&summary)?,
    });
    emit(cfg, &Document { json, csv })
}

#[derive(Serialize)]
struct Point {
    x: f64,
    value: f64,
}

fn points(cfg: &RunConfig, grid: &Option<String>, f: impl Fn(f64) -> sspade::Result<f64>) -> Result<Document, CliError> {
    let g = cfg.grid(grid, &[])?;
    if g.is_empty() {
        return Err(CliError::Parse("an evaluation grid is required (--grid lo:hi:n)".into()));
    }
    let mut pts = Vec::with_capacity(g.len());
    for x in g {
        pts.push(Point { x, value: f(x)? });
    }
    let mut csv = String::from("x,value\n");
    for p in &pts {
        csv.push_str(&format!("{},{}\n", num(p.x), num(p.value)));
    }
    Ok(Document { json: to_value(&pts)?, csv })
}

fn pade(cfg: &RunConfig, c: PadeCmd) -> Result<(), CliError> {
    match c {
        PadeCmd::Fit { series, m, n, inf } => {
            let s: GeneralizedSeries = read_json(&series)?;
            let p = PadeApproximant::from_series(&s, m, n, inf)?;
            emit(cfg, &Document::flat(&p)?)
        }
        PadeCmd::Eval { pade, grid } => {
            let p: PadeApproximant = read_json(&pade)?;
            emit(cfg, &points(cfg, &grid, |x| Ok(p.evaluate(x)))?)
        }
    }
}

fn root(cfg: &RunConfig, c: RootCmd) -> Result<(), CliError> {
    match c {
        RootCmd::Match { series, large, template } => {
            let s: GeneralizedSeries = read_json(&series)?;
            let l: AsymptoticForm = read_json(&large)?;
            let t: Vec<LevelTemplate> = read_json(&template)?;
            let r = match_parameters(&t, &s, &l)?;
            emit(cfg, &Document::flat(&r)?)
        }
        RootCmd::Eval { root, grid } => {
            let r = read_irr(&root)?;
            emit(cfg, &points(cfg, &grid, |x| r.evaluate(x))?)
        }
    }
}

fn corrected(cfg: &RunConfig, c: CorrectedCmd) -> Result<(), CliError> {
    match c {
        CorrectedCmd::Build { series, irr, m, n, inf, large, small_order, label } => {
            let s: GeneralizedSeries = read_json(&series)?;
            let irr = read_irr(&irr)?;
            let f = match large {
                Some(lp) => {
                    if inf.is_some() {
                        return Err(CliError::Parse("--inf and --large are exclusive".into()));
                    }
                    let l: AsymptoticForm = read_json(&lp)?;
                    let k = small_order.unwrap_or(m + n);
                    CorrectedApproximant::build_two_point(&s, &l, &irr, m, n, k, &label)?
                }
                None => {
                    if small_order.is_some() {
                        return Err(CliError::Parse("--small-order needs --large".into()));
                    }
                    CorrectedApproximant::build(&s, &irr, m, n, inf, &label)?
                }
            };
            emit(cfg, &Document::flat(&f)?)
        }
        CorrectedCmd::Eval { bundle, grid } => {
            let f: CorrectedApproximant = read_json(&bundle)?;
            emit(cfg, &points(cfg, &grid, |x| f.evaluate(x))?)
        }
    }
}

fn exponent(cfg: &RunConfig, a: ExponentArgs) -> Result<(), CliError> {
    let s: GeneralizedSeries = read_json(&a.series)?;
    let t = a.template.as_deref().map(read_irr).transpose()?;
    let e = large_variable_exponent(&s, a.n, t.as_ref())?;
    eprintln!("beta = {}", display(e.beta, cfg.precision));
    emit(cfg, &Document::flat(&e)?)
}

fn all_tables(cfg: &RunConfig) -> Result<(), CliError> {
    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("tables"));
    std::fs::create_dir_all(&dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut summaries: Vec<TableSummary> = Vec::new();
    for t in tables::TABLES {
        let rows = tables::regenerate(t)?;
        let (name, text) = match cfg.format {
            Format::Csv => (format!("table{t}.csv"), tables::to_csv(&rows)),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&rows).map_err(|e| CliError::Io(e.to_string()))?;
                s.push('\n');
                (format!("table{t}.json"), s)
            }
        };
        write_text(&dir.join(name), &text)?;
        let s = tables::compare(t, &rows)?;
        eprintln!(
            "table {t}: {} cells, max value deviation {}, max error deviation {} pp, max defect deviation {}",
            s.cells,
            display(s.max_value_deviation, cfg.precision),
            display(s.max_error_deviation, cfg.precision),
            display(s.max_defect_deviation, cfg.precision)
        );
        summaries.push(s);
    }
    let mut s = serde_json::to_string_pretty(&summaries).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    write_text(&dir.join("summary.json"), &s)
}
