use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "sspade", version, about = "Self-similarly corrected Padé approximants")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Output format; `csv` unless set here or in the config file.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file (a directory for `tables`); stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Significant digits in the human-readable summary on stderr.
    #[arg(long, global = true)]
    pub precision: Option<usize>,
    /// TOML file with defaults for `format`, `out`, `precision` and `grid`.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Thomas-Fermi case study.
    Tf(CaseArgs),
    /// NLS vortex case study.
    Nls(CaseArgs),
    /// Ruina-Dieterich case study.
    Rd(CaseArgs),
    /// Padé approximants of a series.
    #[command(subcommand)]
    Pade(PadeCmd),
    /// Nested root approximants.
    #[command(subcommand)]
    Root(RootCmd),
    /// Corrected approximants.
    #[command(subcommand)]
    Corrected(CorrectedCmd),
    /// Large-variable exponent of a series.
    Exponent(ExponentArgs),
    /// Regenerate all published tables and compare them with the fixtures.
    Tables,
}

#[derive(Debug, Args)]
pub struct CaseArgs {
    /// Order k of the corrected approximant f_k*.
    #[arg(long)]
    pub order: Option<usize>,
    /// Abscissas `lo:hi:n` (n uniform points, ends included).
    #[arg(long)]
    pub grid: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum PadeCmd {
    /// Fit P_{M/N} to a series with alpha = 0.
    Fit {
        #[arg(long)]
        series: PathBuf,
        #[arg(short = 'M')]
        m: usize,
        #[arg(short = 'N')]
        n: usize,
        /// Limit at infinity (diagonal approximants only).
        #[arg(long = "inf")]
        inf: Option<f64>,
    },
    /// Evaluate a Padé approximant on a grid.
    Eval {
        #[arg(long)]
        pade: PathBuf,
        #[arg(long)]
        grid: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum RootCmd {
    /// Calibrate a root approximant from a template and both asymptotes.
    Match {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        large: PathBuf,
        #[arg(long)]
        template: PathBuf,
    },
    /// Evaluate a root approximant or mixture on a grid.
    Eval {
        #[arg(long)]
        root: PathBuf,
        #[arg(long)]
        grid: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CorrectedCmd {
    /// Build `f* = f_irr P_{M/N}`. With `--large`, a two-point fit keeping
    /// `--small-order` conditions at the origin.
    Build {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        irr: PathBuf,
        #[arg(short = 'M')]
        m: usize,
        #[arg(short = 'N')]
        n: usize,
        #[arg(long = "inf")]
        inf: Option<f64>,
        #[arg(long)]
        large: Option<PathBuf>,
        #[arg(long)]
        small_order: Option<usize>,
        #[arg(long, default_value = "f*")]
        label: String,
    },
    /// Evaluate a corrected bundle on a grid.
    Eval {
        #[arg(long)]
        bundle: PathBuf,
        #[arg(long)]
        grid: Option<String>,
    },
}

#[derive(Debug, Args)]
pub struct ExponentArgs {
    #[arg(long)]
    pub series: PathBuf,
    /// Highest diagonal Padé degree.
    #[arg(short = 'N', default_value_t = 3)]
    pub n: usize,
    /// Root approximant or mixture used as template.
    #[arg(long)]
    pub template: Option<PathBuf>,
}

/// Contents of `--config`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub precision: Option<usize>,
    pub grid: Option<String>,
}

/// Settings after merging flags over the config file.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub format: Format,
    pub out: Option<PathBuf>,
    pub precision: usize,
    pub grid: Option<String>,
}

impl RunConfig {
    pub fn resolve(g: &GlobalOpts) -> Result<Self, CliError> {
        let file = match &g.config {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| CliError::Parse(format!("{}: {e}", p.display())))?;
                toml::from_str::<ConfigFile>(&text).map_err(|e| CliError::Parse(format!("{}: {e}", p.display())))?
            }
            None => ConfigFile::default(),
        };
        let precision = g.precision.or(file.precision).unwrap_or(6);
        if precision == 0 || precision > 17 {
            return Err(CliError::Parse(format!("precision must be between 1 and 17, got {precision}")));
        }
        Ok(RunConfig {
            format: g.format.or(file.format).unwrap_or(Format::Csv),
            out: g.out.clone().or(file.out),
            precision,
            grid: file.grid,
        })
    }

    /// Grid from the flag, then the config file, then `default`.
    pub fn grid(&self, flag: &Option<String>, default: &[f64]) -> Result<Vec<f64>, CliError> {
        match flag.as_ref().or(self.grid.as_ref()) {
            Some(s) => parse_grid(s),
            None => Ok(default.to_vec()),
        }
    }
}

pub fn parse_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Parse(format!("grid must be lo:hi:n, got {s:?}"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if !(lo.is_finite() && hi.is_finite()) || n == 0 || (n > 1 && hi <= lo) || (n == 1 && hi != lo) {
        return Err(bad());
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect())
}
