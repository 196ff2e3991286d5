//! Run configuration shared by the argument parser and config files.
//!
//! A [`RunConfig`] can be built from command-line arguments or read from a
//! TOML/JSON file; `--dump-config` writes the TOML form, which parses back to
//! an identical value.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use calvo_core::determinacy::Variant;
use calvo_core::dynamics::ShockDist;
use calvo_core::model_core::{preset, ModelParams};
use clap::{Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::scenarios::ScenarioName;
use crate::tables::TableId;

/// Largest number of points a sweep may contain.
pub const MAX_GRID_POINTS: usize = 1_000_000;

/// Environment variable naming the directory that relative `--output` paths resolve against.
pub const OUTPUT_DIR_ENV: &str = "CALVO_OUTPUT_DIR";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub params: ParamsSource,
    /// Field overrides applied on top of the parameter source.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub overrides: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    pub command: Command,
}

/// Where model parameters come from. Exactly one source per run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ParamsSource {
    Preset(String),
    /// TOML or JSON file with every `ModelParams` field.
    File(PathBuf),
}

impl Default for ParamsSource {
    fn default() -> Self {
        ParamsSource::Preset("benchmark".into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Coefficient family selected by `coeffs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Limit forms at π̄=0, σ=1, β=1; general forms otherwise.
    #[default]
    Auto,
    Limit,
    Trend,
    General,
}

mod defaults {
    use calvo_core::determinacy::Variant;
    use calvo_core::dynamics::SeOptions;

    pub fn variant() -> Variant {
        Variant::SqrtEps
    }
    pub fn model() -> String {
        "calvo".into()
    }
    pub fn alpha_w() -> f64 {
        0.75
    }
    pub fn theta_w() -> f64 {
        6.0
    }
    pub fn scan_tol() -> f64 {
        calvo_core::bifurcation::SCAN_TOL
    }
    pub fn c_p() -> f64 {
        50.0
    }
    pub fn one() -> f64 {
        1.0
    }
    pub fn taylor_m() -> usize {
        2
    }
    pub fn sim_periods() -> usize {
        100_000
    }
    pub fn scale() -> f64 {
        0.005
    }
    pub fn se_periods() -> usize {
        SeOptions::default().periods
    }
    pub fn damping() -> f64 {
        SeOptions::default().damping
    }
    pub fn se_tol() -> f64 {
        SeOptions::default().tol
    }
    pub fn max_iter() -> usize {
        SeOptions::default().max_iter
    }
    pub fn scenario_periods() -> usize {
        1_000_000
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Subcommand)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Command {
    /// Non-stochastic steady state, one row per trend inflation rate.
    Nss {
        /// Comma-separated trend inflation rates (alternative to `--grid pi_bar=…`).
        #[arg(long = "pi-bar", value_delimiter = ',', allow_hyphen_values = true)]
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        pi_bar: Vec<f64>,
    },
    /// Steady-state dispersion and its derivatives over a trend-inflation grid.
    Dispersion,
    /// Linearized Phillips, Euler and dispersion coefficients.
    Coeffs {
        #[arg(long, value_enum, default_value_t = Family::Auto)]
        #[serde(default)]
        family: Family,
    },
    /// Residual singular-surface coefficients.
    Surface,
    /// Root counts and existence verdict; with `--grid`, a classification map.
    Determinacy {
        #[arg(long, default_value = "sqrt_eps")]
        #[serde(default = "defaults::variant")]
        variant: Variant,
    },
    /// Common-root and constant-cancellation scan of a lag-polynomial system.
    Bifurcation {
        /// `calvo`, `wage` or `file:<path>` (JSON map equation → variable → coefficients).
        #[arg(long, default_value = "calvo")]
        #[serde(default = "defaults::model")]
        model: String,
        /// Wage non-reset probability for `--model wage`.
        #[arg(long, default_value_t = 0.75)]
        #[serde(default = "defaults::alpha_w")]
        alpha_w: f64,
        /// Labour-variety elasticity for `--model wage`.
        #[arg(long, default_value_t = 6.0)]
        #[serde(default = "defaults::theta_w")]
        theta_w: f64,
        #[arg(long, default_value_t = calvo_core::bifurcation::SCAN_TOL)]
        #[serde(default = "defaults::scan_tol")]
        tol: f64,
    },
    /// Slopes of the singular Calvo, corrected Calvo, Rotemberg, Lucas and Taylor curves.
    Compare {
        /// Rotemberg adjustment cost.
        #[arg(long, default_value_t = 50.0)]
        #[serde(default = "defaults::c_p")]
        c_p: f64,
        #[arg(long, default_value_t = 1.0)]
        #[serde(default = "defaults::one")]
        v_z: f64,
        #[arg(long, default_value_t = 1.0)]
        #[serde(default = "defaults::one")]
        v_m: f64,
        /// Taylor contract length.
        #[arg(long, default_value_t = 2)]
        #[serde(default = "defaults::taylor_m")]
        taylor_m: usize,
    },
    /// Simulates the solved linear system: CSV path or JSON summary.
    Simulate {
        #[arg(long, default_value = "sqrt_eps")]
        #[serde(default = "defaults::variant")]
        variant: Variant,
        #[arg(long = "T", visible_alias = "periods", default_value_t = 100_000)]
        #[serde(default = "defaults::sim_periods")]
        periods: usize,
        #[arg(long, default_value_t = 0.005)]
        #[serde(default = "defaults::scale")]
        scale_psi: f64,
        #[arg(long, default_value_t = 0.005)]
        #[serde(default = "defaults::scale")]
        scale_a: f64,
        #[arg(long, default_value = "normal")]
        #[serde(default)]
        dist: ShockDist,
    },
    /// Stochastic-equilibrium fixed point with the steady-state inequality report.
    SeFixedPoint {
        #[arg(long, default_value_t = 0.005)]
        #[serde(default = "defaults::scale")]
        scale_psi: f64,
        #[arg(long, default_value_t = 0.005)]
        #[serde(default = "defaults::scale")]
        scale_a: f64,
        #[arg(long = "T", visible_alias = "periods", default_value_t = defaults::se_periods())]
        #[serde(default = "defaults::se_periods")]
        periods: usize,
        #[arg(long, default_value_t = defaults::damping())]
        #[serde(default = "defaults::damping")]
        damping: f64,
        #[arg(long, default_value_t = defaults::se_tol())]
        #[serde(default = "defaults::se_tol")]
        tol: f64,
        #[arg(long, default_value_t = defaults::max_iter())]
        #[serde(default = "defaults::max_iter")]
        max_iter: usize,
        #[arg(long, default_value = "normal")]
        #[serde(default)]
        dist: ShockDist,
    },
    /// Recomputes the calibration tables and flags cells that differ from the printed values.
    Tables {
        #[arg(long, value_enum, ignore_case = true)]
        #[serde(default, skip_serializing_if = "Option::is_none")]
        which: Option<TableId>,
    },
    /// Named scenario reports (each uses its own fixed calibration).
    Scenario {
        #[arg(value_enum)]
        scenario: ScenarioName,
        /// Simulated periods for scenarios that simulate.
        #[arg(long = "T", visible_alias = "periods", default_value_t = 1_000_000)]
        #[serde(default = "defaults::scenario_periods")]
        periods: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Nss { .. } => "nss",
            Command::Dispersion => "dispersion",
            Command::Coeffs { .. } => "coeffs",
            Command::Surface => "surface",
            Command::Determinacy { .. } => "determinacy",
            Command::Bifurcation { .. } => "bifurcation",
            Command::Compare { .. } => "compare",
            Command::Simulate { .. } => "simulate",
            Command::SeFixedPoint { .. } => "se-fixed-point",
            Command::Tables { .. } => "tables",
            Command::Scenario { .. } => "scenario",
        }
    }
}

/// One swept parameter: `name=lo:hi:step`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridDim {
    pub param: String,
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl GridDim {
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize + 1;
        // Rounded so labels read as typed (0.03, not 0.030000000000000002).
        (0..n)
            .map(|i| ((self.lo + i as f64 * self.step) * 1e12).round() / 1e12)
            .collect()
    }
}

impl fmt::Display for GridDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}:{}:{}", self.param, self.lo, self.hi, self.step)
    }
}

impl FromStr for GridDim {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad =
            |m: &str| CliError::config("grid", format!("`{s}`: {m} (expected name=lo:hi:step)"));
        let (param, range) = s.split_once('=').ok_or_else(|| bad("missing `=`"))?;
        let parts: Vec<&str> = range.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("range needs three fields"));
        }
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| bad(&format!("`{t}` is not a number")))
        };
        let dim = GridDim {
            param: param.trim().to_string(),
            lo: num(parts[0])?,
            hi: num(parts[1])?,
            step: num(parts[2])?,
        };
        if !(dim.step > 0.0) || !dim.lo.is_finite() || !dim.hi.is_finite() {
            return Err(bad("step must be positive and bounds finite"));
        }
        if dim.hi < dim.lo {
            return Err(bad("upper bound below lower bound"));
        }
        if (dim.hi - dim.lo) / dim.step >= MAX_GRID_POINTS as f64 {
            return Err(bad("too many points"));
        }
        Ok(dim)
    }
}

/// Parameter sweep of one or two dimensions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct GridSpec {
    pub dims: Vec<GridDim>,
}

impl GridSpec {
    pub fn parse(specs: &[String]) -> Result<Self, CliError> {
        let dims = specs
            .iter()
            .flat_map(|s| s.split(',').map(str::to_string).collect::<Vec<_>>())
            .map(|s| s.parse())
            .collect::<Result<Vec<GridDim>, _>>()?;
        if dims.is_empty() || dims.len() > 2 {
            return Err(CliError::config(
                "grid",
                format!("{} dimensions given; 1 or 2 allowed", dims.len()),
            ));
        }
        if dims.len() == 2 && dims[0].param == dims[1].param {
            return Err(CliError::config(
                "grid",
                format!("`{}` swept twice", dims[0].param),
            ));
        }
        let total: usize = dims.iter().map(|d| d.points().len()).product();
        if total > MAX_GRID_POINTS {
            return Err(CliError::config(
                "grid",
                format!("{total} points exceed the limit of {MAX_GRID_POINTS}"),
            ));
        }
        Ok(GridSpec { dims })
    }

    /// Cartesian product of the dimensions, first dimension slowest.
    pub fn points(&self) -> Vec<Vec<(String, f64)>> {
        let mut out: Vec<Vec<(String, f64)>> = vec![vec![]];
        for d in &self.dims {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    d.points().into_iter().map(move |v| {
                        let mut row = prefix.clone();
                        row.push((d.param.clone(), v));
                        row
                    })
                })
                .collect();
        }
        out
    }
}

impl TryFrom<Vec<String>> for GridSpec {
    type Error = CliError;
    fn try_from(v: Vec<String>) -> Result<Self, CliError> {
        GridSpec::parse(&v)
    }
}

impl From<GridSpec> for Vec<String> {
    fn from(g: GridSpec) -> Self {
        g.dims.iter().map(ToString::to_string).collect()
    }
}

/// Parses a whole run configuration; `.json` files as JSON, anything else as TOML.
pub fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config("config", format!("{}: {e}", path.display())))?;
    parse_config(&text, is_json(path))
}

pub fn parse_config(text: &str, json: bool) -> Result<RunConfig, CliError> {
    if json {
        serde_json::from_str(text)
            .map_err(|e| CliError::config(field_of(&e.to_string()), e.to_string()))
    } else {
        toml::from_str(text).map_err(|e| CliError::config(field_of(e.message()), e.to_string()))
    }
}

/// TOML form written by `--dump-config`.
pub fn dump_config(cfg: &RunConfig) -> Result<String, CliError> {
    toml::to_string(cfg).map_err(|e| CliError::config("config", e.to_string()))
}

fn is_json(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

/// Extracts the offending key from a serde message such as "unknown field `x`, expected …".
fn field_of(message: &str) -> String {
    message
        .split('`')
        .nth(1)
        .map(str::to_string)
        .unwrap_or_else(|| "config".to_string())
}

fn read_params(path: &Path) -> Result<ModelParams<f64>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config("params", format!("{}: {e}", path.display())))?;
    if is_json(path) {
        serde_json::from_str(&text)
            .map_err(|e| CliError::config(field_of(&e.to_string()), e.to_string()))
    } else {
        toml::from_str(&text).map_err(|e| CliError::config(field_of(e.message()), e.to_string()))
    }
}

/// Sets named fields of `p`; the names are the serialized field names (`A_bar` for technology).
pub fn apply_overrides<'a>(
    p: &ModelParams<f64>,
    overrides: impl IntoIterator<Item = (&'a str, f64)>,
) -> Result<ModelParams<f64>, CliError> {
    let mut v = serde_json::to_value(p).expect("parameters serialize");
    let obj = v.as_object_mut().expect("parameters are a map");
    for (k, x) in overrides {
        if !obj.contains_key(k) {
            let known: Vec<&str> = obj.keys().map(String::as_str).collect();
            return Err(CliError::config(
                k,
                format!("unknown parameter (known: {})", known.join(", ")),
            ));
        }
        if !x.is_finite() {
            return Err(CliError::config(k, "value must be finite"));
        }
        obj.insert(k.to_string(), serde_json::json!(x));
    }
    Ok(serde_json::from_value(v).expect("overridden parameters deserialize"))
}

impl RunConfig {
    /// Parameters from the source with overrides applied (not yet validated).
    pub fn params(&self) -> Result<ModelParams<f64>, CliError> {
        let base = match &self.params {
            ParamsSource::Preset(name) => preset::<f64>(name)?,
            ParamsSource::File(path) => read_params(path)?,
        };
        apply_overrides(&base, self.overrides.iter().map(|(k, v)| (k.as_str(), *v)))
    }

    /// Format requested, or the subcommand's natural one.
    pub fn format(&self) -> OutputFormat {
        self.format.unwrap_or(match &self.command {
            Command::Nss { .. }
            | Command::Dispersion
            | Command::Tables { .. }
            | Command::Simulate { .. } => OutputFormat::Csv,
            Command::Determinacy { .. } if self.grid.is_some() => OutputFormat::Csv,
            _ => OutputFormat::Json,
        })
    }

    /// Output path with relative paths resolved against the output-directory variable.
    pub fn output_path(&self) -> Option<PathBuf> {
        let out = self.output.as_ref()?;
        match std::env::var_os(OUTPUT_DIR_ENV) {
            Some(dir) if out.is_relative() => Some(Path::new(&dir).join(out)),
            _ => Some(out.clone()),
        }
    }
}
