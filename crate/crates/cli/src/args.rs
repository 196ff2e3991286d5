//! Command-line parsing into a [`RunConfig`].

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::{ContextKind, ContextValue, ErrorKind};
use clap::Parser;

use crate::config::{
    dump_config, load_config, Command, GridSpec, OutputFormat, ParamsSource, RunConfig,
};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "calvo",
    version,
    about = "Steady states, coefficients, determinacy and simulation of the Calvo model"
)]
pub struct Cli {
    /// Named calibration (benchmark when no parameter source is given).
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// TOML or JSON file with every model parameter.
    #[arg(long, global = true)]
    pub params: Option<PathBuf>,
    /// Override one parameter, e.g. `--set beta=0.99`; repeatable.
    #[arg(
        long = "set",
        global = true,
        value_name = "KEY=VALUE",
        allow_hyphen_values = true
    )]
    pub set: Vec<String>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Output file (relative paths resolve against $CALVO_OUTPUT_DIR when set).
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Parameter sweep `name=lo:hi:step`; at most two.
    #[arg(
        long,
        global = true,
        value_name = "NAME=LO:HI:STEP",
        allow_hyphen_values = true
    )]
    pub grid: Vec<String>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Read the whole run configuration from a TOML or JSON file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Print the run configuration as TOML and exit.
    #[arg(long, global = true)]
    pub dump_config: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

fn parse_override(s: &str) -> Result<(String, f64), CliError> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| CliError::config("set", format!("`{s}` is not KEY=VALUE")))?;
    let k = k.trim().to_string();
    let v = v
        .trim()
        .parse::<f64>()
        .map_err(|_| CliError::config(k.clone(), format!("`{v}` is not a number")))?;
    Ok((k, v))
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig, CliError> {
        if let Some(path) = &self.config {
            let extra = self.preset.is_some()
                || self.params.is_some()
                || !self.set.is_empty()
                || self.format.is_some()
                || self.output.is_some()
                || !self.grid.is_empty()
                || self.seed.is_some()
                || self.command.is_some();
            if extra {
                return Err(CliError::config(
                    "config",
                    "--config cannot be combined with other run options",
                ));
            }
            return load_config(path);
        }
        let command = self
            .command
            .ok_or_else(|| CliError::config("subcommand", "a subcommand is required"))?;
        let params = match (self.preset, self.params) {
            (Some(_), Some(_)) => {
                return Err(CliError::config(
                    "params",
                    "give either --preset or --params, not both",
                ))
            }
            (Some(name), None) => ParamsSource::Preset(name),
            (None, Some(path)) => ParamsSource::File(path),
            (None, None) => ParamsSource::default(),
        };
        let overrides = self
            .set
            .iter()
            .map(|s| parse_override(s))
            .collect::<Result<BTreeMap<_, _>, _>>()?;
        let grid = if self.grid.is_empty() {
            None
        } else {
            Some(GridSpec::parse(&self.grid)?)
        };
        Ok(RunConfig {
            format: self.format,
            output: self.output,
            seed: self.seed,
            params,
            overrides,
            grid,
            command,
        })
    }
}

/// Parsed invocation: the configuration and whether to dump it instead of running.
#[derive(Debug)]
pub struct Invocation {
    pub config: RunConfig,
    pub dump: bool,
}

/// Parses arguments; `Ok(Err(code))` when clap already handled the request (help, version).
pub fn parse<I, T>(args: I) -> Result<Result<Invocation, i32>, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return Ok(Err(0));
        }
        Err(e) => {
            let field = match e.get(ContextKind::InvalidArg) {
                // Context reads like `--T <PERIODS>`; keep the bare option name.
                Some(ContextValue::String(s)) => s
                    .split([' ', '='])
                    .next()
                    .unwrap_or_default()
                    .trim_start_matches('-')
                    .to_string(),
                _ => "arguments".to_string(),
            };
            return Err(CliError::config(field, e.render().to_string().trim_end()));
        }
    };
    let dump = cli.dump_config;
    Ok(Ok(Invocation {
        config: cli.into_config()?,
        dump,
    }))
}

fn report(e: &CliError) -> i32 {
    eprintln!("{}", e.to_json());
    e.exit_code()
}

/// Full program: parse, run, report errors; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let inv = match parse(args) {
        Ok(Ok(inv)) => inv,
        Ok(Err(code)) => return code,
        Err(e) => return report(&e),
    };
    if inv.dump {
        return match dump_config(&inv.config) {
            Ok(s) => {
                print!("{s}");
                0
            }
            Err(e) => report(&e),
        };
    }
    match crate::run::run(&inv.config) {
        Ok(_) => 0,
        Err(e) => report(&e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    fn cfg(args: &[&str]) -> RunConfig {
        let mut v = vec!["calvo"];
        v.extend_from_slice(args);
        parse(v).unwrap().unwrap().config
    }

    #[test]
    fn dump_round_trips() {
        for args in [
            &["coeffs", "--preset", "eta1", "--family", "limit"][..],
            &[
                "determinacy",
                "--grid",
                "a_pi=0:2:0.01",
                "--grid",
                "a_y=0:2.5:0.5",
                "--variant",
                "full",
            ],
            &[
                "simulate",
                "--T",
                "500",
                "--seed",
                "3",
                "--set",
                "beta=0.99",
                "--set",
                "rho_a=0.5",
                "--format",
                "json",
            ],
            &["tables", "--which", "iv", "-o", "t.csv"],
            &["scenario", "inactive"],
            &["nss", "--pi-bar", "-0.01,0,0.02", "--params", "p.toml"],
            &["bifurcation", "--model", "wage", "--alpha-w", "0.8"],
            &["se-fixed-point", "--T", "1000", "--dist", "uniform"],
            &["compare", "--c-p", "20"],
            &["surface"],
            &["dispersion", "--grid", "pi_bar=-0.02:0.04:0.001"],
        ] {
            let c = cfg(args);
            let text = dump_config(&c).unwrap();
            assert_eq!(parse_config(&text, false).unwrap(), c, "{text}");
            let json = serde_json::to_string(&c).unwrap();
            assert_eq!(parse_config(&json, true).unwrap(), c);
        }
    }

    #[test]
    fn conflicting_sources_rejected() {
        let r = parse(["calvo", "coeffs", "--preset", "eta1", "--params", "x.toml"]);
        assert!(matches!(r, Err(CliError::Config { .. })));
        let r = parse(["calvo", "coeffs", "--set", "gamma"]);
        assert!(matches!(r, Err(CliError::Config { .. })));
        let r = parse([
            "calvo", "coeffs", "--grid", "a=0:1:1", "--grid", "b=0:1:1", "--grid", "c=0:1:1",
        ]);
        assert!(matches!(r, Err(CliError::Config { field, .. }) if field == "grid"));
    }
}
