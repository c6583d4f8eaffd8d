//! Run configuration: built-in defaults, then a flat `key = value` file, then flags.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use dunkl_qes::oracle::audit::FdOptions;
use dunkl_qes::spectra::QesProblem;
use dunkl_qes::{DunklParams, GaugeParams, Parity, PlaneSector};
use serde::Serialize;

use crate::InvalidInput;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyArg {
    Line,
    PlaneOscillator,
    Coulomb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Table,
    Csv,
    Json,
}

fn enum_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_owned()
}

fn parse_enum<T: ValueEnum>(key: &str, s: &str) -> Result<T, InvalidInput> {
    T::from_str(s, true).map_err(|_| {
        let names: Vec<_> = T::value_variants().iter().map(enum_name).collect();
        InvalidInput(format!("{key}: expected one of {}, got '{s}'", names.join(", ")))
    })
}

/// Every parameter a run can take. `None` means "not set"; parity defaults
/// are derived from `nu` when left unset.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub family: FamilyArg,
    pub mu: f64,
    pub eps: u8,
    pub nu: f64,
    pub mu1: f64,
    pub mu2: f64,
    pub eps1: Option<u8>,
    pub eps2: Option<u8>,
    pub a: f64,
    pub b: f64,
    pub n: u32,
    pub oracle: bool,
    pub fd_npoints: usize,
    pub fd_rmax: Option<f64>,
    pub format: Option<Format>,
    pub output: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            family: FamilyArg::Line,
            mu: 1.0,
            eps: 0,
            nu: 0.5,
            mu1: 0.25,
            mu2: 0.25,
            eps1: None,
            eps2: None,
            a: 0.5,
            b: 1.0,
            n: 1,
            oracle: true,
            fd_npoints: FdOptions::default().npoints,
            fd_rmax: None,
            format: None,
            output: None,
        }
    }
}

/// Flags shared by every subcommand; each overrides the config file.
#[derive(Args, Debug, Default, Clone)]
pub struct ConfigArgs {
    /// Flat `key = value` file with any of the options below (without `--`).
    #[arg(long, value_name = "FILE")]
    pub config: Option<String>,
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Dunkl parameter on the line (> -1/2).
    #[arg(long)]
    pub mu: Option<f64>,
    /// Parity on the line, 0 or 1.
    #[arg(long)]
    pub eps: Option<i64>,
    /// Angular quantum number in the plane (integer or half-integer).
    #[arg(long)]
    pub nu: Option<f64>,
    #[arg(long)]
    pub mu1: Option<f64>,
    #[arg(long)]
    pub mu2: Option<f64>,
    #[arg(long)]
    pub eps1: Option<i64>,
    #[arg(long)]
    pub eps2: Option<i64>,
    /// Quartic (oscillator) or quadratic (Coulomb) gauge coupling.
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    /// Representation index; the number of known levels is n + 1.
    #[arg(long)]
    pub n: Option<i64>,
    /// Turn the finite-difference oracle on or off.
    #[arg(long)]
    pub oracle: Option<bool>,
    /// Points of the coarsest finite-difference grid.
    #[arg(long)]
    pub fd_npoints: Option<usize>,
    /// Outer boundary of the finite-difference grid.
    #[arg(long)]
    pub fd_rmax: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Also write the result to this file.
    #[arg(long, value_name = "PATH")]
    pub output: Option<String>,
    /// Write the resolved configuration as a config file.
    #[arg(long, value_name = "FILE")]
    pub save_config: Option<String>,
}

fn non_negative_n(n: i64) -> Result<u32, InvalidInput> {
    u32::try_from(n).map_err(|_| InvalidInput("n must be a non-negative integer".into()))
}

fn parity_flag(key: &str, v: i64) -> Result<u8, InvalidInput> {
    match v {
        0 | 1 => Ok(v as u8),
        _ => Err(InvalidInput(format!("{key} must be 0 or 1, got {v}"))),
    }
}

fn parse_value<T: FromStr>(key: &str, raw: &str) -> Result<T, InvalidInput> {
    raw.parse()
        .map_err(|_| InvalidInput(format!("{key}: cannot parse '{raw}'")))
}

impl RunConfig {
    /// Defaults, overridden by the config file, overridden by flags.
    pub fn resolve(args: &ConfigArgs) -> Result<Self> {
        let mut cfg = Self::default();
        if let Some(path) = &args.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| InvalidInput(format!("cannot read config file {path}: {e}")))?;
            cfg.apply_file(&text)
                .with_context(|| format!("in config file {path}"))?;
        }
        cfg.apply_args(args)?;
        cfg.validate()?;
        if let Some(path) = &args.save_config {
            cfg.write_config(Path::new(path))?;
        }
        Ok(cfg)
    }

    fn set(&mut self, key: &str, raw: &str) -> Result<(), InvalidInput> {
        let optional = |raw: &str| (!raw.is_empty() && raw != "none").then(|| raw.to_owned());
        match key {
            "family" => self.family = parse_enum(key, raw)?,
            "mu" => self.mu = parse_value(key, raw)?,
            "eps" => self.eps = parity_flag(key, parse_value(key, raw)?)?,
            "nu" => self.nu = parse_value(key, raw)?,
            "mu1" => self.mu1 = parse_value(key, raw)?,
            "mu2" => self.mu2 = parse_value(key, raw)?,
            "eps1" => {
                self.eps1 = optional(raw)
                    .map(|r| parse_value(key, &r).and_then(|v| parity_flag(key, v)))
                    .transpose()?
            }
            "eps2" => {
                self.eps2 = optional(raw)
                    .map(|r| parse_value(key, &r).and_then(|v| parity_flag(key, v)))
                    .transpose()?
            }
            "a" => self.a = parse_value(key, raw)?,
            "b" => self.b = parse_value(key, raw)?,
            "n" => self.n = non_negative_n(parse_value(key, raw)?)?,
            "oracle" => self.oracle = parse_value(key, raw)?,
            "fd_npoints" | "fd-npoints" => self.fd_npoints = parse_value(key, raw)?,
            "fd_rmax" | "fd-rmax" => {
                self.fd_rmax = optional(raw).map(|r| parse_value(key, &r)).transpose()?
            }
            "format" => self.format = optional(raw).map(|r| parse_enum(key, &r)).transpose()?,
            "output" => self.output = optional(raw),
            _ => return Err(InvalidInput(format!("unknown config key '{key}'"))),
        }
        Ok(())
    }

    pub fn apply_file(&mut self, text: &str) -> Result<(), InvalidInput> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| InvalidInput(format!("line {}: expected key = value", lineno + 1)))?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    fn apply_args(&mut self, args: &ConfigArgs) -> Result<(), InvalidInput> {
        if let Some(v) = args.family {
            self.family = v;
        }
        if let Some(n) = args.n {
            self.n = non_negative_n(n)?;
        }
        if let Some(v) = args.eps {
            self.eps = parity_flag("eps", v)?;
        }
        if let Some(v) = args.eps1 {
            self.eps1 = Some(parity_flag("eps1", v)?);
        }
        if let Some(v) = args.eps2 {
            self.eps2 = Some(parity_flag("eps2", v)?);
        }
        macro_rules! take {
            ($($field:ident),*) => {$(
                if let Some(v) = args.$field.clone() {
                    self.$field = v;
                }
            )*};
        }
        take!(mu, nu, mu1, mu2, a, b, oracle, fd_npoints);
        if args.fd_rmax.is_some() {
            self.fd_rmax = args.fd_rmax;
        }
        if args.format.is_some() {
            self.format = args.format;
        }
        if args.output.is_some() {
            self.output = args.output.clone();
        }
        Ok(())
    }

    /// Builds the problem once to surface every library-level invariant.
    pub fn validate(&self) -> Result<(), InvalidInput> {
        self.problem()?;
        if let Some(r) = self.fd_rmax {
            if r.is_nan() || r <= 0.0 {
                return Err(InvalidInput(format!("fd_rmax must be > 0, got {r}")));
            }
        }
        if self.fd_npoints < dunkl_qes::oracle::fd::MIN_GRID_POINTS {
            return Err(InvalidInput(format!(
                "fd_npoints must be at least {}, got {}",
                dunkl_qes::oracle::fd::MIN_GRID_POINTS,
                self.fd_npoints
            )));
        }
        Ok(())
    }

    pub fn sector(&self) -> Result<PlaneSector, InvalidInput> {
        let sector = match (self.eps1, self.eps2) {
            (None, None) => PlaneSector::with_default_parities(self.nu, self.mu1, self.mu2),
            (e1, e2) => {
                let (d1, d2) = match PlaneSector::with_default_parities(self.nu, self.mu1, self.mu2) {
                    Ok(s) => (s.eps1().epsilon(), s.eps2().epsilon()),
                    Err(_) => (0, 0),
                };
                PlaneSector::new(
                    Parity::from_epsilon(e1.unwrap_or(d1)).map_err(invalid)?,
                    Parity::from_epsilon(e2.unwrap_or(d2)).map_err(invalid)?,
                    self.nu,
                    self.mu1,
                    self.mu2,
                )
            }
        };
        sector.map_err(invalid)
    }

    pub fn problem(&self) -> Result<QesProblem, InvalidInput> {
        let gauge = GaugeParams::new(self.a, self.b).map_err(invalid)?;
        let problem = match self.family {
            FamilyArg::Line => QesProblem::line(
                DunklParams::new(self.mu).map_err(invalid)?,
                Parity::from_epsilon(self.eps).map_err(invalid)?,
                gauge,
                self.n,
            ),
            FamilyArg::PlaneOscillator => QesProblem::plane_oscillator(self.sector()?, gauge, self.n),
            FamilyArg::Coulomb => QesProblem::plane_coulomb(self.sector()?, gauge, self.n),
        };
        // Surfaces a <= 0, out-of-range effective l and similar at parse time.
        problem.block().map_err(invalid)?;
        Ok(problem)
    }

    pub fn fd_options(&self) -> FdOptions {
        FdOptions {
            npoints: self.fd_npoints,
            rmax: self.fd_rmax,
            ..FdOptions::default()
        }
    }

    /// The config-file form; parsing it back gives an equal `RunConfig`.
    pub fn to_config_string(&self) -> String {
        let mut out = BTreeMap::new();
        let opt = |v: Option<String>| v.unwrap_or_else(|| "none".into());
        out.insert("family", enum_name(&self.family));
        out.insert("mu", format!("{:?}", self.mu));
        out.insert("eps", self.eps.to_string());
        out.insert("nu", format!("{:?}", self.nu));
        out.insert("mu1", format!("{:?}", self.mu1));
        out.insert("mu2", format!("{:?}", self.mu2));
        out.insert("eps1", opt(self.eps1.map(|v| v.to_string())));
        out.insert("eps2", opt(self.eps2.map(|v| v.to_string())));
        out.insert("a", format!("{:?}", self.a));
        out.insert("b", format!("{:?}", self.b));
        out.insert("n", self.n.to_string());
        out.insert("oracle", self.oracle.to_string());
        out.insert("fd_npoints", self.fd_npoints.to_string());
        out.insert("fd_rmax", opt(self.fd_rmax.map(|v| format!("{v:?}"))));
        out.insert("format", opt(self.format.as_ref().map(enum_name)));
        out.insert("output", opt(self.output.clone()));
        out.into_iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }

    #[cfg(test)]
    pub fn from_config_str(text: &str) -> Result<Self, InvalidInput> {
        let mut cfg = Self::default();
        cfg.apply_file(text)?;
        Ok(cfg)
    }

    pub fn write_config(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_config_string()).with_context(|| format!("writing {}", path.display()))
    }
}

fn invalid(e: dunkl_qes::Error) -> InvalidInput {
    InvalidInput(e.to_string())
}

impl fmt::Display for FamilyArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&enum_name(self))
    }
}
