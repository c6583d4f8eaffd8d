use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use super::spectrum::level_rows;
use crate::config::{ConfigArgs, Format, RunConfig};
use crate::output::{csv, emit, json, num, opt_num};
use crate::{InvalidInput, Passed};

/// Caps the number of worker threads; unset means one per core.
pub const THREADS_ENV: &str = "DUNKL_QES_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Param {
    A,
    B,
    Mu,
    Nu,
    N,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct Opts {
    #[command(flatten)]
    pub cfg: ConfigArgs,
    /// Parameter to sweep.
    #[arg(long)]
    pub param: Param,
    #[arg(long)]
    pub from: f64,
    #[arg(long)]
    pub to: f64,
    /// Number of points, ends included (ignored for `n`, which takes every integer in range).
    #[arg(long, default_value_t = 11)]
    pub steps: usize,
}

#[derive(Serialize)]
struct ScanRow {
    value: f64,
    k: usize,
    energy: f64,
    alpha: Option<f64>,
    nodes: usize,
}

fn sample_values(opts: &Opts) -> Result<Vec<f64>, InvalidInput> {
    if !opts.from.is_finite() || !opts.to.is_finite() || opts.from > opts.to {
        return Err(InvalidInput(format!("invalid range [{}, {}]", opts.from, opts.to)));
    }
    if opts.param == Param::N {
        let (lo, hi) = (opts.from.ceil(), opts.to.floor());
        if lo < 0.0 {
            return Err(InvalidInput(format!("n must be a non-negative integer, got {lo}")));
        }
        return Ok((lo as u32..=hi as u32).map(f64::from).collect());
    }
    match opts.steps {
        0 => Err(InvalidInput("steps must be positive".into())),
        1 => Ok(vec![opts.from]),
        s => {
            let h = (opts.to - opts.from) / (s - 1) as f64;
            Ok((0..s)
                .map(|i| if i + 1 == s { opts.to } else { opts.from + h * i as f64 })
                .collect())
        }
    }
}

fn point(base: &RunConfig, param: Param, value: f64) -> Result<Vec<ScanRow>> {
    let mut cfg = base.clone();
    match param {
        Param::A => cfg.a = value,
        Param::B => cfg.b = value,
        Param::Mu => cfg.mu = value,
        Param::Nu => cfg.nu = value,
        Param::N => cfg.n = value as u32,
    }
    let name = format!("{param:?}").to_lowercase();
    let at = |e: &dyn std::fmt::Display| InvalidInput(format!("at {name} = {value}: {e}"));
    cfg.validate().map_err(|e| at(&e))?;
    let problem = cfg.problem().map_err(|e| at(&e))?;
    let (_, rows) = level_rows(&problem).map_err(|e| at(&e))?;
    Ok(rows
        .into_iter()
        .map(|r| ScanRow {
            value,
            k: r.k,
            energy: r.energy,
            alpha: r.alpha,
            nodes: r.nodes,
        })
        .collect())
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        let n: usize = raw
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| InvalidInput(format!("{THREADS_ENV} must be a positive integer, got '{raw}'")))?;
        builder = builder.num_threads(n);
    }
    builder.build().context("starting worker threads")
}

pub fn run(opts: &Opts) -> Result<Passed> {
    let cfg = RunConfig::resolve(&opts.cfg)?;
    let format = cfg.format.unwrap_or(Format::Csv);
    if format == Format::Table {
        return Err(InvalidInput("scan writes csv or json".into()).into());
    }
    let values = sample_values(opts)?;
    // Ordered collect: output does not depend on the thread count.
    let per_point: Vec<Vec<ScanRow>> =
        thread_pool()?.install(|| values.par_iter().map(|&v| point(&cfg, opts.param, v)).collect::<Result<_>>())?;
    let rows: Vec<ScanRow> = per_point.into_iter().flatten().collect();

    let name = format!("{:?}", opts.param).to_lowercase();
    let text = if format == Format::Json {
        json(&serde_json::json!({ "config": cfg, "param": opts.param, "results": rows }))?
    } else {
        let header = ["param", "value", "k", "energy", "alpha", "nodes"].map(String::from);
        let cells: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                vec![
                    name.clone(),
                    num(r.value),
                    r.k.to_string(),
                    num(r.energy),
                    opt_num(r.alpha),
                    r.nodes.to_string(),
                ]
            })
            .collect();
        csv(&header, &cells)
    };
    emit(&cfg, &text)?;
    Ok(true)
}
