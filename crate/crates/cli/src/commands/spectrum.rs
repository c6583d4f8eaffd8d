use anyhow::Result;
use clap::Args;
use dunkl_qes::spectra::QesProblem;
use dunkl_qes::QesSolution;
use serde::Serialize;

use crate::config::{ConfigArgs, Format, RunConfig};
use crate::output::{csv, emit, json, num, opt_num, table};
use crate::{InvalidInput, Passed};

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct Opts {
    #[command(flatten)]
    pub cfg: ConfigArgs,
}

#[derive(Serialize)]
pub struct LevelRow {
    pub k: usize,
    pub energy: f64,
    pub alpha: Option<f64>,
    pub nodes: usize,
    pub provenance: String,
    /// Largest relative difference to the closed form (`n <= 1` only).
    pub closed_form_delta: Option<f64>,
    pub polynomial: Vec<f64>,
    pub degenerate_degree: bool,
}

pub fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(1.0)
}

pub fn level_rows(problem: &QesProblem) -> Result<(Vec<QesSolution>, Vec<LevelRow>)> {
    let solutions = problem.solve().map_err(|e| InvalidInput(e.to_string()))?;
    let closed = if problem.n <= 1 { Some(problem.closed_form()?) } else { None };
    let rows = solutions
        .iter()
        .map(|s| {
            let delta = closed.as_ref().map(|c| {
                let c = &c[s.k];
                let da = match (s.alpha, c.alpha) {
                    (Some(x), Some(y)) => rel(x, y),
                    _ => 0.0,
                };
                rel(s.energy, c.energy).max(da)
            });
            LevelRow {
                k: s.k,
                energy: s.energy,
                alpha: s.alpha,
                nodes: s.node_count(),
                provenance: format!("{:?}", s.provenance).to_lowercase(),
                closed_form_delta: delta,
                polynomial: s.polynomial.clone(),
                degenerate_degree: s.degenerate_degree,
            }
        })
        .collect();
    Ok((solutions, rows))
}

#[derive(Serialize)]
struct Report<'a> {
    config: &'a RunConfig,
    results: &'a [LevelRow],
}

pub fn run(opts: &Opts) -> Result<Passed> {
    let cfg = RunConfig::resolve(&opts.cfg)?;
    let problem = cfg.problem()?;
    let (_, rows) = level_rows(&problem)?;
    let header: Vec<String> = ["k", "energy", "alpha", "nodes", "provenance", "closed_form_delta", "polynomial"]
        .map(String::from)
        .to_vec();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.k.to_string(),
                num(r.energy),
                opt_num(r.alpha),
                r.nodes.to_string(),
                r.provenance.clone(),
                opt_num(r.closed_form_delta),
                r.polynomial.iter().map(|c| num(*c)).collect::<Vec<_>>().join(" "),
            ]
        })
        .collect();
    let text = match cfg.format.unwrap_or(Format::Table) {
        Format::Table => table(&header, &cells),
        Format::Csv => csv(&header, &cells),
        Format::Json => json(&Report {
            config: &cfg,
            results: &rows,
        })?,
    };
    emit(&cfg, &text)?;
    Ok(true)
}
