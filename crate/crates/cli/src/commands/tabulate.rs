use anyhow::Result;
use clap::Args;
use dunkl_qes::potential::potential_eval;
use dunkl_qes::spectra::Family;
use dunkl_qes::QuasiPolynomial;

use crate::config::{ConfigArgs, Format, RunConfig};
use crate::output::{csv, emit, json, num, opt_num, table};
use crate::{InvalidInput, Passed};

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct Opts {
    #[command(flatten)]
    pub cfg: ConfigArgs,
    /// Left end of the range (default: symmetric on the line, 0 in the plane).
    #[arg(long)]
    pub from: Option<f64>,
    /// Right end of the range (default: where every state has decayed below 1e-14 of its peak).
    #[arg(long)]
    pub to: Option<f64>,
    /// Number of sample points, ends included.
    #[arg(long, default_value_t = 201)]
    pub count: usize,
}

/// Relative size of the envelope at the default right end.
const TAIL: f64 = 1e-14;

/// Smallest `R` beyond the peak of every state at which the envelope
/// `exp(-S) * sum |c_m| |x|^m` has dropped below `TAIL` of that peak.
fn decay_radius(states: &[QuasiPolynomial]) -> f64 {
    let envelope = |f: &QuasiPolynomial, x: f64| {
        let ax = x.abs();
        let poly: f64 = f.coeffs().iter().rev().fold(0.0, |acc, c| acc * ax + c.abs());
        poly * (-f.gauge().exponent(x)).exp()
    };
    states
        .iter()
        .map(|f| {
            let mut r = 0.25f64;
            let mut peak = 0.0f64;
            loop {
                let e = envelope(f, r).max(envelope(f, -r));
                peak = peak.max(e);
                if e < TAIL * peak || r > 1e6 {
                    return r;
                }
                r *= 1.05;
            }
        })
        .fold(1.0, f64::max)
}

pub fn run(opts: &Opts) -> Result<Passed> {
    let cfg = RunConfig::resolve(&opts.cfg)?;
    if opts.count < 2 {
        return Err(InvalidInput("count must be at least 2".into()).into());
    }
    let problem = cfg.problem()?;
    let solutions = problem.solve().map_err(|e| InvalidInput(e.to_string()))?;
    let on_line = problem.family() == Family::LineOscillator;
    let states: Vec<QuasiPolynomial> = solutions.iter().map(|s| s.wavefunction.clone()).collect();

    let (from, to) = match (opts.from, opts.to) {
        (Some(f), Some(t)) => (f, t),
        (f, t) => {
            let r = decay_radius(&states);
            let lo = if on_line { -r } else { 0.0 };
            (f.unwrap_or(lo), t.unwrap_or(r))
        }
    };
    if from >= to || !from.is_finite() || !to.is_finite() {
        return Err(InvalidInput(format!("empty range [{from}, {to}]")).into());
    }
    if !on_line && from < 0.0 {
        return Err(InvalidInput(format!("radial range must start at rho >= 0, got {from}")).into());
    }

    // Weighted form: exact ends, and exactly 0 at the middle of a symmetric range.
    let last = (opts.count - 1) as f64;
    let points: Vec<f64> = (0..opts.count)
        .map(|i| (from * (last - i as f64) + to * i as f64) / last)
        .collect();
    let curves = potential_eval(&problem, None, &points)?;

    let mut header = vec![if on_line { "x" } else { "rho" }.to_string()];
    header.extend(curves.iter().map(|c| c.label.clone()));
    header.extend(solutions.iter().map(|s| format!("psi_{}", s.k)));
    let cells: Vec<Vec<String>> = points
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let mut row = vec![num(x)];
            row.extend(curves.iter().map(|c| opt_num(c.values[i])));
            row.extend(states.iter().map(|f| num(f.eval(x))));
            row
        })
        .collect();

    let text = match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => csv(&header, &cells),
        Format::Table => table(&header, &cells),
        Format::Json => {
            let columns: serde_json::Map<String, serde_json::Value> = header
                .iter()
                .enumerate()
                .map(|(c, h)| {
                    let col = cells.iter().map(|r| r[c].parse::<f64>().ok()).collect::<Vec<_>>();
                    (h.clone(), serde_json::json!(col))
                })
                .collect();
            json(&serde_json::json!({ "config": cfg, "columns": columns }))?
        }
    };
    emit(&cfg, &text)?;
    Ok(true)
}
