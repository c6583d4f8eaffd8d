//! Weighted inner products of [`QuasiPolynomial`]s by Gaussian quadrature.
//!
//! The half-line is cut at a radius where the integrand has fallen by
//! `e^-50` from its peak. The first panel carries the algebraic weight
//! `x^s` exactly through Gauss–Jacobi nodes, the rest is adaptive
//! Gauss–Legendre. Nodes come from the Golub–Welsch eigenproblem.

use serde::{Deserialize, Serialize};

use crate::quasi::{Gauge, QuasiPolynomial};
use crate::tridiag::eig_tridiag;
use crate::{Error, Result};

/// Measure of the inner product.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Weight {
    /// `|x|^(2 mu) dx` on the whole line.
    Line { mu: f64 },
    /// `r^power dr` on the half-line.
    Radial { power: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureScheme {
    /// Target error relative to the integral of the absolute integrand.
    pub rel_tol: f64,
    pub panel_order: usize,
    pub max_depth: u32,
}

impl Default for QuadratureScheme {
    fn default() -> Self {
        Self {
            rel_tol: 1e-14,
            panel_order: 24,
            max_depth: 40,
        }
    }
}

/// Nodes and weights for `int_{-1}^{1} (1 + t)^beta f(t) dt`, `beta > -1`.
pub fn gauss_jacobi(order: usize, beta: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if order == 0 || !(beta > -1.0) {
        return Err(Error::InvalidParameter(format!(
            "Gauss-Jacobi needs order >= 1 and beta > -1, got ({order}, {beta})"
        )));
    }
    // Monic recurrence of the Jacobi polynomials with alpha = 0.
    let diag: Vec<f64> = (0..order)
        .map(|k| {
            if k == 0 {
                beta / (beta + 2.0)
            } else {
                let s = 2.0 * k as f64 + beta;
                beta * beta / (s * (s + 2.0))
            }
        })
        .collect();
    let off: Vec<f64> = (1..order)
        .map(|k| {
            let k = k as f64;
            let s = 2.0 * k + beta;
            (4.0 * k * k * (k + beta) * (k + beta) / (s * s * (s * s - 1.0))).sqrt()
        })
        .collect();
    let eig = eig_tridiag(&diag, &off)?;
    let mu0 = 2f64.powf(beta + 1.0) / (beta + 1.0);
    let weights = eig.vectors.iter().map(|v| mu0 * v[0] * v[0]).collect();
    Ok((eig.values, weights))
}

pub fn gauss_legendre(order: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    gauss_jacobi(order, 0.0)
}

/// `<f, g>` under `weight`; both functions are taken real.
///
/// The integrand is evaluated as the product of the two values rather than
/// through the product polynomial, which would cancel far more strongly.
pub fn weighted_inner_product(
    f: &QuasiPolynomial,
    g: &QuasiPolynomial,
    weight: Weight,
    scheme: &QuadratureScheme,
) -> Result<f64> {
    match weight {
        Weight::Radial { power } => integrate_products(&[(f.clone(), g.clone())], power, scheme),
        Weight::Line { mu } => integrate_products(
            &[(f.clone(), g.clone()), (f.reflect(), g.reflect())],
            2.0 * mu,
            scheme,
        ),
    }
}

/// `int_0^inf x^s sum_i F_i(x) dx`.
pub fn integrate_half_line(terms: &[QuasiPolynomial], s: f64, scheme: &QuadratureScheme) -> Result<f64> {
    let one = QuasiPolynomial::new(Gauge::trivial(), vec![1.0]);
    let pairs: Vec<_> = terms.iter().map(|t| (t.clone(), one.clone())).collect();
    integrate_products(&pairs, s, scheme)
}

/// Value of `exp(-S(x)) P(x)` together with `exp(-S(x)) sum_k |c_k| x^k`.
fn eval_with_bound(f: &QuasiPolynomial, x: f64) -> (f64, f64) {
    let g = (-f.gauge().exponent(x)).exp();
    let bound: f64 = f.coeffs().iter().rev().fold(0.0, |acc, c| acc * x + c.abs());
    (g * f.polynomial_at(x), g * bound)
}

/// `int_0^inf x^s sum_i f_i(x) g_i(x) dx`.
fn integrate_products(pairs: &[(QuasiPolynomial, QuasiPolynomial)], s: f64, scheme: &QuadratureScheme) -> Result<f64> {
    if !(s > -1.0) {
        return Err(Error::DivergentInnerProduct(format!("weight x^{s} is not integrable at 0")));
    }
    let live: Vec<&(QuasiPolynomial, QuasiPolynomial)> =
        pairs.iter().filter(|(f, g)| !f.is_zero() && !g.is_zero()).collect();
    if live.is_empty() {
        return Ok(0.0);
    }
    let gauges: Vec<_> = live.iter().map(|(f, g)| f.gauge().product(g.gauge())).collect();
    if let Some(g) = gauges.iter().find(|g| !g.decays_on_half_line()) {
        return Err(Error::DivergentInnerProduct(format!("gauge {g:?} does not decay at infinity")));
    }
    let log_bound = |f: &QuasiPolynomial, x: f64| -> f64 {
        let p: f64 = f.coeffs().iter().rev().fold(0.0, |acc, c| acc * x + c.abs());
        p.ln() - f.gauge().exponent(x)
    };
    let log_mag = |x: f64| -> f64 {
        live.iter()
            .map(|(f, g)| log_bound(f, x) + log_bound(g, x))
            .fold(f64::NEG_INFINITY, f64::max)
            + s * x.ln()
    };
    let r_cut = cutoff_radius(&gauges, log_mag);
    // Value and a bound on its rounding scale.
    let eval = |x: f64| -> (f64, f64) {
        live.iter().fold((0.0, 0.0), |(v, m), (f, g)| {
            let (fv, fb) = eval_with_bound(f, x);
            let (gv, gb) = eval_with_bound(g, x);
            (v + fv * gv, m + fb * gb)
        })
    };

    let rules = Rules::new(scheme.panel_order, s)?;

    // Scale for the tolerance: integral of the absolute integrand on a fixed
    // composite rule.
    let abs_eval = |x: f64| (eval(x).0.abs(), 0.0);
    let abs_weighted = |x: f64| (x.powf(s) * eval(x).0.abs(), 0.0);
    let first = r_cut / 64.0;
    let mut scale = rules.jacobi(first, &abs_eval);
    for i in 1..64 {
        scale += rules.legendre(i as f64 * first, (i + 1) as f64 * first, &abs_weighted).0;
    }
    if scale == 0.0 {
        return Ok(0.0);
    }
    let tol = scheme.rel_tol * scale;

    let weighted = |x: f64| {
        let (v, m) = eval(x);
        let w = x.powf(s);
        (w * v, w * m)
    };
    let head = rules.head_panel(first, &eval, &weighted, tol, scheme.max_depth)?;
    let tail = rules.adaptive(first, r_cut, &weighted, tol, scheme.max_depth)?;
    Ok(head + tail)
}

fn cutoff_radius(gauges: &[Gauge], log_mag: impl Fn(f64) -> f64) -> f64 {
    // Natural length of the slowest-decaying gauge.
    let length = gauges
        .iter()
        .map(|g| {
            let mut l = f64::INFINITY;
            if g.quartic > 0.0 {
                l = l.min((4.0 / g.quartic).powf(0.25));
            }
            if g.quadratic > 0.0 {
                l = l.min((2.0 / g.quadratic).sqrt());
            }
            if g.linear > 0.0 {
                l = l.min(1.0 / g.linear);
            }
            if !l.is_finite() {
                // Decay relies on a higher term dominating a negative lower one.
                l = 1.0;
            }
            l
        })
        .fold(0.0f64, f64::max);
    let step = 0.01 * length;
    let mut peak = f64::NEG_INFINITY;
    let mut r = step;
    for _ in 0..10_000_000 {
        let v = log_mag(r);
        if v > peak {
            peak = v;
        } else if v < peak - 50.0 {
            return r;
        }
        r += step;
    }
    r
}

struct Rules {
    s: f64,
    jacobi_nodes: Vec<f64>,
    jacobi_weights: Vec<f64>,
    legendre_nodes: Vec<f64>,
    legendre_weights: Vec<f64>,
}

impl Rules {
    fn new(order: usize, s: f64) -> Result<Self> {
        let (jacobi_nodes, jacobi_weights) = gauss_jacobi(order, s)?;
        let (legendre_nodes, legendre_weights) = gauss_legendre(order)?;
        Ok(Self {
            s,
            jacobi_nodes,
            jacobi_weights,
            legendre_nodes,
            legendre_weights,
        })
    }

    /// `int_0^c x^s h(x) dx`; `h` returns a value and its rounding scale.
    fn jacobi(&self, c: f64, h: &Integrand) -> f64 {
        let half = 0.5 * c;
        let sum: f64 = self
            .jacobi_nodes
            .iter()
            .zip(&self.jacobi_weights)
            .map(|(t, w)| w * h(half * (1.0 + t)).0)
            .sum();
        half.powf(self.s + 1.0) * sum
    }

    /// Integral and integrated rounding scale on one panel.
    fn legendre(&self, lo: f64, hi: f64, h: &Integrand) -> (f64, f64) {
        let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        let (sum, mag) = self
            .legendre_nodes
            .iter()
            .zip(&self.legendre_weights)
            .fold((0.0, 0.0), |(s, m), (t, w)| {
                let (v, b) = h(mid + half * t);
                (s + w * v, m + w * b)
            });
        (half * sum, half * mag)
    }

    fn head_panel(&self, c: f64, eval: &Integrand, weighted: &Integrand, tol: f64, depth: u32) -> Result<f64> {
        let whole = self.jacobi(c, eval);
        let split = self.jacobi(0.5 * c, eval) + self.legendre(0.5 * c, c, weighted).0;
        if (whole - split).abs() <= tol {
            return Ok(split);
        }
        if depth == 0 {
            return Err(Error::InvalidParameter("quadrature did not converge near the origin".into()));
        }
        Ok(self.head_panel(0.5 * c, eval, weighted, 0.5 * tol, depth - 1)?
            + self.adaptive(0.5 * c, c, weighted, 0.5 * tol, depth - 1)?)
    }

    fn adaptive(&self, lo: f64, hi: f64, f: &Integrand, tol: f64, depth: u32) -> Result<f64> {
        let mid = 0.5 * (lo + hi);
        let whole = self.legendre(lo, hi, f).0;
        let (left, left_mag) = self.legendre(lo, mid, f);
        let (right, right_mag) = self.legendre(mid, hi, f);
        let split = left + right;
        // Below this the difference is rounding noise of a cancelling integrand.
        let noise = 64.0 * f64::EPSILON * (left_mag + right_mag);
        if (whole - split).abs() <= tol.max(noise) {
            return Ok(split);
        }
        if depth == 0 {
            return Err(Error::InvalidParameter(format!("quadrature did not converge on [{lo}, {hi}]")));
        }
        Ok(self.adaptive(lo, mid, f, 0.5 * tol, depth - 1)? + self.adaptive(mid, hi, f, 0.5 * tol, depth - 1)?)
    }
}

type Integrand<'a> = dyn Fn(f64) -> (f64, f64) + 'a;
