//! Positive real roots of small polynomials.
//!
//! Sign changes are detected on a logarithmic sweep of `(0, B]`, where `B` is
//! the Cauchy bound, and each bracket is refined by bisection.

const SWEEP_POINTS: usize = 4000;
const SWEEP_DECADES: f64 = 14.0;

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Cauchy bound `1 + max |c_i / c_deg|` on the magnitude of every root.
pub fn cauchy_bound(coeffs: &[f64]) -> Option<f64> {
    let deg = coeffs.iter().rposition(|&c| c != 0.0)?;
    let lead = coeffs[deg];
    Some(1.0 + coeffs[..deg].iter().fold(0.0f64, |m, c| m.max((c / lead).abs())))
}

/// Sorted positive roots of `sum_i coeffs[i] x^i`.
pub fn positive_roots(coeffs: &[f64]) -> Vec<f64> {
    let Some(bound) = cauchy_bound(coeffs) else {
        return Vec::new();
    };
    let lo = bound * 10f64.powf(-SWEEP_DECADES);
    let ratio = (bound / lo).powf(1.0 / (SWEEP_POINTS - 1) as f64);
    let mut roots = Vec::new();
    let mut x_prev = lo;
    let mut f_prev = horner(coeffs, lo);
    for i in 1..SWEEP_POINTS {
        let x = if i == SWEEP_POINTS - 1 { bound } else { lo * ratio.powi(i as i32) };
        let f = horner(coeffs, x);
        if f == 0.0 {
            roots.push(x);
        } else if f_prev != 0.0 && (f > 0.0) != (f_prev > 0.0) {
            roots.push(bisect(coeffs, x_prev, x, f_prev));
        }
        x_prev = x;
        f_prev = f;
    }
    roots
}

pub fn count_positive_roots(coeffs: &[f64]) -> usize {
    positive_roots(coeffs).len()
}

fn bisect(coeffs: &[f64], mut lo: f64, mut hi: f64, f_lo: f64) -> f64 {
    let lo_positive = f_lo > 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f = horner(coeffs, mid);
        if f == 0.0 {
            return mid;
        }
        if (f > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
