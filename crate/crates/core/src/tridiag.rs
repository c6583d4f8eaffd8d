//! Symmetric tridiagonal eigenproblems.
//!
//! [`eig_tridiag`] is the implicit-shift QL algorithm with eigenvector
//! accumulation (the EISPACK `tql2` scheme). [`lowest_eigenvalues`] uses
//! Sturm-sequence bisection and never forms eigenvectors, which is what the
//! large finite-difference matrices need.

use crate::{Error, Result};

/// Eigenvalues in ascending order with orthonormal eigenvectors;
/// `vectors[j]` belongs to `values[j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TridiagEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

const MAX_SWEEPS_PER_VALUE: usize = 60;

pub fn eig_tridiag(diag: &[f64], offdiag: &[f64]) -> Result<TridiagEigen> {
    let n = diag.len();
    if n == 0 {
        return Ok(TridiagEigen {
            values: Vec::new(),
            vectors: Vec::new(),
        });
    }
    if offdiag.len() + 1 != n {
        return Err(Error::InvalidParameter(format!(
            "tridiagonal of size {n} needs {} off-diagonal entries, got {}",
            n - 1,
            offdiag.len()
        )));
    }
    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(0.0);
    // z[k][j]: component k of eigenvector j.
    let mut z: Vec<Vec<f64>> = (0..n)
        .map(|k| (0..n).map(|j| if j == k { 1.0 } else { 0.0 }).collect())
        .collect();

    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_SWEEPS_PER_VALUE {
                return Err(Error::NoConvergence {
                    iterations,
                    diag: diag.to_vec(),
                    offdiag: offdiag.to_vec(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in z.iter_mut() {
                    let f = row[i + 1];
                    row[i + 1] = s * row[i] + c * f;
                    row[i] = c * row[i] - s * f;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&j| d[j]).collect();
    let vectors = order
        .iter()
        .map(|&j| (0..n).map(|k| z[k][j]).collect())
        .collect();
    Ok(TridiagEigen { values, vectors })
}

/// Number of eigenvalues strictly below `x` (Sturm sequence of pivots).
pub fn count_below(diag: &[f64], offdiag: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for (i, &d) in diag.iter().enumerate() {
        let coupling = if i == 0 { 0.0 } else { offdiag[i - 1] * offdiag[i - 1] };
        q = d - x - if i == 0 { 0.0 } else { coupling / q };
        if q == 0.0 {
            q = -f64::EPSILON * (d.abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Gershgorin interval containing the whole spectrum.
pub fn gershgorin_bounds(diag: &[f64], offdiag: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { offdiag[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { offdiag[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    (lo, hi)
}

/// The `m` smallest eigenvalues by bisection, ascending.
pub fn lowest_eigenvalues(diag: &[f64], offdiag: &[f64], m: usize) -> Result<Vec<f64>> {
    let n = diag.len();
    if m > n {
        return Err(Error::InvalidParameter(format!(
            "requested {m} eigenvalues of a {n}x{n} matrix"
        )));
    }
    if offdiag.len() + 1 != n {
        return Err(Error::InvalidParameter("off-diagonal length must be n - 1".into()));
    }
    let (glo, ghi) = gershgorin_bounds(diag, offdiag);
    let pad = f64::EPSILON * (glo.abs().max(ghi.abs()) + 1.0);
    let mut out = Vec::with_capacity(m);
    for j in 0..m {
        let mut lo = out.last().copied().unwrap_or(glo - pad).max(glo - pad);
        let mut hi = ghi + pad;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if count_below(diag, offdiag, mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.push(0.5 * (lo + hi));
    }
    Ok(out)
}

/// Eigenvector for an (already converged) eigenvalue by inverse iteration.
pub fn inverse_iteration(diag: &[f64], offdiag: &[f64], value: f64) -> Vec<f64> {
    let n = diag.len();
    let scale = diag.iter().fold(0.0f64, |m, d| m.max(d.abs())).max(1.0);
    let shift = value + 1e-10 * scale;
    let mut x = vec![1.0; n];
    for _ in 0..4 {
        x = solve_shifted(diag, offdiag, shift, &x);
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 0.0 && norm.is_finite() {
            x.iter_mut().for_each(|v| *v /= norm);
        }
    }
    x
}

// Thomas algorithm for (T - shift I) x = rhs.
fn solve_shifted(diag: &[f64], offdiag: &[f64], shift: f64, rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut y = vec![0.0; n];
    let tiny = 1e-300;
    let mut denom = diag[0] - shift;
    if denom == 0.0 {
        denom = tiny;
    }
    if n > 1 {
        c[0] = offdiag[0] / denom;
    }
    y[0] = rhs[0] / denom;
    for i in 1..n {
        let mut denom = diag[i] - shift - offdiag[i - 1] * c[i - 1];
        if denom == 0.0 {
            denom = tiny;
        }
        if i + 1 < n {
            c[i] = offdiag[i] / denom;
        }
        y[i] = (rhs[i] - offdiag[i - 1] * y[i - 1]) / denom;
    }
    for i in (0..n.saturating_sub(1)).rev() {
        y[i] -= c[i] * y[i + 1];
    }
    y
}
