//! Sampled functions on the line, used for plotting and cross-checks only.

use crate::params::DunklParams;
use crate::quasi::QuasiPolynomial;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    xs: Vec<f64>,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(xs: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if xs.len() != values.len() {
            return Err(Error::InvalidParameter(format!(
                "grid has {} abscissas but {} values",
                xs.len(),
                values.len()
            )));
        }
        Ok(Self { xs, values })
    }

    /// Samples `f` on `npoints` uniform abscissas spanning `[-half_width, half_width]`.
    pub fn sample(f: &QuasiPolynomial, half_width: f64, npoints: usize) -> Result<Self> {
        let xs = symmetric_uniform(half_width, npoints)?;
        let values = xs.iter().map(|&x| f.eval(x)).collect();
        Ok(Self { xs, values })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn mirror_index(&self, i: usize) -> usize {
        self.xs.len() - 1 - i
    }

    pub fn is_reflection_closed(&self) -> bool {
        let scale = self.xs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let tol = 1e-12 * scale.max(1.0);
        (0..self.xs.len()).all(|i| (self.xs[i] + self.xs[self.mirror_index(i)]).abs() <= tol)
    }

    /// `x_i -> f(-x_i)`, swapping mirrored samples.
    pub fn reflect(&self) -> Result<Self> {
        if !self.is_reflection_closed() {
            return Err(Error::GridNotReflectionClosed);
        }
        let values = self.values.iter().rev().copied().collect();
        Ok(Self {
            xs: self.xs.clone(),
            values,
        })
    }

    /// Second-order finite-difference Dunkl derivative on a uniform
    /// reflection-closed grid. The end points use one-sided second-order
    /// stencils. At `x = 0` the reflection term is replaced by its limit
    /// `2 mu f'(0)`.
    pub fn dunkl_fd(&self, p: DunklParams) -> Result<Self> {
        let reflected = self.reflect()?;
        let n = self.xs.len();
        if n < 3 {
            return Err(Error::InvalidParameter("finite differences need at least 3 points".into()));
        }
        let h = self.xs[1] - self.xs[0];
        let f = &self.values;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let d = if i == 0 {
                (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h)
            } else if i == n - 1 {
                (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h)
            } else {
                (f[i + 1] - f[i - 1]) / (2.0 * h)
            };
            let x = self.xs[i];
            let reflection = if x.abs() < 0.5 * h {
                2.0 * d
            } else {
                (f[i] - reflected.values[i]) / x
            };
            out.push(d + p.mu() * reflection);
        }
        Ok(Self {
            xs: self.xs.clone(),
            values: out,
        })
    }
}

fn symmetric_uniform(half_width: f64, npoints: usize) -> Result<Vec<f64>> {
    if npoints < 2 || !(half_width > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "symmetric grid needs npoints >= 2 and half width > 0, got {npoints}, {half_width}"
        )));
    }
    let h = 2.0 * half_width / (npoints - 1) as f64;
    let mut xs: Vec<f64> = (0..npoints).map(|i| -half_width + i as f64 * h).collect();
    // Mirror the right half exactly so reflection is a pure index swap.
    for i in 0..npoints / 2 {
        xs[npoints - 1 - i] = -xs[i];
    }
    if npoints % 2 == 1 {
        xs[npoints / 2] = 0.0;
    }
    Ok(xs)
}
