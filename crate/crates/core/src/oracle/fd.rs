//! Second-order finite differences for `-u'' + V(r) u = E u` on `(0, rmax)`
//! with Dirichlet conditions at both ends.

use serde::{Deserialize, Serialize};

use crate::tridiag::{inverse_iteration, lowest_eigenvalues};
use crate::{Error, Result};

/// Uniform nodes `r_i = (i + 1) h`, `h = rmax / (npoints + 1)`, so `rmin = h`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    pub rmax: f64,
    pub npoints: usize,
}

pub const MIN_GRID_POINTS: usize = 200;

impl RadialGrid {
    pub fn new(rmax: f64, npoints: usize) -> Result<Self> {
        if !(rmax > 0.0) || !rmax.is_finite() {
            return Err(Error::InvalidParameter(format!("rmax must be > 0, got {rmax}")));
        }
        if npoints < MIN_GRID_POINTS {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least {MIN_GRID_POINTS} points, got {npoints}"
            )));
        }
        Ok(Self { rmax, npoints })
    }

    pub fn spacing(&self) -> f64 {
        self.rmax / (self.npoints + 1) as f64
    }

    pub fn rmin(&self) -> f64 {
        self.spacing()
    }

    /// The grid with half the spacing.
    pub fn refined(&self) -> Self {
        Self {
            rmax: self.rmax,
            npoints: 2 * self.npoints + 1,
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.spacing();
        (1..=self.npoints).map(move |i| i as f64 * h)
    }
}

/// The half-line operators the oracle discretises, in the gauged convention
/// (no overall 1/2).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum HalfLinePotential {
    /// `a^2 r^6 + 2ab r^4 + [b^2 - (2l + 5 + 4n) a] r^2 + l(l+1)/r^2`.
    Oscillator { l: f64, a: f64, b: f64, n: u32 },
    /// `a^2 r^2 + 2ab r - [b(2l + 2) + alpha]/r + l(l+1)/r^2`.
    Coulomb { l: f64, a: f64, b: f64, alpha: f64 },
    /// `-alpha/r + l(l+1)/r^2`.
    Hydrogenic { l: f64, alpha: f64 },
}

impl HalfLinePotential {
    pub fn eval(&self, r: f64) -> f64 {
        match *self {
            HalfLinePotential::Oscillator { l, a, b, n } => {
                let r2 = r * r;
                let quad = b * b - (2.0 * l + 5.0 + 4.0 * f64::from(n)) * a;
                a * a * r2 * r2 * r2 + 2.0 * a * b * r2 * r2 + quad * r2 + l * (l + 1.0) / r2
            }
            HalfLinePotential::Coulomb { l, a, b, alpha } => {
                a * a * r * r + 2.0 * a * b * r - (b * (2.0 * l + 2.0) + alpha) / r + l * (l + 1.0) / (r * r)
            }
            HalfLinePotential::Hydrogenic { l, alpha } => -alpha / r + l * (l + 1.0) / (r * r),
        }
    }

    /// A radius beyond which the lowest `levels` bound states are below
    /// roughly `1e-16` of their peak.
    pub fn decay_radius(&self, levels: usize) -> f64 {
        let m = levels as f64;
        match *self {
            HalfLinePotential::Oscillator { l, a, b, n } => {
                let extra = 2.0 * (l.abs() + 1.0 + 2.0 * (n as f64 + m));
                first_crossing(|r| 0.25 * a * r.powi(4) + 0.5 * b * r * r - extra * r.max(1.0).ln(), 40.0)
            }
            HalfLinePotential::Coulomb { l, a, b, .. } => {
                let extra = 2.0 * (l.abs() + 1.0 + m);
                first_crossing(|r| 0.5 * a * r * r + b * r - extra * r.max(1.0).ln(), 40.0)
            }
            HalfLinePotential::Hydrogenic { l, alpha } => {
                let kappa = alpha / (2.0 * (l + m));
                (45.0 + 4.0 * (l + m + 1.0)) / kappa
            }
        }
    }
}

fn first_crossing(f: impl Fn(f64) -> f64, level: f64) -> f64 {
    let mut r: f64 = 0.5;
    while f(r) < level && r < 1e6 {
        r *= 1.02;
    }
    r * 1.1
}

fn assemble(veff: &impl Fn(f64) -> f64, grid: &RadialGrid) -> Result<(Vec<f64>, Vec<f64>)> {
    let h = grid.spacing();
    let kinetic = 1.0 / (h * h);
    let diag = grid
        .nodes()
        .enumerate()
        .map(|(node, r)| {
            let v = veff(r);
            if v.is_finite() {
                Ok(2.0 * kinetic + v)
            } else {
                Err(Error::NonFinitePotential { node, r, value: v })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let off = vec![-kinetic; grid.npoints - 1];
    Ok((diag, off))
}

/// The `m` lowest eigenvalues of the discretised `-d^2/dr^2 + veff(r)`.
pub fn fd_eigen_radial(veff: impl Fn(f64) -> f64, grid: &RadialGrid, m: usize) -> Result<Vec<f64>> {
    if m > grid.npoints {
        return Err(Error::InvalidParameter(format!(
            "requested {m} eigenvalues on a {}-point grid",
            grid.npoints
        )));
    }
    let (diag, off) = assemble(&veff, grid)?;
    lowest_eigenvalues(&diag, &off, m)
}

/// Number of interior sign changes of the discrete eigenvector belonging to
/// `value` (a converged eigenvalue on this grid).
pub fn fd_node_count(veff: impl Fn(f64) -> f64, grid: &RadialGrid, value: f64) -> Result<usize> {
    let (diag, off) = assemble(&veff, grid)?;
    let v = inverse_iteration(&diag, &off, value);
    let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let significant: Vec<f64> = v.into_iter().filter(|x| x.abs() > 1e-6 * max).collect();
    Ok(significant.windows(2).filter(|w| (w[0] > 0.0) != (w[1] > 0.0)).count())
}

/// Eigenvalue estimates on grids `h`, `h/2`, `h/4`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RichardsonLevel {
    pub coarse: f64,
    pub mid: f64,
    pub fine: f64,
    /// `(4 fine - mid) / 3`.
    pub extrapolated: f64,
    /// Difference to the extrapolation from the two coarser grids.
    pub error_bar: f64,
    /// Observed order `log2((coarse - mid) / (mid - fine))`.
    pub order: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FdSpectrum {
    pub grid: RadialGrid,
    pub levels: Vec<RichardsonLevel>,
}

impl FdSpectrum {
    pub fn extrapolated(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.extrapolated).collect()
    }
}

pub fn fd_eigen_richardson(veff: impl Fn(f64) -> f64, grid: &RadialGrid, m: usize) -> Result<FdSpectrum> {
    let mid_grid = grid.refined();
    let fine_grid = mid_grid.refined();
    let coarse = fd_eigen_radial(&veff, grid, m)?;
    let mid = fd_eigen_radial(&veff, &mid_grid, m)?;
    let fine = fd_eigen_radial(&veff, &fine_grid, m)?;
    let levels = (0..m)
        .map(|i| {
            let extrapolated = (4.0 * fine[i] - mid[i]) / 3.0;
            let previous = (4.0 * mid[i] - coarse[i]) / 3.0;
            RichardsonLevel {
                coarse: coarse[i],
                mid: mid[i],
                fine: fine[i],
                extrapolated,
                error_bar: (extrapolated - previous).abs(),
                order: ((coarse[i] - mid[i]) / (mid[i] - fine[i])).log2(),
            }
        })
        .collect();
    Ok(FdSpectrum { grid: *grid, levels })
}
