//! Where do the known levels sit in the full spectrum of their sector?

use serde::{Deserialize, Serialize};

use super::fd::{fd_eigen_richardson, fd_node_count, HalfLinePotential, RadialGrid, RichardsonLevel};
use super::report::{OracleEntry, OracleReport};
use crate::spectra::{Family, QesProblem, QesSolution};
use crate::Result;

/// Grid choice for the finite-difference runs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FdOptions {
    /// Points of the coarsest of the three Richardson grids.
    pub npoints: usize,
    /// Outer boundary; chosen from the gauge decay when `None`.
    pub rmax: Option<f64>,
    /// Analytic and oracle values closer than this are considered the same level.
    pub match_tol: f64,
}

impl Default for FdOptions {
    fn default() -> Self {
        Self {
            npoints: 1200,
            rmax: None,
            match_tol: 1e-4,
        }
    }
}

impl FdOptions {
    pub fn grid_for(&self, pot: &HalfLinePotential, levels: usize) -> Result<RadialGrid> {
        RadialGrid::new(self.rmax.unwrap_or_else(|| pot.decay_radius(levels)), self.npoints)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub k: usize,
    pub alpha: Option<f64>,
    /// Gauged energy `2 E` of the known level.
    pub analytic: f64,
    /// 1-based position among the oracle eigenvalues, if matched.
    pub position: Option<usize>,
    pub matched: Option<RichardsonLevel>,
    /// Lowest oracle eigenvalues of the potential this level belongs to.
    pub oracle_lowest: Vec<f64>,
    pub grid: RadialGrid,
    pub polynomial_nodes: usize,
    pub oracle_nodes: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub family: Family,
    pub n: u32,
    pub l: f64,
    pub entries: Vec<AuditEntry>,
    /// Oscillators: the known levels fill positions `1..=n+1`.
    /// Coulomb: level `k` is at position `k + 1` of its own potential.
    pub known_are_lowest: bool,
}

impl AuditReport {
    pub fn all_matched(&self) -> bool {
        self.entries.iter().all(|e| e.position.is_some())
    }

    pub fn to_oracle_report(&self) -> OracleReport {
        let mut report = OracleReport::new();
        for e in &self.entries {
            if let Some(level) = e.matched {
                let label = match e.alpha {
                    Some(alpha) => format!("{:?} n={} k={} alpha={alpha}", self.family, self.n, e.k),
                    None => format!("{:?} n={} k={}", self.family, self.n, e.k),
                };
                report.push(OracleEntry::new(label, e.analytic, e.grid, level));
            }
        }
        report
    }
}

/// Gauged half-line potential whose spectrum contains `solution`.
pub fn gauged_potential(problem: &QesProblem, alpha: Option<f64>) -> HalfLinePotential {
    let l = problem.effective_l().value();
    let (a, b) = (problem.gauge.a(), problem.gauge.b());
    match problem.family() {
        Family::LineOscillator | Family::PlaneOscillator => HalfLinePotential::Oscillator { l, a, b, n: problem.n },
        Family::PlaneCoulomb => HalfLinePotential::Coulomb {
            l,
            a,
            b,
            alpha: alpha.unwrap_or(0.0),
        },
    }
}

/// Compares the `n + 1` known levels with the `n + 3` lowest oracle
/// eigenvalues of their sector and records the match positions.
pub fn qes_position_audit(problem: &QesProblem, options: &FdOptions) -> Result<AuditReport> {
    let solutions = problem.solve()?;
    let m = problem.n as usize + 3;
    let coulomb = problem.family() == Family::PlaneCoulomb;

    let mut entries = Vec::with_capacity(solutions.len());
    let mut shared: Option<(RadialGrid, Vec<RichardsonLevel>)> = None;
    for sol in &solutions {
        let pot = gauged_potential(problem, sol.alpha);
        let (grid, levels) = match (&shared, coulomb) {
            (Some(s), false) => s.clone(),
            _ => {
                let grid = options.grid_for(&pot, m)?;
                let spec = fd_eigen_richardson(|r| pot.eval(r), &grid, m)?;
                let run = (grid, spec.levels);
                if !coulomb {
                    shared = Some(run.clone());
                }
                run
            }
        };
        entries.push(audit_entry(sol, &pot, grid, &levels, options)?);
    }

    let known_are_lowest = if coulomb {
        entries.iter().all(|e| e.position == Some(e.k + 1))
    } else {
        let mut positions: Vec<usize> = entries.iter().filter_map(|e| e.position).collect();
        positions.sort_unstable();
        positions == (1..=solutions.len()).collect::<Vec<_>>()
    };
    Ok(AuditReport {
        family: problem.family(),
        n: problem.n,
        l: problem.effective_l().value(),
        entries,
        known_are_lowest,
    })
}

fn audit_entry(
    sol: &QesSolution,
    pot: &HalfLinePotential,
    grid: RadialGrid,
    levels: &[RichardsonLevel],
    options: &FdOptions,
) -> Result<AuditEntry> {
    let analytic = 2.0 * sol.energy;
    let tol = options.match_tol * analytic.abs().max(1.0);
    let best = levels
        .iter()
        .enumerate()
        .min_by(|x, y| (x.1.extrapolated - analytic).abs().total_cmp(&(y.1.extrapolated - analytic).abs()))
        .filter(|(_, lvl)| (lvl.extrapolated - analytic).abs() <= tol);
    let oracle_nodes = match best {
        Some((_, lvl)) => {
            let fine = grid.refined().refined();
            Some(fd_node_count(|r| pot.eval(r), &fine, lvl.fine)?)
        }
        None => None,
    };
    Ok(AuditEntry {
        k: sol.k,
        alpha: sol.alpha,
        analytic,
        position: best.map(|(i, _)| i + 1),
        matched: best.map(|(_, l)| *l),
        oracle_lowest: levels.iter().map(|l| l.extrapolated).collect(),
        grid,
        polynomial_nodes: sol.node_count(),
        oracle_nodes,
    })
}
