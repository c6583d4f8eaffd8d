//! Known QES levels of the three families, by diagonalising the finite
//! blocks and, for `n <= 1`, by the explicit formulas.
//!
//! Conventions:
//! * oscillator families: physical energy = block eigenvalue / 2, solutions
//!   ascending in energy; level `k` has `k` positive roots of `p(z)`;
//! * Coulomb family: every solution of one call shares the energy
//!   `a(n + 2nu + mu1 + mu2 + 1) - b^2/2`; solution `k` is the `k`-th excited
//!   state of its own potential, so its polynomial has `k` positive roots and
//!   the couplings increase with `k`.

use serde::{Deserialize, Serialize};

use crate::block::{build_coulomb_block, build_oscillator_block, QesBlock};
use crate::dunkl::LineHamiltonian;
use crate::oracle::residual::{residual_meter, EigenOperator};
use crate::params::{DunklParams, EffectiveL, GaugeParams, Parity, PlaneSector};
use crate::quasi::{Gauge, QuasiPolynomial};
use crate::radial::RadialHamiltonian;
use crate::roots::count_positive_roots;
use crate::{Error, Result};

/// Relative size below which a leading eigenvector component is treated as
/// vanishing.
pub const DEGENERATE_LEADING_TOL: f64 = 1e-13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    LineOscillator,
    PlaneOscillator,
    PlaneCoulomb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    Block,
    ClosedForm,
}

/// Quantum numbers fixing the decoupled sector of a family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum SectorInfo {
    Line { dunkl: DunklParams, parity: Parity },
    PlaneOscillator { sector: PlaneSector },
    PlaneCoulomb { sector: PlaneSector },
}

impl SectorInfo {
    pub fn family(&self) -> Family {
        match self {
            SectorInfo::Line { .. } => Family::LineOscillator,
            SectorInfo::PlaneOscillator { .. } => Family::PlaneOscillator,
            SectorInfo::PlaneCoulomb { .. } => Family::PlaneCoulomb,
        }
    }

    pub fn effective_l(&self) -> EffectiveL {
        match self {
            SectorInfo::Line { dunkl, parity } => EffectiveL::line(*dunkl, *parity),
            SectorInfo::PlaneOscillator { sector } | SectorInfo::PlaneCoulomb { sector } => {
                EffectiveL::plane(sector)
            }
        }
    }

    /// Power of the variable multiplying `p`: `epsilon` on the line, `2 nu` in the plane.
    pub fn prefactor_power(&self) -> usize {
        match self {
            SectorInfo::Line { parity, .. } => parity.epsilon() as usize,
            SectorInfo::PlaneOscillator { sector } | SectorInfo::PlaneCoulomb { sector } => {
                sector.radial_power()
            }
        }
    }
}

/// A fully specified QES problem: sector, gauge and representation index `n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QesProblem {
    pub sector: SectorInfo,
    pub gauge: GaugeParams,
    pub n: u32,
}

/// One known level.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QesSolution {
    pub family: Family,
    pub n: u32,
    /// Level index within the `n + 1` known states.
    pub k: usize,
    pub energy: f64,
    /// Coulomb coupling `alpha_k`; `None` for the oscillator families.
    pub alpha: Option<f64>,
    /// Coefficients of `p` in the natural variable (`x^2`, `ρ^2` or `ρ`),
    /// leading coefficient 1 unless `degenerate_degree`.
    pub polynomial: Vec<f64>,
    pub wavefunction: QuasiPolynomial,
    pub provenance: Provenance,
    pub degenerate_degree: bool,
    pub problem: QesProblem,
}

impl QesProblem {
    pub fn line(dunkl: DunklParams, parity: Parity, gauge: GaugeParams, n: u32) -> Self {
        Self {
            sector: SectorInfo::Line { dunkl, parity },
            gauge,
            n,
        }
    }

    pub fn plane_oscillator(sector: PlaneSector, gauge: GaugeParams, n: u32) -> Self {
        Self {
            sector: SectorInfo::PlaneOscillator { sector },
            gauge,
            n,
        }
    }

    pub fn plane_coulomb(sector: PlaneSector, gauge: GaugeParams, n: u32) -> Self {
        Self {
            sector: SectorInfo::PlaneCoulomb { sector },
            gauge,
            n,
        }
    }

    pub fn family(&self) -> Family {
        self.sector.family()
    }

    pub fn effective_l(&self) -> EffectiveL {
        self.sector.effective_l()
    }

    pub fn block(&self) -> Result<QesBlock> {
        match self.sector {
            SectorInfo::PlaneCoulomb { .. } => build_coulomb_block(self.effective_l(), self.gauge, self.n),
            _ => build_oscillator_block(self.effective_l(), self.gauge, self.n),
        }
    }

    /// Shared energy of the Coulomb set, `a(n + l + 3/2) - b^2/2`.
    pub fn coulomb_energy(&self) -> f64 {
        let (a, b) = (self.gauge.a(), self.gauge.b());
        a * (f64::from(self.n) + self.effective_l().value() + 1.5) - 0.5 * b * b
    }

    fn wavefunction_gauge(&self) -> Gauge {
        match self.sector {
            SectorInfo::PlaneCoulomb { .. } => Gauge::coulomb(self.gauge.a(), self.gauge.b()),
            _ => Gauge::oscillator(self.gauge),
        }
    }

    /// Assembles `x^prefactor * p(x^step) * gauge` from the coefficients of `p`.
    pub fn wavefunction_from(&self, polynomial: &[f64]) -> QuasiPolynomial {
        let step = match self.sector {
            SectorInfo::PlaneCoulomb { .. } => 1,
            _ => 2,
        };
        let shift = self.sector.prefactor_power();
        let len = shift + step * polynomial.len().saturating_sub(1) + 1;
        let mut coeffs = vec![0.0; len];
        for (k, &c) in polynomial.iter().enumerate() {
            coeffs[shift + step * k] = c;
        }
        QuasiPolynomial::new(self.wavefunction_gauge(), coeffs)
    }

    /// The Hamiltonian whose eigenfunction `solution` is, as an operator on
    /// the exact function class.
    pub fn operator(&self, alpha: Option<f64>) -> Box<dyn EigenOperator> {
        match self.sector {
            SectorInfo::Line { dunkl, .. } => Box::new(LineHamiltonian::new(dunkl, self.gauge, self.n)),
            SectorInfo::PlaneOscillator { sector } => {
                Box::new(RadialHamiltonian::plane_oscillator(&sector, self.gauge, self.n))
            }
            SectorInfo::PlaneCoulomb { sector } => Box::new(RadialHamiltonian::plane_coulomb(
                &sector,
                self.gauge,
                alpha.unwrap_or(0.0),
            )),
        }
    }

    /// All `n + 1` known levels from the block.
    pub fn solve(&self) -> Result<Vec<QesSolution>> {
        let block = self.block()?;
        let pairs = block.eigenpairs()?;
        let coulomb = self.family() == Family::PlaneCoulomb;
        let energy_shared = self.coulomb_energy();
        Ok(pairs
            .into_iter()
            .enumerate()
            .map(|(k, (value, c))| {
                let (polynomial, degenerate_degree) = normalize_leading(c);
                let (energy, alpha) = if coulomb {
                    (energy_shared, Some(value))
                } else {
                    (0.5 * value, None)
                };
                QesSolution {
                    family: self.family(),
                    n: self.n,
                    k,
                    energy,
                    alpha,
                    wavefunction: self.wavefunction_from(&polynomial),
                    polynomial,
                    provenance: Provenance::Block,
                    degenerate_degree,
                    problem: *self,
                }
            })
            .collect())
    }

    /// Explicit `n = 0, 1` answers, computed from their formulas only.
    pub fn closed_form(&self) -> Result<Vec<QesSolution>> {
        if self.n > 1 {
            return Err(Error::NoClosedForm(self.n));
        }
        self.gauge.require_qes()?;
        let (a, b) = (self.gauge.a(), self.gauge.b());
        // (energy, alpha, polynomial) per level
        let levels: Vec<(f64, Option<f64>, Vec<f64>)> = match (self.sector, self.n) {
            (SectorInfo::Line { dunkl, parity }, 0) => {
                let e = f64::from(parity.epsilon());
                vec![((dunkl.mu() + e + 0.5) * b, None, vec![1.0])]
            }
            (SectorInfo::Line { dunkl, parity }, _) => {
                let (mu, e) = (dunkl.mu(), f64::from(parity.epsilon()));
                let s = (b * b + 2.0 * a * (2.0 * mu + 2.0 * e + 1.0)).sqrt();
                let centre = (mu + e + 1.5) * b;
                vec![
                    (centre - s, None, vec![(b + s) / (2.0 * a), 1.0]),
                    (centre + s, None, vec![(b - s) / (2.0 * a), 1.0]),
                ]
            }
            (SectorInfo::PlaneOscillator { sector }, 0) => {
                let t = 2.0 * sector.nu() + sector.mu1() + sector.mu2();
                vec![((t + 1.0) * b, None, vec![1.0])]
            }
            (SectorInfo::PlaneOscillator { sector }, _) => {
                let t = 2.0 * sector.nu() + sector.mu1() + sector.mu2();
                let s = (b * b + 2.0 * a * (2.0 * t + 2.0)).sqrt();
                vec![
                    ((t + 2.0) * b - s, None, vec![(b + s) / (2.0 * a), 1.0]),
                    ((t + 2.0) * b + s, None, vec![(b - s) / (2.0 * a), 1.0]),
                ]
            }
            (SectorInfo::PlaneCoulomb { sector }, 0) => {
                let t = 2.0 * sector.nu() + sector.mu1() + sector.mu2();
                vec![(a * (t + 1.0) - 0.5 * b * b, Some(0.0), vec![1.0])]
            }
            (SectorInfo::PlaneCoulomb { sector }, _) => {
                let t = 2.0 * sector.nu() + sector.mu1() + sector.mu2();
                let s = (b * b + 2.0 * a * (2.0 * t + 1.0)).sqrt();
                let e = a * (t + 2.0) - 0.5 * b * b;
                // The nodeless polynomial 2aρ + b + s goes with alpha = b - s.
                vec![
                    (e, Some(b - s), vec![(b + s) / (2.0 * a), 1.0]),
                    (e, Some(b + s), vec![(b - s) / (2.0 * a), 1.0]),
                ]
            }
        };
        Ok(levels
            .into_iter()
            .enumerate()
            .map(|(k, (energy, alpha, polynomial))| QesSolution {
                family: self.family(),
                n: self.n,
                k,
                energy,
                alpha,
                wavefunction: self.wavefunction_from(&polynomial),
                polynomial,
                provenance: Provenance::ClosedForm,
                degenerate_degree: false,
                problem: *self,
            })
            .collect())
    }
}

fn normalize_leading(mut c: Vec<f64>) -> (Vec<f64>, bool) {
    let max = c.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let lead = *c.last().expect("block has at least one row");
    if lead.abs() < DEGENERATE_LEADING_TOL * max {
        let pivot = c.iter().copied().fold(0.0, |m: f64, x| if x.abs() > m.abs() { x } else { m });
        c.iter_mut().for_each(|x| *x /= pivot);
        (c, true)
    } else {
        c.iter_mut().for_each(|x| *x /= lead);
        (c, false)
    }
}

impl QesSolution {
    /// Positive roots of `p` in its natural variable; equals the node count
    /// of the wavefunction on the open half-line.
    pub fn node_count(&self) -> usize {
        count_positive_roots(&self.polynomial)
    }

    pub fn operator(&self) -> Box<dyn EigenOperator> {
        self.problem.operator(self.alpha)
    }

    /// Relative coefficient-space residual of `H psi - E psi`.
    pub fn residual(&self) -> Result<f64> {
        residual_meter(self.operator().as_ref(), &self.wavefunction, self.energy)
    }
}

pub fn solve_line_qes(p: DunklParams, eps: Parity, g: GaugeParams, n: u32) -> Result<Vec<QesSolution>> {
    QesProblem::line(p, eps, g, n).solve()
}

pub fn solve_plane_oscillator_qes(sector: PlaneSector, g: GaugeParams, n: u32) -> Result<Vec<QesSolution>> {
    QesProblem::plane_oscillator(sector, g, n).solve()
}

pub fn solve_plane_coulomb_qes(sector: PlaneSector, g: GaugeParams, n: u32) -> Result<Vec<QesSolution>> {
    QesProblem::plane_coulomb(sector, g, n).solve()
}
