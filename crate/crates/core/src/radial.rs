//! Radial Hamiltonians of the planar Dunkl problems,
//!
//! ```text
//! H = (1/2){ -d^2/dρ^2 - (w/ρ) d/dρ + V(ρ) + c1/ρ + c2/ρ^2 },   w = 2mu1 + 2mu2 + 1,
//! ```
//!
//! with `V` a polynomial. To stay inside the [`QuasiPolynomial`] class the
//! operator is applied multiplied through by `ρ^2`.

use serde::{Deserialize, Serialize};

use crate::oracle::residual::EigenOperator;
use crate::params::{GaugeParams, PlaneSector};
use crate::quasi::QuasiPolynomial;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialHamiltonian {
    /// Weight `w` of the first-derivative term.
    pub first_derivative_weight: f64,
    /// Polynomial part of the potential, `V(ρ) = sum_j v[j] ρ^j`.
    pub polynomial_potential: Vec<f64>,
    /// Coefficient of `1/ρ`.
    pub inverse_linear: f64,
    /// Coefficient of `1/ρ^2`.
    pub inverse_square: f64,
}

impl RadialHamiltonian {
    /// QES oscillator in the plane:
    /// `V = a^2ρ^6 + 2abρ^4 + [b^2 - (4nu + 2mu1 + 2mu2 + 4 + 4n) a] ρ^2`, `c2 = M^2`.
    pub fn plane_oscillator(sector: &PlaneSector, g: GaugeParams, n: u32) -> Self {
        let (a, b) = (g.a(), g.b());
        let s = 4.0 * sector.nu() + 2.0 * sector.mu1() + 2.0 * sector.mu2();
        let quadratic = b * b - (s + 4.0 + 4.0 * f64::from(n)) * a;
        Self {
            first_derivative_weight: sector.measure_power(),
            polynomial_potential: vec![0.0, 0.0, quadratic, 0.0, 2.0 * a * b, 0.0, a * a],
            inverse_linear: 0.0,
            inverse_square: sector.m_squared(),
        }
    }

    /// Harmonic Dunkl oscillator in the plane, `V = ρ^2`.
    pub fn es_plane_oscillator(sector: &PlaneSector) -> Self {
        Self::plane_oscillator(sector, GaugeParams::harmonic(), 0)
    }

    /// One member of the QES Coulomb set:
    /// `V = a^2ρ^2 + 2abρ`, `c1 = -[b(4nu + 2mu1 + 2mu2 + 1) + alpha]`, `c2 = M^2`.
    pub fn plane_coulomb(sector: &PlaneSector, g: GaugeParams, alpha: f64) -> Self {
        let (a, b) = (g.a(), g.b());
        let s = 4.0 * sector.nu() + 2.0 * sector.mu1() + 2.0 * sector.mu2() + 1.0;
        Self {
            first_derivative_weight: sector.measure_power(),
            polynomial_potential: vec![0.0, 2.0 * a * b, a * a],
            inverse_linear: -(b * s + alpha),
            inverse_square: sector.m_squared(),
        }
    }

    /// Dunkl-Coulomb problem in the plane with potential `-alpha / (2ρ)`.
    pub fn es_plane_coulomb(sector: &PlaneSector, alpha: f64) -> Self {
        Self {
            first_derivative_weight: sector.measure_power(),
            polynomial_potential: Vec::new(),
            inverse_linear: -alpha,
            inverse_square: sector.m_squared(),
        }
    }

    /// `ρ^2 H f`.
    pub fn apply_scaled(&self, f: &QuasiPolynomial) -> Result<QuasiPolynomial> {
        let d1 = f.derivative();
        let d2 = d1.derivative();
        let mut out = f.mul_poly(&self.polynomial_potential).mul_monomial(2, 1.0);
        out = out.axpy(-1.0, &d2.mul_monomial(2, 1.0))?;
        out = out.axpy(-self.first_derivative_weight, &d1.mul_monomial(1, 1.0))?;
        out = out.axpy(self.inverse_linear, &f.mul_monomial(1, 1.0))?;
        out = out.axpy(self.inverse_square, f)?;
        Ok(out.scale(0.5))
    }

    /// Effective scalar potential `(1/2)[V + c1/ρ + c2/ρ^2]`; `None` at a pole.
    pub fn potential(&self, rho: f64) -> Option<f64> {
        let poly = self
            .polynomial_potential
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * rho + c);
        let singular = self.inverse_linear != 0.0 || self.inverse_square != 0.0;
        if rho == 0.0 && singular {
            return None;
        }
        let mut v = poly;
        if self.inverse_linear != 0.0 {
            v += self.inverse_linear / rho;
        }
        if self.inverse_square != 0.0 {
            v += self.inverse_square / (rho * rho);
        }
        Some(0.5 * v)
    }
}

impl EigenOperator for RadialHamiltonian {
    fn apply(&self, f: &QuasiPolynomial) -> Result<QuasiPolynomial> {
        self.apply_scaled(f)
    }

    fn output_shift(&self) -> usize {
        2
    }
}
