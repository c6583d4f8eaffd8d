//! Exact Dunkl-type operators on [`QuasiPolynomial`]s.
//!
//! The `mu (1 - R) / x` term is never evaluated pointwise: `(1 - R)` keeps
//! twice the odd part of the polynomial factor, and the division by `x` is an
//! index shift on that odd part. Inputs must carry an even gauge so that
//! `f` and `R f` share it.

use serde::{Deserialize, Serialize};

use crate::oracle::residual::EigenOperator;
use crate::params::{DunklParams, GaugeParams, Parity};
use crate::quasi::QuasiPolynomial;
use crate::{Error, Result};

/// `D_mu f = f' + (mu / x)(f - R f)`.
pub fn dunkl_apply(p: DunklParams, f: &QuasiPolynomial) -> Result<QuasiPolynomial> {
    if !f.gauge().is_even() {
        return Err(Error::OddGauge);
    }
    let odd_over_x = f.parity_part(Parity::Odd).div_x();
    f.derivative().axpy(2.0 * p.mu(), &odd_over_x)
}

/// `D_mu f - (a/3) x^3 R f`, with `a` the quartic coupling of `g`.
pub fn extended_dunkl_apply(
    p: DunklParams,
    g: GaugeParams,
    f: &QuasiPolynomial,
) -> Result<QuasiPolynomial> {
    let d = dunkl_apply(p, f)?;
    d.axpy(-g.a() / 3.0, &f.reflect().mul_monomial(3, 1.0))
}

/// Which of the two equivalent expressions of the QES line Hamiltonian to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HamiltonianForm {
    /// `(1/2){-D^2 + a^2 x^6 + 2ab x^4 + [b^2 - (2mu + 4 + 4n - R) a] x^2}`.
    Direct,
    /// `(1/2){-Dhat^2 + (8/9) a^2 x^6 + 2ab x^4 + [b^2 - (8mu/3 + 4 + 4n) a] x^2}`
    /// with `Dhat = D_mu - (a/3) x^3 R`.
    Extended,
}

/// QES Dunkl oscillator on the line with representation index `n`.
///
/// With `a = 0, b = 1, n = 0` it reduces to the harmonic Dunkl oscillator
/// `(1/2)(-D^2 + x^2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineHamiltonian {
    pub dunkl: DunklParams,
    pub gauge: GaugeParams,
    pub n: u32,
}

impl LineHamiltonian {
    pub fn new(dunkl: DunklParams, gauge: GaugeParams, n: u32) -> Self {
        Self { dunkl, gauge, n }
    }

    /// The harmonic Dunkl oscillator.
    pub fn harmonic(dunkl: DunklParams) -> Self {
        Self::new(dunkl, GaugeParams::harmonic(), 0)
    }

    pub fn apply(&self, f: &QuasiPolynomial, form: HamiltonianForm) -> Result<QuasiPolynomial> {
        match form {
            HamiltonianForm::Direct => self.apply_direct(f),
            HamiltonianForm::Extended => self.apply_extended(f),
        }
    }

    fn apply_direct(&self, f: &QuasiPolynomial) -> Result<QuasiPolynomial> {
        let (a, b, mu) = (self.gauge.a(), self.gauge.b(), self.dunkl.mu());
        let n = f64::from(self.n);
        let d2 = dunkl_apply(self.dunkl, &dunkl_apply(self.dunkl, f)?)?;
        let quadratic = b * b - (2.0 * mu + 4.0 + 4.0 * n) * a;
        let potential = f.mul_poly(&[0.0, 0.0, quadratic, 0.0, 2.0 * a * b, 0.0, a * a]);
        let reflected = f.reflect().mul_monomial(2, a);
        Ok(potential.axpy(-1.0, &d2)?.axpy(1.0, &reflected)?.scale(0.5))
    }

    fn apply_extended(&self, f: &QuasiPolynomial) -> Result<QuasiPolynomial> {
        let (a, b, mu) = (self.gauge.a(), self.gauge.b(), self.dunkl.mu());
        let n = f64::from(self.n);
        let d1 = extended_dunkl_apply(self.dunkl, self.gauge, f)?;
        let d2 = extended_dunkl_apply(self.dunkl, self.gauge, &d1)?;
        let quadratic = b * b - (8.0 / 3.0 * mu + 4.0 + 4.0 * n) * a;
        let potential = f.mul_poly(&[0.0, 0.0, quadratic, 0.0, 2.0 * a * b, 0.0, 8.0 / 9.0 * a * a]);
        Ok(potential.axpy(-1.0, &d2)?.scale(0.5))
    }

    /// Scalar potential of one parity channel, with `R` replaced by its
    /// eigenvalue `1 - 2 epsilon`:
    /// `(1/2)[a^2 x^6 + 2ab x^4 + (b^2 - (2mu + 4 + 4n - (1 - 2eps)) a) x^2]`.
    pub fn channel_potential(&self, parity: Parity, x: f64) -> f64 {
        let (a, b, mu) = (self.gauge.a(), self.gauge.b(), self.dunkl.mu());
        let n = f64::from(self.n);
        let r = parity.reflection_eigenvalue();
        let x2 = x * x;
        0.5 * (a * a * x2 * x2 * x2
            + 2.0 * a * b * x2 * x2
            + (b * b - (2.0 * mu + 4.0 + 4.0 * n - r) * a) * x2)
    }
}

impl EigenOperator for LineHamiltonian {
    fn apply(&self, f: &QuasiPolynomial) -> Result<QuasiPolynomial> {
        self.apply_direct(f)
    }
}
