//! The exact function class `exp(-S(x)) * P(x)`.
//!
//! `S(x) = (q4/4) x^4 + (q2/2) x^2 + q1 x` is fixed per value (the [`Gauge`])
//! and `P` is an ordinary polynomial with real coefficients. The class is
//! closed under differentiation, multiplication by polynomials, reflection
//! (which flips the sign of `q1`) and sums with matching gauge.

use serde::{Deserialize, Serialize};

use crate::params::{GaugeParams, Parity};
use crate::{Error, Result};

/// Gauge exponent `-(quartic/4) x^4 - (quadratic/2) x^2 - linear x`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Gauge {
    pub quartic: f64,
    pub quadratic: f64,
    pub linear: f64,
}

impl Gauge {
    pub fn new(quartic: f64, quadratic: f64, linear: f64) -> Self {
        Self {
            quartic,
            quadratic,
            linear,
        }
    }

    /// `exp(-(a/4)x^4 - (b/2)x^2)`.
    pub fn oscillator(g: GaugeParams) -> Self {
        Self::new(g.a(), g.b(), 0.0)
    }

    /// `exp(-(a/2)r^2 - b r)`, the Coulomb-family gauge.
    pub fn coulomb(a: f64, b: f64) -> Self {
        Self::new(0.0, a, b)
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn is_even(&self) -> bool {
        self.linear == 0.0
    }

    /// `S(x)`, so that the gauge factor is `exp(-S(x))`.
    pub fn exponent(&self, x: f64) -> f64 {
        let x2 = x * x;
        0.25 * self.quartic * x2 * x2 + 0.5 * self.quadratic * x2 + self.linear * x
    }

    /// Coefficients of `S'(x) = linear + quadratic x + quartic x^3`.
    fn exponent_derivative(&self) -> [f64; 4] {
        [self.linear, self.quadratic, 0.0, self.quartic]
    }

    pub fn reflected(&self) -> Self {
        Self::new(self.quartic, self.quadratic, -self.linear)
    }

    /// Gauge of a product of two class members.
    pub fn product(&self, other: &Self) -> Self {
        Self::new(
            self.quartic + other.quartic,
            self.quadratic + other.quadratic,
            self.linear + other.linear,
        )
    }

    /// Whether `exp(-S(x))` decays as `x -> +inf`.
    pub fn decays_on_half_line(&self) -> bool {
        if self.quartic != 0.0 {
            self.quartic > 0.0
        } else if self.quadratic != 0.0 {
            self.quadratic > 0.0
        } else {
            self.linear > 0.0
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuasiPolynomial {
    gauge: Gauge,
    coeffs: Vec<f64>,
}

impl QuasiPolynomial {
    pub fn new(gauge: Gauge, coeffs: Vec<f64>) -> Self {
        Self { gauge, coeffs }
    }

    pub fn zero(gauge: Gauge) -> Self {
        Self::new(gauge, Vec::new())
    }

    /// `c x^power` under `gauge`.
    pub fn monomial(gauge: Gauge, power: usize, c: f64) -> Self {
        let mut coeffs = vec![0.0; power + 1];
        coeffs[power] = c;
        Self::new(gauge, coeffs)
    }

    pub fn gauge(&self) -> &Gauge {
        &self.gauge
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Coefficient of `x^m`, zero past the stored length.
    pub fn coeff(&self, m: usize) -> f64 {
        self.coeffs.get(m).copied().unwrap_or(0.0)
    }

    /// Index of the highest nonzero coefficient, `None` for the zero function.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Largest coefficient magnitude.
    pub fn max_norm(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Drops trailing zero coefficients.
    pub fn trimmed(mut self) -> Self {
        let len = self.degree().map_or(0, |d| d + 1);
        self.coeffs.truncate(len);
        self
    }

    /// Value of the polynomial factor `P(x)` (Horner).
    pub fn polynomial_at(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Value of the full function `exp(-S(x)) P(x)`.
    pub fn eval(&self, x: f64) -> f64 {
        let p = self.polynomial_at(x);
        if p == 0.0 {
            return 0.0;
        }
        (-self.gauge.exponent(x)).exp() * p
    }

    /// Parity of a nonzero value with definite parity and an even gauge.
    pub fn parity(&self) -> Option<Parity> {
        if !self.gauge.is_even() {
            return None;
        }
        let mut found = None;
        for (m, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let p = Parity::of_power(m);
            match found {
                None => found = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        found
    }

    /// Part of the polynomial factor with the given parity of powers.
    pub fn parity_part(&self, parity: Parity) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, &c)| if Parity::of_power(m) == parity { c } else { 0.0 })
            .collect();
        Self::new(self.gauge, coeffs)
    }

    /// `x -> f(-x)`. The even part of the gauge is unchanged, odd-index
    /// coefficients and the linear gauge term flip sign.
    pub fn reflect(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, &c)| if m % 2 == 1 { -c } else { c })
            .collect();
        Self::new(self.gauge.reflected(), coeffs)
    }

    /// `d/dx (exp(-S) P) = exp(-S) (P' - S' P)`.
    pub fn derivative(&self) -> Self {
        let len = self.coeffs.len();
        if len == 0 {
            return self.clone();
        }
        let mut out = vec![0.0; len + 3];
        for (m, &c) in self.coeffs.iter().enumerate().skip(1) {
            out[m - 1] += m as f64 * c;
        }
        for (j, &s) in self.gauge.exponent_derivative().iter().enumerate() {
            if s == 0.0 {
                continue;
            }
            for (m, &c) in self.coeffs.iter().enumerate() {
                out[m + j] -= s * c;
            }
        }
        Self::new(self.gauge, out)
    }

    /// Multiplication by the polynomial `sum_j poly[j] x^j`.
    pub fn mul_poly(&self, poly: &[f64]) -> Self {
        if self.coeffs.is_empty() || poly.is_empty() {
            return Self::zero(self.gauge);
        }
        let mut out = vec![0.0; self.coeffs.len() + poly.len() - 1];
        for (j, &p) in poly.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            for (m, &c) in self.coeffs.iter().enumerate() {
                out[m + j] += p * c;
            }
        }
        Self::new(self.gauge, out)
    }

    /// Multiplication by `c x^power`.
    pub fn mul_monomial(&self, power: usize, c: f64) -> Self {
        let mut out = vec![0.0; self.coeffs.len() + power];
        for (m, &v) in self.coeffs.iter().enumerate() {
            out[m + power] = c * v;
        }
        Self::new(self.gauge, out)
    }

    /// Division of the polynomial factor by `x`; the constant term must be
    /// exactly zero.
    pub(crate) fn div_x(&self) -> Self {
        debug_assert!(self.coeff(0) == 0.0);
        Self::new(self.gauge, self.coeffs.iter().skip(1).copied().collect())
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::new(self.gauge, self.coeffs.iter().map(|v| v * c).collect())
    }

    /// `self + c * other`, requiring identical gauges.
    pub fn axpy(&self, c: f64, other: &Self) -> Result<Self> {
        if self.gauge != other.gauge {
            return Err(Error::GaugeMismatch(format!(
                "{:?} vs {:?}",
                self.gauge, other.gauge
            )));
        }
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|m| self.coeff(m) + c * other.coeff(m)).collect();
        Ok(Self::new(self.gauge, coeffs))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.axpy(1.0, other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.axpy(-1.0, other)
    }

    /// Pointwise product; gauges add.
    pub fn product(&self, other: &Self) -> Self {
        let mut q = QuasiPolynomial::new(Gauge::trivial(), self.coeffs.clone()).mul_poly(&other.coeffs);
        q.gauge = self.gauge.product(&other.gauge);
        q
    }

    /// Largest coefficient difference to `other`, padding with zeros. Gauges
    /// are not compared.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|m| (self.coeff(m) - other.coeff(m)).abs())
            .fold(0.0, f64::max)
    }
}
