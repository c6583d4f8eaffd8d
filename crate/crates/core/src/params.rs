//! Parameter types shared by every family, each validated on construction.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Parity of a function under `x -> -x`; `Even` is epsilon = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_epsilon(epsilon: u8) -> Result<Self> {
        match epsilon {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            e => Err(Error::InvalidParameter(format!(
                "parity index must be 0 or 1, got {e}"
            ))),
        }
    }

    pub fn epsilon(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    /// Eigenvalue of the reflection operator on this parity: `1 - 2 epsilon`.
    pub fn reflection_eigenvalue(self) -> f64 {
        1.0 - 2.0 * f64::from(self.epsilon())
    }

    /// Parity of the monomial `x^m`.
    pub fn of_power(m: usize) -> Self {
        if m.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Deformation parameter of the Dunkl derivative, `mu > -1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DunklParams {
    mu: f64,
}

impl DunklParams {
    pub fn new(mu: f64) -> Result<Self> {
        if !mu.is_finite() || mu <= -0.5 {
            return Err(Error::InvalidParameter(format!(
                "mu must be > -1/2, got {mu}"
            )));
        }
        Ok(Self { mu })
    }

    pub fn mu(self) -> f64 {
        self.mu
    }
}

/// Gauge exponent `-(a/4)x^4 - (b/2)x^2` of the oscillator families.
///
/// `a > 0` is required for the QES families; `a = 0` is accepted only with
/// `b > 0`, which is the harmonic limit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaugeParams {
    a: f64,
    b: f64,
}

impl GaugeParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "gauge parameters must be finite, got a = {a}, b = {b}"
            )));
        }
        if a < 0.0 || (a == 0.0 && b <= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "gauge needs a > 0, or a = 0 with b > 0; got a = {a}, b = {b}"
            )));
        }
        Ok(Self { a, b })
    }

    /// The harmonic gauge `exp(-x^2/2)`.
    pub fn harmonic() -> Self {
        Self { a: 0.0, b: 1.0 }
    }

    pub fn a(self) -> f64 {
        self.a
    }

    pub fn b(self) -> f64 {
        self.b
    }

    pub(crate) fn require_qes(self) -> Result<()> {
        if self.a > 0.0 {
            Ok(())
        } else {
            Err(Error::NotNormalizable(self.a))
        }
    }
}

/// Effective angular momentum of the gauged half-line problem.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EffectiveL(f64);

impl EffectiveL {
    /// Any finite value; range checks happen in the block builders, where the
    /// bound depends on the family.
    pub fn new(l: f64) -> Result<Self> {
        if !l.is_finite() {
            return Err(Error::InvalidParameter(format!("l must be finite, got {l}")));
        }
        Ok(Self(l))
    }

    /// Line sector: `l = mu + epsilon - 1`.
    pub fn line(dunkl: DunklParams, parity: Parity) -> Self {
        Self(dunkl.mu() + f64::from(parity.epsilon()) - 1.0)
    }

    /// Plane sector: `l = 2 nu + mu1 + mu2 - 1/2`.
    pub fn plane(sector: &PlaneSector) -> Self {
        Self(2.0 * sector.nu() + sector.mu1() + sector.mu2() - 0.5)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub(crate) fn require_oscillator(self) -> Result<()> {
        if self.0 > -1.5 {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "effective l must be > -3/2 for the oscillator block, got {}",
                self.0
            )))
        }
    }

    pub(crate) fn require_coulomb(self) -> Result<()> {
        if self.0 > -1.0 {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "effective l must be > -1 for the Coulomb block, got {}",
                self.0
            )))
        }
    }
}

/// One decoupled radial sector of the planar Dunkl problems.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneSector {
    eps1: Parity,
    eps2: Parity,
    nu: f64,
    mu1: f64,
    mu2: f64,
}

impl PlaneSector {
    pub fn new(eps1: Parity, eps2: Parity, nu: f64, mu1: f64, mu2: f64) -> Result<Self> {
        DunklParams::new(mu1)
            .and_then(|_| DunklParams::new(mu2))
            .map_err(|_| {
                Error::InvalidParameter(format!(
                    "mu1 and mu2 must be > -1/2, got mu1 = {mu1}, mu2 = {mu2}"
                ))
            })?;
        let twice = 2.0 * nu;
        if !nu.is_finite() || twice.fract() != 0.0 || nu < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "nu must be a non-negative integer or half-integer, got {nu}"
            )));
        }
        let half_integer = (twice as i64) % 2 == 1;
        match (eps1, eps2) {
            (Parity::Even, Parity::Even) if half_integer => {
                return Err(Error::InvalidParameter(format!(
                    "eps1 = eps2 = 0 requires nu in {{0, 1, 2, ...}}, got {nu}"
                )))
            }
            (Parity::Odd, Parity::Odd) if half_integer || nu < 1.0 => {
                return Err(Error::InvalidParameter(format!(
                    "eps1 = eps2 = 1 requires nu in {{1, 2, 3, ...}}, got {nu}"
                )))
            }
            (Parity::Even, Parity::Odd) | (Parity::Odd, Parity::Even) if !half_integer => {
                return Err(Error::InvalidParameter(format!(
                    "eps1 != eps2 requires nu in {{1/2, 3/2, 5/2, ...}}, got {nu}"
                )))
            }
            _ => {}
        }
        Ok(Self {
            eps1,
            eps2,
            nu,
            mu1,
            mu2,
        })
    }

    /// Picks the parities implied by `nu`: `(0, 0)` for integer `nu`,
    /// `(0, 1)` for half-integer `nu`.
    pub fn with_default_parities(nu: f64, mu1: f64, mu2: f64) -> Result<Self> {
        let (e1, e2) = if (2.0 * nu).rem_euclid(2.0) == 1.0 {
            (Parity::Even, Parity::Odd)
        } else {
            (Parity::Even, Parity::Even)
        };
        Self::new(e1, e2, nu, mu1, mu2)
    }

    pub fn eps1(&self) -> Parity {
        self.eps1
    }

    pub fn eps2(&self) -> Parity {
        self.eps2
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn mu1(&self) -> f64 {
        self.mu1
    }

    pub fn mu2(&self) -> f64 {
        self.mu2
    }

    /// `M^2 = 4 nu (nu + mu1 + mu2)`.
    pub fn m_squared(&self) -> f64 {
        4.0 * self.nu * (self.nu + self.mu1 + self.mu2)
    }

    /// Integer power `2 nu` carried by the radial wavefunctions.
    pub fn radial_power(&self) -> usize {
        (2.0 * self.nu).round() as usize
    }

    /// Power `2 mu1 + 2 mu2 + 1` of the radial measure.
    pub fn measure_power(&self) -> f64 {
        2.0 * self.mu1 + 2.0 * self.mu2 + 1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflection_eigenvalues() {
        assert_eq!(Parity::Even.reflection_eigenvalue(), 1.0);
        assert_eq!(Parity::Odd.reflection_eigenvalue(), -1.0);
        assert!(Parity::from_epsilon(2).is_err());
    }

    #[test]
    fn mu_bound_is_strict() {
        assert!(DunklParams::new(-0.5).is_err());
        assert!(DunklParams::new(-0.49).is_ok());
    }

    #[test]
    fn gauge_rules() {
        assert!(GaugeParams::new(1.0, -3.0).is_ok());
        assert!(GaugeParams::new(0.0, 1.0).is_ok());
        assert!(GaugeParams::new(0.0, 0.0).is_err());
        assert!(GaugeParams::new(-1.0, 1.0).is_err());
    }

    #[test]
    fn plane_sector_nu_rules() {
        use Parity::*;
        assert!(PlaneSector::new(Even, Even, 0.0, 0.0, 0.0).is_ok());
        assert!(PlaneSector::new(Even, Even, 0.5, 0.0, 0.0).is_err());
        assert!(PlaneSector::new(Odd, Odd, 0.0, 0.0, 0.0).is_err());
        assert!(PlaneSector::new(Odd, Odd, 2.0, 0.0, 0.0).is_ok());
        assert!(PlaneSector::new(Even, Odd, 1.0, 0.0, 0.0).is_err());
        assert!(PlaneSector::new(Odd, Even, 1.5, 0.0, 0.0).is_ok());
        assert!(PlaneSector::new(Even, Even, 0.3, 0.0, 0.0).is_err());
        assert!(PlaneSector::new(Even, Even, 1.0, -0.6, 0.0).is_err());
    }

    #[test]
    fn plane_effective_l_and_m_squared() {
        let s = PlaneSector::new(Parity::Even, Parity::Odd, 0.5, 0.25, 0.25).unwrap();
        assert_eq!(EffectiveL::plane(&s).value(), 1.0);
        assert_eq!(s.m_squared(), 2.0);
        assert_eq!(s.radial_power(), 1);
    }
}
