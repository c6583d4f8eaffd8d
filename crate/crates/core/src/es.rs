//! Exactly solvable baselines: generalised Laguerre polynomials and the
//! harmonic / Coulomb Dunkl levels they generate.
//!
//! All wavefunctions are returned with leading polynomial coefficient 1;
//! normalisation constants are not computed.

use serde::{Deserialize, Serialize};

use crate::params::{DunklParams, Parity, PlaneSector};
use crate::quasi::{Gauge, QuasiPolynomial};
use crate::{Error, Result};

/// `L^(alpha)_k`, with `alpha > -1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaguerreIndex {
    pub k: usize,
    pub alpha: f64,
}

impl LaguerreIndex {
    pub fn new(k: usize, alpha: f64) -> Result<Self> {
        if !(alpha > -1.0) {
            return Err(Error::InvalidParameter(format!(
                "Laguerre order must be > -1, got {alpha}"
            )));
        }
        Ok(Self { k, alpha })
    }
}

/// `L^(alpha)_k(z)` by the forward three-term recurrence
/// `(j+1) L_{j+1} = (2j + 1 + alpha - z) L_j - (j + alpha) L_{j-1}`.
pub fn laguerre_eval(idx: LaguerreIndex, z: f64) -> f64 {
    let alpha = idx.alpha;
    if idx.k == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - z;
    for j in 1..idx.k {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + alpha - z) * cur - (jf + alpha) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Monomial coefficients of `L^(alpha)_k`, built with the same recurrence on
/// coefficient vectors.
pub fn laguerre_coeffs(idx: LaguerreIndex) -> Vec<f64> {
    let alpha = idx.alpha;
    let mut prev = vec![1.0];
    if idx.k == 0 {
        return prev;
    }
    let mut cur = vec![1.0 + alpha, -1.0];
    for j in 1..idx.k {
        let jf = j as f64;
        let mut next = vec![0.0; j + 2];
        for (i, &c) in cur.iter().enumerate() {
            next[i] += (2.0 * jf + 1.0 + alpha) * c;
            next[i + 1] -= c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= (jf + alpha) * c;
        }
        next.iter_mut().for_each(|c| *c /= jf + 1.0);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum EsQuantumNumbers {
    Line { parity: Parity },
    Plane { sector: PlaneSector },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EsLevel {
    pub k: usize,
    pub quantum_numbers: EsQuantumNumbers,
    pub energy: f64,
    pub wavefunction: QuasiPolynomial,
}

/// Places `coeffs[i] * scale^i` at power `shift + step * i`, normalised to
/// leading coefficient 1.
fn spread(gauge: Gauge, coeffs: &[f64], shift: usize, step: usize, scale: f64) -> QuasiPolynomial {
    let lead = coeffs.last().copied().unwrap_or(1.0) * scale.powi(coeffs.len() as i32 - 1);
    let mut out = vec![0.0; shift + step * (coeffs.len() - 1) + 1];
    let mut s = 1.0;
    for (i, &c) in coeffs.iter().enumerate() {
        out[shift + step * i] = c * s / lead;
        s *= scale;
    }
    QuasiPolynomial::new(gauge, out)
}

/// Harmonic Dunkl oscillator on the line: energy `2k + eps + mu + 1/2`,
/// wavefunction `x^eps L^(mu - 1/2 + eps)_k(x^2) exp(-x^2/2)`.
pub fn es_line_level(p: DunklParams, k: usize, eps: Parity) -> EsLevel {
    let e = f64::from(eps.epsilon());
    let lag = laguerre_coeffs(LaguerreIndex {
        k,
        alpha: p.mu() - 0.5 + e,
    });
    EsLevel {
        k,
        quantum_numbers: EsQuantumNumbers::Line { parity: eps },
        energy: 2.0 * k as f64 + e + p.mu() + 0.5,
        wavefunction: spread(Gauge::new(0.0, 1.0, 0.0), &lag, eps.epsilon() as usize, 2, 1.0),
    }
}

/// Harmonic Dunkl oscillator in the plane, radial part:
/// energy `2k + 2nu + mu1 + mu2 + 1`, `ρ^(2nu) L^(2nu + mu1 + mu2)_k(ρ^2) exp(-ρ^2/2)`.
pub fn es_plane_oscillator_level(sector: &PlaneSector, k: usize) -> EsLevel {
    let t = 2.0 * sector.nu() + sector.mu1() + sector.mu2();
    let lag = laguerre_coeffs(LaguerreIndex { k, alpha: t });
    EsLevel {
        k,
        quantum_numbers: EsQuantumNumbers::Plane { sector: *sector },
        energy: 2.0 * k as f64 + t + 1.0,
        wavefunction: spread(Gauge::new(0.0, 1.0, 0.0), &lag, sector.radial_power(), 2, 1.0),
    }
}

/// Principal number `N = k + 2nu + mu1 + mu2 + 1/2` of the Dunkl-Coulomb problem.
pub fn coulomb_principal(sector: &PlaneSector, k: usize) -> f64 {
    k as f64 + 2.0 * sector.nu() + sector.mu1() + sector.mu2() + 0.5
}

/// Dunkl-Coulomb problem in the plane with potential `-alpha/(2ρ)`:
/// energy `-alpha^2 / (8 N^2)`, `beta = alpha / N = sqrt(-8E)`, radial part
/// `ρ^(2nu) L^(4nu + 2mu1 + 2mu2)_k(beta ρ) exp(-beta ρ / 2)`.
pub fn es_plane_coulomb_level(sector: &PlaneSector, k: usize, alpha: f64) -> Result<EsLevel> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "Coulomb coupling must be > 0, got {alpha}"
        )));
    }
    let big_n = coulomb_principal(sector, k);
    let beta = alpha / big_n;
    let order = 4.0 * sector.nu() + 2.0 * sector.mu1() + 2.0 * sector.mu2();
    let lag = laguerre_coeffs(LaguerreIndex { k, alpha: order });
    Ok(EsLevel {
        k,
        quantum_numbers: EsQuantumNumbers::Plane { sector: *sector },
        energy: -alpha * alpha / (8.0 * big_n * big_n),
        wavefunction: spread(Gauge::coulomb(0.0, 0.5 * beta), &lag, sector.radial_power(), 1, beta),
    })
}

/// Level of the three-dimensional radial oscillator `-d^2 + r^2 + l(l+1)/r^2`.
/// The wavefunction is `r^(l+1) * factor` with `factor = L^(l+1/2)_k(r^2) exp(-r^2/2)`;
/// the real power is kept apart because `l` need not be an integer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialLevel3d {
    pub l: f64,
    pub k: usize,
    pub energy: f64,
    pub prefactor_power: f64,
    pub factor: QuasiPolynomial,
}

pub fn radial_oscillator_3d_level(l: f64, k: usize) -> Result<RadialLevel3d> {
    if !(l > -1.5) {
        return Err(Error::InvalidParameter(format!("l must be > -3/2, got {l}")));
    }
    let lag = laguerre_coeffs(LaguerreIndex { k, alpha: l + 0.5 });
    Ok(RadialLevel3d {
        l,
        k,
        energy: 2.0 * (2.0 * k as f64 + l + 1.5),
        prefactor_power: l + 1.0,
        factor: spread(Gauge::new(0.0, 1.0, 0.0), &lag, 0, 2, 1.0),
    })
}
