//! Finite tridiagonal blocks of the gauged QES operators.
//!
//! Oscillator families: with `phi = exp(-a r^4/4 - b r^2/2) r^(l+1) p(z)`,
//! `z = r^2`, the radial sextic Hamiltonian acts on `p` as
//!
//! ```text
//! h p = -4z p'' + [4a z^2 + 4b z - (4l + 6)] p' + [-4a n z + b(2l + 3)] p
//! ```
//!
//! so on `z^k` it gives `4a(k - n) z^(k+1) + b(4k + 2l + 3) z^k - 2k(2k + 2l + 1) z^(k-1)`.
//! The raising coefficient vanishes at `k = n`, closing `span{1, ..., z^n}`.
//!
//! Coulomb family: with `phi = exp(-a r^2/2 - b r) r^(l+1) p(r)` at the fixed
//! energy `E = a(2n + 2l + 3) - b^2`, the coupling `alpha` solves
//!
//! ```text
//! -r p'' + (2a r^2 + 2b r - 2(l + 1)) p' - 2a n r p = alpha p
//! ```
//!
//! which on `r^k` gives `2a(k - n) r^(k+1) + 2b k r^k - k(k + 2l + 1) r^(k-1)`.

use serde::{Deserialize, Serialize};

use crate::params::{EffectiveL, GaugeParams};
use crate::tridiag::eig_tridiag;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockKind {
    /// Eigenvalues are gauged energies `E`; the physical energy is `E / 2`.
    Oscillator,
    /// Eigenvalues are Coulomb couplings `alpha`.
    Coulomb,
}

/// `(n+1) x (n+1)` tridiagonal matrix acting on polynomial coefficients.
///
/// Entry `(i, j)` is the coefficient of the `i`-th monomial in the image of
/// the `j`-th one. `sub[k]` is entry `(k+1, k)` and `sup[k]` is entry `(k, k+1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QesBlock {
    pub diag: Vec<f64>,
    pub sub: Vec<f64>,
    pub sup: Vec<f64>,
    pub kind: BlockKind,
}

/// Symmetric form `D^-1 B D` of a block together with the diagonal `D`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetrizedBlock {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
    /// Diagonal of `D`; an eigenvector `v` of the symmetric form maps to the
    /// block eigenvector `D v`.
    pub scales: Vec<f64>,
}

pub fn build_oscillator_block(l: EffectiveL, g: GaugeParams, n: u32) -> Result<QesBlock> {
    g.require_qes()?;
    l.require_oscillator()?;
    Ok(oscillator_block_unchecked(l.value(), g.a(), g.b(), n))
}

/// The oscillator block without the `a > 0` requirement; at `a = 0` it is
/// upper triangular with the harmonic spectrum on the diagonal.
pub fn oscillator_block_unchecked(l: f64, a: f64, b: f64, n: u32) -> QesBlock {
    let size = n as usize + 1;
    let nf = f64::from(n);
    let diag = (0..size).map(|k| b * (4.0 * k as f64 + 2.0 * l + 3.0)).collect();
    let sub = (0..size - 1).map(|k| 4.0 * a * (k as f64 - nf)).collect();
    let sup = (0..size - 1)
        .map(|k| {
            let j = (k + 1) as f64;
            -2.0 * j * (2.0 * j + 2.0 * l + 1.0)
        })
        .collect();
    QesBlock {
        diag,
        sub,
        sup,
        kind: BlockKind::Oscillator,
    }
}

pub fn build_coulomb_block(l: EffectiveL, g: GaugeParams, n: u32) -> Result<QesBlock> {
    g.require_qes()?;
    l.require_coulomb()?;
    let (a, b, l) = (g.a(), g.b(), l.value());
    let size = n as usize + 1;
    let nf = f64::from(n);
    let diag = (0..size).map(|k| 2.0 * b * k as f64).collect();
    let sub = (0..size - 1).map(|k| 2.0 * a * (k as f64 - nf)).collect();
    let sup = (0..size - 1)
        .map(|k| {
            let j = (k + 1) as f64;
            -j * (j + 2.0 * l + 1.0)
        })
        .collect();
    Ok(QesBlock {
        diag,
        sub,
        sup,
        kind: BlockKind::Coulomb,
    })
}

impl QesBlock {
    pub fn size(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.size();
        let mut m = vec![vec![0.0; n]; n];
        for (k, row) in m.iter_mut().enumerate() {
            row[k] = self.diag[k];
        }
        for k in 0..n - 1 {
            m[k + 1][k] = self.sub[k];
            m[k][k + 1] = self.sup[k];
        }
        m
    }

    pub fn symmetrize(&self) -> Result<SymmetrizedBlock> {
        let n = self.size();
        let mut offdiag = Vec::with_capacity(n.saturating_sub(1));
        let mut scales = Vec::with_capacity(n);
        scales.push(1.0);
        for k in 0..n - 1 {
            let product = self.sub[k] * self.sup[k];
            if !(product > 0.0) {
                return Err(Error::NotSymmetrizable { row: k + 1, product });
            }
            let o = product.sqrt();
            offdiag.push(o);
            scales.push(scales[k] * o / self.sup[k]);
        }
        Ok(SymmetrizedBlock {
            diag: self.diag.clone(),
            offdiag,
            scales,
        })
    }

    /// Ascending eigenvalues with the corresponding block eigenvectors, each
    /// scaled to unit max-norm.
    ///
    /// An upper-triangular block (all `sub` zero, the `a = 0` limit) is
    /// solved by back substitution instead.
    pub fn eigenpairs(&self) -> Result<Vec<(f64, Vec<f64>)>> {
        if self.sub.iter().all(|&s| s == 0.0) {
            return self.triangular_eigenpairs();
        }
        let sym = self.symmetrize()?;
        let eig = eig_tridiag(&sym.diag, &sym.offdiag)?;
        Ok(eig
            .values
            .into_iter()
            .zip(eig.vectors)
            .map(|(value, v)| {
                let mut c: Vec<f64> = v.iter().zip(&sym.scales).map(|(x, s)| x * s).collect();
                let norm = c.iter().fold(0.0f64, |m, x| m.max(x.abs()));
                c.iter_mut().for_each(|x| *x /= norm);
                (value, c)
            })
            .collect())
    }

    fn triangular_eigenpairs(&self) -> Result<Vec<(f64, Vec<f64>)>> {
        let n = self.size();
        let mut pairs = Vec::with_capacity(n);
        for j in 0..n {
            let value = self.diag[j];
            let mut c = vec![0.0; n];
            c[j] = 1.0;
            for i in (0..j).rev() {
                let gap = self.diag[i] - value;
                if gap == 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "triangular block has a repeated eigenvalue {value}"
                    )));
                }
                c[i] = -self.sup[i] * c[i + 1] / gap;
            }
            let norm = c.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            c.iter_mut().for_each(|x| *x /= norm);
            pairs.push((value, c));
        }
        pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
        Ok(pairs)
    }

    /// `B c - value c`, max-norm.
    pub fn residual(&self, value: f64, c: &[f64]) -> f64 {
        let n = self.size();
        (0..n)
            .map(|i| {
                let mut r = (self.diag[i] - value) * c[i];
                if i > 0 {
                    r += self.sub[i - 1] * c[i - 1];
                }
                if i + 1 < n {
                    r += self.sup[i] * c[i + 1];
                }
                r.abs()
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauge(a: f64, b: f64) -> GaugeParams {
        GaugeParams::new(a, b).unwrap()
    }

    #[test]
    fn oscillator_n0() {
        let blk = build_oscillator_block(EffectiveL::new(0.3).unwrap(), gauge(1.0, 2.0), 0).unwrap();
        assert_eq!(blk.diag, vec![2.0 * 3.6]);
        assert!(blk.sub.is_empty() && blk.sup.is_empty());
    }

    #[test]
    fn oscillator_n1_example() {
        let blk = build_oscillator_block(EffectiveL::new(0.0).unwrap(), gauge(0.5, 1.0), 1).unwrap();
        assert_eq!(blk.to_dense(), vec![vec![3.0, -6.0], vec![-2.0, 7.0]]);
        let ev: Vec<f64> = blk.eigenpairs().unwrap().into_iter().map(|p| p.0).collect();
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] - 9.0).abs() < 1e-14);
    }

    #[test]
    fn coulomb_n0_and_n1() {
        let l = EffectiveL::new(1.0).unwrap();
        let b0 = build_coulomb_block(l, gauge(1.0, 1.0), 0).unwrap();
        assert_eq!(b0.diag, vec![0.0]);
        let b1 = build_coulomb_block(l, gauge(1.0, 1.0), 1).unwrap();
        assert_eq!(b1.to_dense(), vec![vec![0.0, -4.0], vec![-2.0, 2.0]]);
        let ev: Vec<f64> = b1.eigenpairs().unwrap().into_iter().map(|p| p.0).collect();
        assert!((ev[0] + 2.0).abs() < 1e-14 && (ev[1] - 4.0).abs() < 1e-14);
    }

    #[test]
    fn builders_reject_nonpositive_a() {
        let l = EffectiveL::new(0.0).unwrap();
        assert_eq!(
            build_oscillator_block(l, GaugeParams::harmonic(), 2),
            Err(Error::NotNormalizable(0.0))
        );
        assert!(build_coulomb_block(l, GaugeParams::harmonic(), 2).is_err());
    }

    #[test]
    fn builders_reject_bad_l() {
        let g = gauge(1.0, 0.0);
        assert!(build_oscillator_block(EffectiveL::new(-1.6).unwrap(), g, 1).is_err());
        assert!(build_coulomb_block(EffectiveL::new(-1.2).unwrap(), g, 1).is_err());
    }

    #[test]
    fn symmetrize_two_by_two() {
        let blk = build_oscillator_block(EffectiveL::new(0.0).unwrap(), gauge(0.5, 1.0), 1).unwrap();
        let s = blk.symmetrize().unwrap();
        assert_eq!(s.diag, vec![3.0, 7.0]);
        assert!((s.offdiag[0] - 12f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn symmetrize_rejects_bad_products() {
        let blk = oscillator_block_unchecked(0.0, 0.0, 1.0, 2);
        assert!(matches!(blk.symmetrize(), Err(Error::NotSymmetrizable { row: 1, .. })));
    }

    #[test]
    fn harmonic_limit_is_upper_triangular() {
        let blk = oscillator_block_unchecked(0.4, 0.0, 1.0, 3);
        assert!(blk.sub.iter().all(|&s| s == 0.0));
        assert_eq!(blk.diag[2], 8.0 + 0.8 + 3.0);
    }

    #[test]
    fn triangular_eigenpairs_satisfy_the_block() {
        let blk = oscillator_block_unchecked(0.4, 0.0, 1.0, 3);
        let pairs = blk.eigenpairs().unwrap();
        for (k, (value, c)) in pairs.iter().enumerate() {
            assert_eq!(*value, blk.diag[k]);
            assert!(blk.residual(*value, c) < 1e-13);
            assert!(c[k + 1..].iter().all(|&x| x == 0.0));
        }
    }
}
