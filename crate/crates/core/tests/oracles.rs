//! Cross-checks of the library against independent reference computations.

use dunkl_qes::block::{build_coulomb_block, build_oscillator_block};
use dunkl_qes::es::{es_line_level, laguerre_coeffs, laguerre_eval, LaguerreIndex};
use dunkl_qes::oracle::fd::{fd_eigen_richardson, HalfLinePotential, RadialGrid};
use dunkl_qes::oracle::quadrature::integrate_half_line;
use dunkl_qes::oracle::{residual_meter, weighted_inner_product, QuadratureScheme, Weight};
use dunkl_qes::tridiag::eig_tridiag;
use dunkl_qes::{DunklParams, EffectiveL, Gauge, GaugeParams, LineHamiltonian, Parity, QuasiPolynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::function::gamma::gamma;

/// `det(A - x I)` by Gaussian elimination with partial pivoting on the dense matrix.
fn dense_char_poly(a: &[Vec<f64>], x: f64) -> f64 {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= x;
    }
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs())).unwrap();
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest {
            let f = row[col] / pivot_row[col];
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= f * p;
            }
        }
    }
    det
}

/// Real roots of the characteristic polynomial on `[lo, hi]` by a sign scan
/// followed by bisection.
fn dense_eigenvalues(a: &[Vec<f64>], lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    let f = |x| dense_char_poly(a, x);
    let mut roots = Vec::new();
    let step = (hi - lo) / samples as f64;
    let mut x0 = lo;
    let mut f0 = f(x0);
    for i in 1..=samples {
        let x1 = lo + i as f64 * step;
        let f1 = f(x1);
        if f0 == 0.0 {
            roots.push(x0);
        } else if f0.signum() != f1.signum() && f1 != 0.0 {
            let (mut l, mut r, mut fl) = (x0, x1, f0);
            for _ in 0..200 {
                let m = 0.5 * (l + r);
                let fm = f(m);
                if fm.signum() == fl.signum() {
                    l = m;
                    fl = fm;
                } else {
                    r = m;
                }
            }
            roots.push(0.5 * (l + r));
        }
        x0 = x1;
        f0 = f1;
    }
    roots
}

fn gershgorin(a: &[Vec<f64>]) -> (f64, f64) {
    a.iter().enumerate().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (i, row)| {
        let radius: f64 = row.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.abs()).sum();
        (lo.min(row[i] - radius), hi.max(row[i] + radius))
    })
}

#[test]
fn ql_matches_dense_determinant_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
        let n = rng.gen_range(1..=7);
        let diag: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let off: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(0.2..2.0)).collect();
        let mut dense = vec![vec![0.0; n]; n];
        for i in 0..n {
            dense[i][i] = diag[i];
        }
        for i in 0..n - 1 {
            dense[i][i + 1] = off[i];
            dense[i + 1][i] = off[i];
        }
        let (lo, hi) = gershgorin(&dense);
        let reference = dense_eigenvalues(&dense, lo - 1.0, hi + 1.0, 4000);
        let eig = eig_tridiag(&diag, &off).unwrap();
        assert_eq!(reference.len(), n, "{diag:?} {off:?}");
        for (x, y) in eig.values.iter().zip(&reference) {
            assert!((x - y).abs() < 1e-10, "{x} vs {y}");
        }
    }
}

#[test]
fn block_spectra_match_dense_determinant_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let n = rng.gen_range(0..=5);
        let l = EffectiveL::new(rng.gen_range(-0.4..2.0)).unwrap();
        let g = GaugeParams::new(rng.gen_range(0.1..2.0), rng.gen_range(-1.5..1.5)).unwrap();
        for block in [build_oscillator_block(l, g, n).unwrap(), build_coulomb_block(l, g, n).unwrap()] {
            let dense = block.to_dense();
            let (lo, hi) = gershgorin(&dense);
            let reference = dense_eigenvalues(&dense, lo - 1.0, hi + 1.0, 20_000);
            let values: Vec<f64> = block.eigenpairs().unwrap().into_iter().map(|p| p.0).collect();
            assert_eq!(reference.len(), values.len(), "{block:?}");
            for (x, y) in values.iter().zip(&reference) {
                assert!((x - y).abs() < 1e-9 * y.abs().max(1.0), "{x} vs {y}");
            }
        }
    }
}

/// `L_k^(alpha)(z) = sum_i (-1)^i binom(k + alpha, k - i) z^i / i!` in exact arithmetic.
fn exact_laguerre_coeffs(k: usize, alpha: &BigRational) -> Vec<BigRational> {
    (0..=k)
        .map(|i| {
            let mut binom = BigRational::one();
            for j in 1..=(k - i) {
                let j = BigRational::from_integer(BigInt::from(j));
                binom = binom * (alpha.clone() + BigRational::from_integer(BigInt::from(i)) + j.clone()) / j;
            }
            let mut fact = BigRational::one();
            for j in 1..=i {
                fact *= BigRational::from_integer(BigInt::from(j));
            }
            let sign = if i % 2 == 0 { BigRational::one() } else { -BigRational::one() };
            sign * binom / fact
        })
        .collect()
}

fn to_f64(x: &BigRational) -> f64 {
    x.numer().to_f64().unwrap() / x.denom().to_f64().unwrap()
}

#[test]
fn laguerre_matches_exact_rational_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..60 {
        let k = rng.gen_range(0..=12);
        let alpha = BigRational::new(BigInt::from(rng.gen_range(-7..40)), BigInt::from(8));
        let z = BigRational::new(BigInt::from(rng.gen_range(0..160)), BigInt::from(16));
        let a = to_f64(&alpha);
        let zf = to_f64(&z);
        let exact = exact_laguerre_coeffs(k, &alpha);
        let idx = LaguerreIndex::new(k, a).unwrap();

        let coeffs = laguerre_coeffs(idx);
        for (c, e) in coeffs.iter().zip(&exact) {
            let e = to_f64(e);
            assert!((c - e).abs() <= 1e-13 * e.abs().max(1.0), "k={k} alpha={a}: {c} vs {e}");
        }

        let mut value = BigRational::zero();
        let mut power = BigRational::one();
        for c in &exact {
            value += c * &power;
            power *= &z;
        }
        let exact_value = to_f64(&value.abs()) * if value.is_negative() { -1.0 } else { 1.0 };
        // Scale of the terms cancelling inside the recurrence.
        let binom: f64 = (1..=k).map(|j| (a + j as f64) / j as f64).product();
        let scale = exact_value.abs().max(binom.abs() * (0.5 * zf).exp());
        let got = laguerre_eval(idx, zf);
        assert!((got - exact_value).abs() <= 1e-13 * scale, "k={k} alpha={a} z={zf}: {got} vs {exact_value}");
    }
}

#[test]
fn quadrature_matches_gamma_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let scheme = QuadratureScheme::default();
    for _ in 0..40 {
        let alpha: f64 = rng.gen_range(-0.9..4.0);
        let degree = rng.gen_range(0..=6);
        let poly: Vec<f64> = (0..=degree).map(|_| rng.gen_range(0.0..1.0)).collect();
        // Laguerre weight x^alpha e^{-x}: int x^(alpha + j) e^{-x} = Gamma(alpha + j + 1).
        let f = QuasiPolynomial::new(Gauge::coulomb(0.0, 1.0), poly.clone());
        let exact: f64 = poly.iter().enumerate().map(|(j, c)| c * gamma(alpha + j as f64 + 1.0)).sum();
        let got = integrate_half_line(&[f], alpha, &scheme).unwrap();
        assert!((got - exact).abs() <= 1e-10 * exact.abs(), "{alpha} {poly:?}: {got} vs {exact}");

        // Gaussian weight: int x^(s + j) e^{-x^2} = Gamma((s + j + 1)/2) / 2.
        let g = QuasiPolynomial::new(Gauge::new(0.0, 2.0, 0.0), poly.clone());
        let exact: f64 = poly
            .iter()
            .enumerate()
            .map(|(j, c)| c * 0.5 * gamma(0.5 * (alpha + j as f64 + 1.0)))
            .sum();
        let got = integrate_half_line(&[g], alpha, &scheme).unwrap();
        assert!((got - exact).abs() <= 1e-10 * exact.abs(), "{alpha} {poly:?}: {got} vs {exact}");
    }
}

#[test]
fn es_line_levels_orthogonal_under_dunkl_measure() {
    let mu = DunklParams::new(1.0).unwrap();
    let scheme = QuadratureScheme::default();
    let weight = Weight::Line { mu: 1.0 };
    let psi0 = es_line_level(mu, 0, Parity::Even).wavefunction;
    let psi1 = es_line_level(mu, 0, Parity::Odd).wavefunction;
    let psi2 = es_line_level(mu, 1, Parity::Even).wavefunction;
    let n0 = weighted_inner_product(&psi0, &psi0, weight, &scheme).unwrap();
    let n1 = weighted_inner_product(&psi1, &psi1, weight, &scheme).unwrap();
    let n2 = weighted_inner_product(&psi2, &psi2, weight, &scheme).unwrap();
    assert!(n0 > 0.0 && n1 > 0.0 && n2 > 0.0);
    let ip01 = weighted_inner_product(&psi0, &psi1, weight, &scheme).unwrap();
    let ip02 = weighted_inner_product(&psi0, &psi2, weight, &scheme).unwrap();
    assert!(ip01.abs() <= 1e-9 * (n0 * n1).sqrt(), "{ip01}");
    assert!(ip02.abs() <= 1e-9 * (n0 * n2).sqrt(), "{ip02}");
    // Norm of x^0 e^{-x^2/2}: int |x|^2 e^{-x^2} over the line = Gamma(3/2).
    assert!((n0 - gamma(1.5)).abs() < 1e-12);
}

#[test]
fn residual_meter_is_sensitive_to_energy() {
    let mu = DunklParams::new(1.0).unwrap();
    let h = LineHamiltonian::new(mu, GaugeParams::new(0.5, 1.0).unwrap(), 1);
    let sol = dunkl_qes::spectra::solve_line_qes(mu, Parity::Even, h.gauge, 1).unwrap();
    let good = residual_meter(&h, &sol[0].wavefunction, sol[0].energy).unwrap();
    let bad = residual_meter(&h, &sol[0].wavefunction, sol[0].energy + 0.1).unwrap();
    assert!(good <= 1e-11);
    assert!(bad > 1e-3);
    let zero = QuasiPolynomial::zero(sol[0].wavefunction.gauge().to_owned());
    assert!(residual_meter(&h, &zero, 1.0).is_err());
}

fn richardson(pot: HalfLinePotential, levels: usize, npoints: usize) -> Vec<dunkl_qes::oracle::RichardsonLevel> {
    let grid = RadialGrid::new(pot.decay_radius(levels), npoints).unwrap();
    fd_eigen_richardson(|r| pot.eval(r), &grid, levels).unwrap().levels
}

#[test]
fn fd_harmonic_ground_state() {
    let lv = richardson(HalfLinePotential::Oscillator { l: 0.0, a: 0.0, b: 1.0, n: 0 }, 1, 1000);
    assert!((lv[0].extrapolated - 3.0).abs() < 1e-6, "{lv:?}");
}

#[test]
fn fd_reproduces_qes_oscillator_pair() {
    let lv = richardson(HalfLinePotential::Oscillator { l: 0.0, a: 0.5, b: 1.0, n: 1 }, 2, 1200);
    assert!((lv[0].extrapolated - 1.0).abs() < 1e-5, "{lv:?}");
    assert!((lv[1].extrapolated - 9.0).abs() < 1e-5, "{lv:?}");
    for l in &lv {
        assert!((1.8..=2.2).contains(&l.order), "{l:?}");
    }
}

#[test]
fn fd_reproduces_fixed_coulomb_energy() {
    let lv = richardson(HalfLinePotential::Coulomb { l: 1.0, a: 1.0, b: 1.0, alpha: 0.0 }, 1, 1200);
    assert!((lv[0].extrapolated - 4.0).abs() < 1e-5, "{lv:?}");
}
