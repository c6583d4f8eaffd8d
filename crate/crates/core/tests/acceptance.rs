//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the report is always printed. The
//! process fails if any criterion outcome differs from `EXPECTED_FAILURES`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dunkl_qes::block::oscillator_block_unchecked;
use dunkl_qes::es::{coulomb_principal, es_line_level, es_plane_coulomb_level, es_plane_oscillator_level};
use dunkl_qes::oracle::audit::{qes_position_audit, FdOptions};
use dunkl_qes::oracle::fd::{fd_eigen_richardson, HalfLinePotential, RadialGrid};
use dunkl_qes::oracle::{residual_meter, weighted_inner_product, QuadratureScheme, Weight};
use dunkl_qes::radial::RadialHamiltonian;
use dunkl_qes::spectra::{Family, QesProblem};
use dunkl_qes::{
    DunklParams, EffectiveL, Gauge, GaugeParams, HamiltonianForm, LineHamiltonian, Parity, PlaneSector,
    QuasiPolynomial,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CLOSED_FORM_REL_TOL: f64 = 1e-11;
const IDENTITY_REL_TOL: f64 = 1e-12;
const RESIDUAL_TOL: f64 = 1e-11;
const ES_RESIDUAL_TOL: f64 = 1e-12;
const ORACLE_ABS_TOL: f64 = 1e-5;
const ORDER_RANGE: (f64, f64) = (1.8, 2.2);
const ES_EXACT_REL_TOL: f64 = 1e-14;
const ORTHOGONALITY_TOL: f64 = 1e-9;
const SIMPLE_GAP_REL: f64 = 1e-9;

/// Criteria known to fail, with the reason recorded in the project notes.
const EXPECTED_FAILURES: &[&str] = &["6a"];

struct Outcome {
    id: &'static str,
    title: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
    budget: Duration,
}

fn run(id: &'static str, title: &'static str, budget_s: f64, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (ok, detail) = f();
    let elapsed = start.elapsed();
    let budget = Duration::from_secs_f64(budget_s);
    Outcome {
        id,
        title,
        pass: ok && elapsed <= budget,
        detail,
        elapsed,
        budget,
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_gauge(r: &mut ChaCha8Rng) -> GaugeParams {
    GaugeParams::new(r.gen_range(0.05..3.0), r.gen_range(-3.0..3.0)).unwrap()
}

fn random_sector(r: &mut ChaCha8Rng, coulomb: bool) -> PlaneSector {
    loop {
        let twice_nu: u32 = r.gen_range(0..6);
        let nu = f64::from(twice_nu) / 2.0;
        let (e1, e2) = match (twice_nu % 2, r.gen_bool(0.5)) {
            (1, true) => (Parity::Even, Parity::Odd),
            (1, false) => (Parity::Odd, Parity::Even),
            (_, true) if twice_nu >= 2 => (Parity::Odd, Parity::Odd),
            _ => (Parity::Even, Parity::Even),
        };
        let Ok(s) = PlaneSector::new(e1, e2, nu, r.gen_range(-0.49..3.0), r.gen_range(-0.49..3.0)) else {
            continue;
        };
        if !coulomb || EffectiveL::plane(&s).value() > -1.0 {
            return s;
        }
    }
}

fn random_problem(r: &mut ChaCha8Rng, family: Family, n: u32) -> QesProblem {
    let g = random_gauge(r);
    match family {
        Family::LineOscillator => {
            let mu = DunklParams::new(r.gen_range(-0.49..3.0)).unwrap();
            let parity = if r.gen_bool(0.5) { Parity::Even } else { Parity::Odd };
            QesProblem::line(mu, parity, g, n)
        }
        Family::PlaneOscillator => QesProblem::plane_oscillator(random_sector(r, false), g, n),
        Family::PlaneCoulomb => QesProblem::plane_coulomb(random_sector(r, true), g, n),
    }
}

const FAMILIES: [Family; 3] = [Family::LineOscillator, Family::PlaneOscillator, Family::PlaneCoulomb];

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(1.0)
}

fn criterion_1() -> (bool, String) {
    let mut r = rng(1);
    let mut worst = 0.0f64;
    let mut count = 0;
    for family in FAMILIES {
        for _ in 0..200 {
            let n = r.gen_range(0..=1);
            let p = random_problem(&mut r, family, n);
            let block = p.solve().unwrap();
            let closed = p.closed_form().unwrap();
            for (x, y) in block.iter().zip(&closed) {
                worst = worst.max(rel(x.energy, y.energy));
                if let (Some(a), Some(b)) = (x.alpha, y.alpha) {
                    worst = worst.max(rel(a, b));
                }
                count += 1;
            }
        }
    }
    (worst <= CLOSED_FORM_REL_TOL, format!("{count} levels, max rel diff {worst:.2e} (tol {CLOSED_FORM_REL_TOL:.0e})"))
}

fn criterion_2() -> (bool, String) {
    let mut r = rng(2);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let h = LineHamiltonian::new(
            DunklParams::new(r.gen_range(-0.49..3.0)).unwrap(),
            random_gauge(&mut r),
            r.gen_range(0..6),
        );
        let gauge = Gauge::new(r.gen_range(0.0..2.0), r.gen_range(0.0..2.0), 0.0);
        let deg = r.gen_range(0..10);
        let f = QuasiPolynomial::new(gauge, (0..=deg).map(|_| r.gen_range(-1.0..1.0)).collect());
        let d = h.apply(&f, HamiltonianForm::Direct).unwrap();
        let e = h.apply(&f, HamiltonianForm::Extended).unwrap();
        worst = worst.max(d.max_coeff_diff(&e) / d.max_norm().max(e.max_norm()));
    }
    (worst <= IDENTITY_REL_TOL, format!("100 functions, max rel diff {worst:.2e} (tol {IDENTITY_REL_TOL:.0e})"))
}

fn criterion_3() -> (bool, String) {
    let mut r = rng(3);
    let mut worst = 0.0f64;
    let mut count = 0;
    for family in FAMILIES {
        for n in 0..=6 {
            for _ in 0..10 {
                let p = random_problem(&mut r, family, n);
                for sol in p.solve().unwrap() {
                    worst = worst.max(sol.residual().unwrap());
                    count += 1;
                }
            }
        }
    }
    (worst <= RESIDUAL_TOL, format!("{count} solutions, max residual {worst:.2e} (tol {RESIDUAL_TOL:.0e})"))
}

fn criterion_4() -> (bool, String) {
    let mu = DunklParams::new(1.0).unwrap();
    let sector = PlaneSector::with_default_parities(0.5, 0.25, 0.25).unwrap();
    let osc = GaugeParams::new(0.5, 1.0).unwrap();
    let cou = GaugeParams::new(1.0, 1.0).unwrap();
    let options = FdOptions::default();
    let mut worst_err = 0.0f64;
    let mut orders = (f64::INFINITY, f64::NEG_INFINITY);
    let mut all_matched = true;
    let mut coulomb_positions = true;
    let mut nodes_agree = true;
    for n in 0..=2 {
        let problems = [
            QesProblem::line(mu, Parity::Even, osc, n),
            QesProblem::line(mu, Parity::Odd, osc, n),
            QesProblem::plane_oscillator(sector, osc, n),
            QesProblem::plane_coulomb(sector, cou, n),
        ];
        for p in problems {
            let audit = qes_position_audit(&p, &options).unwrap();
            all_matched &= audit.all_matched();
            if p.family() == Family::PlaneCoulomb {
                // Every member shares E = a(2n + 2l + 3) - b^2 and sits at position k + 1.
                let l = p.effective_l().value();
                let fixed = cou.a() * (2.0 * f64::from(n) + 2.0 * l + 3.0) - cou.b() * cou.b();
                for e in &audit.entries {
                    worst_err = worst_err.max((e.analytic - fixed).abs());
                }
                coulomb_positions &= audit.known_are_lowest;
            }
            for e in &audit.entries {
                nodes_agree &= e.oracle_nodes == Some(e.polynomial_nodes);
            }
            let report = audit.to_oracle_report();
            worst_err = worst_err.max(report.max_abs_error());
            for o in report.orders() {
                orders = (orders.0.min(o), orders.1.max(o));
            }
        }
    }
    let ok = all_matched
        && coulomb_positions
        && nodes_agree
        && worst_err <= ORACLE_ABS_TOL
        && orders.0 >= ORDER_RANGE.0
        && orders.1 <= ORDER_RANGE.1;
    (
        ok,
        format!(
            "max |FD - analytic| {worst_err:.2e} (tol {ORACLE_ABS_TOL:.0e}), order in [{:.3}, {:.3}], \
             coulomb k -> position k+1: {coulomb_positions}, node counts agree: {nodes_agree}",
            orders.0, orders.1
        ),
    )
}

fn criterion_5() -> (bool, String) {
    let mut worst_exact = 0.0f64;
    let mut worst_residual = 0.0f64;
    for mu in [-0.3, 0.0, 0.5, 1.0, 2.5] {
        let p = DunklParams::new(mu).unwrap();
        for parity in [Parity::Even, Parity::Odd] {
            let l = EffectiveL::line(p, parity).value();
            for n in 0..=6u32 {
                let pairs = oscillator_block_unchecked(l, 0.0, 1.0, n).eigenpairs().unwrap();
                for (k, (value, _)) in pairs.iter().enumerate() {
                    let expected = 2.0 * k as f64 + f64::from(parity.epsilon()) + mu + 0.5;
                    worst_exact = worst_exact.max(rel(0.5 * value, expected));
                }
            }
            let h = LineHamiltonian::harmonic(p);
            for k in 0..5 {
                let lvl = es_line_level(p, k, parity);
                worst_residual = worst_residual.max(residual_meter(&h, &lvl.wavefunction, lvl.energy).unwrap());
            }
        }
    }
    for (nu, m1, m2) in [(0.0, 0.0, 0.0), (0.5, 0.25, 0.25), (1.0, 1.5, -0.2), (1.5, 0.7, 0.1)] {
        let s = PlaneSector::with_default_parities(nu, m1, m2).unwrap();
        let l = EffectiveL::plane(&s).value();
        for n in 0..=6u32 {
            let pairs = oscillator_block_unchecked(l, 0.0, 1.0, n).eigenpairs().unwrap();
            for (k, (value, _)) in pairs.iter().enumerate() {
                let expected = 2.0 * k as f64 + 2.0 * nu + m1 + m2 + 1.0;
                worst_exact = worst_exact.max(rel(0.5 * value, expected));
            }
        }
        let h = RadialHamiltonian::es_plane_oscillator(&s);
        for k in 0..5 {
            let lvl = es_plane_oscillator_level(&s, k);
            worst_residual = worst_residual.max(residual_meter(&h, &lvl.wavefunction, lvl.energy).unwrap());
        }
    }

    // Dunkl-Coulomb: gauged FD on -u'' - alpha/r u + l(l+1)/r^2 u = 2E u.
    let mut worst_fd = 0.0f64;
    let alpha = 4.0;
    for (nu, m1, m2) in [(0.5, 0.25, 0.25), (1.0, 0.5, 0.0)] {
        let s = PlaneSector::with_default_parities(nu, m1, m2).unwrap();
        let l = EffectiveL::plane(&s).value();
        let levels = 3;
        let pot = HalfLinePotential::Hydrogenic { l, alpha };
        let grid = RadialGrid::new(pot.decay_radius(levels), 4000).unwrap();
        let fd = fd_eigen_richardson(|r| pot.eval(r), &grid, levels).unwrap();
        let h = RadialHamiltonian::es_plane_coulomb(&s, alpha);
        for k in 0..levels {
            let lvl = es_plane_coulomb_level(&s, k, alpha).unwrap();
            let big_n = coulomb_principal(&s, k);
            assert!(rel(lvl.energy, -alpha * alpha / (8.0 * big_n * big_n)) < 1e-15);
            worst_fd = worst_fd.max((fd.levels[k].extrapolated - 2.0 * lvl.energy).abs());
            worst_residual = worst_residual.max(residual_meter(&h, &lvl.wavefunction, lvl.energy).unwrap());
        }
    }
    let ok = worst_exact <= ES_EXACT_REL_TOL && worst_fd <= ORACLE_ABS_TOL && worst_residual <= ES_RESIDUAL_TOL;
    (
        ok,
        format!(
            "a=0 block vs ES rel {worst_exact:.1e} (tol {ES_EXACT_REL_TOL:.0e}), ES Coulomb |FD - analytic| \
             {worst_fd:.2e} (tol {ORACLE_ABS_TOL:.0e}), ES residual {worst_residual:.1e}"
        ),
    )
}

struct Structure {
    descending: usize,
    ascending: usize,
    nodes_ok: bool,
    simple_real: bool,
    configs: usize,
}

fn structure() -> Structure {
    let mut r = rng(6);
    let mut out = Structure {
        descending: 0,
        ascending: 0,
        nodes_ok: true,
        simple_real: true,
        configs: 100,
    };
    for i in 0..out.configs {
        let n = 1 + (i as u32 % 6);
        let p = random_problem(&mut r, Family::PlaneCoulomb, n);
        let sols = p.solve().unwrap();
        let alphas: Vec<f64> = sols.iter().map(|s| s.alpha.unwrap()).collect();
        if alphas.windows(2).all(|w| w[0] > w[1]) {
            out.descending += 1;
        }
        if alphas.windows(2).all(|w| w[0] < w[1]) {
            out.ascending += 1;
        }
        out.nodes_ok &= sols.iter().all(|s| s.node_count() == s.k);
        // Real: the block symmetrises (positive sub*sup products); simple: gaps.
        out.simple_real &= p.block().unwrap().symmetrize().is_ok()
            && alphas
                .windows(2)
                .all(|w| (w[1] - w[0]).abs() > SIMPLE_GAP_REL * w[1].abs().max(1.0));
        for family in [Family::LineOscillator, Family::PlaneOscillator] {
            let q = random_problem(&mut r, family, n);
            let e: Vec<f64> = q.solve().unwrap().iter().map(|s| s.energy).collect();
            out.simple_real &= q.block().unwrap().symmetrize().is_ok()
                && e.windows(2).all(|w| w[1] - w[0] > SIMPLE_GAP_REL * w[1].abs().max(1.0));
        }
    }
    out
}

fn criterion_6a(s: &Structure) -> (bool, String) {
    (
        s.descending == s.configs,
        format!(
            "alpha_0 > ... > alpha_n in {}/{} configs; strictly increasing with node count in {}/{}",
            s.descending, s.configs, s.ascending, s.configs
        ),
    )
}

fn criterion_6b(s: &Structure) -> (bool, String) {
    (
        s.nodes_ok && s.simple_real,
        format!("node count == k: {}, block spectra real and simple: {}", s.nodes_ok, s.simple_real),
    )
}

fn pairwise_orthogonality(states: &[QuasiPolynomial], weight: Weight, scheme: &QuadratureScheme) -> f64 {
    let norms: Vec<f64> = states
        .iter()
        .map(|s| weighted_inner_product(s, s, weight, scheme).unwrap())
        .collect();
    let mut worst = 0.0f64;
    for i in 0..states.len() {
        for j in 0..i {
            let ip = weighted_inner_product(&states[i], &states[j], weight, scheme).unwrap();
            worst = worst.max(ip.abs() / (norms[i] * norms[j]).sqrt());
        }
    }
    worst
}

fn criterion_7() -> (bool, String) {
    let mut r = rng(7);
    let scheme = QuadratureScheme::default();
    let mut worst = 0.0f64;
    let mut hamiltonians = 0;
    for family in [Family::LineOscillator, Family::PlaneOscillator] {
        for n in 1..=6 {
            for _ in 0..3 {
                let p = random_problem(&mut r, family, n);
                let weight = match p.sector {
                    dunkl_qes::SectorInfo::Line { dunkl, .. } => Weight::Line { mu: dunkl.mu() },
                    dunkl_qes::SectorInfo::PlaneOscillator { sector } | dunkl_qes::SectorInfo::PlaneCoulomb { sector } => {
                        Weight::Radial {
                            power: sector.measure_power(),
                        }
                    }
                };
                let states: Vec<_> = p.solve().unwrap().into_iter().map(|s| s.wavefunction).collect();
                worst = worst.max(pairwise_orthogonality(&states, weight, &scheme));
                hamiltonians += 1;
            }
        }
    }
    // Exactly solvable references: fixed parity on the line, fixed sector in the plane.
    for mu in [-0.3, 1.0, 2.0] {
        let p = DunklParams::new(mu).unwrap();
        for parity in [Parity::Even, Parity::Odd] {
            let states: Vec<_> = (0..6).map(|k| es_line_level(p, k, parity).wavefunction).collect();
            worst = worst.max(pairwise_orthogonality(&states, Weight::Line { mu }, &scheme));
            hamiltonians += 1;
        }
    }
    for (nu, m1, m2) in [(0.5, 0.25, 0.25), (1.0, 1.5, -0.2)] {
        let s = PlaneSector::with_default_parities(nu, m1, m2).unwrap();
        let weight = Weight::Radial {
            power: s.measure_power(),
        };
        let osc: Vec<_> = (0..6).map(|k| es_plane_oscillator_level(&s, k).wavefunction).collect();
        let cou: Vec<_> = (0..6)
            .map(|k| es_plane_coulomb_level(&s, k, 2.0).unwrap().wavefunction)
            .collect();
        worst = worst.max(pairwise_orthogonality(&osc, weight, &scheme));
        worst = worst.max(pairwise_orthogonality(&cou, weight, &scheme));
        hamiltonians += 2;
    }
    (
        worst <= ORTHOGONALITY_TOL,
        format!(
            "{hamiltonians} Hamiltonians, max |<i|j>|/sqrt(<i|i><j|j>) {worst:.2e} (tol {ORTHOGONALITY_TOL:.0e}); \
             QES Coulomb states belong to distinct Hamiltonians and are not compared"
        ),
    )
}

fn report(o: &Outcome, unexpected: &mut Vec<&'static str>) {
    let expected_fail = EXPECTED_FAILURES.contains(&o.id);
    let tag = match (o.pass, expected_fail) {
        (true, _) => "PASS",
        (false, true) => "FAIL (expected)",
        (false, false) => "FAIL",
    };
    println!(
        "[{tag}] criterion {:<3} {} -- {} [{:.3} s / {:.0} s]",
        o.id,
        o.title,
        o.detail,
        o.elapsed.as_secs_f64(),
        o.budget.as_secs_f64()
    );
    if o.pass == expected_fail {
        unexpected.push(o.id);
    }
}

fn main() -> ExitCode {
    let mut unexpected = Vec::new();
    report(&run("1", "n=0/1 closed-form reproduction", 1.0, criterion_1), &mut unexpected);
    report(&run("2", "direct vs extended Dunkl Hamiltonian", 1.0, criterion_2), &mut unexpected);
    report(&run("3", "exact eigen-residuals, n <= 6", 1.0, criterion_3), &mut unexpected);
    report(&run("4", "finite-difference oracle, n <= 2", 30.0, criterion_4), &mut unexpected);
    report(&run("5", "exactly solvable limits", 5.0, criterion_5), &mut unexpected);

    // 6a and 6b share one sweep; each is charged its full time.
    let start = Instant::now();
    let s = structure();
    let shared = start.elapsed();
    for mut o in [
        run("6a", "Coulomb couplings alpha_0 > ... > alpha_n", 2.0, || criterion_6a(&s)),
        run("6b", "node counts and real simple block spectra", 2.0, || criterion_6b(&s)),
    ] {
        o.elapsed += shared;
        o.pass &= o.elapsed <= o.budget;
        report(&o, &mut unexpected);
    }
    report(&run("7", "orthogonality within a sector", 5.0, criterion_7), &mut unexpected);

    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
