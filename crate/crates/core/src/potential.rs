//! Tabulation of the effective scalar potentials of each family.

use serde::{Deserialize, Serialize};

use crate::dunkl::LineHamiltonian;
use crate::params::Parity;
use crate::radial::RadialHamiltonian;
use crate::spectra::{QesProblem, SectorInfo};
use crate::{Error, Result};

/// One tabulated curve; `None` marks a sample taken at a pole.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PotentialCurve {
    pub label: String,
    pub values: Vec<Option<f64>>,
}

/// Effective potential of `problem` at `points`.
///
/// * line: one curve per parity channel (`V_eps0`, `V_eps1`), `R -> 1 - 2 eps`;
/// * plane oscillator: one curve including `M^2/ρ^2`;
/// * Coulomb: one curve per requested level `k` (all levels when `k` is `None`),
///   each with its own coupling `alpha_k`.
pub fn potential_eval(problem: &QesProblem, k: Option<usize>, points: &[f64]) -> Result<Vec<PotentialCurve>> {
    match problem.sector {
        SectorInfo::Line { dunkl, .. } => {
            let h = LineHamiltonian::new(dunkl, problem.gauge, problem.n);
            Ok([Parity::Even, Parity::Odd]
                .into_iter()
                .map(|parity| PotentialCurve {
                    label: format!("V_eps{}", parity.epsilon()),
                    values: points.iter().map(|&x| Some(h.channel_potential(parity, x))).collect(),
                })
                .collect())
        }
        SectorInfo::PlaneOscillator { sector } => {
            let h = RadialHamiltonian::plane_oscillator(&sector, problem.gauge, problem.n);
            Ok(vec![PotentialCurve {
                label: "V".into(),
                values: points.iter().map(|&r| h.potential(r)).collect(),
            }])
        }
        SectorInfo::PlaneCoulomb { sector } => {
            let solutions = problem.solve()?;
            let selected: Vec<_> = match k {
                Some(k) if k >= solutions.len() => {
                    return Err(Error::InvalidParameter(format!(
                        "level k = {k} out of range for n = {}",
                        problem.n
                    )))
                }
                Some(k) => vec![&solutions[k]],
                None => solutions.iter().collect(),
            };
            Ok(selected
                .into_iter()
                .map(|s| {
                    let h = RadialHamiltonian::plane_coulomb(&sector, problem.gauge, s.alpha.unwrap_or(0.0));
                    PotentialCurve {
                        label: format!("V_k{}", s.k),
                        values: points.iter().map(|&r| h.potential(r)).collect(),
                    }
                })
                .collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{DunklParams, GaugeParams, PlaneSector};

    #[test]
    fn line_channels() {
        let p = QesProblem::line(
            DunklParams::new(1.0).unwrap(),
            Parity::Even,
            GaugeParams::new(1.0, 0.0).unwrap(),
            0,
        );
        let curves = potential_eval(&p, None, &[0.0, 1.0]).unwrap();
        assert_eq!(curves.len(), 2);
        assert_eq!(curves[0].values, vec![Some(0.0), Some(-2.0)]);
        // eps = 1: (1/2)[1 - (2 + 4 + 1)] = -3
        assert_eq!(curves[1].values[1], Some(-3.0));
    }

    #[test]
    fn plane_oscillator_value() {
        let s = PlaneSector::new(Parity::Even, Parity::Even, 0.0, 0.0, 0.0).unwrap();
        let p = QesProblem::plane_oscillator(s, GaugeParams::new(1.0, 1.0).unwrap(), 0);
        let curves = potential_eval(&p, None, &[1.0]).unwrap();
        assert_eq!(curves[0].values, vec![Some(0.0)]);
    }

    #[test]
    fn coulomb_pole_is_marked_per_point() {
        let s = PlaneSector::new(Parity::Even, Parity::Odd, 0.5, 0.25, 0.25).unwrap();
        let p = QesProblem::plane_coulomb(s, GaugeParams::new(1.0, 1.0).unwrap(), 1);
        let curves = potential_eval(&p, None, &[0.0, 1.0]).unwrap();
        assert_eq!(curves.len(), 2);
        assert_eq!(curves[0].values[0], None);
        assert!(curves[0].values[1].is_some());
        assert!(potential_eval(&p, Some(2), &[1.0]).is_err());
    }
}
