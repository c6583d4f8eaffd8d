use crate::quasi::QuasiPolynomial;
use crate::{Error, Result};


/// A Hamiltonian acting exactly on the [`QuasiPolynomial`] class.
///
/// Operators with inverse powers of the variable return `x^shift H f`
/// instead of `H f`, where `shift` is [`EigenOperator::output_shift`].
pub trait EigenOperator {
    fn apply(&self, f: &QuasiPolynomial) -> Result<QuasiPolynomial>;

    fn output_shift(&self) -> usize {
        0
    }
}

/// `max|H psi - E psi| / (max(|E|, 1) max|psi|)` over monomial coefficients.
///
/// The unit floor on `|E|` keeps the measure finite for zero-energy levels.
pub fn residual_meter<O: EigenOperator + ?Sized>(op: &O, psi: &QuasiPolynomial, energy: f64) -> Result<f64> {
    let scale = psi.max_norm();
    if scale == 0.0 {
        return Err(Error::ZeroWavefunction);
    }
    let h_psi = op.apply(psi)?;
    let e_psi = psi.mul_monomial(op.output_shift(), energy);
    let diff = h_psi.checked_sub(&e_psi)?.max_norm();
    Ok(diff / (energy.abs().max(1.0) * scale))
}
