//! Upper incomplete gamma Γ(a, z) = z^a e^{-z} Ψ(1, a+1; z).

use super::psi::tricomi_psi;
use crate::complex::{c, ComplexValue};
use crate::error::{Error, Result};

/// Γ(a, z) on the principal branch together with an absolute error estimate.
pub fn upper_incomplete_gamma_with_error(a: ComplexValue, z: ComplexValue) -> Result<(ComplexValue, f64)> {
    if z.norm() == 0.0 {
        return Err(Error::Domain("Γ(a, 0) is not evaluated through Ψ; z must be nonzero".into()));
    }
    let psi = tricomi_psi(c(1.0, 0.0), a + 1.0, z)?;
    let log_pre = a * z.ln() - z;
    let pre = log_pre.exp();
    let value = pre * psi.value;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::NonFinite("upper_incomplete_gamma"));
    }
    let err = pre.norm() * psi.remainder_bound + 2.0 * f64::EPSILON * (1.0 + log_pre.norm()) * value.norm();
    Ok((value, err))
}

pub fn upper_incomplete_gamma(a: ComplexValue, z: ComplexValue) -> Result<ComplexValue> {
    upper_incomplete_gamma_with_error(a, z).map(|(v, _)| v)
}
