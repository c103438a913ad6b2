//! Evaluators for the double L-function
//! `L₂(s₁, s₂; χ₁, χ₂) = Σ χ₁(m)χ₂(n) m^{-s₁} (m+n)^{-s₂}` and for
//! `L̃₂,z`, which carries an extra factor `n^{-z}`.
//!
//! Three methods share one request type:
//!
//! * [`direct_sum`] sums the defining series in its region of absolute
//!   convergence.
//! * [`psi_series`] uses the Tricomi Ψ representation and continues to
//!   `σ₁+σ₂ > 0`.
//! * [`integral_repr`] sums the oscillatory-integral representation; it is
//!   a cross-check for `z = 0` and `σ₁+σ₂ > 1.2`.
//!
//! [`theorem2_main_term`] computes the explicit main term in the strip
//! `0 < σ₂ < 1` and its residual against a reference evaluator.

mod bounds;
mod direct;
mod integral;
mod main_term;
mod psi_series;
mod tails;

pub use bounds::{theorem1_bound_check, theorem1_model, theorem2_model, BoundCheck, BoundModel, DEFAULT_EPSILON};
pub use direct::direct_sum;
pub use integral::{integral_kernel, integral_repr};
pub use main_term::{theorem2_main_term, MainTermResult};
pub use psi_series::psi_series;

use crate::characters::{character, gauss_sum, is_primitive, DirichletCharacter};
use crate::complex::{c, ComplexValue};
use crate::error::{domain, Error, Result};
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Lattice sums are split into this many m-ranges regardless of the number
/// of worker threads, so results are bit-identical for any worker count.
pub const DEFAULT_PARTITIONS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Direct,
    #[serde(alias = "psi")]
    PsiSeries,
    Integral,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::PsiSeries => "psi-series",
            Method::Integral => "integral",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Method::Direct),
            "psi" | "psi-series" => Ok(Method::PsiSeries),
            "integral" => Ok(Method::Integral),
            other => Err(Error::Parse(format!("unknown method {other:?}; expected direct, psi or integral"))),
        }
    }
}

/// Upper limits on the work an evaluator may do.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TruncationCaps {
    /// Largest outer cut M for [`direct_sum`].
    pub m_direct: u64,
    /// Largest hyperbola cut mn <= L computed exactly by the Ψ and
    /// integral evaluators.
    pub m_remainder: u64,
    /// Number N of asymptotic terms split off in [`psi_series`].
    pub n_order: usize,
}

impl Default for TruncationCaps {
    fn default() -> Self {
        TruncationCaps { m_direct: 200_000, m_remainder: 2000, n_order: 3 }
    }
}

fn default_tolerance() -> f64 {
    1e-10
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvalRequest {
    #[serde(with = "crate::complex::serde_re_im")]
    pub s1: ComplexValue,
    #[serde(with = "crate::complex::serde_re_im")]
    pub s2: ComplexValue,
    #[serde(with = "crate::complex::serde_re_im", default)]
    pub z: ComplexValue,
    pub modulus: u64,
    pub chi1: Vec<u64>,
    pub chi2: Vec<u64>,
    pub method: Method,
    /// Target absolute accuracy; evaluators size their truncations from it.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default)]
    pub caps: TruncationCaps,
}

impl EvalRequest {
    pub fn new(s1: ComplexValue, s2: ComplexValue, chi1: &DirichletCharacter, chi2: &DirichletCharacter, method: Method) -> Self {
        EvalRequest {
            s1,
            s2,
            z: c(0.0, 0.0),
            modulus: chi1.modulus(),
            chi1: chi1.label().to_vec(),
            chi2: chi2.label().to_vec(),
            method,
            tolerance: default_tolerance(),
            caps: TruncationCaps::default(),
        }
    }

    pub fn with_z(mut self, z: ComplexValue) -> Self {
        self.z = z;
        self
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_n_order(mut self, n: usize) -> Self {
        self.caps.n_order = n;
        self
    }

    pub fn characters(&self) -> Result<(DirichletCharacter, DirichletCharacter)> {
        Ok((character(self.modulus, &self.chi1)?, character(self.modulus, &self.chi2)?))
    }

    fn validate_common(&self) -> Result<()> {
        for (name, v) in [("s1", self.s1), ("s2", self.s2), ("z", self.z)] {
            if !(v.re.is_finite() && v.im.is_finite()) {
                return domain(format!("{name} is not finite"));
            }
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return domain(format!("tolerance {} must be positive", self.tolerance));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvalResult {
    #[serde(with = "crate::complex::serde_re_im")]
    pub value: ComplexValue,
    pub method: Method,
    pub error_estimate: f64,
    pub terms_summed: u64,
    pub elapsed_ms: f64,
    /// Number of independently reduced pieces; fixed per evaluator.
    pub partitions: usize,
}

/// Dispatches on `req.method`.
pub fn evaluate(req: &EvalRequest) -> Result<EvalResult> {
    match req.method {
        Method::Direct => direct_sum(req),
        Method::PsiSeries => psi_series(req),
        Method::Integral => integral_repr(req),
    }
}

pub(crate) fn require_primitive(chi: &DirichletCharacter, which: &str) -> Result<()> {
    if !is_primitive(chi) {
        return domain(format!("{which} = {chi} is not primitive (conductor {})", chi.conductor()));
    }
    Ok(())
}

/// ε(χ) = τ(χ)/(i^κ √q).
pub(crate) fn epsilon_factor(chi: &DirichletCharacter) -> ComplexValue {
    gauss_sum(chi).epsilon_factor
}

pub(crate) struct Timer(Instant);

impl Timer {
    pub(crate) fn start() -> Self {
        Timer(Instant::now())
    }

    pub(crate) fn ms(&self) -> f64 {
        self.0.elapsed().as_secs_f64() * 1e3
    }
}

/// Splits 1..=n into `parts` contiguous ranges (some possibly empty).
pub(crate) fn partition(n: u64, parts: usize) -> Vec<(u64, u64)> {
    let parts = parts.max(1) as u64;
    (0..parts).map(|p| (1 + n * p / parts, n * (p + 1) / parts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_covers_range() {
        let p = partition(10, 4);
        assert_eq!(p.first().unwrap().0, 1);
        assert_eq!(p.last().unwrap().1, 10);
        for w in p.windows(2) {
            assert_eq!(w[0].1 + 1, w[1].0);
        }
        assert_eq!(partition(2, 4).iter().map(|(a, b)| b + 1 - a).sum::<u64>(), 2);
    }

    #[test]
    fn method_names_parse() {
        assert_eq!("psi".parse::<Method>().unwrap(), Method::PsiSeries);
        assert_eq!(Method::PsiSeries.name().parse::<Method>().unwrap(), Method::PsiSeries);
        assert!("quadrature".parse::<Method>().is_err());
    }
}
