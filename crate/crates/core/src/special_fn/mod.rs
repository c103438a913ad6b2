//! Complex special functions: Γ, ₁F₁, Tricomi Ψ, Γ(a, z) and the
//! Hardy–Littlewood oscillatory integrals.

pub mod gamma;
pub mod hyp1f1;
pub mod incgamma;
pub mod oscillatory;
pub mod psi;
pub mod quadrature;
pub mod selftest;

pub use gamma::{complex_gamma, ln_gamma, pochhammer, rgamma};
pub use hyp1f1::kummer_1f1;
pub use incgamma::upper_incomplete_gamma;
pub use oscillatory::{hl_main_terms, oscillatory_integral, HlRegime, OscillatoryIntegralResult};
pub use psi::{psi_asymptotic_remainder, tricomi_psi, PsiEvaluation, PsiRegime};

/// Tuning knobs shared by the special-function layer.
#[derive(Clone, Debug)]
pub struct SpecialOptions {
    /// X₀: largest |x| for which ₁F₁ series are attempted by default.
    pub series_cutoff: f64,
    /// Relative accuracy a Ψ regime must reach to be accepted outright.
    pub target_rel: f64,
    /// Cap on the number of asymptotic terms.
    pub max_asymptotic_terms: usize,
}

impl Default for SpecialOptions {
    fn default() -> Self {
        Self { series_cutoff: 40.0, target_rel: 1e-13, max_asymptotic_terms: 25 }
    }
}
