//! Sweep configuration and its expansion into grid points.

use crate::characters::{character, parse_label, primitive_characters, DirichletCharacter};
use crate::complex::{c, ComplexValue};
use crate::double_l::{Method, TruncationCaps};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CharacterFilter {
    AllPrimitivePairs,
    /// The labels in `chi1` / `chi2`, read against every modulus.
    FixedPair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    /// L₂ or L̃₂,z from the chosen method.
    Value,
    /// reference (chosen method) minus the explicit main term.
    MaintermResidual,
    /// L(s₁,χ₁)L(s₂,χ₂) minus its truncation at mn <= τ; s₁, s₂ play z₁, z₂.
    ProductApproxResidual,
    /// Σ_{m<=ξ, mn<=τ} χ₁(m)χ₂(n).
    HyperbolaSum,
    /// C(ξ, s₂) and S(ξ, s₂), one row each.
    OscillatoryRegimes,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Value => "value",
            Quantity::MaintermResidual => "mainterm-residual",
            Quantity::ProductApproxResidual => "product-approx-residual",
            Quantity::HyperbolaSum => "hyperbola-sum",
            Quantity::OscillatoryRegimes => "oscillatory-regimes",
        }
    }

    pub fn from_name(name: &str) -> Option<Quantity> {
        [
            Quantity::Value,
            Quantity::MaintermResidual,
            Quantity::ProductApproxResidual,
            Quantity::HyperbolaSum,
            Quantity::OscillatoryRegimes,
        ]
        .into_iter()
        .find(|q| q.name() == name)
    }

    fn uses_s_grids(self) -> bool {
        !matches!(self, Quantity::HyperbolaSum | Quantity::OscillatoryRegimes)
    }
}

/// One entry of an s-grid: a point `[re, im]` / `{"re", "im"}`, or a
/// geometric ladder of heights at fixed σ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridEntry {
    Pair([f64; 2]),
    Point { re: f64, im: f64 },
    Ladder { sigma: f64, start: f64, ratio: f64, count: usize },
}

impl GridEntry {
    fn expand(&self, out: &mut Vec<ComplexValue>) -> Result<()> {
        match *self {
            GridEntry::Pair([re, im]) | GridEntry::Point { re, im } => out.push(c(re, im)),
            GridEntry::Ladder { sigma, start, ratio, count } => {
                if count == 0 || !(ratio > 1.0) || start == 0.0 {
                    return Err(Error::Config(format!(
                        "ladder needs count >= 1, ratio > 1 and start != 0; got start {start}, ratio {ratio}, count {count}"
                    )));
                }
                let mut t = start;
                for _ in 0..count {
                    out.push(c(sigma, t));
                    t *= ratio;
                }
            }
        }
        Ok(())
    }
}

/// ξ given directly or relative to τ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum XiEntry {
    Value(f64),
    /// "sqrt-tau", "tau/10" or "tau".
    Rule(String),
}

impl XiEntry {
    pub fn resolve(&self, tau: f64) -> Result<f64> {
        match self {
            XiEntry::Value(v) => Ok(*v),
            XiEntry::Rule(r) => match r.as_str() {
                "sqrt-tau" => Ok(tau.sqrt()),
                "tau/10" => Ok(tau / 10.0),
                "tau" => Ok(tau),
                other => Err(Error::Config(format!("unknown ξ rule {other:?}; expected sqrt-tau, tau/10 or tau"))),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepSpec {
    pub moduli: Vec<u64>,
    pub character_filter: CharacterFilter,
    /// Labels for `fixed-pair`, e.g. "1" or "1,2".
    #[serde(default)]
    pub chi1: Option<String>,
    #[serde(default)]
    pub chi2: Option<String>,
    #[serde(default, rename = "s1_grid")]
    pub s1_grid: Vec<GridEntry>,
    #[serde(default, rename = "s2_grid")]
    pub s2_grid: Vec<GridEntry>,
    #[serde(default = "default_z_grid")]
    pub z_grid: Vec<GridEntry>,
    #[serde(default)]
    pub tau: Vec<f64>,
    #[serde(default)]
    pub xi: Vec<XiEntry>,
    #[serde(default = "default_method")]
    pub method: Method,
    pub quantity: Quantity,
    #[serde(default)]
    pub output_path: Option<PathBuf>,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default)]
    pub caps: TruncationCaps,
    /// Write wall-clock times into elapsed_ms; off keeps the CSV
    /// reproducible byte for byte.
    #[serde(default)]
    pub timings: bool,
}

fn default_z_grid() -> Vec<GridEntry> {
    vec![GridEntry::Pair([0.0, 0.0])]
}

fn default_method() -> Method {
    Method::PsiSeries
}

fn default_tolerance() -> f64 {
    1e-10
}

/// A fully specified grid point. Fields irrelevant to the quantity are zero.
#[derive(Clone, Debug)]
pub struct GridPoint {
    pub modulus: u64,
    pub chi1: Option<DirichletCharacter>,
    pub chi2: Option<DirichletCharacter>,
    pub s1: ComplexValue,
    pub s2: ComplexValue,
    pub z: ComplexValue,
    pub tau: Option<f64>,
    pub xi: Option<f64>,
    /// 0 for the cosine row, 1 for the sine row of oscillatory-regimes.
    pub part: usize,
}

fn expand_grid(name: &str, entries: &[GridEntry]) -> Result<Vec<ComplexValue>> {
    let mut out = Vec::new();
    for e in entries {
        e.expand(&mut out)?;
    }
    if out.is_empty() {
        return Err(Error::Config(format!("{name} is empty")));
    }
    Ok(out)
}

impl SweepSpec {
    pub fn from_json(text: &str) -> Result<SweepSpec> {
        let spec: SweepSpec = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.quantity != Quantity::OscillatoryRegimes && self.moduli.is_empty() {
            return Err(Error::Config("moduli is empty".into()));
        }
        if self.quantity.uses_s_grids() {
            expand_grid("s1_grid", &self.s1_grid)?;
            expand_grid("s2_grid", &self.s2_grid)?;
            expand_grid("z_grid", &self.z_grid)?;
        }
        match self.quantity {
            Quantity::ProductApproxResidual | Quantity::HyperbolaSum if self.tau.is_empty() => {
                return Err(Error::Config(format!("{} needs a nonempty tau list", self.quantity.name())));
            }
            Quantity::HyperbolaSum | Quantity::OscillatoryRegimes if self.xi.is_empty() => {
                return Err(Error::Config(format!("{} needs a nonempty xi list", self.quantity.name())));
            }
            Quantity::OscillatoryRegimes => {
                expand_grid("s2_grid", &self.s2_grid)?;
            }
            _ => {}
        }
        if self.character_filter == CharacterFilter::FixedPair && (self.chi1.is_none() || self.chi2.is_none()) {
            return Err(Error::Config("fixed-pair needs chi1 and chi2 labels".into()));
        }
        Ok(())
    }

    fn pairs(&self, q: u64) -> Result<Vec<(DirichletCharacter, DirichletCharacter)>> {
        match self.character_filter {
            CharacterFilter::AllPrimitivePairs => {
                let chis = primitive_characters(q)?;
                Ok(chis.iter().flat_map(|a| chis.iter().map(move |b| (a.clone(), b.clone()))).collect())
            }
            CharacterFilter::FixedPair => {
                let l1 = parse_label(self.chi1.as_deref().unwrap_or_default())?;
                let l2 = parse_label(self.chi2.as_deref().unwrap_or_default())?;
                Ok(vec![(character(q, &l1)?, character(q, &l2)?)])
            }
        }
    }

    /// All grid points in lexicographic order of their grid indices:
    /// modulus, character pair, s₁, s₂, z, τ, ξ.
    pub fn points(&self) -> Result<Vec<GridPoint>> {
        self.validate()?;
        let zero = c(0.0, 0.0);
        let blank = GridPoint { modulus: 0, chi1: None, chi2: None, s1: zero, s2: zero, z: zero, tau: None, xi: None, part: 0 };
        let mut out = Vec::new();
        if self.quantity == Quantity::OscillatoryRegimes {
            for s in expand_grid("s2_grid", &self.s2_grid)? {
                for x in &self.xi {
                    let xi = x.resolve(f64::NAN)?;
                    for part in 0..2 {
                        out.push(GridPoint { s2: s, xi: Some(xi), part, ..blank.clone() });
                    }
                }
            }
            return Ok(out);
        }
        for &q in &self.moduli {
            for (a, b) in self.pairs(q)? {
                let base = GridPoint { modulus: q, chi1: Some(a), chi2: Some(b), ..blank.clone() };
                if self.quantity == Quantity::HyperbolaSum {
                    for &tau in &self.tau {
                        for x in &self.xi {
                            out.push(GridPoint { tau: Some(tau), xi: Some(x.resolve(tau)?), ..base.clone() });
                        }
                    }
                    continue;
                }
                let taus: Vec<Option<f64>> = if self.quantity == Quantity::ProductApproxResidual {
                    self.tau.iter().map(|&t| Some(t)).collect()
                } else {
                    vec![None]
                };
                for s1 in expand_grid("s1_grid", &self.s1_grid)? {
                    for s2 in expand_grid("s2_grid", &self.s2_grid)? {
                        for z in expand_grid("z_grid", &self.z_grid)? {
                            for &tau in &taus {
                                out.push(GridPoint { s1, s2, z, tau, ..base.clone() });
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}
