//! Dirichlet characters modulo `q`: construction by label, enumeration,
//! primitivity, Gauss sums and the two character-sum quantities used by
//! the bound checks (maximal partial sums and hyperbola sums).
//!
//! Labels are exponent vectors over a fixed generator set of (Z/qZ)*: the
//! least primitive root for each odd prime power, `{-1, 5}` for `2^e`
//! with `e >= 3`, and the single generator of (Z/2)* or (Z/4)*. The
//! character with label `v` sends generator `g_i` to `exp(2πi v_i / n_i)`.

use crate::arith::{divisors, euler_phi, factorize, gcd, lcm, mul_mod, pow_mod};
use crate::complex::{c, ComplexValue};
use crate::error::{domain, Error, Result};
use crate::sum::CompensatedSum;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;

/// `exp(2πi k / n)` with exact values on the axes.
pub fn root_of_unity(k: i64, n: u64) -> ComplexValue {
    let n = n as i64;
    let k = k.rem_euclid(n);
    if (4 * k) % n == 0 {
        return match 4 * k / n {
            0 => c(1.0, 0.0),
            1 => c(0.0, 1.0),
            2 => c(-1.0, 0.0),
            _ => c(0.0, -1.0),
        };
    }
    // Fold into [0, 1/2] turn before the trig call to keep the angle small.
    let (s, sign) = if 2 * k > n { (n - k, -1.0) } else { (k, 1.0) };
    let theta = 2.0 * PI * (s as f64) / (n as f64);
    c(theta.cos(), sign * theta.sin())
}

/// One cyclic factor of (Z/qZ)*: residues mod `prime_power` generated by
/// `generator`, of order `order`. For `2^e` (e >= 3) two factors share the
/// same prime power (`-1` of order 2 and `5` of order `2^(e-2)`).
#[derive(Clone, Debug)]
struct Component {
    prime_power: u64,
    generator: u64,
    order: u64,
}

/// Generator decomposition of (Z/qZ)* together with discrete-log tables.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    modulus: u64,
    components: Vec<Component>,
    /// `logs[a]` holds the exponent vector of `a` (empty if gcd(a, q) > 1).
    logs: Vec<Vec<u64>>,
}

fn least_primitive_root(p: u64, e: u32) -> u64 {
    let pe = p.pow(e);
    let phi = euler_phi(pe);
    let prime_factors: Vec<u64> = factorize(phi).into_iter().map(|(f, _)| f).collect();
    (2..pe).find(|&g| gcd(g, p) == 1 && prime_factors.iter().all(|&f| pow_mod(g, phi / f, pe) != 1)).unwrap_or(1)
}

impl UnitGroup {
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 {
            return domain(format!("modulus must be >= 2, got {q}"));
        }
        let mut components = Vec::new();
        for (p, e) in factorize(q) {
            let pe = p.pow(e);
            if p == 2 {
                match e {
                    1 => components.push(Component { prime_power: 2, generator: 1, order: 1 }),
                    2 => components.push(Component { prime_power: 4, generator: 3, order: 2 }),
                    _ => {
                        components.push(Component { prime_power: pe, generator: pe - 1, order: 2 });
                        components.push(Component { prime_power: pe, generator: 5, order: pe / 4 });
                    }
                }
            } else {
                components.push(Component { prime_power: pe, generator: least_primitive_root(p, e), order: euler_phi(pe) });
            }
        }

        // Discrete logs per prime power, then combined through CRT residues.
        let mut per_component: Vec<Vec<Option<u64>>> = Vec::with_capacity(components.len());
        let mut i = 0;
        while i < components.len() {
            let comp = &components[i];
            let pe = comp.prime_power;
            if pe >= 8 && pe % 2 == 0 {
                // a ≡ (-1)^u 5^v (mod 2^e)
                let order5 = components[i + 1].order;
                let mut log_u = vec![None; pe as usize];
                let mut log_v = vec![None; pe as usize];
                let mut g = 1u64;
                for v in 0..order5 {
                    log_u[g as usize] = Some(0);
                    log_v[g as usize] = Some(v);
                    let neg = pe - g;
                    log_u[neg as usize] = Some(1);
                    log_v[neg as usize] = Some(v);
                    g = mul_mod(g, 5, pe);
                }
                per_component.push(log_u);
                per_component.push(log_v);
                i += 2;
            } else {
                let mut table = vec![None; pe as usize];
                let mut g = 1 % pe;
                for j in 0..comp.order {
                    table[g as usize] = Some(j);
                    g = mul_mod(g, comp.generator, pe);
                }
                if pe == 2 {
                    table[1] = Some(0);
                }
                per_component.push(table);
                i += 1;
            }
        }

        let logs = (0..q)
            .map(|a| {
                if gcd(a, q) != 1 {
                    return Vec::new();
                }
                components
                    .iter()
                    .zip(&per_component)
                    .map(|(comp, table)| table[(a % comp.prime_power) as usize].expect("unit has a log"))
                    .collect()
            })
            .collect();

        Ok(Self { modulus: q, components, logs })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Orders of the cyclic factors, in label order.
    pub fn orders(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.order).collect()
    }

    pub fn generators(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.generator).collect()
    }

    pub fn size(&self) -> u64 {
        self.orders().iter().product()
    }

    /// Builds the character with exponent vector `label`.
    pub fn character(&self, label: &[u64]) -> Result<DirichletCharacter> {
        let orders = self.orders();
        if label.len() != orders.len() {
            return domain(format!(
                "label {label:?} has {} entries, modulus {} needs {}",
                label.len(),
                self.modulus,
                orders.len()
            ));
        }
        if let Some((v, n)) = label.iter().zip(&orders).find(|(v, n)| v >= n) {
            return domain(format!("label entry {v} out of range for a factor of order {n}"));
        }
        let order = label.iter().zip(&orders).fold(1, |acc, (&v, &n)| lcm(acc, n / gcd(v, n)));

        let q = self.modulus as usize;
        let mut exponents = vec![None; q];
        for (a, logs) in self.logs.iter().enumerate() {
            if logs.is_empty() {
                continue;
            }
            // Σ v_i log_i / n_i expressed over the common denominator `order`.
            let k = logs
                .iter()
                .zip(label)
                .zip(&orders)
                .map(|((&lg, &v), &n)| ((v * lg) % n) * (order / (n / gcd(v, n))) / gcd(v, n))
                .sum::<u64>()
                % order;
            exponents[a] = Some(k);
        }
        DirichletCharacter::from_exponents(self.modulus, label.to_vec(), orders, order, exponents)
    }

    /// All characters, ordered lexicographically by label.
    pub fn characters(&self) -> Result<Vec<DirichletCharacter>> {
        let orders = self.orders();
        let mut out = Vec::with_capacity(self.size() as usize);
        let mut label = vec![0u64; orders.len()];
        loop {
            out.push(self.character(&label)?);
            // Odometer increment, last position fastest.
            let mut pos = orders.len();
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                label[pos] += 1;
                if label[pos] < orders[pos] {
                    break;
                }
                label[pos] = 0;
            }
        }
    }
}

/// A Dirichlet character with its value table materialized.
#[derive(Clone, Debug)]
pub struct DirichletCharacter {
    modulus: u64,
    label: Vec<u64>,
    factor_orders: Vec<u64>,
    order: u64,
    /// `exponents[a] = Some(k)` means `χ(a) = exp(2πi k / order)`.
    exponents: Vec<Option<u64>>,
    values: Vec<ComplexValue>,
    parity: u8,
    conductor: u64,
}

impl DirichletCharacter {
    fn from_exponents(
        modulus: u64,
        label: Vec<u64>,
        factor_orders: Vec<u64>,
        order: u64,
        exponents: Vec<Option<u64>>,
    ) -> Result<Self> {
        let values: Vec<ComplexValue> =
            exponents.iter().map(|k| k.map_or(c(0.0, 0.0), |k| root_of_unity(k as i64, order))).collect();
        let minus_one = exponents[(modulus - 1) as usize].ok_or_else(|| Error::Domain("χ(-1) undefined".into()))?;
        let parity = if minus_one == 0 { 0 } else { 1 };
        let mut chi = Self { modulus, label, factor_orders, order, exponents, values, parity, conductor: modulus };
        chi.conductor = chi.compute_conductor();
        Ok(chi)
    }

    /// Smallest `d | q` such that χ is trivial on units ≡ 1 (mod d).
    fn compute_conductor(&self) -> u64 {
        let q = self.modulus;
        divisors(q)
            .into_iter()
            .find(|&d| (1..q).step_by(d as usize).all(|a| self.exponents[a as usize].is_none_or(|k| k == 0)))
            .unwrap_or(q)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn label(&self) -> &[u64] {
        &self.label
    }

    /// Comma-separated label, the form used on the command line and in CSV.
    pub fn label_string(&self) -> String {
        self.label.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// κ ∈ {0, 1} with χ(-1) = (-1)^κ.
    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_principal(&self) -> bool {
        self.order == 1
    }

    /// The value table, indexed by residue `0..q`.
    pub fn values(&self) -> &[ComplexValue] {
        &self.values
    }

    #[inline]
    pub fn value(&self, n: u64) -> ComplexValue {
        self.values[(n % self.modulus) as usize]
    }

    /// Exponent `k` with χ(n) = exp(2πik/order), or `None` off the units.
    pub fn exponent(&self, n: u64) -> Option<u64> {
        self.exponents[(n % self.modulus) as usize]
    }

    /// The complex-conjugate character (label negated factor-wise).
    pub fn conj(&self) -> DirichletCharacter {
        let label = self.label.iter().zip(&self.factor_orders).map(|(&v, &n)| (n - v) % n).collect();
        let exponents = self.exponents.iter().map(|k| k.map(|k| (self.order - k) % self.order)).collect();
        let mut out = Self::from_exponents(self.modulus, label, self.factor_orders.clone(), self.order, exponents)
            .expect("conjugate of a valid character is valid");
        out.conductor = self.conductor;
        out
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ_{}[{}]", self.modulus, self.label_string())
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.label == other.label
    }
}

/// Parses the comma-separated label form.
pub fn parse_label(text: &str) -> Result<Vec<u64>> {
    text.split(',').map(|s| s.trim().parse::<u64>().map_err(|e| Error::Parse(format!("bad label entry {s:?}: {e}")))).collect()
}

/// All φ(q) characters mod `q`, ordered by label.
pub fn enumerate_characters(q: u64) -> Result<Vec<DirichletCharacter>> {
    UnitGroup::new(q)?.characters()
}

pub fn primitive_characters(q: u64) -> Result<Vec<DirichletCharacter>> {
    Ok(enumerate_characters(q)?.into_iter().filter(is_primitive).collect())
}

pub fn character(q: u64, label: &[u64]) -> Result<DirichletCharacter> {
    UnitGroup::new(q)?.character(label)
}

/// True iff the conductor equals the modulus.
pub fn is_primitive(chi: &DirichletCharacter) -> bool {
    chi.conductor == chi.modulus
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct GaussSumResult {
    #[serde(with = "crate::complex::serde_re_im")]
    pub value: ComplexValue,
    /// τ(χ) / (i^κ √q).
    #[serde(with = "crate::complex::serde_re_im")]
    pub epsilon_factor: ComplexValue,
    pub magnitude: f64,
}

/// τ(χ) = Σ_{a=1}^{q} χ(a) e^{2πia/q}.
pub fn gauss_sum(chi: &DirichletCharacter) -> GaussSumResult {
    let q = chi.modulus;
    let value = (1..=q)
        .filter(|&a| chi.exponent(a).is_some())
        .map(|a| chi.value(a) * root_of_unity(a as i64, q))
        .collect::<CompensatedSum>()
        .value();
    let i_kappa = if chi.parity == 0 { c(1.0, 0.0) } else { c(0.0, 1.0) };
    GaussSumResult { value, epsilon_factor: value / (i_kappa * (q as f64).sqrt()), magnitude: value.norm() }
}

/// max over 1 <= x <= q of |Σ_{n<=x} χ(n)|.
pub fn partial_sum_max(chi: &DirichletCharacter) -> Result<f64> {
    if chi.is_principal() {
        return domain("partial sums of the principal character grow linearly");
    }
    let mut acc = CompensatedSum::new();
    let mut best = 0.0f64;
    for n in 1..=chi.modulus {
        acc.add(chi.value(n));
        best = best.max(acc.value().norm());
    }
    Ok(best)
}

/// Σ_{n<=x} χ(n) for all x via one period of prefix sums.
pub struct PrefixSums {
    modulus: u64,
    period_total: ComplexValue,
    prefix: Vec<ComplexValue>,
}

impl PrefixSums {
    pub fn new(chi: &DirichletCharacter) -> Self {
        let q = chi.modulus;
        let mut prefix = Vec::with_capacity(q as usize + 1);
        let mut acc = CompensatedSum::new();
        prefix.push(acc.value());
        for n in 1..=q {
            acc.add(chi.value(n));
            prefix.push(acc.value());
        }
        Self { modulus: q, period_total: prefix[q as usize], prefix }
    }

    /// Σ_{1<=n<=x} χ(n).
    pub fn at(&self, x: u64) -> ComplexValue {
        let full = (x / self.modulus) as f64;
        self.period_total * full + self.prefix[(x % self.modulus) as usize]
    }
}

/// Σ over lattice points m <= ξ, mn <= τ of χ₁(m)χ₂(n).
pub fn hyperbola_sum(chi1: &DirichletCharacter, chi2: &DirichletCharacter, tau: f64, xi: f64) -> Result<ComplexValue> {
    if chi1.modulus != chi2.modulus {
        return domain(format!("moduli differ: {} vs {}", chi1.modulus, chi2.modulus));
    }
    if !(xi >= 1.0) || !tau.is_finite() {
        return domain(format!("need ξ >= 1 and finite τ, got τ={tau}, ξ={xi}"));
    }
    if tau < xi {
        return domain(format!("need τ >= ξ, got τ={tau} < ξ={xi}"));
    }
    let inner = PrefixSums::new(chi2);
    let n_tau = tau.floor() as u64;
    let m_max = xi.floor() as u64;
    let mut acc = CompensatedSum::new();
    for m in 1..=m_max {
        let a = chi1.value(m);
        if a.re == 0.0 && a.im == 0.0 {
            continue;
        }
        acc.add(a * inner.at(n_tau / m));
    }
    Ok(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod3_characters() {
        let chars = enumerate_characters(3).unwrap();
        assert_eq!(chars.len(), 2);
        assert!(chars[0].is_principal());
        let chi = &chars[1];
        assert_eq!(chi.value(1), c(1.0, 0.0));
        assert_eq!(chi.value(2), c(-1.0, 0.0));
        assert_eq!(chi.parity(), 1);
        assert!(is_primitive(chi));
        assert!(!is_primitive(&chars[0]));
    }

    #[test]
    fn mod4_nonprincipal_is_odd() {
        let chars = enumerate_characters(4).unwrap();
        assert_eq!(chars.len(), 2);
        assert_eq!(chars[1].value(3), c(-1.0, 0.0));
        assert_eq!(chars[1].parity(), 1);
        assert_eq!(chars[1].value(2), c(0.0, 0.0));
    }

    #[test]
    fn mod8_has_two_primitive() {
        let chars = enumerate_characters(8).unwrap();
        assert_eq!(chars.len(), 4);
        assert_eq!(chars.iter().filter(|c| is_primitive(c)).count(), 2);
        let group = UnitGroup::new(8).unwrap();
        assert_eq!(group.generators(), vec![7, 5]);
    }

    #[test]
    fn induced_from_mod3_is_not_primitive_mod9() {
        // The character mod 9 induced from the quadratic character mod 3 has
        // the same values on units; find it by table comparison.
        let base = &enumerate_characters(3).unwrap()[1];
        let induced: Vec<_> = enumerate_characters(9)
            .unwrap()
            .into_iter()
            .filter(|chi| (1..9u64).filter(|a| a % 3 != 0).all(|a| chi.value(a) == base.value(a)))
            .collect();
        assert_eq!(induced.len(), 1);
        assert!(!is_primitive(&induced[0]));
        assert_eq!(induced[0].conductor(), 3);
    }

    #[test]
    fn gauss_sums_small_moduli() {
        let chi3 = &enumerate_characters(3).unwrap()[1];
        let g = gauss_sum(chi3);
        assert!((g.value - c(0.0, 3f64.sqrt())).norm() < 1e-14);
        assert!((g.epsilon_factor - c(1.0, 0.0)).norm() < 1e-14);
        let chi4 = &enumerate_characters(4).unwrap()[1];
        let g = gauss_sum(chi4);
        assert!((g.value - c(0.0, 2.0)).norm() < 1e-14);
        assert!((g.epsilon_factor - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn partial_sums() {
        let chi3 = &enumerate_characters(3).unwrap()[1];
        assert_eq!(partial_sum_max(chi3).unwrap(), 1.0);
        let chi4 = &enumerate_characters(4).unwrap()[1];
        assert_eq!(partial_sum_max(chi4).unwrap(), 1.0);
        assert!(partial_sum_max(&enumerate_characters(5).unwrap()[0]).is_err());
    }

    #[test]
    fn hyperbola_small_cases() {
        let chi = &enumerate_characters(3).unwrap()[1];
        assert!((hyperbola_sum(chi, chi, 10.0, 3.0).unwrap() - c(1.0, 0.0)).norm() < 1e-14);
        assert_eq!(hyperbola_sum(chi, chi, 1.0, 1.0).unwrap(), c(1.0, 0.0));
        assert!(hyperbola_sum(chi, chi, 2.0, 3.0).is_err());
        let chi4 = &enumerate_characters(4).unwrap()[1];
        assert!(hyperbola_sum(chi, chi4, 10.0, 3.0).is_err());
    }

    #[test]
    fn bad_inputs() {
        assert!(enumerate_characters(1).is_err());
        assert!(character(5, &[4]).is_err());
        assert!(character(8, &[1]).is_err());
        assert_eq!(parse_label("1, 2").unwrap(), vec![1, 2]);
        assert!(parse_label("a").is_err());
    }

    #[test]
    fn conjugate_label_and_values() {
        for chi in enumerate_characters(7).unwrap() {
            let bar = chi.conj();
            for a in 1..7 {
                assert!((bar.value(a) - chi.value(a).conj()).norm() < 1e-15);
            }
            assert_eq!(bar.conj(), chi);
        }
    }
}
