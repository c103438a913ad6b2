//! Compensated accumulation and deterministic reductions.
//!
//! Every long oscillating sum in the crate goes through [`CompensatedSum`]
//! (Neumaier's variant of Kahan summation, applied to both components).
//! Parallel partial results are merged with [`pairwise_sum`], whose tree
//! shape depends only on the number of inputs.

use crate::complex::ComplexValue;
use std::ops::AddAssign;

/// Error-free transformation `a + b = s + e` (Knuth's TwoSum).
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Neumaier-compensated real accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let (s, e) = two_sum(self.sum, x);
        self.sum = s;
        self.comp += e;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated complex accumulator; also tracks the sum of magnitudes so
/// callers can estimate the cancellation they went through.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    re: KahanSum,
    im: KahanSum,
    abs: f64,
    count: u64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: ComplexValue) {
        self.re.add(z.re);
        self.im.add(z.im);
        self.abs += z.re.abs() + z.im.abs();
        self.count += 1;
    }

    pub fn merge(&mut self, other: &CompensatedSum) {
        self.re.add(other.re.sum);
        self.re.add(other.re.comp);
        self.im.add(other.im.sum);
        self.im.add(other.im.comp);
        self.abs += other.abs;
        self.count += other.count;
    }

    pub fn value(&self) -> ComplexValue {
        ComplexValue::new(self.re.value(), self.im.value())
    }

    /// Σ(|re|+|im|) over everything added so far.
    pub fn magnitude(&self) -> f64 {
        self.abs
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// Conservative rounding-error estimate for the accumulated value,
    /// assuming every term carried a relative error of `term_rel_err`.
    pub fn rounding_error(&self, term_rel_err: f64) -> f64 {
        self.abs * term_rel_err + 4.0 * f64::EPSILON * self.value().norm()
    }
}

impl AddAssign<ComplexValue> for CompensatedSum {
    fn add_assign(&mut self, z: ComplexValue) {
        self.add(z);
    }
}

impl FromIterator<ComplexValue> for CompensatedSum {
    fn from_iter<T: IntoIterator<Item = ComplexValue>>(iter: T) -> Self {
        let mut acc = CompensatedSum::new();
        for z in iter {
            acc.add(z);
        }
        acc
    }
}

/// Merges partial accumulators along a fixed binary tree: the result is a
/// function of the slice contents and length only.
pub fn pairwise_merge(parts: &[CompensatedSum]) -> CompensatedSum {
    match parts.len() {
        0 => CompensatedSum::new(),
        1 => parts[0],
        n => {
            let mid = n / 2;
            let mut left = pairwise_merge(&parts[..mid]);
            let right = pairwise_merge(&parts[mid..]);
            left.merge(&right);
            left
        }
    }
}

/// Pairwise (cascade) summation of complex values.
pub fn pairwise_sum(values: &[ComplexValue]) -> ComplexValue {
    match values.len() {
        0 => ComplexValue::new(0.0, 0.0),
        n if n <= 8 => values.iter().copied().collect::<CompensatedSum>().value(),
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::c;

    #[test]
    fn compensation_recovers_lost_bits() {
        let mut acc = KahanSum::new();
        acc.add(1.0);
        for _ in 0..10_000 {
            acc.add(1e-16);
        }
        acc.add(-1.0);
        assert!((acc.value() - 1e-12).abs() < 1e-20, "{}", acc.value());
    }

    #[test]
    fn pairwise_merge_matches_serial() {
        let vals: Vec<_> = (1..=1000).map(|k| c(1.0 / k as f64, (-1f64).powi(k) / k as f64)).collect();
        let serial: CompensatedSum = vals.iter().copied().collect();
        let parts: Vec<CompensatedSum> = vals.chunks(37).map(|ch| ch.iter().copied().collect()).collect();
        let merged = pairwise_merge(&parts);
        assert!((serial.value() - merged.value()).norm() < 1e-15);
        assert_eq!(merged.count(), 1000);
        assert!((pairwise_sum(&vals) - serial.value()).norm() < 1e-14);
    }
}
