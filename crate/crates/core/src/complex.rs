//! The scalar type shared by every module, plus CLI/serde helpers.

use crate::error::{Error, Result};
pub use num_complex::Complex64;

/// Complex scalar used throughout the crate. NaN and infinities are error
/// states, never values; see [`ensure_finite`].
pub type ComplexValue = Complex64;

pub const I: ComplexValue = ComplexValue::new(0.0, 1.0);

#[inline]
pub const fn c(re: f64, im: f64) -> ComplexValue {
    ComplexValue::new(re, im)
}

#[inline]
pub fn real(re: f64) -> ComplexValue {
    ComplexValue::new(re, 0.0)
}

pub fn ensure_finite(v: ComplexValue, ctx: &'static str) -> Result<ComplexValue> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(ctx))
    }
}

/// Parses the `RE,IM` notation used on the command line. A bare real
/// number and the `a+bi` form are accepted as well.
pub fn parse_complex(text: &str) -> Result<ComplexValue> {
    let compact: String = text.chars().filter(|ch| !ch.is_whitespace()).collect();
    if !compact.contains(',') && compact.ends_with('i') && !compact.ends_with("inf") {
        return parse_algebraic(&compact, text);
    }
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num =
        |s: &str| -> Result<f64> { s.parse::<f64>().map_err(|e| Error::Parse(format!("bad number {s:?} in {text:?}: {e}"))) };
    let v = match parts.as_slice() {
        [re] => c(num(re)?, 0.0),
        [re, im] => c(num(re)?, num(im)?),
        _ => return Err(Error::Parse(format!("expected RE,IM, got {text:?}"))),
    };
    ensure_finite(v, "parse_complex")
}

fn parse_algebraic(compact: &str, text: &str) -> Result<ComplexValue> {
    let body = &compact[..compact.len() - 1];
    let bytes = body.as_bytes();
    // the sign that starts the imaginary part: not leading, not an exponent sign
    let split = (1..bytes.len()).rev().find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    let num = |s: &str| -> Result<f64> { s.parse::<f64>().map_err(|e| Error::Parse(format!("bad complex {text:?}: {e}"))) };
    ensure_finite(c(num(re)?, num(im)?), "parse_complex")
}

/// Principal-branch power `base^exponent` for a positive real base.
#[inline]
pub fn real_pow(base: f64, exponent: ComplexValue) -> ComplexValue {
    (exponent * base.ln()).exp()
}

/// Relative distance helper used by tolerance checks.
pub fn rel_diff(a: ComplexValue, b: ComplexValue) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

/// Serializes a complex number as `{"re": .., "im": ..}`.
pub mod serde_re_im {
    use super::ComplexValue;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct ReIm {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(v: &ComplexValue, s: S) -> Result<S::Ok, S::Error> {
        ReIm { re: v.re, im: v.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ComplexValue, D::Error> {
        let r = ReIm::deserialize(d)?;
        Ok(ComplexValue::new(r.re, r.im))
    }
}

/// Same as [`serde_re_im`] for optional values.
pub mod serde_opt_re_im {
    use super::ComplexValue;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct ReIm {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(v: &Option<ComplexValue>, s: S) -> Result<S::Ok, S::Error> {
        v.map(|v| ReIm { re: v.re, im: v.im }).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<ComplexValue>, D::Error> {
        Ok(Option::<ReIm>::deserialize(d)?.map(|r| ComplexValue::new(r.re, r.im)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_reals() {
        assert_eq!(parse_complex("0.5,-3").unwrap(), c(0.5, -3.0));
        assert_eq!(parse_complex(" 2 ").unwrap(), c(2.0, 0.0));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("x,1").is_err());
        assert!(parse_complex("inf,0").is_err());
        assert_eq!(parse_complex("0.5+14.1i").unwrap(), c(0.5, 14.1));
        assert_eq!(parse_complex("2 - 3i").unwrap(), c(2.0, -3.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("1e-3+2e+1i").unwrap(), c(1e-3, 20.0));
        assert!(parse_complex("1+xi").is_err());
    }
}
