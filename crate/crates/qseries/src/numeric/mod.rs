//! Precision-parameterized real and complex arithmetic plus the special
//! values the rest of the crate consumes: Bernoulli numbers, the Gamma
//! function on the positive reals and the even zeta values that enter the
//! Euler-Maclaurin remainder.
//!
//! Reals are MPFR floats ([`rug::Float`]); every constructor takes the
//! precision in bits explicitly.

mod bernoulli;
mod complex;
mod gamma;
pub mod linalg;
pub mod quadrature;
mod zeta;

pub use bernoulli::{bernoulli_checksum, bernoulli_numbers};
pub use complex::HpComplex;
pub use gamma::gamma_hp;
pub use rug::{Integer, Rational};
pub use zeta::{remainder_prefactor, zeta_even};

use rug::ops::Pow;
use rug::Float;

/// Arbitrary-precision real. Carries its own precision in bits.
pub type HpReal = Float;

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 256;

pub fn real(prec: u32, v: f64) -> HpReal {
    Float::with_val(prec, v)
}

pub fn zero(prec: u32) -> HpReal {
    Float::new(prec)
}

pub fn from_rational(r: &Rational, prec: u32) -> HpReal {
    Float::with_val(prec, r)
}

pub fn from_integer(n: &Integer, prec: u32) -> HpReal {
    Float::with_val(prec, n)
}

pub fn pi(prec: u32) -> HpReal {
    Float::with_val(prec, rug::float::Constant::Pi)
}

/// 2^e at the given precision.
pub fn pow2(prec: u32, e: i32) -> HpReal {
    Float::with_val(prec, 1) << e
}

/// Parses a decimal string (`"1.25"`, `"-3e-4"`) at the given precision.
pub fn parse_decimal(s: &str, prec: u32) -> crate::Result<HpReal> {
    let parsed = Float::parse(s.trim())
        .map_err(|e| crate::Error::InvalidArgument(format!("bad decimal {s:?}: {e}")))?;
    Ok(Float::with_val(prec, parsed))
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"0.25"` as an exact rational.
pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    let t = s.trim();
    if let Ok(r) = t.parse::<Rational>() {
        return Ok(r);
    }
    // finite decimal, optionally with exponent
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = t[i + 1..]
                .parse()
                .map_err(|_| crate::Error::InvalidArgument(format!("bad rational {s:?}")))?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((a, b)) => (a, b),
        None => (body, ""),
    };
    let digits: String = format!("{int_part}{frac_part}");
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(crate::Error::InvalidArgument(format!("bad rational {s:?}")));
    }
    let mut r = Rational::from(digits.parse::<Integer>().unwrap());
    let shift = exp - frac_part.len() as i32;
    let ten = Integer::from(10).pow(shift.unsigned_abs());
    if shift >= 0 {
        r *= ten;
    } else {
        r /= ten;
    }
    if neg {
        r = -r;
    }
    Ok(r)
}

/// Formats a real with `digits` significant decimal digits in scientific notation.
pub fn format_real(x: &HpReal, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits))
}

/// Number of decimal digits carried by `prec` bits.
pub fn decimal_digits(prec: u32) -> usize {
    ((prec as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as usize
}

/// Relative distance |a-b|/max(|a|,|b|), or the absolute distance when both are zero-ish.
pub fn rel_diff(a: &HpReal, b: &HpReal) -> HpReal {
    let prec = a.prec().max(b.prec());
    let diff = Float::with_val(prec, a - b).abs();
    let scale = Float::with_val(prec, a.abs_ref()).max(&Float::with_val(prec, b.abs_ref()));
    if scale.is_zero() {
        diff
    } else {
        diff / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), Rational::from((1, 2)));
        assert_eq!(parse_rational("-7").unwrap(), Rational::from(-7));
        assert_eq!(parse_rational("0.25").unwrap(), Rational::from((1, 4)));
        assert_eq!(parse_rational("-1.5e2").unwrap(), Rational::from(-150));
        assert_eq!(parse_rational("2.5e-1").unwrap(), Rational::from((1, 4)));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn decimal_parse_uses_requested_precision() {
        let x = parse_decimal("0.1", 300).unwrap();
        assert_eq!(x.prec(), 300);
        let y = Float::with_val(300, Float::parse("0.1").unwrap());
        assert_eq!(x, y);
    }
}
