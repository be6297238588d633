use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::{bernoulli_numbers, HpReal};
use crate::{Error, Result};

/// ζ(2m) for m ≥ 1 from the Bernoulli closed form
/// `ζ(2m) = (-1)^{m+1} B_{2m} (2π)^{2m} / (2 (2m)!)`.
pub fn zeta_even(m: u32, prec: u32) -> Result<HpReal> {
    if m == 0 {
        return Err(Error::InvalidArgument("zeta_even requires m >= 1".into()));
    }
    let wp = prec + 32;
    let b = bernoulli_numbers(2 * m as usize).pop().expect("nonempty");
    let fact = Integer::from(Integer::factorial(2 * m));
    let coeff = Rational::from(b.abs()) / (fact * 2u32);
    let two_pi_pow = (super::pi(wp) * 2u32).pow(2 * m);
    Ok(Float::with_val(
        prec,
        Float::with_val(wp, &coeff) * two_pi_pow,
    ))
}

/// `(2 + 2ζ(2m)) / (2π)^{2m}`, the Euler-Maclaurin remainder prefactor.
///
/// Equal to `2/(2π)^{2m} + |B_{2m}|/(2m)!`, which avoids forming the large
/// power twice.
pub fn remainder_prefactor(m: u32, prec: u32) -> Result<HpReal> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "remainder_prefactor requires m >= 1".into(),
        ));
    }
    let wp = prec + 32;
    let b = bernoulli_numbers(2 * m as usize).pop().expect("nonempty");
    let fact = Integer::from(Integer::factorial(2 * m));
    let bern_part = Float::with_val(wp, &(Rational::from(b.abs()) / fact));
    let two_pi_pow = (super::pi(wp) * 2u32).pow(2 * m);
    let geometric = Float::with_val(wp, 2) / two_pi_pow;
    Ok(Float::with_val(prec, bern_part + geometric))
}
