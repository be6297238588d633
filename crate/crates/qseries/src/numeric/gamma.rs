use rug::Float;

use super::{bernoulli_numbers, HpReal};
use crate::{Error, Result};

/// Γ(x) for real x > 0 with relative error at most 2^{8-prec}.
///
/// The argument is shifted up to z ≥ wp/2 (wp = working precision) and
/// ln Γ(z) is taken from the Stirling series
/// `(z-1/2)ln z - z + ln(2π)/2 + sum_k B_{2k} / (2k(2k-1) z^{2k-1})`.
/// For real z > 0 the series error is bounded by the first omitted term,
/// which the loop drives below 2^{-wp}. The shift is undone with the
/// rising factorial x(x+1)...(x+n-1).
pub fn gamma_hp(x: &HpReal, prec: u32) -> Result<HpReal> {
    if x.is_nan() || *x <= 0 {
        return Err(Error::InvalidArgument(format!(
            "gamma_hp requires a positive argument, got {}",
            super::format_real(x, 20)
        )));
    }
    if x.is_infinite() {
        return Err(Error::InvalidArgument("gamma_hp of infinity".into()));
    }
    let wp = prec + 64;
    let x = Float::with_val(wp, x);
    let z_min = (wp / 2) as f64;

    // shift
    let mut z = x.clone();
    let mut rising = Float::with_val(wp, 1);
    while z.to_f64() < z_min {
        rising *= &z;
        z += 1;
    }

    let half = Float::with_val(wp, 0.5);
    let mut lg = Float::with_val(wp, &z - &half) * Float::with_val(wp, z.ln_ref());
    lg -= &z;
    let two_pi = super::pi(wp) * 2u32;
    lg += two_pi.ln() / 2u32;

    let eps = super::pow2(wp, -(wp as i32));
    let z2 = Float::with_val(wp, z.square_ref());
    let mut zpow = z.clone(); // z^{2k-1}
    let mut bern = bernoulli_numbers(64);
    let mut k = 1usize;
    let mut prev = Float::with_val(wp, f64::INFINITY);
    loop {
        if 2 * k >= bern.len() {
            bern = bernoulli_numbers(4 * k);
        }
        let b = &bern[2 * k];
        let denom = (2 * k * (2 * k - 1)) as u64;
        let mut term = Float::with_val(wp, b) / denom;
        term /= &zpow;
        let mag = Float::with_val(wp, term.abs_ref());
        if mag < eps {
            break;
        }
        // the series is asymptotic; with z ≥ wp/2 the minimal term is far
        // below eps, so growth here means the shift was too small
        assert!(
            mag < prev,
            "Stirling series diverged before reaching precision"
        );
        lg += &term;
        prev = mag;
        zpow *= &z2;
        k += 1;
    }

    let g = lg.exp() / rising;
    Ok(Float::with_val(prec, g))
}
