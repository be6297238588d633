//! The Euler-Maclaurin remainder estimate as the depth m grows, next to the
//! true error of the truncated expansion.

use qseries::euler_maclaurin::{remainder_bound, series_expansion};
use qseries::numeric;
use qseries::series::{
    evaluate_at_x, EvalOptions, PeriodicCoefficients, PolynomialExponent, SeriesSpec,
};
use rug::Float;

fn main() -> qseries::Result<()> {
    let prec = 256;
    let s = PolynomialExponent::from_ints(&[0, 1, 1])?;
    let spec = SeriesSpec::polynomial(PeriodicCoefficients::from_reals(&[1.0], prec)?, s.clone());
    let x = Float::with_val(prec, 0.1);
    let exact = evaluate_at_x(
        &spec,
        &x,
        &numeric::pow2(prec, -200),
        &EvalOptions::with_precision(prec),
    )?
    .value;
    println!("s = t^2 + t, x = 0.1");
    for m in 1..=8 {
        let bound = remainder_bound(&s, m, &x, prec)?;
        // the boundary part is exact once the Bernoulli sum is complete to order 2m
        let e = series_expansion(&spec, m, 2 * m + 2, prec)?;
        let err = (&exact - &e.eval(&x)).abs();
        println!(
            "m = {m}  bound {:>12}  actual {:>12}",
            numeric::format_real(&bound, 4),
            numeric::format_real(&err, 4)
        );
    }
    Ok(())
}
