//! Twisting by a primitive sixth root of unity turns the convergent partial
//! theta limit into a divergent one with leading term `c·x^{-1/2}`.

use qseries::numeric;
use qseries::radial::{classify_radial_limit, twist, RadialLimitResult, RootOfUnity};
use qseries::series::{
    evaluate_at_x, EvalOptions, PeriodicCoefficients, PolynomialExponent, SeriesSpec,
};
use rug::Float;

fn main() -> qseries::Result<()> {
    let prec = 256;
    let s = PolynomialExponent::from_ints(&[0, 0, 1])?;
    let coeffs = PeriodicCoefficients::from_reals(&[1.0, -1.0], prec)?;
    let xi = RootOfUnity::new(1, 6)?;
    let spec = SeriesSpec::polynomial(coeffs.clone(), s.clone());

    let twisted = twist(&coeffs, &s, &xi)?;
    for (n, c) in twisted.values().iter().enumerate() {
        let (re, im) = c.format(12);
        println!("C~({n}) = {re} + {im} i");
    }

    let RadialLimitResult::Diverges {
        leading_term,
        twisted_mean,
    } = classify_radial_limit(&spec, &xi)?
    else {
        unreachable!("nonzero twisted mean");
    };
    let (re, im) = twisted_mean.format(25);
    println!("twisted mean {re} + {im} i");

    let tspec = SeriesSpec::polynomial(twisted, s);
    let opts = EvalOptions::with_precision(prec);
    let eps = numeric::pow2(prec, -128);
    let mut prev: Option<(f64, f64)> = None;
    for x in [1e-2f64, 1e-3, 1e-4, 1e-5] {
        let xv = Float::with_val(prec, x);
        let v = evaluate_at_x(&tspec, &xv, &eps, &opts)?.value;
        let lead = leading_term
            .coefficient
            .scale(&Float::with_val(prec, x.powf(-0.5)));
        let mag = v.abs().to_f64();
        let slope = prev.map(|(px, pm)| (mag / pm).ln() / (x / px).ln());
        println!(
            "x = {x:e}  |S| = {mag:.6}  |S - lead| = {:.3e}  local slope {}",
            (&v - &lead).abs().to_f64(),
            slope.map_or("-".into(), |s| format!("{s:.4}"))
        );
        prev = Some((x, mag));
    }
    Ok(())
}
