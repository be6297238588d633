//! The mean-zero closed form against numerical extrapolation, for one
//! coefficient cycle and several exponent polynomials.

use qseries::numeric;
use qseries::radial::{
    closed_form_limit, default_fit_order, default_grid, extrapolate_limit, RootOfUnity,
};
use qseries::series::{EvalOptions, PeriodicCoefficients, PolynomialExponent, SeriesSpec};

fn main() -> qseries::Result<()> {
    let prec = 256;
    let coeffs = PeriodicCoefficients::from_reals(&[2.0, -1.0, 0.0, -1.0], prec)?;
    let closed = closed_form_limit(&coeffs)?;
    println!("closed form: {}", numeric::format_real(&closed.re, 30));

    let opts = EvalOptions::with_precision(prec);
    for s in [
        vec![0, 1],
        vec![0, 0, 1],
        vec![0, 1, 0, 2],
        vec![1, 0, 3, 0, 0, 1],
    ] {
        let s = PolynomialExponent::from_ints(&s)?;
        let spec = SeriesSpec::polynomial(coeffs.clone(), s.clone());
        let grid = default_grid(&spec, &RootOfUnity::one())?;
        let ex = extrapolate_limit(
            &spec,
            &RootOfUnity::one(),
            &grid,
            default_fit_order(&s),
            &opts,
        )?;
        let diff = (&ex.estimate - &closed).abs();
        println!(
            "s = {:<20} numeric {}  |diff| {}  est {}",
            s.poly().to_string(),
            numeric::format_real(&ex.estimate.re, 20),
            numeric::format_real(&diff, 3),
            numeric::format_real(&ex.error_estimate, 3)
        );
    }
    Ok(())
}
