//! Certified evaluation of the partial theta series `sum (-1)^n q^{n^2}` as q
//! approaches 1 along the real axis.

use qseries::numeric::{self, HpComplex};
use qseries::series::{
    evaluate, EvalOptions, PeriodicCoefficients, PolynomialExponent, SeriesSpec,
};
use rug::Float;

fn main() -> qseries::Result<()> {
    let prec = 256;
    let spec = SeriesSpec::polynomial(
        PeriodicCoefficients::from_reals(&[1.0, -1.0], prec)?,
        PolynomialExponent::from_ints(&[0, 0, 1])?,
    );
    let opts = EvalOptions::with_precision(prec);
    let eps = numeric::pow2(prec, -200);
    println!(
        "{:>12}  {:>44}  {:>10}  {:>9}",
        "q", "sum", "bound", "terms"
    );
    for q in ["0.5", "0.9", "0.99", "0.999", "0.9999", "0.99999"] {
        let qv = HpComplex::from_real(numeric::parse_decimal(q, prec)?);
        let ev = evaluate(&spec, &qv, &eps, &opts)?;
        println!(
            "{q:>12}  {:>44}  {:>10}  {:>9}",
            numeric::format_real(&ev.value.re, 40),
            numeric::format_real(&Float::with_val(24, ev.error_bound()), 3),
            ev.terms_used
        );
    }
    Ok(())
}
