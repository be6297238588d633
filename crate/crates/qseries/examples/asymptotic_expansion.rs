//! Euler-Maclaurin expansions in x = -log q, checked against direct
//! evaluation.

use qseries::euler_maclaurin::{series_expansion, verify_expansion, AsymptoticExpansion};
use qseries::numeric;
use qseries::radial::Grid;
use qseries::series::{EvalOptions, PeriodicCoefficients, PolynomialExponent, SeriesSpec};

fn print_terms(title: &str, e: &AsymptoticExpansion) {
    println!("{title}");
    for t in &e.terms {
        let sym = t
            .symbolic
            .as_ref()
            .map_or(String::new(), |s| format!("  [{s}]"));
        println!(
            "  x^{:<5} {}{sym}",
            e.exponent(t).to_string(),
            numeric::format_real(&t.coefficient.re, 25)
        );
    }
    println!("  + O(x^{})", e.remainder_order);
}

fn main() -> qseries::Result<()> {
    let prec = 256;
    let opts = EvalOptions::with_precision(prec);
    let alt = PeriodicCoefficients::from_reals(&[1.0, -1.0], prec)?;
    let ones = PeriodicCoefficients::from_reals(&[1.0], prec)?;
    let cases = [
        (
            "1/(1+q), m = 3",
            SeriesSpec::polynomial(alt.clone(), PolynomialExponent::from_ints(&[0, 1])?),
            3,
            3,
        ),
        (
            "partial theta",
            SeriesSpec::polynomial(alt, PolynomialExponent::from_ints(&[0, 0, 1])?),
            4,
            4,
        ),
        (
            "sum q^{n^2}",
            SeriesSpec::polynomial(ones.clone(), PolynomialExponent::from_ints(&[0, 0, 1])?),
            4,
            2,
        ),
        (
            "sum q^{n^2+n}",
            SeriesSpec::polynomial(ones, PolynomialExponent::from_ints(&[0, 1, 1])?),
            4,
            4,
        ),
    ];
    let xs = Grid {
        x_min: 1e-3,
        x_max: 1e-2,
        count: 6,
    }
    .points(prec)?;
    for (title, spec, m, w) in cases {
        let e = series_expansion(&spec, m, w, prec)?;
        print_terms(title, &e);
        let v = verify_expansion(&spec, &e, &xs, &opts)?;
        println!(
            "  residual slope {}  ({})\n",
            v.slope.map_or("-".into(), |s| format!("{s:.3}")),
            v.verdict()
        );
    }
    Ok(())
}
