//! Radial limit of `sum q^{n^3}` at a primitive cube root of unity ω.
//!
//! The twisted cycle is (1, ω, ω²); the closed form predicts (2+ω)/3, and the
//! extrapolated value settles the comparison with the value `-ω - 2/3`.

use qseries::numeric::{self, HpComplex};
use qseries::radial::{closed_form_limit, default_grid, extrapolate_limit, twist, RootOfUnity};
use qseries::series::{EvalOptions, PeriodicCoefficients, PolynomialExponent, SeriesSpec};
use rug::Float;

fn show(label: &str, z: &HpComplex) {
    let (re, im) = z.format(20);
    println!("{label:<22} {re} + {im} i");
}

fn main() -> qseries::Result<()> {
    let prec = 256;
    let s = PolynomialExponent::from_ints(&[0, 0, 0, 1])?;
    let ones = PeriodicCoefficients::from_reals(&[1.0], prec)?;
    let xi = RootOfUnity::new(1, 3)?;
    let omega = xi.value(prec);

    let closed = closed_form_limit(&twist(&ones, &s, &xi)?)?;
    let spec = SeriesSpec::polynomial(ones, s.clone());
    let ex = extrapolate_limit(
        &spec,
        &xi,
        &default_grid(&spec, &xi)?,
        6,
        &EvalOptions::with_precision(prec),
    )?;

    let two = HpComplex::from_real(Float::with_val(prec, 2));
    let third = Float::with_val(prec, 3);
    let predicted = (&two + &omega).div_real(&third);
    let printed = -(&omega + &HpComplex::from_real(Float::with_val(prec, 2) / 3u32));

    show("closed form", &closed);
    show("(2+w)/3", &predicted);
    show("extrapolated", &ex.estimate);
    show("-w - 2/3", &printed);
    println!(
        "|extrapolated - closed|   {}",
        numeric::format_real(&(&ex.estimate - &closed).abs(), 3)
    );
    println!(
        "|extrapolated - printed|  {}",
        numeric::format_real(&(&ex.estimate - &printed).abs(), 3)
    );
    Ok(())
}
