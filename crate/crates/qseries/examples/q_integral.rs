//! The q-integral of x^c and the rectangle sums
//! `sum q^{y(n)}(q^{x(n)} - q^{x(n+1)})` with their integral squeeze.

use qseries::numeric;
use qseries::poly::RatPoly;
use qseries::qintegral::{extrapolate_lemma, lemma_limit, lemma_sum, q_integral_power, LemmaPair};
use qseries::radial::Grid;
use qseries::series::EvalOptions;
use rug::Float;

fn main() -> qseries::Result<()> {
    let prec = 256;
    let c = numeric::pi(prec);
    for h in [1e-2, 1e-4, 1e-6] {
        let q = Float::with_val(prec, 1u32 - numeric::real(prec, h));
        let v = q_integral_power(&c, &q)?;
        println!(
            "q = 1 - {h:e}: q-integral of x^pi = {}",
            numeric::format_real(&v, 20)
        );
    }
    println!(
        "1/(1+pi)                    = {}\n",
        numeric::format_real(&(Float::with_val(prec, &c + 1u32).recip()), 20)
    );

    let opts = EvalOptions::with_precision(prec);
    let eps = numeric::pow2(prec, -100);
    for (x, y) in [
        ("t", "2t"),
        ("t^2", "3t^2"),
        ("t^2+t", "t^2-1"),
        ("t^3", "2t^3+t"),
    ] {
        let pair = LemmaPair::from_polys(RatPoly::parse(x)?, RatPoly::parse(y)?, prec)?;
        let q = Float::with_val(prec, 0.999);
        let r = lemma_sum(&pair, &q, &eps, &opts)?;
        let d = pair.x_poly.degree();
        let ex = extrapolate_lemma(&pair, &Grid::for_degree(d), 2 * d, &opts)?;
        println!(
            "x = {x:<6} y = {y:<7} sum(0.999) {}  squeeze {} <= {} <= {}  limit {}  extrapolated {}",
            numeric::format_real(&r.sum, 8),
            numeric::format_real(&r.lower_int, 8),
            numeric::format_real(&r.tail_sum, 8),
            numeric::format_real(&r.upper_int, 8),
            numeric::format_real(&lemma_limit(&pair), 8),
            numeric::format_real(&ex.estimate, 8),
        );
    }
    Ok(())
}
