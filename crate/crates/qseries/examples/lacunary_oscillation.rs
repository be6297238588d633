//! Oscillation of `sum (-1)^n q^{a^n}` near q = 1: the separating inequality,
//! the two subsequences and their cluster values.

use qseries::lacunary::oscillation_report;
use qseries::numeric;
use qseries::series::PeriodicCoefficients;
use rug::Float;

fn main() -> qseries::Result<()> {
    let prec = 256;
    let coeffs = PeriodicCoefficients::from_reals(&[1.0, -1.0], prec)?;
    for a in ["1.1", "2", "10", "100"] {
        let a_val = numeric::parse_decimal(a, prec)?;
        let rep = oscillation_report(&coeffs, &a_val, 8, prec)?;
        let r = &rep.per_residue[0];
        println!(
            "a = {a:<4} M = {:<10} m = {:<10} lower {:<10} upper {:<10} -> {}",
            numeric::format_real(&r.slopes.big_m, 6),
            numeric::format_real(&r.slopes.small_m, 6),
            numeric::format_real(&r.lower_value, 6),
            numeric::format_real(&r.upper_value, 6),
            rep.verdict()
        );
        println!(
            "         clusters {} / {}  separation {}",
            numeric::format_real(&rep.cluster_high.re, 8),
            numeric::format_real(&rep.cluster_low.re, 8),
            numeric::format_real(&rep.separation(), 6)
        );
        if a == "10" {
            for ((q, v), (qp, vp)) in rep.samples_high.iter().zip(&rep.samples_low) {
                let gap = Float::with_val(prec, 1u32 - q);
                let gap_p = Float::with_val(prec, 1u32 - qp);
                println!(
                    "         1-q = {:<12} S = {:<12} | 1-q' = {:<12} S = {}",
                    numeric::format_real(&gap, 4),
                    numeric::format_real(&v.re, 8),
                    numeric::format_real(&gap_p, 4),
                    numeric::format_real(&vp.re, 8)
                );
            }
        }
    }
    Ok(())
}
