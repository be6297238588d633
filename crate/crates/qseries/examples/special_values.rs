//! Bernoulli numbers, Gamma at fractions and the Euler-Maclaurin remainder
//! prefactor `(2 + 2ζ(2m))/(2π)^{2m}`.

use qseries::numeric::{self, bernoulli_numbers, gamma_hp, remainder_prefactor};
use rug::Float;

fn main() -> qseries::Result<()> {
    let prec = 256;
    let b = bernoulli_numbers(30);
    for (i, v) in b.iter().enumerate().filter(|(i, _)| i % 2 == 0) {
        println!("B_{i:<2} = {v}");
    }

    for (num, den) in [(1, 1), (1, 2), (1, 3), (2, 3), (1, 5)] {
        let x = Float::with_val(prec, num) / den;
        println!(
            "Gamma({num}/{den}) = {}",
            numeric::format_real(&gamma_hp(&x, prec)?, 40)
        );
    }

    for m in 1..=6 {
        println!(
            "prefactor({m}) = {}",
            numeric::format_real(&remainder_prefactor(m, prec)?, 20)
        );
    }
    Ok(())
}
