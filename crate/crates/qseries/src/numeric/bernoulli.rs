use std::sync::{Mutex, OnceLock};

use rug::{Integer, Rational};

fn cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::from(1)]))
}

/// Exact Bernoulli numbers `B_0..=B_{n_max}` from the recurrence
/// `sum_{k=0}^{n} binom(n+1, k) B_k = 0`.
///
/// This convention gives `B_1 = -1/2`. Downstream code only reads the even
/// indices, where every convention agrees.
pub fn bernoulli_numbers(n_max: usize) -> Vec<Rational> {
    let mut table = cache().lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= n_max {
        let n = table.len();
        let mut acc = Rational::new();
        let mut binom = Integer::from(1); // binom(n+1, 0)
        for (k, b) in table.iter().enumerate() {
            acc += Rational::from(&binom * b.numer()) / b.denom();
            binom *= (n + 1 - k) as u64;
            binom /= (k + 1) as u64;
        }
        // binom now equals binom(n+1, n) = n+1
        let bn = -acc / Rational::from(binom);
        table.push(bn);
    }
    table[..=n_max].to_vec()
}

/// `sum_{k=0}^{n} binom(n+1, k) B_k` for the supplied table, for every n.
/// Each entry is zero when the table satisfies the defining recurrence.
pub fn bernoulli_checksum(table: &[Rational]) -> Vec<Rational> {
    (1..table.len())
        .map(|n| {
            let mut acc = Rational::new();
            for (k, b) in table.iter().enumerate().take(n + 1) {
                let binom = Integer::from(Integer::binomial_u(n as u32 + 1, k as u32));
                acc += binom * b.clone();
            }
            acc
        })
        .collect()
}
