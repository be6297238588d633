//! Univariate polynomials with exact rational coefficients.

use std::fmt;

use rug::{Float, Integer, Rational};

use crate::{Error, Result};

/// Polynomial `c_0 + c_1 t + ... + c_n t^n`, stored without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c·t^e`.
    pub fn monomial(c: Rational, e: usize) -> Self {
        let mut v = vec![Rational::new(); e + 1];
        v[e] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| *c.denom() == 1)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= t;
            acc += c;
        }
        acc
    }

    pub fn eval_int(&self, n: &Integer) -> Rational {
        self.eval(&Rational::from(n))
    }

    pub fn eval_u64(&self, n: u64) -> Rational {
        self.eval(&Rational::from(n))
    }

    /// Horner evaluation at a float argument.
    pub fn eval_float(&self, t: &Float, prec: u32) -> Float {
        let mut acc = Float::new(prec);
        for c in self.coeffs.iter().rev() {
            acc *= t;
            acc += Float::with_val(prec, c);
        }
        acc
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| Rational::from(c * i as u64))
                .collect(),
        )
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        self.add(&other.scale(&Rational::from(-1)))
    }

    pub fn scale(&self, k: &Rational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| Rational::from(c * k)).collect())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::new(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        RatPoly::new(out)
    }

    /// `p(k·t + j)`, expanded by Horner's scheme in exact arithmetic.
    pub fn compose_affine(&self, k: &Rational, j: &Rational) -> RatPoly {
        let inner = RatPoly::new(vec![j.clone(), k.clone()]);
        let mut acc = RatPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&inner).add(&RatPoly::constant(c.clone()));
        }
        acc
    }

    /// `p(t + 1) - p(t)`.
    pub fn forward_difference(&self) -> RatPoly {
        self.compose_affine(&Rational::from(1), &Rational::from(1))
            .sub(self)
    }

    /// The polynomial `S` with `S(n) = sum_{l=0}^{n-1} p(l)` for all n ≥ 0.
    pub fn indefinite_sum(&self) -> RatPoly {
        let Some(deg) = self.degree() else {
            return RatPoly::zero();
        };
        // S has degree deg+1; interpolate through n = 0..=deg+1
        let nodes: Vec<Rational> = (0..=deg as u64 + 1).map(Rational::from).collect();
        let mut values = Vec::with_capacity(nodes.len());
        let mut running = Rational::new();
        for n in 0..=deg as u64 + 1 {
            values.push(running.clone());
            running += self.eval_u64(n);
        }
        lagrange_interpolate(&nodes, &values)
    }

    /// An integer `B ≥ 0` such that every real root of `p` lies below `B`
    /// (Cauchy's bound `1 + max |c_i / c_n|`). Zero for constants.
    pub fn root_bound(&self) -> u64 {
        let Some(deg) = self.degree() else {
            return 0;
        };
        if deg == 0 {
            return 0;
        }
        let lead = Rational::from(self.leading().abs_ref());
        let mut max = Rational::new();
        for c in &self.coeffs[..deg] {
            let r = Rational::from(c.abs_ref()) / &lead;
            if r > max {
                max = r;
            }
        }
        let bound = max + 1u32;
        let ceil = Integer::from(bound.ceil_ref());
        ceil.to_u64().unwrap_or(u64::MAX)
    }

    /// First integer `N ≥ 0` such that `p` is positive and strictly increasing
    /// on the real half-line `[N, ∞)`. Requires a positive leading
    /// coefficient and degree ≥ 1.
    pub fn eventually_increasing_from(&self) -> u64 {
        let d = self.derivative();
        self.root_bound().max(d.root_bound())
    }

    /// Parses expressions like `3t^2 + t - 1/2`, `2*t^3+t`, `t`, `7`.
    pub fn parse(expr: &str) -> Result<RatPoly> {
        let cleaned: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::InvalidArgument("empty polynomial".into()));
        }
        let bad = || Error::InvalidArgument(format!("cannot parse polynomial {expr:?}"));
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with(['e', 'E', '^']) {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && i == 0 {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        terms.push((neg, cur));
        let mut out = RatPoly::zero();
        for (neg, term) in terms {
            if term.is_empty() {
                return Err(bad());
            }
            let (coef_str, power) = match term.find(['t', 'n', 'x']) {
                Some(pos) => {
                    let coef = term[..pos].trim_end_matches('*');
                    let rest = &term[pos + 1..];
                    let power = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|p| p.parse::<usize>().ok())
                            .ok_or_else(bad)?
                    };
                    (coef, power)
                }
                None => (term.as_str(), 0),
            };
            let mut c = if coef_str.is_empty() {
                Rational::from(1)
            } else {
                crate::numeric::parse_rational(coef_str).map_err(|_| bad())?
            };
            if neg {
                c = -c;
            }
            out = out.add(&RatPoly::monomial(c, power));
        }
        Ok(out)
    }
}

/// Exact Lagrange interpolation through `(nodes[i], values[i])`.
pub fn lagrange_interpolate(nodes: &[Rational], values: &[Rational]) -> RatPoly {
    let mut out = RatPoly::zero();
    for (i, xi) in nodes.iter().enumerate() {
        let mut basis = RatPoly::constant(Rational::from(1));
        let mut denom = Rational::from(1);
        for (j, xj) in nodes.iter().enumerate() {
            if i != j {
                basis = basis.mul(&RatPoly::new(vec![-xj.clone(), Rational::from(1)]));
                denom *= Rational::from(xi - xj);
            }
        }
        out = out.add(&basis.scale(&(values[i].clone() / denom)));
    }
    out
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let neg = *c < 0;
            let abs = Rational::from(c.abs_ref());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match i {
                0 => write!(f, "{abs}")?,
                _ => {
                    if abs != 1 {
                        write!(f, "{abs}*")?;
                    }
                    write!(f, "t")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn evaluation_and_derivative() {
        let p = RatPoly::from_ints(&[0, 1, 0, 2]); // 2t^3 + t
        assert_eq!(p.eval_u64(2), 18);
        assert_eq!(p.derivative(), RatPoly::from_ints(&[1, 0, 6]));
        assert_eq!(p.degree(), Some(3));
        assert_eq!(RatPoly::from_ints(&[0, 0, 0]).degree(), None);
    }

    #[test]
    fn affine_composition() {
        let s = RatPoly::from_ints(&[0, 0, 1]); // t^2
        let sj = s.compose_affine(&Rational::from(2), &Rational::from(1));
        assert_eq!(sj, RatPoly::from_ints(&[1, 4, 4]));
    }

    #[test]
    fn indefinite_sum_of_powers() {
        // sum_{l<n} l = n(n-1)/2
        let s = RatPoly::from_ints(&[0, 1]).indefinite_sum();
        assert_eq!(s, RatPoly::new(vec![r(0, 1), r(-1, 2), r(1, 2)]));
        let cubes = RatPoly::from_ints(&[0, 0, 0, 1]).indefinite_sum();
        for n in 0..10u64 {
            let direct: u64 = (0..n).map(|l| l * l * l).sum();
            assert_eq!(cubes.eval_u64(n), direct);
        }
    }

    #[test]
    fn parse_and_display() {
        let p = RatPoly::parse("3t^5 + t + 7").unwrap();
        assert_eq!(p, RatPoly::from_ints(&[7, 1, 0, 0, 0, 3]));
        let q = RatPoly::parse("-1/2*t^2 - t").unwrap();
        assert_eq!(q, RatPoly::new(vec![r(0, 1), r(-1, 1), r(-1, 2)]));
        assert_eq!(RatPoly::parse(&q.to_string()).unwrap(), q);
        assert_eq!(
            RatPoly::parse("n^2").unwrap(),
            RatPoly::from_ints(&[0, 0, 1])
        );
        assert!(RatPoly::parse("t^").is_err());
        assert!(RatPoly::parse("").is_err());
    }

    #[test]
    fn eventually_increasing_index() {
        let p = RatPoly::from_ints(&[5, -6, 1]); // roots 1, 5; increasing past 3
        let n0 = p.eventually_increasing_from();
        assert!(n0 >= 5);
        for n in n0..n0 + 20 {
            assert!(p.eval_u64(n) > 0);
            assert!(p.eval_u64(n + 1) > p.eval_u64(n));
        }
    }

    proptest! {
        #[test]
        fn root_bound_dominates_positive_region(c in proptest::collection::vec(-9i64..=9, 1..5), lead in 1i64..=9) {
            let mut coeffs = c.clone();
            coeffs.push(lead);
            let p = RatPoly::from_ints(&coeffs);
            let n0 = p.eventually_increasing_from();
            for n in n0..n0 + 10 {
                prop_assert!(p.eval_u64(n) > 0);
                prop_assert!(p.eval_u64(n + 1) > p.eval_u64(n));
            }
        }

        #[test]
        fn forward_difference_matches_values(c in proptest::collection::vec(-20i64..=20, 1..6), n in 0u64..50) {
            let p = RatPoly::from_ints(&c);
            let d = p.forward_difference();
            prop_assert_eq!(d.eval_u64(n), p.eval_u64(n + 1) - p.eval_u64(n));
        }
    }
}
