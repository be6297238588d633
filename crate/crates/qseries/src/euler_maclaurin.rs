//! Asymptotic expansions of `sum C(n) q^{s(n)}` in `x = -log q` from Euler's
//! summation formula.
//!
//! Derivatives are `f^{(k)}(t) = P_k(λ, t)·q^{s(t)}` with `λ = log q`, and
//! `P_{k+1} = ∂_t P_k + λ s'(t) P_k`. The integral `∫_0^∞ q^{s(t)} dt`
//! becomes a series in `x^{1/d}` after `u = x a_d t^d`. Every term is
//! normalised onto the lattice `ℓ/d`, ℓ ≥ -1.
//!
//! Single-polynomial coefficients are also kept exactly as
//! `r·Γ(l/d)·A^{-l/d}` with `r` rational, `A` the leading coefficient and
//! `1 ≤ l ≤ d`; at integer exponents `l = d` and the coefficient is rational.

use std::collections::BTreeMap;
use std::fmt;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::numeric::{
    self, bernoulli_numbers, gamma_hp, quadrature, remainder_prefactor, HpComplex, HpReal,
};
use crate::poly::RatPoly;
use crate::series::{self, EvalOptions, PolynomialExponent, SeriesSpec};
use crate::{Error, Result};

/// `P_k(λ, t)` as a map `(λ-power, t-power) -> coefficient`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativePolynomial {
    pub order: usize,
    pub terms: BTreeMap<(usize, usize), Rational>,
}

impl DerivativePolynomial {
    fn from_slices(order: usize, slices: &[RatPoly]) -> Self {
        let mut terms = BTreeMap::new();
        for (r, p) in slices.iter().enumerate() {
            for (e, c) in p.coeffs().iter().enumerate() {
                if *c != 0 {
                    terms.insert((r, e), c.clone());
                }
            }
        }
        DerivativePolynomial { order, terms }
    }

    /// Coefficient of `λ^r` as a polynomial in t.
    pub fn slice(&self, r: usize) -> RatPoly {
        let deg = self
            .terms
            .keys()
            .filter(|(rr, _)| *rr == r)
            .map(|(_, e)| *e)
            .max();
        let Some(deg) = deg else {
            return RatPoly::zero();
        };
        let mut coeffs = vec![Rational::new(); deg + 1];
        for ((rr, e), c) in &self.terms {
            if *rr == r {
                coeffs[*e] = c.clone();
            }
        }
        RatPoly::new(coeffs)
    }

    pub fn max_lambda_power(&self) -> Option<usize> {
        self.terms.keys().map(|(r, _)| *r).max()
    }

    /// `P_k(-x, 0)` as a polynomial in x.
    pub fn at_origin_in_x(&self) -> RatPoly {
        let mut coeffs = Vec::new();
        for ((r, e), c) in &self.terms {
            if *e == 0 {
                if coeffs.len() <= *r {
                    coeffs.resize(*r + 1, Rational::new());
                }
                coeffs[*r] += if r % 2 == 0 {
                    c.clone()
                } else {
                    Rational::from(-c)
                };
            }
        }
        RatPoly::new(coeffs)
    }

    pub fn eval(&self, lambda: &HpReal, t: &HpReal, prec: u32) -> HpReal {
        let mut acc = Float::new(prec);
        let mut by_r: BTreeMap<usize, HpReal> = BTreeMap::new();
        for ((r, e), c) in &self.terms {
            let term = Float::with_val(prec, c) * Float::with_val(prec, t.pow(*e as u32));
            *by_r.entry(*r).or_insert_with(|| Float::new(prec)) += term;
        }
        for (r, v) in by_r {
            acc += v * Float::with_val(prec, lambda.pow(r as u32));
        }
        acc
    }
}

/// `P_0, ..., P_K`.
pub fn derivative_polynomials(s: &PolynomialExponent, k_max: usize) -> Vec<DerivativePolynomial> {
    let ds = s.poly().derivative();
    let mut slices = vec![RatPoly::constant(Rational::from(1))];
    let mut out = vec![DerivativePolynomial::from_slices(0, &slices)];
    for k in 1..=k_max {
        let mut next = vec![RatPoly::zero(); slices.len() + 1];
        for (r, p) in slices.iter().enumerate() {
            next[r] = next[r].add(&p.derivative());
            next[r + 1] = next[r + 1].add(&p.mul(&ds));
        }
        slices = next;
        out.push(DerivativePolynomial::from_slices(k, &slices));
    }
    out
}

/// Exact form `rational · Γ(l/d) · lead^{-l/d}` of a single-polynomial
/// coefficient; `gamma_l == None` means the plain rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicCoefficient {
    pub rational: Rational,
    pub gamma_l: Option<u32>,
    pub d: u32,
    pub lead: Rational,
}

impl SymbolicCoefficient {
    fn value(&self, prec: u32) -> Result<HpReal> {
        let wp = prec + 32;
        let mut v = Float::with_val(wp, &self.rational);
        if let Some(l) = self.gamma_l {
            let z = Float::with_val(wp, l) / self.d;
            v *= gamma_hp(&z, wp)?;
            let a = Float::with_val(wp, &self.lead);
            v /= a.pow(&z);
        }
        Ok(Float::with_val(prec, v))
    }
}

impl fmt::Display for SymbolicCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gamma_l {
            None => write!(f, "{}", self.rational),
            Some(_) if self.rational == 0 => write!(f, "0"),
            Some(l) => write!(
                f,
                "{}*Gamma({}/{})*({})^(-{}/{})",
                self.rational, l, self.d, self.lead, l, self.d
            ),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExpansionTerm {
    /// Exponent of x is `lattice / d`.
    pub lattice: i64,
    pub coefficient: HpComplex,
    pub symbolic: Option<SymbolicCoefficient>,
}

#[derive(Clone, Debug)]
pub struct AsymptoticExpansion {
    pub denominator_degree: usize,
    /// Strictly increasing lattice positions.
    pub terms: Vec<ExpansionTerm>,
    /// Highest lattice position retained.
    pub order: i64,
    /// Exponent of x in the O( ) of the remainder.
    pub remainder_order: Rational,
}

impl AsymptoticExpansion {
    pub fn exponent(&self, term: &ExpansionTerm) -> Rational {
        Rational::from((term.lattice, self.denominator_degree as i64))
    }

    pub fn term(&self, lattice: i64) -> Option<&ExpansionTerm> {
        self.terms.iter().find(|t| t.lattice == lattice)
    }

    /// Coefficient at `x^{lattice/d}`, zero when absent.
    pub fn coefficient(&self, lattice: i64, prec: u32) -> HpComplex {
        self.term(lattice)
            .map_or_else(|| HpComplex::zero(prec), |t| t.coefficient.clone())
    }

    pub fn eval(&self, x: &HpReal) -> HpComplex {
        let prec = x.prec();
        let lx = Float::with_val(prec, x.ln_ref());
        let mut acc = HpComplex::zero(prec);
        for t in &self.terms {
            let p = (Float::with_val(prec, &lx * t.lattice) / self.denominator_degree as u32).exp();
            acc.add_scaled(&t.coefficient.clone().with_prec(prec), &p);
        }
        acc
    }
}

/// Accumulates exact and numeric contributions per lattice position.
struct Accumulator {
    d: usize,
    prec: u32,
    entries: BTreeMap<i64, (HpComplex, Option<Option<SymbolicCoefficient>>)>,
}

impl Accumulator {
    fn new(d: usize, prec: u32) -> Self {
        Accumulator {
            d,
            prec,
            entries: BTreeMap::new(),
        }
    }

    fn add(&mut self, lattice: i64, value: HpComplex, symbolic: Option<SymbolicCoefficient>) {
        let e = self
            .entries
            .entry(lattice)
            .or_insert((HpComplex::zero(self.prec), None));
        e.0 += &value;
        e.1 = match (e.1.take(), symbolic) {
            (None, s) => Some(s),
            (Some(Some(a)), Some(b)) if a.gamma_l == b.gamma_l && a.lead == b.lead => {
                Some(Some(SymbolicCoefficient {
                    rational: a.rational + b.rational,
                    ..a
                }))
            }
            _ => Some(None),
        };
    }

    fn finish(self, lo: i64, hi: i64, remainder_order: Rational) -> AsymptoticExpansion {
        let mut entries = self.entries;
        let terms = (lo..=hi)
            .map(|l| {
                let (coefficient, symbolic) = entries
                    .remove(&l)
                    .unwrap_or((HpComplex::zero(self.prec), None));
                ExpansionTerm {
                    lattice: l,
                    coefficient,
                    symbolic: symbolic.flatten(),
                }
            })
            .collect();
        AsymptoticExpansion {
            denominator_degree: self.d,
            terms,
            order: hi,
            remainder_order,
        }
    }
}

fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// Multi-indices `(m_1..m_d)` with `sum i·m_i == w`.
fn compositions(d: usize, w: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, d: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i > d {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for m in 0..=left / i {
            cur.push(m);
            go(i + 1, d, left - m * i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, d, w, &mut Vec::new(), &mut out);
    out
}

/// Exact coefficients of `∫_0^∞ q^{s(t)} dt` at lattice `w - 1`, w = 0..=W.
fn integral_symbolic(s: &PolynomialExponent, w_max: usize) -> Vec<(i64, SymbolicCoefficient)> {
    let d = s.degree();
    let lead = s.leading();
    let b: Vec<Rational> = (1..=d).map(|i| s.poly().coeff(d - i)).collect();
    let mut out = Vec::new();
    for w in 0..=w_max {
        let mut total = Rational::new();
        // l ≡ 1 - w (mod d), reduced into 1..=d
        let l0 = (1 - w as i64).rem_euclid(d as i64) as u32;
        let l0 = if l0 == 0 { d as u32 } else { l0 };
        for m in compositions(d, w) {
            let mut r = Rational::from((1, d as u32));
            let mut l = 1u32;
            let mut skip = false;
            for (idx, &mi) in m.iter().enumerate() {
                if mi == 0 {
                    continue;
                }
                let bi = &b[idx];
                if *bi == 0 {
                    skip = true;
                    break;
                }
                let neg = Rational::from(-bi);
                r *= neg.pow(mi as i32);
                r /= factorial(mi as u32);
                l += ((d - idx - 1) * mi) as u32;
            }
            if skip {
                continue;
            }
            // Γ(l/d) A^{-l/d} = Γ(l0/d) A^{-l0/d} · (l0/d)_n · A^{-n}
            let n = (l - l0) / d as u32;
            for i in 0..n {
                r *= Rational::from((l0 + i * d as u32, d as u32));
            }
            r /= Rational::from(lead.clone().pow(n as i32));
            total += r;
        }
        let sym = if l0 as usize == d {
            // Γ(1)·A^{-1}
            SymbolicCoefficient {
                rational: total / &lead,
                gamma_l: None,
                d: d as u32,
                lead: lead.clone(),
            }
        } else {
            SymbolicCoefficient {
                rational: total,
                gamma_l: Some(l0),
                d: d as u32,
                lead: lead.clone(),
            }
        };
        out.push((w as i64 - 1, sym));
    }
    out
}

/// `∫_0^∞ q^{s(t)} dt` through lattice `W - 1` (exponents `(w-1)/d`, w ≤ W).
pub fn integral_expansion(
    s: &PolynomialExponent,
    w_max: usize,
    prec: u32,
) -> Result<AsymptoticExpansion> {
    let d = s.degree();
    let mut acc = Accumulator::new(d, prec);
    for (l, sym) in integral_symbolic(s, w_max) {
        acc.add(l, HpComplex::from_real(sym.value(prec)?), Some(sym));
    }
    Ok(acc.finish(
        -1,
        w_max as i64 - 1,
        Rational::from((w_max as i64, d as i64)),
    ))
}

fn boundary_rationals(s: &PolynomialExponent, m: usize, w_max: usize) -> Result<Vec<Rational>> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "Euler-Maclaurin depth m must be >= 1".into(),
        ));
    }
    let derivs = derivative_polynomials(s, 2 * m - 1);
    let bern = bernoulli_numbers(2 * m);
    // 1/2 - sum B_2k/(2k)! P_{2k-1}(-x, 0)
    let mut bracket = RatPoly::constant(Rational::from((1, 2)));
    for k in 1..m {
        let c = Rational::from(&bern[2 * k]) / factorial(2 * k as u32);
        bracket = bracket.sub(&derivs[2 * k - 1].at_origin_in_x().scale(&c));
    }
    // e^{-s(0) x}
    let s0 = s.poly().coeff(0);
    let mut exp_series = Vec::with_capacity(w_max + 1);
    let mut term = Rational::from(1);
    for i in 0..=w_max {
        exp_series.push(term.clone());
        term *= Rational::from(-&s0);
        term /= (i + 1) as u32;
    }
    let product = bracket.mul(&RatPoly::new(exp_series));
    Ok((0..=w_max).map(|i| product.coeff(i)).collect())
}

/// `q^{s(0)}[1/2 - sum_{k<m} B_2k/(2k)! P_{2k-1}(-x, 0)]` through `x^W`.
pub fn boundary_terms(
    s: &PolynomialExponent,
    m: usize,
    w_max: usize,
    prec: u32,
) -> Result<AsymptoticExpansion> {
    let d = s.degree();
    let mut acc = Accumulator::new(d, prec);
    for (i, c) in boundary_rationals(s, m, w_max)?.into_iter().enumerate() {
        let v = HpComplex::from_real(Float::with_val(prec, &c));
        let sym = SymbolicCoefficient {
            rational: c,
            gamma_l: None,
            d: d as u32,
            lead: s.leading(),
        };
        acc.add((i * d) as i64, v, Some(sym));
    }
    let omitted = Rational::from((2 * m as i64 - 1, d as i64)).ceil();
    let rem = omitted.min(Rational::from(w_max as i64 + 1));
    let mut expansion = acc.finish(0, (w_max * d) as i64, rem);
    expansion.terms.retain(|t| t.lattice % d as i64 == 0);
    Ok(expansion)
}

/// Exact rational value of a real, integer-valued or small-dyadic coefficient.
fn exact_weight(c: &HpComplex) -> Option<Rational> {
    if !c.im.is_zero() {
        return None;
    }
    let r = c.re.to_rational()?;
    (*r.denom() <= 1u32 << 16).then_some(r)
}

/// Combined expansion of the series through lattice W, using m - 1
/// Bernoulli corrections.
pub fn series_expansion(
    spec: &SeriesSpec,
    m: usize,
    w_max: usize,
    prec: u32,
) -> Result<AsymptoticExpansion> {
    let s = spec.polynomial_exponent().ok_or_else(|| {
        Error::InvalidArgument("asymptotic expansion needs a polynomial exponent".into())
    })?;
    let d = s.degree();
    let k = spec.coefficients.period();
    let mut acc = Accumulator::new(d, prec);
    for (j, c) in spec.coefficients.values().iter().enumerate() {
        let sj = s.residue(k as u64, j as u64);
        let weight = exact_weight(c);
        let c = c.clone().with_prec(prec);
        let scale_sym = |sym: SymbolicCoefficient| {
            weight.as_ref().map(|w| SymbolicCoefficient {
                rational: sym.rational * w,
                ..sym
            })
        };
        for (l, sym) in integral_symbolic(&sj, w_max + 1) {
            let v = &c * &HpComplex::from_real(sym.value(prec)?);
            acc.add(l, v, scale_sym(sym));
        }
        for (i, r) in boundary_rationals(&sj, m, w_max / d)?
            .into_iter()
            .enumerate()
        {
            let v = c.scale(&Float::with_val(prec, &r));
            let sym = SymbolicCoefficient {
                rational: r,
                gamma_l: None,
                d: d as u32,
                lead: sj.leading(),
            };
            acc.add((i * d) as i64, v, scale_sym(sym));
        }
    }
    let remainder = Rational::from((w_max as i64 + 1, d as i64))
        .min(Rational::from((2 * m as i64 - 1, d as i64)).ceil());
    let expansion = acc.finish(-1, w_max as i64, remainder);

    if crate::radial::is_mean_zero(&spec.coefficients, prec) {
        let lead = expansion.coefficient(-1, prec).abs();
        let tol = numeric::pow2(prec, 32 - prec as i32)
            * spec.coefficients.max_abs().max(&Float::with_val(prec, 1));
        assert!(
            lead <= tol,
            "x^(-1/d) terms failed to cancel for a mean-zero cycle"
        );
    }
    Ok(expansion)
}

/// `prefactor(m)·∫_0^∞ |f^{(2m)}(t)| dt` at `q = e^{-x}`, an asymptotic
/// (not rigorous) size of the Euler-Maclaurin remainder.
pub fn remainder_bound(s: &PolynomialExponent, m: usize, x: &HpReal, prec: u32) -> Result<HpReal> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "remainder bound needs m >= 1".into(),
        ));
    }
    if *x <= 0 {
        return Err(Error::InvalidArgument("x must be positive".into()));
    }
    let p2m = derivative_polynomials(s, 2 * m).pop().expect("nonempty");
    let d = s.degree();
    let wp = prec + 16;
    let x = Float::with_val(wp, x);
    let lambda = Float::with_val(wp, -&x);
    // t = (x a_d)^{-1/d} u puts the decay scale at u ~ 1
    let scale =
        (Float::with_val(wp, &x * Float::with_val(wp, &s.leading())).ln() / d as u32 * -1i32).exp();
    let integrand = |u: &HpReal| {
        let t = Float::with_val(wp, u * &scale);
        let f = p2m.eval(&lambda, &t, wp).abs();
        let e = (-(Float::with_val(wp, &x * s.poly().eval_float(&t, wp)))).exp();
        f * e * &scale
    };
    let tol = numeric::pow2(wp, -(prec as i32) / 2);
    let q = quadrature::exp_sinh(integrand, &Float::new(wp), &tol, wp);
    let pre = remainder_prefactor(m as u32, wp)?;
    Ok(Float::with_val(prec, q.value * pre))
}

#[derive(Clone, Debug)]
pub struct ResidualRow {
    pub x: HpReal,
    pub value: HpComplex,
    pub approximation: HpComplex,
    pub residual: HpReal,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub rows: Vec<ResidualRow>,
    /// Least-squares slope of log residual against log x, over rows above the noise floor.
    pub slope: Option<f64>,
    pub remainder_order: Rational,
    pub noise_floor: HpReal,
}

impl VerificationReport {
    /// Slope at least the remainder order (0.25 slack), or every residual at noise level.
    pub fn consistent(&self) -> bool {
        match self.slope {
            Some(sl) => sl >= self.remainder_order.to_f64() - 0.25,
            None => true,
        }
    }

    pub fn verdict(&self) -> &'static str {
        match self.slope {
            None => "below noise floor",
            Some(_) if self.consistent() => "consistent",
            Some(_) => "slope below remainder order",
        }
    }
}

pub fn verify_expansion(
    spec: &SeriesSpec,
    expansion: &AsymptoticExpansion,
    xs: &[HpReal],
    opts: &EvalOptions,
) -> Result<VerificationReport> {
    let prec = opts.precision;
    let eps = numeric::pow2(prec, -(prec as i32) * 3 / 4);
    let spec = SeriesSpec {
        coefficients: spec.coefficients.with_prec(prec),
        exponent: spec.exponent.clone(),
    };
    let mut rows = Vec::with_capacity(xs.len());
    let mut floor = Float::new(prec);
    for x in xs {
        let ev = series::evaluate_at_x(&spec, x, &eps, opts)?;
        let approx = expansion.eval(&Float::with_val(prec, x));
        let residual = (&ev.value - &approx).abs();
        floor = floor.max(&ev.error_bound());
        rows.push(ResidualRow {
            x: x.clone(),
            value: ev.value,
            approximation: approx,
            residual,
        });
    }
    let noise_floor =
        Float::with_val(prec, &floor * 16u32).max(&numeric::pow2(prec, -(prec as i32) / 2));
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.residual > noise_floor)
        .map(|r| {
            (
                r.x.to_f64().ln(),
                Float::with_val(53, r.residual.ln_ref()).to_f64(),
            )
        })
        .collect();
    let slope = (pts.len() >= 2).then(|| {
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    });
    Ok(VerificationReport {
        rows,
        slope,
        remainder_order: expansion.remainder_order.clone(),
        noise_floor,
    })
}

/// Default `(m, W)` for a degree-d exponent.
pub fn default_depths(d: usize) -> (usize, usize) {
    (4, 2 * d + 2)
}
