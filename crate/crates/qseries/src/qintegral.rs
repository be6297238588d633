//! The q-integral approximation of `∫_0^1 x^c dx` and a numerical harness
//! for the rectangle lemma
//! `lim_{q→1⁻} sum_n q^{y(n)}(q^{x(n)} - q^{x(n+1)}) = 1/(1+c)`.
//!
//! Here `c = lim y(t)/x(t)`. Read literally, the lemma's hypothesis has the
//! reciprocal ratio, but its proof and the geometric case `x = t, y = 2t`
//! (limit 1/3) both fix this orientation.

use rug::Float;

use rayon::prelude::*;

use crate::numeric::{self, quadrature, HpComplex, HpReal};
use crate::poly::RatPoly;
use crate::radial::{fit_fractional_powers, Grid, Sample};
use crate::series::{self, EvalOptions, PeriodicCoefficients, PolynomialExponent, SeriesSpec};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct LemmaPair {
    pub x_poly: PolynomialExponent,
    pub y_poly: PolynomialExponent,
    /// `lead(y) / lead(x)`.
    pub c: HpReal,
}

impl LemmaPair {
    pub fn new(x_poly: PolynomialExponent, y_poly: PolynomialExponent, prec: u32) -> Result<Self> {
        if x_poly.degree() != y_poly.degree() {
            return Err(Error::InvalidSpec(format!(
                "lemma pair needs equal degrees, got {} and {}",
                x_poly.degree(),
                y_poly.degree()
            )));
        }
        let c = Float::with_val(prec, &(y_poly.leading() / x_poly.leading()));
        Ok(LemmaPair { x_poly, y_poly, c })
    }

    pub fn from_polys(x: RatPoly, y: RatPoly, prec: u32) -> Result<Self> {
        Self::new(
            PolynomialExponent::new(x)?,
            PolynomialExponent::new(y)?,
            prec,
        )
    }

    /// Index N with x and y positive and increasing on `[N, ∞)`.
    pub fn increase_index(&self) -> u64 {
        self.x_poly
            .poly()
            .eventually_increasing_from()
            .max(self.y_poly.poly().eventually_increasing_from())
    }

    fn precision(&self) -> u32 {
        self.c.prec()
    }
}

/// `(1 - q)/(1 - q^{c+1})`, the q-integral of `x^c` over [0, 1].
pub fn q_integral_power(c: &HpReal, q: &HpReal) -> Result<HpReal> {
    if c.is_nan() || *c <= 0 {
        return Err(Error::InvalidArgument(
            "q-integral exponent must be positive".into(),
        ));
    }
    if q.is_nan() || *q <= 0 || *q >= 1 {
        return Err(Error::InvalidArgument("q must lie in (0, 1)".into()));
    }
    let prec = q.prec().max(c.prec());
    let wp = prec + 32;
    let lq = Float::with_val(wp, q.ln_ref());
    let one_minus_q = Float::with_val(wp, 1u32 - Float::with_val(wp, q));
    let denom = -(Float::with_val(wp, c + 1u32) * lq).exp_m1();
    Ok(Float::with_val(prec, one_minus_q / denom))
}

/// `1/(1+c)`.
pub fn lemma_limit(pair: &LemmaPair) -> HpReal {
    let prec = pair.precision();
    Float::with_val(prec, 1) / Float::with_val(prec, &pair.c + 1u32)
}

#[derive(Clone, Debug)]
pub struct LemmaSum {
    pub sum: HpReal,
    /// Part of the sum over `n ≥ N + 1`.
    pub tail_sum: HpReal,
    /// `∫_{N+1}^∞ q^{y(t)} d(-q^{x(t)})`.
    pub lower_int: HpReal,
    /// `∫_{N+1}^∞ q^{y(t-1)} d(-q^{x(t)})`.
    pub upper_int: HpReal,
    pub error_bound: HpReal,
    pub n_start: u64,
}

impl LemmaSum {
    pub fn squeezed(&self) -> bool {
        self.lower_int <= self.tail_sum && self.tail_sum <= self.upper_int
    }
}

/// `q^{y(n)}(q^{x(n)} - q^{x(n+1)})` at `log q = lq`.
pub fn rectangle_area(pair: &LemmaPair, lq: &HpReal, n: u64) -> HpReal {
    let wp = lq.prec();
    let xn = Float::with_val(wp, &pair.x_poly.eval_u64(n));
    let xn1 = Float::with_val(wp, &pair.x_poly.eval_u64(n + 1));
    let yn = Float::with_val(wp, &pair.y_poly.eval_u64(n));
    let top = (Float::with_val(wp, &xn + &yn) * lq).exp();
    let width = -(Float::with_val(wp, xn1 - xn) * lq).exp_m1();
    top * width
}

/// `-log q ∫_{a}^∞ x'(t) q^{x(t) + y(t - shift)} dt`.
fn squeeze_integral(pair: &LemmaPair, lq: &HpReal, start: u64, shift: u64, tol: &HpReal) -> HpReal {
    let wp = lq.prec();
    let d = pair.x_poly.degree();
    let xp = pair.x_poly.poly().derivative();
    let y_shift = pair
        .y_poly
        .poly()
        .compose_affine(&1.into(), &rug::Rational::from(-(shift as i64)));
    let exponent = pair.x_poly.poly().add(&y_shift);
    let a = Float::with_val(wp, start);
    // width over which q^{x+y} decays by a factor e
    let lead = Float::with_val(wp, &exponent.leading());
    let sigma =
        (Float::with_val(wp, -Float::with_val(wp, lq * &lead)).ln() / d as u32 * -1i32).exp();
    let f = |v: &HpReal| {
        let t = Float::with_val(wp, &a + Float::with_val(wp, v * &sigma));
        let e = Float::with_val(wp, exponent.eval_float(&t, wp) * lq).exp();
        xp.eval_float(&t, wp) * e
    };
    let q = quadrature::exp_sinh(f, &Float::new(wp), tol, wp);
    -(q.value * &sigma) * lq
}

pub fn lemma_sum(
    pair: &LemmaPair,
    q: &HpReal,
    eps: &HpReal,
    opts: &EvalOptions,
) -> Result<LemmaSum> {
    if q.is_nan() || *q <= 0 || *q >= 1 {
        return Err(Error::InvalidArgument("q must lie in (0, 1)".into()));
    }
    let prec = opts.precision;
    let wp = prec + 32;
    let lq = Float::with_val(wp, Float::with_val(wp, q).ln());
    let qc = HpComplex::from_real(Float::with_val(wp, q));

    // sum = S[x(n)+y(n)] - S[x(n+1)+y(n)], each a certified series
    let u = PolynomialExponent::new(pair.x_poly.poly().add(pair.y_poly.poly()))?;
    let x_next = pair.x_poly.poly().compose_affine(&1.into(), &1.into());
    let v = PolynomialExponent::new(x_next.add(pair.y_poly.poly()))?;
    let ones = PeriodicCoefficients::from_reals(&[1.0], wp)?;
    let half_eps = Float::with_val(wp, eps) / 2u32;
    let inner = EvalOptions {
        precision: wp,
        ..*opts
    };
    let su = series::evaluate(
        &SeriesSpec::polynomial(ones.clone(), u),
        &qc,
        &half_eps,
        &inner,
    )?;
    let sv = series::evaluate(&SeriesSpec::polynomial(ones, v), &qc, &half_eps, &inner)?;
    let sum = Float::with_val(wp, &su.value.re - &sv.value.re);
    let error_bound = Float::with_val(prec, su.error_bound() + sv.error_bound());

    let n_start = pair.increase_index();
    let mut head = Float::new(wp);
    for n in 0..=n_start {
        head += rectangle_area(pair, &lq, n);
    }
    let tail_sum = Float::with_val(wp, &sum - &head);
    let tol = Float::with_val(wp, eps) / 10u32;
    let lower_int = squeeze_integral(pair, &lq, n_start + 1, 0, &tol);
    let upper_int = squeeze_integral(pair, &lq, n_start + 1, 1, &tol);
    Ok(LemmaSum {
        sum: Float::with_val(prec, sum),
        tail_sum: Float::with_val(prec, tail_sum),
        lower_int: Float::with_val(prec, lower_int),
        upper_int: Float::with_val(prec, upper_int),
        error_bound,
        n_start,
    })
}

#[derive(Clone, Debug)]
pub struct LemmaExtrapolation {
    pub estimate: HpReal,
    pub error_estimate: HpReal,
    /// `(x, sum)` with `q = e^{-x}`.
    pub samples: Vec<(HpReal, HpReal)>,
}

/// Estimates `lim_{q→1⁻}` of the lemma sum by fitting powers of `x^{1/d}`.
///
/// The raw sum approaches its limit only like `x^{1/d}`, so this is the
/// estimate to compare with [`lemma_limit`] for d ≥ 2.
pub fn extrapolate_lemma(
    pair: &LemmaPair,
    grid: &Grid,
    fit_order: usize,
    opts: &EvalOptions,
) -> Result<LemmaExtrapolation> {
    if grid.count < fit_order + 1 {
        return Err(Error::SingularFit(format!(
            "{} grid points cannot determine {} coefficients",
            grid.count,
            fit_order + 1
        )));
    }
    let prec = opts.precision;
    let xs = grid.points(prec)?;
    let eps = numeric::pow2(prec, -(prec as i32) / 2);
    let samples = xs
        .par_iter()
        .map(|x| {
            let q = Float::with_val(prec + 32, -Float::with_val(prec + 32, x)).exp();
            let r = lemma_sum(pair, &q, &eps, opts)?;
            Ok(Sample {
                x: x.clone(),
                value: HpComplex::from_real(r.sum),
                error_bound: r.error_bound,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let d = pair.x_poly.degree();
    let fit = fit_fractional_powers(&samples, d, fit_order, prec)?;
    let mut error = fit.stderr0.clone();
    if fit_order >= 1 {
        let lower = fit_fractional_powers(&samples, d, fit_order - 1, prec)?;
        error = error
            .max(&Float::with_val(prec, &fit.coefficients[0].re - &lower.coefficients[0].re).abs());
    }
    Ok(LemmaExtrapolation {
        estimate: fit.coefficients[0].re.clone(),
        error_estimate: error,
        samples: samples.into_iter().map(|s| (s.x, s.value.re)).collect(),
    })
}

/// The pair behind residue j of a mean-zero period-k series:
/// `x(n) = sum_{l<n} s(lk+k-1) - s(lk+j)` and `y(n) = s(nk+j) - x(n)`, so
/// `q^{s(nk+j)} - q^{s(nk+k-1)} = q^{y(n)}(q^{x(n)} - q^{x(n+1)})`.
pub fn residue_pair(s: &PolynomialExponent, k: usize, j: usize, prec: u32) -> Result<LemmaPair> {
    if k < 2 || j > k - 2 {
        return Err(Error::InvalidArgument(format!(
            "residue j={j} out of range for period {k}"
        )));
    }
    let last = s.residue(k as u64, k as u64 - 1);
    let this = s.residue(k as u64, j as u64);
    let x = last.poly().sub(this.poly()).indefinite_sum();
    let y = this.poly().sub(&x);
    LemmaPair::from_polys(x, y, prec)
}
