//! Series specifications and certified evaluation of
//! `sum_{n>=0} C(n) q^{s(n)}` inside the unit disk.
//!
//! Powers `q^{s(n)}` for polynomial `s` are generated by a forward-difference
//! walker: with `E_i(n) = q^{Δ^i s(n)}`, one step is
//! `E_i(n+1) = E_i(n)·E_{i+1}(n)` and `E_d` is constant. The walker is
//! reseeded from exact rational differences every [`RESEED_INTERVAL`] terms
//! so rounding drift stays bounded.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::numeric::{self, HpComplex, HpReal, DEFAULT_PRECISION};
use crate::poly::RatPoly;
use crate::{Error, Result};

const RESEED_INTERVAL: u64 = 64;
const GUARD_BITS: u32 = 48;

/// Period-k cycle of complex coefficients; `C(n) = values[n mod k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicCoefficients {
    values: Vec<HpComplex>,
}

impl PeriodicCoefficients {
    pub fn new(values: Vec<HpComplex>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSpec(
                "coefficient cycle must have period >= 1".into(),
            ));
        }
        Ok(PeriodicCoefficients { values })
    }

    pub fn from_reals(values: &[f64], prec: u32) -> Result<Self> {
        Self::new(
            values
                .iter()
                .map(|&v| HpComplex::from_f64(prec, v, 0.0))
                .collect(),
        )
    }

    pub fn from_rationals(values: &[Rational], prec: u32) -> Result<Self> {
        Self::new(
            values
                .iter()
                .map(|v| HpComplex::from_real(numeric::from_rational(v, prec)))
                .collect(),
        )
    }

    pub fn period(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[HpComplex] {
        &self.values
    }

    pub fn get(&self, n: u64) -> &HpComplex {
        &self.values[(n % self.values.len() as u64) as usize]
    }

    pub fn prec(&self) -> u32 {
        self.values
            .iter()
            .map(HpComplex::prec)
            .max()
            .unwrap_or(DEFAULT_PRECISION)
    }

    /// `max_j |C(j)|`.
    pub fn max_abs(&self) -> HpReal {
        self.values
            .iter()
            .map(HpComplex::abs)
            .fold(Float::new(self.prec()), |a, b| a.max(&b))
    }

    /// `(C(0) + ... + C(k-1)) / k`.
    pub fn mean(&self) -> HpComplex {
        let prec = self.prec();
        let mut acc = HpComplex::zero(prec);
        for v in &self.values {
            acc += v;
        }
        acc.div_real(&Float::with_val(prec, self.values.len()))
    }

    /// The same sequence described with period `m·k`.
    pub fn replicate(&self, m: usize) -> Self {
        let mut values = Vec::with_capacity(self.values.len() * m);
        for _ in 0..m.max(1) {
            values.extend(self.values.iter().cloned());
        }
        PeriodicCoefficients { values }
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        PeriodicCoefficients {
            values: self
                .values
                .iter()
                .map(|v| v.clone().with_prec(prec))
                .collect(),
        }
    }
}

/// Polynomial exponent with exact rational coefficients, positive degree and
/// positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolynomialExponent(RatPoly);

impl PolynomialExponent {
    pub fn new(poly: RatPoly) -> Result<Self> {
        match poly.degree() {
            None | Some(0) => Err(Error::InvalidSpec(format!(
                "exponent polynomial {poly} must have positive degree"
            ))),
            Some(_) if poly.leading() <= 0 => Err(Error::InvalidSpec(format!(
                "exponent polynomial {poly} must have a positive leading coefficient"
            ))),
            Some(_) => Ok(PolynomialExponent(poly)),
        }
    }

    /// From coefficients `a_0, ..., a_d`. Trailing zeros are rejected so the
    /// stated degree is exact.
    pub fn from_coefficients(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.last().is_some_and(|c| *c == 0) {
            return Err(Error::InvalidSpec(
                "trailing zero exponent coefficient".into(),
            ));
        }
        Self::new(RatPoly::new(coeffs))
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::from_coefficients(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn poly(&self) -> &RatPoly {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree().expect("validated")
    }

    pub fn leading(&self) -> Rational {
        self.0.leading()
    }

    pub fn eval_u64(&self, n: u64) -> Rational {
        self.0.eval_u64(n)
    }

    /// `s(k·n + j)` as a polynomial in n.
    pub fn residue(&self, k: u64, j: u64) -> PolynomialExponent {
        PolynomialExponent(
            self.0
                .compose_affine(&Rational::from(k), &Rational::from(j)),
        )
    }

    /// Index `N₀` and gap `δ > 0` with `s(n+1) - s(n) ≥ δ` for all `n ≥ N₀`,
    /// the increments being nondecreasing from `N₀` on.
    pub fn increment_certificate(&self) -> (u64, Rational) {
        let delta = self.0.forward_difference();
        if delta.degree() == Some(0) {
            return (0, delta.leading());
        }
        let n0 = delta.eventually_increasing_from();
        (n0, delta.eval_u64(n0))
    }
}

/// Exponential exponent `s(n) = a^n` with `a > 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentialExponent {
    base: HpReal,
}

impl ExponentialExponent {
    pub fn new(base: HpReal) -> Result<Self> {
        if base.is_nan() || base <= 1 || base.is_infinite() {
            return Err(Error::InvalidSpec(format!(
                "exponential base must be a finite real > 1, got {}",
                numeric::format_real(&base, 20)
            )));
        }
        Ok(ExponentialExponent { base })
    }

    pub fn base(&self) -> &HpReal {
        &self.base
    }

    pub fn value(&self, n: u64, prec: u32) -> HpReal {
        let b = Float::with_val(prec, &self.base);
        b.pow(Integer::from(n))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Exponent {
    Polynomial(PolynomialExponent),
    Exponential(ExponentialExponent),
}

/// `s(n)`: exact for polynomials, rounded for exponentials.
#[derive(Clone, Debug, PartialEq)]
pub enum ExponentValue {
    Exact(Rational),
    Approx(HpReal),
}

pub fn exponent_value(exponent: &Exponent, n: u64, prec: u32) -> ExponentValue {
    match exponent {
        Exponent::Polynomial(p) => ExponentValue::Exact(p.eval_u64(n)),
        Exponent::Exponential(e) => ExponentValue::Approx(e.value(n, prec)),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSpec {
    pub coefficients: PeriodicCoefficients,
    pub exponent: Exponent,
}

impl SeriesSpec {
    pub fn polynomial(coefficients: PeriodicCoefficients, s: PolynomialExponent) -> Self {
        SeriesSpec {
            coefficients,
            exponent: Exponent::Polynomial(s),
        }
    }

    pub fn exponential(coefficients: PeriodicCoefficients, a: ExponentialExponent) -> Self {
        SeriesSpec {
            coefficients,
            exponent: Exponent::Exponential(a),
        }
    }

    pub fn polynomial_exponent(&self) -> Option<&PolynomialExponent> {
        match &self.exponent {
            Exponent::Polynomial(p) => Some(p),
            Exponent::Exponential(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    pub precision: u32,
    pub term_budget: u64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            precision: DEFAULT_PRECISION,
            term_budget: 10_000_000,
        }
    }
}

impl EvalOptions {
    pub fn with_precision(precision: u32) -> Self {
        EvalOptions {
            precision,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug)]
pub struct Evaluation {
    pub value: HpComplex,
    /// Certified bound on |S - S_N| for the infinite sum S.
    pub tail_bound: HpReal,
    pub terms_used: u64,
    /// Conservative estimate of accumulated rounding error.
    pub roundoff_bound: HpReal,
}

impl Evaluation {
    pub fn error_bound(&self) -> HpReal {
        Float::with_val(
            self.tail_bound.prec(),
            &self.tail_bound + &self.roundoff_bound,
        )
    }
}

/// How `q` enters the power computation.
#[derive(Clone, Debug)]
enum Base {
    /// q = 0.
    Zero,
    /// q = e^{log_r + iθ}; `theta == None` for real positive q.
    Polar {
        log_r: HpReal,
        theta: Option<HpReal>,
    },
}

fn classify_base(q: &HpComplex, wp: u32) -> Result<Base> {
    let modulus = q.abs();
    if modulus >= 1 || modulus.is_nan() {
        return Err(Error::OutsideUnitDisk {
            modulus: numeric::format_real(&modulus, 20),
        });
    }
    if modulus.is_zero() {
        return Ok(Base::Zero);
    }
    let log_r = Float::with_val(wp, Float::with_val(wp, &modulus).ln());
    let theta = if q.im.is_zero() && q.re > 0 {
        None
    } else {
        Some(Float::with_val(wp, q.im.atan2_ref(&q.re)))
    };
    Ok(Base::Polar { log_r, theta })
}

enum Stop<'a> {
    Tail { eps: &'a HpReal, budget: u64 },
    Through(u64),
}

/// Generates `|q|^{s(n)}` for successive n.
struct PowerWalker<'a> {
    exponent: &'a Exponent,
    log_r: HpReal,
    wp: u32,
    n: u64,
    /// Δ^i s as polynomials, i = 0..=d (polynomial case only).
    diffs: Vec<RatPoly>,
    /// E_i(n) = |q|^{Δ^i s(n)}.
    e: Vec<HpReal>,
}

impl<'a> PowerWalker<'a> {
    fn new(exponent: &'a Exponent, log_r: HpReal, wp: u32) -> Self {
        let diffs = match exponent {
            Exponent::Polynomial(p) => {
                let mut v = vec![p.poly().clone()];
                for _ in 0..p.degree() {
                    let next = v.last().unwrap().forward_difference();
                    v.push(next);
                }
                v
            }
            Exponent::Exponential(_) => Vec::new(),
        };
        let mut w = PowerWalker {
            exponent,
            log_r,
            wp,
            n: 0,
            diffs,
            e: Vec::new(),
        };
        w.reseed();
        w
    }

    fn reseed(&mut self) {
        match self.exponent {
            Exponent::Polynomial(_) => {
                let n = self.n;
                let wp = self.wp;
                let log_r = &self.log_r;
                self.e = self
                    .diffs
                    .iter()
                    .map(|d| {
                        let v = Float::with_val(wp, &d.eval_u64(n));
                        (v * log_r).exp()
                    })
                    .collect();
            }
            Exponent::Exponential(ex) => {
                let s = ex.value(self.n, self.wp);
                self.e = vec![(s * &self.log_r).exp()];
            }
        }
    }

    /// |q|^{s(n)} for the current n.
    fn current(&self) -> &HpReal {
        &self.e[0]
    }

    fn advance(&mut self) {
        self.n += 1;
        match self.exponent {
            Exponent::Polynomial(_) if self.n % RESEED_INTERVAL != 0 => {
                for i in 0..self.e.len() - 1 {
                    let (lo, hi) = self.e.split_at_mut(i + 1);
                    lo[i] *= &hi[0];
                }
            }
            _ => self.reseed(),
        }
    }
}

/// Tail bound factory: returns `max|C| · |q|^{s(n)} / (1 - |q|^{δ_n})` for the
/// tail starting at index n, or `None` when no certificate applies yet.
struct TailCertificate {
    kind: TailKind,
    max_c: HpReal,
}

enum TailKind {
    Polynomial { n0: u64, inv_denominator: HpReal },
    Exponential { base: HpReal, log_r: HpReal },
}

impl TailCertificate {
    fn new(spec: &SeriesSpec, log_r: &HpReal, wp: u32) -> Self {
        let max_c = Float::with_val(wp, spec.coefficients.max_abs());
        let kind = match &spec.exponent {
            Exponent::Polynomial(p) => {
                let (n0, delta) = p.increment_certificate();
                let x = Float::with_val(wp, &delta) * log_r;
                let denom = -x.exp_m1();
                TailKind::Polynomial {
                    n0,
                    inv_denominator: denom.recip(),
                }
            }
            Exponent::Exponential(e) => TailKind::Exponential {
                base: Float::with_val(wp, e.base()),
                log_r: log_r.clone(),
            },
        };
        TailCertificate { kind, max_c }
    }

    fn bound(&self, n: u64, weight: &HpReal) -> Option<HpReal> {
        let wp = weight.prec();
        match &self.kind {
            TailKind::Polynomial {
                n0,
                inv_denominator,
            } => {
                if n < *n0 {
                    return None;
                }
                Some(Float::with_val(wp, &self.max_c * weight) * inv_denominator)
            }
            TailKind::Exponential { base, log_r } => {
                // increments a^n(a-1) grow with n
                let an = Float::with_val(wp, base).pow(Integer::from(n));
                let gap = an * Float::with_val(wp, base - 1u32);
                let denom = -(gap * log_r).exp_m1();
                Some(Float::with_val(wp, &self.max_c * weight) / denom)
            }
        }
    }
}

fn roundoff_estimate(sum_abs: &HpReal, max_c: &HpReal, terms: u64, prec: u32) -> HpReal {
    // relative drift per term is O(RESEED_INTERVAL^d · 2^{-wp}) ≪ 2^{-prec};
    // report a few ulps at the output precision per term, scaled by the mass
    let ulp = numeric::pow2(prec, 4 - prec as i32);
    let mass = Float::with_val(prec, sum_abs * max_c);
    let count = Float::with_val(prec, (terms as f64).log2().max(1.0));
    mass * ulp * count
}

fn accumulate(spec: &SeriesSpec, q: &HpComplex, stop: Stop<'_>, prec: u32) -> Result<Evaluation> {
    let wp = prec + GUARD_BITS;
    let k = spec.coefficients.period();
    let base = classify_base(q, wp)?;

    let (log_r, theta) = match base {
        Base::Zero => return accumulate_at_zero(spec, stop, prec),
        Base::Polar { log_r, theta } => (log_r, theta),
    };

    let certificate = TailCertificate::new(spec, &log_r, wp);
    let mut walker = PowerWalker::new(&spec.exponent, log_r, wp);
    let mut real_acc = vec![Float::new(wp); k];
    let mut cplx_acc = vec![HpComplex::zero(wp); if theta.is_some() { k } else { 0 }];
    let mut sum_abs = Float::new(wp);

    let (eps_scaled, budget, through) = match &stop {
        Stop::Tail { eps, budget } => (Some(Float::with_val(wp, *eps)), *budget, None),
        Stop::Through(n) => (None, u64::MAX, Some(*n)),
    };

    let mut n = 0u64;
    let tail_bound;
    loop {
        let w = walker.current().clone();
        let j = (n % k as u64) as usize;
        match &theta {
            None => real_acc[j] += &w,
            Some(th) => {
                let s = match &spec.exponent {
                    Exponent::Polynomial(p) => Float::with_val(wp, &p.eval_u64(n)),
                    Exponent::Exponential(e) => e.value(n, wp),
                };
                let phase = HpComplex::cis(&Float::with_val(wp, s * th));
                cplx_acc[j].add_scaled(&phase, &w);
            }
        }
        sum_abs += &w;
        walker.advance();
        n += 1;

        if let Some(last) = through {
            if n > last {
                tail_bound = Float::with_val(prec, f64::NAN);
                break;
            }
            continue;
        }
        let eps = eps_scaled.as_ref().expect("tail mode");
        if let Some(b) = certificate.bound(n, walker.current()) {
            if b <= *eps {
                tail_bound = Float::with_val(prec, b);
                break;
            }
            if n >= budget {
                return Err(Error::BudgetExhausted {
                    terms: n,
                    achieved_bound: numeric::format_real(&b, 10),
                });
            }
        } else if n >= budget {
            return Err(Error::BudgetExhausted {
                terms: n,
                achieved_bound: "inf".into(),
            });
        }
    }

    let mut value = HpComplex::zero(wp);
    for (j, c) in spec.coefficients.values().iter().enumerate() {
        let c = c.clone().with_prec(wp);
        match &theta {
            None => value.add_scaled(&c, &real_acc[j]),
            Some(_) => value += &(&c * &cplx_acc[j]),
        }
    }
    let roundoff = roundoff_estimate(&sum_abs, &certificate.max_c, n, prec);
    Ok(Evaluation {
        value: value.with_prec(prec),
        tail_bound,
        terms_used: n,
        roundoff_bound: roundoff,
    })
}

fn accumulate_at_zero(spec: &SeriesSpec, stop: Stop<'_>, prec: u32) -> Result<Evaluation> {
    // 0^{s} is 1 for s = 0, 0 for s > 0 and undefined for s < 0
    let mut value = HpComplex::zero(prec);
    let limit = match stop {
        Stop::Through(n) => n,
        Stop::Tail { .. } => match &spec.exponent {
            Exponent::Polynomial(p) => p.poly().eventually_increasing_from().max(1),
            Exponent::Exponential(_) => 0,
        },
    };
    let mut used = 0;
    for n in 0..=limit {
        used = n + 1;
        let zero_exponent = match exponent_value(&spec.exponent, n, prec) {
            ExponentValue::Exact(r) => {
                if r < 0 {
                    return Err(Error::InvalidArgument(format!(
                        "q = 0 with negative exponent s({n}) = {r}"
                    )));
                }
                r == 0
            }
            ExponentValue::Approx(_) => false,
        };
        if zero_exponent {
            value += spec.coefficients.get(n);
        }
    }
    Ok(Evaluation {
        value,
        tail_bound: Float::new(prec),
        terms_used: used,
        roundoff_bound: Float::new(prec),
    })
}

/// Sums the series to a certified tail bound `≤ eps`.
pub fn evaluate(
    spec: &SeriesSpec,
    q: &HpComplex,
    eps: &HpReal,
    opts: &EvalOptions,
) -> Result<Evaluation> {
    if eps.is_nan() || *eps <= 0 {
        return Err(Error::InvalidArgument("eps must be positive".into()));
    }
    accumulate(
        spec,
        q,
        Stop::Tail {
            eps,
            budget: opts.term_budget,
        },
        opts.precision,
    )
}

/// Evaluates at real `q = e^{-x}` with `x > 0`, without forming `q` first.
pub fn evaluate_at_x(
    spec: &SeriesSpec,
    x: &HpReal,
    eps: &HpReal,
    opts: &EvalOptions,
) -> Result<Evaluation> {
    if x.is_nan() || *x <= 0 {
        return Err(Error::InvalidArgument("x = -log q must be positive".into()));
    }
    let q = HpComplex::from_real((-Float::with_val(opts.precision + GUARD_BITS, x)).exp());
    evaluate(spec, &q, eps, opts)
}

/// `sum_{n=0}^{N} C(n) q^{s(n)}` at working precision.
pub fn partial_sum(spec: &SeriesSpec, q: &HpComplex, n: u64, prec: u32) -> Result<HpComplex> {
    Ok(accumulate(spec, q, Stop::Through(n), prec)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::pow2;

    fn alt() -> PeriodicCoefficients {
        PeriodicCoefficients::from_reals(&[1.0, -1.0], 256).unwrap()
    }

    fn q_real(v: f64) -> HpComplex {
        HpComplex::from_f64(256, v, 0.0)
    }

    #[test]
    fn exponent_values() {
        let sq = Exponent::Polynomial(PolynomialExponent::from_ints(&[0, 0, 1]).unwrap());
        assert_eq!(
            exponent_value(&sq, 3, 64),
            ExponentValue::Exact(Rational::from(9))
        );
        let cubic = Exponent::Polynomial(PolynomialExponent::from_ints(&[0, 1, 0, 2]).unwrap());
        assert_eq!(
            exponent_value(&cubic, 2, 64),
            ExponentValue::Exact(Rational::from(18))
        );
        let ten = Exponent::Exponential(ExponentialExponent::new(Float::with_val(64, 10)).unwrap());
        assert_eq!(
            exponent_value(&ten, 3, 64),
            ExponentValue::Approx(Float::with_val(64, 1000))
        );
    }

    #[test]
    fn exponent_validation() {
        assert!(PolynomialExponent::from_ints(&[1]).is_err());
        assert!(PolynomialExponent::from_ints(&[0, -1]).is_err());
        assert!(PolynomialExponent::from_ints(&[0, 1, 0]).is_err());
        assert!(ExponentialExponent::new(Float::with_val(64, 1)).is_err());
        assert!(PeriodicCoefficients::new(vec![]).is_err());
    }

    #[test]
    fn geometric_alternating() {
        let spec = SeriesSpec::polynomial(alt(), PolynomialExponent::from_ints(&[0, 1]).unwrap());
        let eps = pow2(256, -200);
        let ev = evaluate(&spec, &q_real(0.5), &eps, &EvalOptions::default()).unwrap();
        let expect = Float::with_val(256, 2) / 3u32;
        assert!(Float::with_val(256, &ev.value.re - &expect).abs() < pow2(256, -195));
        assert!(ev.tail_bound <= eps);
        assert!(ev.value.im.is_zero());
    }

    #[test]
    fn three_term_partial_sum() {
        let spec =
            SeriesSpec::polynomial(alt(), PolynomialExponent::from_ints(&[0, 0, 1]).unwrap());
        let s = partial_sum(&spec, &q_real(0.9), 2, 256).unwrap();
        let expect = Float::with_val(256, 1) - Float::with_val(256, 0.9)
            + Float::with_val(256, 0.9).pow(4u32);
        assert!(Float::with_val(256, &s.re - &expect).abs() < pow2(256, -240));
        assert!((s.re.to_f64() - 0.7561).abs() < 1e-12);
        let s0 = partial_sum(&spec, &q_real(0.9), 0, 256).unwrap();
        assert_eq!(s0.re, 1);
    }

    #[test]
    fn q_zero() {
        let spec = SeriesSpec::polynomial(alt(), PolynomialExponent::from_ints(&[1, 1]).unwrap());
        let s = partial_sum(&spec, &HpComplex::zero(256), 10, 256).unwrap();
        assert!(s.re.is_zero() && s.im.is_zero());
        let spec0 = SeriesSpec::polynomial(alt(), PolynomialExponent::from_ints(&[0, 1]).unwrap());
        let ev = evaluate(
            &spec0,
            &HpComplex::zero(256),
            &pow2(256, -10),
            &EvalOptions::default(),
        )
        .unwrap();
        assert_eq!(ev.value.re, 1);
    }

    #[test]
    fn rejects_bad_inputs() {
        let spec = SeriesSpec::polynomial(alt(), PolynomialExponent::from_ints(&[0, 1]).unwrap());
        let opts = EvalOptions::default();
        let eps = pow2(256, -10);
        assert!(matches!(
            evaluate(&spec, &q_real(1.0), &eps, &opts),
            Err(Error::OutsideUnitDisk { .. })
        ));
        assert!(evaluate(&spec, &HpComplex::from_f64(256, 0.8, 0.7), &eps, &opts).is_err());
        assert!(evaluate(&spec, &q_real(0.5), &Float::with_val(256, 0), &opts).is_err());
        let tight = EvalOptions {
            term_budget: 100,
            ..opts
        };
        let err = evaluate(&spec, &q_real(0.999), &pow2(256, -100), &tight).unwrap_err();
        assert!(matches!(err, Error::BudgetExhausted { terms: 100, .. }));
    }

    #[test]
    fn complex_q_matches_closed_form() {
        // sum (-1)^n q^n = 1/(1+q) for complex q
        let spec = SeriesSpec::polynomial(alt(), PolynomialExponent::from_ints(&[0, 1]).unwrap());
        let q = HpComplex::from_f64(256, 0.3, 0.4);
        let ev = evaluate(&spec, &q, &pow2(256, -150), &EvalOptions::default()).unwrap();
        let expect = HpComplex::one(256).div(&(&HpComplex::one(256) + &q));
        assert!((&ev.value - &expect).abs() < pow2(256, -140));
    }

    #[test]
    fn exponential_exponent_sum() {
        let a = ExponentialExponent::new(Float::with_val(256, 2)).unwrap();
        let spec = SeriesSpec::exponential(alt(), a);
        let q = q_real(0.5);
        let ev = evaluate(&spec, &q, &pow2(256, -200), &EvalOptions::default()).unwrap();
        // direct: sum (-1)^n 0.5^{2^n}
        let mut direct = Float::new(256);
        for n in 0..12u32 {
            let t = Float::with_val(256, 0.5).pow(1u64 << n);
            if n % 2 == 0 {
                direct += t;
            } else {
                direct -= t;
            }
        }
        assert!(Float::with_val(256, &ev.value.re - &direct).abs() < pow2(256, -190));
    }
}
