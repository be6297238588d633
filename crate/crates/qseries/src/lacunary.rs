//! Non-convergence of `sum C(n) q^{a^n}` at q → 1⁻ for mean-zero periodic C.
//!
//! Per residue j the sum is rewritten as rectangles under the curves
//! `y = x^M` and `y = x^m`. Two sequences `q_r`, `q'_r` tending to 1 then
//! keep the rectangle sum above `lower_value` and below `upper_value`
//! respectively, so when `upper_value < lower_value` there are two cluster
//! points. Note `m/M = a^{-k}`, so `q_r = x0^{(m/M)^r}` is the Mahler
//! rescaling `q ↦ q^{a^{-k}}` applied r times.

use rug::ops::Pow;
use rug::Float;

use crate::numeric::{self, HpComplex, HpReal};
use crate::series::{self, EvalOptions, ExponentialExponent, PeriodicCoefficients, SeriesSpec};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Slopes {
    pub big_m: HpReal,
    pub small_m: HpReal,
    /// `x_j(0) = (a^{k-1} - a^j)/(a^k - 1)`.
    pub x_norm: HpReal,
}

impl Slopes {
    /// Exponent e with `q_original = Q^e` in the change of variable.
    pub fn change_of_variable(&self) -> HpReal {
        Float::with_val(self.x_norm.prec(), self.x_norm.recip_ref())
    }
}

pub fn slopes(a: &HpReal, k: usize, j: usize) -> Result<Slopes> {
    if a.is_nan() || *a <= 1 {
        return Err(Error::InvalidArgument("lacunary base must exceed 1".into()));
    }
    if k < 2 || j > k - 2 {
        return Err(Error::InvalidArgument(format!(
            "residue j={j} out of range for period {k}"
        )));
    }
    let prec = a.prec() + 32;
    let a = Float::with_val(prec, a);
    let pw = |e: i32| Float::with_val(prec, (&a).pow(e));
    let denom = pw(k as i32 - 1) - pw(j as i32);
    let big_m = Float::with_val(prec, pw((k + j) as i32) - pw(k as i32 - 1)) / &denom;
    let small_m = Float::with_val(prec, pw(j as i32) - pw(-1)) / &denom;
    let x_norm = denom / (pw(k as i32) - 1u32);
    let out = a.prec();
    Ok(Slopes {
        big_m: Float::with_val(out, big_m),
        small_m: Float::with_val(out, small_m),
        x_norm: Float::with_val(out, x_norm),
    })
}

fn bisect(f: impl Fn(&HpReal) -> HpReal, lo: HpReal, hi: HpReal, tol: &HpReal) -> HpReal {
    let (mut lo, mut hi) = (lo, hi);
    let flo = f(&lo);
    let fhi = f(&hi);
    if flo.is_zero() {
        return lo;
    }
    if fhi.is_zero() {
        return hi;
    }
    assert!(flo < 0 && fhi > 0, "no sign change on the bracket");
    while Float::with_val(lo.prec(), &hi - &lo) > *tol {
        let mid = Float::with_val(lo.prec(), &lo + &hi) / 2u32;
        if f(&mid) <= 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Float::with_val(lo.prec(), &lo + &hi) / 2u32
}

/// Roots of `x^m = 1 - x` in (0, 1/2] and `x^M = 1 - x` in [1/2, 1).
pub fn fixed_points(big_m: &HpReal, small_m: &HpReal, tol: &HpReal) -> Result<(HpReal, HpReal)> {
    if !(*small_m > 0 && *small_m <= 1 && *big_m >= 1) {
        return Err(Error::InvalidArgument(
            "fixed points need 0 < m <= 1 <= M".into(),
        ));
    }
    let prec = big_m.prec().max(small_m.prec());
    let half = Float::with_val(prec, 0.5);
    fn f(e: &HpReal, prec: u32) -> impl Fn(&HpReal) -> HpReal + '_ {
        move |x: &HpReal| {
            let p = Float::with_val(prec, x.pow(e));
            p - (Float::with_val(prec, 1) - x)
        }
    }
    let x0 = bisect(
        f(small_m, prec),
        Float::with_val(prec, 0),
        half.clone(),
        tol,
    );
    let x0p = bisect(f(big_m, prec), half, Float::with_val(prec, 1), tol);
    Ok((x0, x0p))
}

/// `q_r = x0^{(m/M)^r}` and `q'_r = x0'^{(m/M)^r}` for r = 1..=r_max.
pub fn oscillation_sequences(
    x0: &HpReal,
    x0_prime: &HpReal,
    big_m: &HpReal,
    small_m: &HpReal,
    r_max: usize,
) -> (Vec<HpReal>, Vec<HpReal>) {
    let prec = x0.prec();
    let ratio = Float::with_val(prec, small_m / big_m);
    let mut q = Vec::with_capacity(r_max);
    let mut qp = Vec::with_capacity(r_max);
    let mut e = Float::with_val(prec, 1);
    for _ in 0..r_max {
        e *= &ratio;
        q.push(Float::with_val(prec, x0.pow(&e)));
        qp.push(Float::with_val(prec, x0_prime.pow(&e)));
    }
    (q, qp)
}

#[derive(Clone, Debug)]
pub struct ResidueOscillation {
    pub j: usize,
    pub slopes: Slopes,
    pub x0: HpReal,
    pub x0_prime: HpReal,
    /// `(x0^{m/M} - x0)·x0^m`, a floor for the rectangle sum at `q_r`.
    pub lower_value: HpReal,
    /// `1 - x0'(1 - x0'^M)`, a ceiling for the rectangle sum at `q'_r`.
    pub upper_value: HpReal,
    pub inequality_holds: bool,
    /// Rectangle sums at `q_r` and `q'_r`.
    pub rectangle_sums_high: Vec<HpReal>,
    pub rectangle_sums_low: Vec<HpReal>,
}

#[derive(Clone, Debug)]
pub struct LacunaryReport {
    pub a: HpReal,
    pub k: usize,
    pub per_residue: Vec<ResidueOscillation>,
    /// Tail mean of the series along the `q'_r` sequence (residue 0 mapping).
    pub cluster_low: HpComplex,
    /// Tail mean along the `q_r` sequence.
    pub cluster_high: HpComplex,
    pub samples_high: Vec<(HpReal, HpComplex)>,
    pub samples_low: Vec<(HpReal, HpComplex)>,
    /// C(k-1) = 0: the construction assumes the last coefficient is nonzero,
    /// so rotating the cycle may give a sharper picture.
    pub last_coefficient_zero: bool,
}

impl LacunaryReport {
    pub fn inequality_holds(&self) -> bool {
        !self.per_residue.is_empty() && self.per_residue.iter().all(|r| r.inequality_holds)
    }

    pub fn separation(&self) -> HpReal {
        (&self.cluster_high - &self.cluster_low).abs()
    }

    pub fn verdict(&self) -> &'static str {
        if self.inequality_holds() {
            "not convergent"
        } else {
            "inconclusive"
        }
    }
}

/// `sum_n Q^{a^{nk} M}(Q^{a^{nk}} - Q^{a^{nk+k}})`, written in the original
/// variable as `sum_n q^{a^{nk+j}} - q^{a^{nk+k-1}}` with `-log q = x`.
pub fn rectangle_sum(x: &HpReal, a: &HpReal, k: usize, j: usize, prec: u32) -> HpReal {
    let wp = prec + 32;
    let a = Float::with_val(wp, a);
    let eps = numeric::pow2(wp, -(prec as i32) - 8);
    let mut total = Float::new(wp);
    let mut n = 0i32;
    loop {
        let lo = Float::with_val(wp, (&a).pow(n * k as i32 + j as i32));
        let hi = Float::with_val(wp, (&a).pow(n * k as i32 + k as i32 - 1));
        let t_lo = (-(lo * x)).exp();
        let t_hi = (-(hi * x)).exp();
        total += Float::with_val(wp, &t_lo - &t_hi);
        // later terms are bounded by the geometric tail of t_lo
        if t_lo < eps {
            break;
        }
        n += 1;
    }
    Float::with_val(prec, total)
}

fn tail_mean(values: &[HpComplex]) -> HpComplex {
    let prec = values
        .first()
        .map_or(crate::numeric::DEFAULT_PRECISION, HpComplex::prec);
    let take = values.len().div_ceil(2);
    let mut acc = HpComplex::zero(prec);
    for v in &values[values.len() - take..] {
        acc += v;
    }
    acc.div_real(&Float::with_val(prec, take.max(1)))
}

pub fn oscillation_report(
    coeffs: &PeriodicCoefficients,
    a: &HpReal,
    r_max: usize,
    prec: u32,
) -> Result<LacunaryReport> {
    if r_max == 0 {
        return Err(Error::InvalidArgument("r_max must be >= 1".into()));
    }
    if !crate::radial::is_mean_zero(coeffs, prec) {
        return Err(Error::NonzeroMean {
            mean: format!("{:?}", coeffs.mean().format(20)),
        });
    }
    let base = ExponentialExponent::new(Float::with_val(prec, a))?;
    let k = coeffs.period();
    let wp = prec + 32;
    let a_wp = Float::with_val(wp, a);
    let tol = numeric::pow2(wp, -(prec as i32) / 2);

    let mut per_residue = Vec::new();
    let mut mapped: Option<(Vec<HpReal>, Vec<HpReal>)> = None;
    for j in 0..k.saturating_sub(1) {
        let sl = slopes(&a_wp, k, j)?;
        let (x0, x0p) = fixed_points(&sl.big_m, &sl.small_m, &tol)?;
        let ratio = Float::with_val(wp, &sl.small_m / &sl.big_m);
        let lower = (Float::with_val(wp, (&x0).pow(&ratio)) - &x0)
            * Float::with_val(wp, (&x0).pow(&sl.small_m));
        let upper = Float::with_val(wp, 1)
            - Float::with_val(
                wp,
                &x0p * (Float::with_val(wp, 1) - Float::with_val(wp, (&x0p).pow(&sl.big_m))),
            );
        let (qs, qps) = oscillation_sequences(&x0, &x0p, &sl.big_m, &sl.small_m, r_max);
        // -log of the original variable, q = Q^e
        let e = sl.change_of_variable();
        let to_x = |qv: &HpReal| Float::with_val(wp, -Float::with_val(wp, qv.ln_ref())) * &e;
        let xs_high: Vec<HpReal> = qs.iter().map(to_x).collect();
        let xs_low: Vec<HpReal> = qps.iter().map(to_x).collect();
        let high = xs_high
            .iter()
            .map(|x| rectangle_sum(x, &a_wp, k, j, prec))
            .collect();
        let low = xs_low
            .iter()
            .map(|x| rectangle_sum(x, &a_wp, k, j, prec))
            .collect();
        if j == 0 {
            mapped = Some((xs_high, xs_low));
        }
        per_residue.push(ResidueOscillation {
            j,
            inequality_holds: upper < lower,
            slopes: sl,
            x0: Float::with_val(prec, x0),
            x0_prime: Float::with_val(prec, x0p),
            lower_value: Float::with_val(prec, lower),
            upper_value: Float::with_val(prec, upper),
            rectangle_sums_high: high,
            rectangle_sums_low: low,
        });
    }

    let spec = SeriesSpec::exponential(coeffs.with_prec(prec), base);
    let opts = EvalOptions::with_precision(prec);
    let eps = numeric::pow2(prec, -(prec as i32) / 2);
    let sample = |xs: &[HpReal]| -> Result<Vec<(HpReal, HpComplex)>> {
        xs.iter()
            .map(|x| {
                let q = Float::with_val(prec, (-Float::with_val(wp, x)).exp());
                let ev = series::evaluate_at_x(&spec, x, &eps, &opts).map_err(|err| {
                    Error::EvaluationAt {
                        q: numeric::format_real(&q, 30),
                        source: Box::new(err),
                    }
                })?;
                Ok((q, ev.value))
            })
            .collect()
    };
    let (samples_high, samples_low) = match &mapped {
        Some((hi, lo)) => (sample(hi)?, sample(lo)?),
        None => (Vec::new(), Vec::new()),
    };
    let vals = |s: &[(HpReal, HpComplex)]| s.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>();
    let (cluster_high, cluster_low) = if samples_high.is_empty() {
        (HpComplex::zero(prec), HpComplex::zero(prec))
    } else {
        (
            tail_mean(&vals(&samples_high)),
            tail_mean(&vals(&samples_low)),
        )
    };

    Ok(LacunaryReport {
        a: Float::with_val(prec, a),
        k,
        per_residue,
        cluster_low,
        cluster_high,
        samples_high,
        samples_low,
        last_coefficient_zero: coeffs.values()[k - 1].abs().is_zero(),
    })
}
