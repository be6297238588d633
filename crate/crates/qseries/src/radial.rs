//! Radial limits at roots of unity: the mean-zero closed form, the
//! root-of-unity twist, the trichotomy classification and an independent
//! least-squares extrapolation of the limit from values near the boundary.

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::lacunary::LacunaryReport;
use crate::numeric::{self, gamma_hp, linalg, HpComplex, HpReal};
use crate::series::{
    self, EvalOptions, Exponent, PeriodicCoefficients, PolynomialExponent, SeriesSpec,
};
use crate::{Error, Result};

/// `ξ = e^{2πi p/N}` stored as a reduced fraction with `0 ≤ p < N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RootOfUnity {
    p: u64,
    #[serde(rename = "N")]
    n: u64,
}

impl RootOfUnity {
    pub fn new(p: i64, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec(
                "root of unity order N must be >= 1".into(),
            ));
        }
        let p = p.rem_euclid(n as i64) as u64;
        let g = gcd(p, n);
        Ok(RootOfUnity { p: p / g, n: n / g })
    }

    pub fn one() -> Self {
        RootOfUnity { p: 0, n: 1 }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn is_one(&self) -> bool {
        self.n == 1
    }

    /// `ξ·ξ'` as a root of unity.
    pub fn mul(&self, other: &RootOfUnity) -> RootOfUnity {
        let l = lcm(self.n, other.n);
        let p = (self.p as u128 * (l / self.n) as u128 + other.p as u128 * (l / other.n) as u128)
            % l as u128;
        RootOfUnity::new(p as i64, l).expect("nonzero order")
    }

    pub fn value(&self, prec: u32) -> HpComplex {
        HpComplex::root_of_unity_power(self.p as i64, self.n, prec)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[derive(Clone, Debug)]
pub struct LeadingTerm {
    pub coefficient: HpComplex,
    pub exponent: Rational,
    /// The coefficient comes from the conjectured expansion rather than a theorem.
    pub conjectural: bool,
}

#[derive(Clone, Debug)]
pub enum RadialLimitResult {
    Converges(HpComplex),
    Diverges {
        leading_term: LeadingTerm,
        twisted_mean: HpComplex,
    },
    Oscillates {
        evidence: Option<Box<LacunaryReport>>,
        note: String,
    },
}

impl RadialLimitResult {
    pub fn tag(&self) -> &'static str {
        match self {
            RadialLimitResult::Converges(_) => "Converges",
            RadialLimitResult::Diverges { .. } => "Diverges",
            RadialLimitResult::Oscillates { .. } => "Oscillates",
        }
    }
}

pub fn mean(coeffs: &PeriodicCoefficients) -> HpComplex {
    coeffs.mean()
}

/// Tolerance under which a numerically entered mean counts as zero.
pub fn mean_zero_tolerance(coeffs: &PeriodicCoefficients, prec: u32) -> HpReal {
    let scale = coeffs.max_abs().max(&Float::with_val(prec, 1));
    numeric::pow2(prec, 16 - prec as i32) * scale
}

pub fn is_mean_zero(coeffs: &PeriodicCoefficients, prec: u32) -> bool {
    coeffs.mean().abs() <= mean_zero_tolerance(coeffs, prec)
}

/// `-(1·C(1) + 2·C(2) + ... + (k-1)·C(k-1)) / k`.
pub fn closed_form_limit_first_moment(coeffs: &PeriodicCoefficients) -> HpComplex {
    let prec = coeffs.prec();
    let k = coeffs.period();
    let mut acc = HpComplex::zero(prec);
    for (j, c) in coeffs.values().iter().enumerate() {
        acc.add_scaled(c, &Float::with_val(prec, j));
    }
    -acc.div_real(&Float::with_val(prec, k))
}

/// `((k-1)·C(0) + (k-2)·C(1) + ... + 1·C(k-2)) / k`.
fn closed_form_limit_weighted(coeffs: &PeriodicCoefficients) -> HpComplex {
    let prec = coeffs.prec();
    let k = coeffs.period();
    let mut acc = HpComplex::zero(prec);
    for (j, c) in coeffs.values().iter().enumerate() {
        acc.add_scaled(c, &Float::with_val(prec, k - 1 - j));
    }
    acc.div_real(&Float::with_val(prec, k))
}

/// Radial limit at q → 1⁻ for a mean-zero cycle, independent of the exponent.
pub fn closed_form_limit(coeffs: &PeriodicCoefficients) -> Result<HpComplex> {
    let prec = coeffs.prec();
    let mu = coeffs.mean();
    let tol = mean_zero_tolerance(coeffs, prec);
    if mu.abs() > tol {
        return Err(Error::NonzeroMean {
            mean: format_complex(&mu, 20),
        });
    }
    let weighted = closed_form_limit_weighted(coeffs);
    let moment = closed_form_limit_first_moment(coeffs);
    // the two forms differ by (k-1)·mean
    let gap = (&weighted - &moment).abs();
    let allowed = Float::with_val(prec, &tol * coeffs.period() as u32) * 2u32;
    assert!(
        gap <= allowed,
        "closed-form variants disagree beyond the mean tolerance"
    );
    Ok(weighted)
}

fn format_complex(z: &HpComplex, digits: usize) -> String {
    let (re, im) = z.format(digits);
    format!("{re} + {im}i")
}

fn reduce(v: Integer, modulus: &Integer) -> Integer {
    let r = v % modulus;
    if r < 0 {
        r + modulus
    } else {
        r
    }
}

fn require_integer(s: &PolynomialExponent) -> Result<Vec<Integer>> {
    if !s.poly().is_integral() {
        return Err(Error::NonIntegerPolynomial(s.poly().to_string()));
    }
    Ok(s.poly()
        .coeffs()
        .iter()
        .map(|c| c.numer().clone())
        .collect())
}

/// `C̃(n) = C(n) ξ^{s(n)}` with period `lcm(k, N)`; the exponent of ξ is
/// reduced mod N in exact integer arithmetic.
pub fn twist(
    coeffs: &PeriodicCoefficients,
    s: &PolynomialExponent,
    xi: &RootOfUnity,
) -> Result<PeriodicCoefficients> {
    if xi.is_one() {
        return Ok(coeffs.clone());
    }
    let ints = require_integer(s)?;
    let prec = coeffs.prec();
    let k = coeffs.period() as u64;
    let n_ord = xi.order();
    let period = lcm(k, n_ord);
    let modulus = Integer::from(n_ord);
    let mut values = Vec::with_capacity(period as usize);
    for n in 0..period {
        // Horner mod N
        let mut acc = Integer::new();
        for c in ints.iter().rev() {
            acc = reduce(acc * n + c, &modulus);
        }
        let e = reduce(acc * xi.p(), &modulus)
            .to_i64()
            .expect("reduced below N");
        let root = HpComplex::root_of_unity_power(e, n_ord, prec);
        values.push(coeffs.get(n) * &root);
    }
    PeriodicCoefficients::new(values)
}

/// Spec whose value at real q equals the original series at `ξq`.
pub fn twisted_spec(spec: &SeriesSpec, xi: &RootOfUnity) -> Result<SeriesSpec> {
    match &spec.exponent {
        Exponent::Polynomial(s) => Ok(SeriesSpec::polynomial(
            twist(&spec.coefficients, s, xi)?,
            s.clone(),
        )),
        Exponent::Exponential(_) if xi.is_one() => Ok(spec.clone()),
        Exponent::Exponential(_) => Err(Error::InvalidArgument(
            "twisting an exponential exponent is not supported".into(),
        )),
    }
}

/// `μ·Γ(1/d) / (d·a_d^{1/d})`, the coefficient of `x^{-1/d}`.
pub fn divergent_leading_coefficient(
    mu: &HpComplex,
    s: &PolynomialExponent,
    prec: u32,
) -> Result<HpComplex> {
    let d = s.degree() as u32;
    let wp = prec + 16;
    let inv_d = Float::with_val(wp, 1) / d;
    let gamma = gamma_hp(&inv_d, wp)?;
    let ad = Float::with_val(wp, &s.leading());
    let scale = gamma / (Float::with_val(wp, ad.pow(&inv_d)) * d);
    Ok(mu.scale(&scale).with_prec(prec))
}

/// Trichotomy at the boundary point ξ.
pub fn classify_radial_limit(spec: &SeriesSpec, xi: &RootOfUnity) -> Result<RadialLimitResult> {
    let prec = spec.coefficients.prec();
    match &spec.exponent {
        Exponent::Polynomial(s) => {
            let twisted = twist(&spec.coefficients, s, xi)?;
            let mu = twisted.mean();
            if mu.abs() <= mean_zero_tolerance(&twisted, prec) {
                Ok(RadialLimitResult::Converges(closed_form_limit(&twisted)?))
            } else {
                let coefficient = divergent_leading_coefficient(&mu, s, prec)?;
                Ok(RadialLimitResult::Diverges {
                    leading_term: LeadingTerm {
                        coefficient,
                        exponent: Rational::from((-1, s.degree() as i64)),
                        conjectural: true,
                    },
                    twisted_mean: mu,
                })
            }
        }
        Exponent::Exponential(e) => {
            if !xi.is_one() {
                return Err(Error::InvalidArgument(
                    "radial limits of exponential exponents are only analysed at ξ = 1".into(),
                ));
            }
            let evidence = if is_mean_zero(&spec.coefficients, prec) {
                crate::lacunary::oscillation_report(&spec.coefficients, e.base(), 8, prec)
                    .ok()
                    .map(Box::new)
            } else {
                None
            };
            let note = match &evidence {
                Some(r) if r.inequality_holds() => "separating inequality holds; not convergent",
                Some(_) => "separating inequality fails; inconclusive",
                None => "nonzero mean; unbounded growth expected",
            };
            Ok(RadialLimitResult::Oscillates {
                evidence,
                note: note.to_string(),
            })
        }
    }
}

/// Geometric grid of `x = -log q` values.
#[derive(Clone, Debug)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub count: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            x_min: 1e-4,
            x_max: 1e-2,
            count: 12,
        }
    }
}

impl Grid {
    /// Default grid scaled so `t = x^{1/d}` stays in [0.01, 0.1] for d ≥ 2.
    ///
    /// Exponentially small corrections of size `e^{-c/t}` are invisible to a
    /// power fit only once t is small; `x ≤ 10^{-2}` is not enough beyond d = 2.
    pub fn for_degree(d: usize) -> Self {
        let d = d as i32;
        Grid {
            x_min: 10f64.powi(-(2 * d).max(4)),
            x_max: 10f64.powi(-d.max(2)),
            count: 12,
        }
    }

    /// [`Grid::for_degree`] shrunk until the cutoff `(a x)^{-1/d}` spans
    /// many periods past the roots of `s`, where `a` is its leading
    /// coefficient and `k` the coefficient period.
    pub fn for_series(s: &PolynomialExponent, k: usize) -> Self {
        let d = s.degree();
        let base = Self::for_degree(d);
        let reach = (k.max(1) as u64 * s.poly().root_bound().max(1)) as f64;
        let lead = s.leading().to_f64();
        let x_max = (0.2 / reach).powi(d as i32) / lead;
        if x_max >= base.x_max {
            return base;
        }
        Grid {
            x_min: x_max * base.x_min / base.x_max,
            x_max,
            count: base.count,
        }
    }

    pub fn points(&self, prec: u32) -> Result<Vec<HpReal>> {
        if !(self.x_min > 0.0 && self.x_max > self.x_min) || self.count < 2 {
            return Err(Error::InvalidArgument(format!(
                "grid needs 0 < x_min < x_max and count >= 2, got {:?}",
                self
            )));
        }
        let lo = Float::with_val(prec, self.x_min);
        let ratio = Float::with_val(prec, self.x_max) / &lo;
        let steps = (self.count - 1) as u32;
        Ok((0..self.count as u32)
            .map(|i| {
                let e = Float::with_val(prec, i) / steps;
                Float::with_val(prec, &lo * Float::with_val(prec, (&ratio).pow(&e)))
            })
            .collect())
    }
}

#[derive(Clone, Debug)]
pub struct Sample {
    pub x: HpReal,
    pub value: HpComplex,
    pub error_bound: HpReal,
}

/// Evaluates the twisted series at `q = e^{-x}` for each grid point, in parallel.
pub fn radial_samples(
    spec: &SeriesSpec,
    xi: &RootOfUnity,
    xs: &[HpReal],
    opts: &EvalOptions,
) -> Result<Vec<Sample>> {
    let twisted = twisted_spec(spec, xi)?;
    let twisted = SeriesSpec {
        coefficients: twisted.coefficients.with_prec(opts.precision),
        exponent: twisted.exponent,
    };
    let eps = numeric::pow2(opts.precision, -(opts.precision as i32) / 2);
    xs.par_iter()
        .map(|x| {
            let ev = series::evaluate_at_x(&twisted, x, &eps, opts).map_err(|e| {
                Error::EvaluationAt {
                    q: format!("exp(-{})", numeric::format_real(x, 12)),
                    source: Box::new(e),
                }
            })?;
            Ok(Sample {
                x: x.clone(),
                error_bound: ev.error_bound(),
                value: ev.value,
            })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Extrapolation {
    pub estimate: HpComplex,
    pub error_estimate: HpReal,
    /// Fitted `c_w` for the basis `x^{w/d}`, w = 0..=fit_order.
    pub coefficients: Vec<HpComplex>,
    pub samples: Vec<Sample>,
}

pub(crate) struct Fit {
    pub(crate) coefficients: Vec<HpComplex>,
    pub(crate) stderr0: HpReal,
}

pub(crate) fn fit_fractional_powers(
    samples: &[Sample],
    d: usize,
    order: usize,
    prec: u32,
) -> Result<Fit> {
    let rows: Vec<Vec<HpReal>> = samples
        .iter()
        .map(|s| {
            let lx = Float::with_val(prec, s.x.ln_ref());
            (0..=order)
                .map(|w| (Float::with_val(prec, &lx * w as u32) / d as u32).exp())
                .collect()
        })
        .collect();
    let re: Vec<HpReal> = samples.iter().map(|s| s.value.re.clone()).collect();
    let im: Vec<HpReal> = samples.iter().map(|s| s.value.im.clone()).collect();
    let fr = linalg::least_squares(&rows, &re, prec)?;
    let fi = linalg::least_squares(&rows, &im, prec)?;
    let dof = samples.len() - (order + 1);
    let stderr0 = if dof == 0 {
        Float::new(prec)
    } else {
        let rss = Float::with_val(prec, &fr.rss + &fi.rss);
        (rss / dof as u32 * &fr.inverse_gram_diag[0]).sqrt()
    };
    let coefficients = fr
        .coefficients
        .into_iter()
        .zip(fi.coefficients)
        .map(|(r, i)| HpComplex::new(r, i))
        .collect();
    Ok(Fit {
        coefficients,
        stderr0,
    })
}

/// Estimates the radial limit at ξ by fitting `sum_{w<=fit_order} c_w x^{w/d}`
/// to values on the grid and returning `c_0`.
pub fn extrapolate_limit(
    spec: &SeriesSpec,
    xi: &RootOfUnity,
    grid: &Grid,
    fit_order: usize,
    opts: &EvalOptions,
) -> Result<Extrapolation> {
    let s = spec.polynomial_exponent().ok_or_else(|| {
        Error::InvalidArgument("extrapolation needs a polynomial exponent".into())
    })?;
    let d = s.degree();
    if grid.count < fit_order + 1 {
        return Err(Error::SingularFit(format!(
            "{} grid points cannot determine {} coefficients",
            grid.count,
            fit_order + 1
        )));
    }
    let twisted = twist(&spec.coefficients, s, xi)?;
    if !is_mean_zero(&twisted, opts.precision) {
        return Err(Error::NonzeroMean {
            mean: format_complex(&twisted.mean(), 20),
        });
    }
    let prec = opts.precision;
    let xs = grid.points(prec)?;
    let samples = radial_samples(spec, xi, &xs, opts)?;
    let fit = fit_fractional_powers(&samples, d, fit_order, prec)?;
    let mut error = fit.stderr0.clone();
    if fit_order >= 1 {
        if let Ok(lower) = fit_fractional_powers(&samples, d, fit_order - 1, prec) {
            let shift = (&fit.coefficients[0] - &lower.coefficients[0]).abs();
            error = error.max(&shift);
        }
    }
    let eval_err = samples
        .iter()
        .map(|s| s.error_bound.clone())
        .fold(Float::new(prec), |a, b| a.max(&b));
    error += eval_err;
    Ok(Extrapolation {
        estimate: fit.coefficients[0].clone(),
        error_estimate: error,
        coefficients: fit.coefficients,
        samples,
    })
}

/// `2d`, the default fit order.
/// [`Grid::for_series`] for the twisted series behind `spec` at `xi`.
pub fn default_grid(spec: &SeriesSpec, xi: &RootOfUnity) -> Result<Grid> {
    let s = spec.polynomial_exponent().ok_or_else(|| {
        Error::InvalidSpec("radial extrapolation needs a polynomial exponent".into())
    })?;
    Ok(Grid::for_series(
        s,
        twisted_spec(spec, xi)?.coefficients.period(),
    ))
}

pub fn default_fit_order(s: &PolynomialExponent) -> usize {
    2 * s.degree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::pow2;

    const P: u32 = 256;

    fn omega_cycle() -> PeriodicCoefficients {
        PeriodicCoefficients::new(vec![
            HpComplex::one(P),
            HpComplex::root_of_unity_power(1, 3, P),
            HpComplex::root_of_unity_power(2, 3, P),
        ])
        .unwrap()
    }

    fn close(a: &HpComplex, b: &HpComplex, tol: f64) -> bool {
        (a - b).abs() < tol
    }

    #[test]
    fn means() {
        let alt = PeriodicCoefficients::from_reals(&[1.0, -1.0], P).unwrap();
        assert!(mean(&alt).abs().is_zero());
        assert!(mean(&omega_cycle()).abs() < pow2(P, -240));
        let ones = PeriodicCoefficients::from_reals(&[1.0, 1.0], P).unwrap();
        assert_eq!(mean(&ones).re, 1);
    }

    #[test]
    fn closed_forms() {
        let alt = PeriodicCoefficients::from_reals(&[1.0, -1.0], P).unwrap();
        assert_eq!(closed_form_limit(&alt).unwrap().re, 0.5);
        let zeros = PeriodicCoefficients::from_reals(&[0.0; 3], P).unwrap();
        assert!(closed_form_limit(&zeros).unwrap().abs().is_zero());
        let w = HpComplex::root_of_unity_power(1, 3, P);
        let expect = (&HpComplex::from_f64(P, 2.0, 0.0) + &w).div_real(&Float::with_val(P, 3));
        let got = closed_form_limit(&omega_cycle()).unwrap();
        assert!(close(&got, &expect, 1e-70));
        assert!((got.im.to_f64() - 0.288_675_134_594_812_9).abs() < 1e-15);
        let ones = PeriodicCoefficients::from_reals(&[1.0, 1.0], P).unwrap();
        assert!(matches!(
            closed_form_limit(&ones),
            Err(Error::NonzeroMean { .. })
        ));
    }

    #[test]
    fn root_reduction() {
        let r = RootOfUnity::new(2, 6).unwrap();
        assert_eq!((r.p(), r.order()), (1, 3));
        assert!(RootOfUnity::new(5, 1).unwrap().is_one());
        assert!(RootOfUnity::new(1, 0).is_err());
        let prod = RootOfUnity::new(1, 2)
            .unwrap()
            .mul(&RootOfUnity::new(1, 3).unwrap());
        assert_eq!((prod.p(), prod.order()), (5, 6));
    }

    #[test]
    fn sixth_root_twist_table() {
        let alt = PeriodicCoefficients::from_reals(&[1.0, -1.0], P).unwrap();
        let s = PolynomialExponent::from_ints(&[0, 0, 1]).unwrap();
        let xi = RootOfUnity::new(1, 6).unwrap();
        let t = twist(&alt, &s, &xi).unwrap();
        assert_eq!(t.period(), 6);
        let z = |e: i64, sign: f64| {
            HpComplex::root_of_unity_power(e, 6, P).scale(&Float::with_val(P, sign))
        };
        let expect = [
            z(0, 1.0),
            z(1, -1.0),
            z(4, 1.0),
            z(3, -1.0),
            z(4, 1.0),
            z(1, -1.0),
        ];
        for (a, b) in t.values().iter().zip(&expect) {
            assert!(close(a, b, 1e-70));
        }
        // z(3,-1) = 1
        let mu = t.mean();
        let expect_mu = HpComplex::new(Float::new(P), -(Float::with_val(P, 3).sqrt().recip()));
        assert!(close(&mu, &expect_mu, 1e-70));
    }

    #[test]
    fn cubic_twist_is_omega_powers() {
        let ones = PeriodicCoefficients::from_reals(&[1.0; 3], P).unwrap();
        let s = PolynomialExponent::from_ints(&[0, 0, 0, 1]).unwrap();
        let t = twist(&ones, &s, &RootOfUnity::new(1, 3).unwrap()).unwrap();
        for (a, b) in t.values().iter().zip(omega_cycle().values()) {
            assert!(close(a, b, 1e-70));
        }
        assert!(twist(
            &ones,
            &PolynomialExponent::new(crate::poly::RatPoly::parse("1/2*t^2").unwrap()).unwrap(),
            &RootOfUnity::new(1, 3).unwrap()
        )
        .is_err());
    }

    #[test]
    fn classification() {
        let alt = PeriodicCoefficients::from_reals(&[1.0, -1.0], P).unwrap();
        let sq = PolynomialExponent::from_ints(&[0, 0, 1]).unwrap();
        let spec = SeriesSpec::polynomial(alt, sq.clone());
        match classify_radial_limit(&spec, &RootOfUnity::one()).unwrap() {
            RadialLimitResult::Converges(v) => assert_eq!(v.re, 0.5),
            other => panic!("{}", other.tag()),
        }
        let sixth = RootOfUnity::new(1, 6).unwrap();
        assert_eq!(
            classify_radial_limit(&spec, &sixth).unwrap().tag(),
            "Diverges"
        );

        let ones = PeriodicCoefficients::from_reals(&[1.0, 1.0], P).unwrap();
        let spec = SeriesSpec::polynomial(ones, sq);
        match classify_radial_limit(&spec, &RootOfUnity::one()).unwrap() {
            RadialLimitResult::Diverges { leading_term, .. } => {
                let half_sqrt_pi = numeric::pi(P).sqrt() / 2u32;
                assert!(
                    Float::with_val(P, &leading_term.coefficient.re - &half_sqrt_pi).abs()
                        < pow2(P, -240)
                );
                assert_eq!(leading_term.exponent, Rational::from((-1, 2)));
            }
            other => panic!("{}", other.tag()),
        }
    }

    #[test]
    fn extrapolation_geometric() {
        let alt = PeriodicCoefficients::from_reals(&[1.0, -1.0], P).unwrap();
        let spec = SeriesSpec::polynomial(alt, PolynomialExponent::from_ints(&[0, 1]).unwrap());
        let ex = extrapolate_limit(
            &spec,
            &RootOfUnity::one(),
            &Grid::default(),
            2,
            &EvalOptions::default(),
        )
        .unwrap();
        assert!((ex.estimate.re.to_f64() - 0.5).abs() < 1e-8);
        assert!(ex.error_estimate < 1e-6);
    }

    #[test]
    fn extrapolation_rejects_underdetermined() {
        let alt = PeriodicCoefficients::from_reals(&[1.0, -1.0], P).unwrap();
        let spec = SeriesSpec::polynomial(alt, PolynomialExponent::from_ints(&[0, 1]).unwrap());
        let grid = Grid {
            count: 3,
            ..Grid::default()
        };
        assert!(matches!(
            extrapolate_limit(
                &spec,
                &RootOfUnity::one(),
                &grid,
                4,
                &EvalOptions::default()
            ),
            Err(Error::SingularFit(_))
        ));
    }
}
