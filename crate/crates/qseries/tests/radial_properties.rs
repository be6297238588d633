use proptest::prelude::*;
use qseries::numeric::{self, HpComplex};
use qseries::radial::*;
use qseries::series::{EvalOptions, PeriodicCoefficients, PolynomialExponent, SeriesSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;

const P: u32 = 256;

fn ints(v: &[i64]) -> PeriodicCoefficients {
    PeriodicCoefficients::new(
        v.iter()
            .map(|&x| HpComplex::from_f64(P, x as f64, 0.0))
            .collect(),
    )
    .unwrap()
}

fn mean_zero_cycle(rng: &mut ChaCha8Rng, k: usize) -> PeriodicCoefficients {
    let mut v: Vec<HpComplex> = (0..k - 1)
        .map(|_| {
            HpComplex::from_f64(
                P,
                rng.gen_range(-5..=5) as f64,
                rng.gen_range(-5..=5) as f64,
            )
        })
        .collect();
    let mut last = HpComplex::zero(P);
    for c in &v {
        last = &last - c;
    }
    v.push(last);
    PeriodicCoefficients::new(v).unwrap()
}

#[test]
fn degree_independence() {
    let opts = EvalOptions::with_precision(P);
    for c in [ints(&[1, -1]), ints(&[3, -1, 0, -2])] {
        let closed = closed_form_limit(&c).unwrap();
        for s in [&[0, 1][..], &[0, 0, 1], &[0, 1, 0, 2], &[1, 0, 3, 0, 0, 1]] {
            let s = PolynomialExponent::from_ints(s).unwrap();
            let spec = SeriesSpec::polynomial(c.clone(), s.clone());
            let ex = extrapolate_limit(
                &spec,
                &RootOfUnity::one(),
                &default_grid(&spec, &RootOfUnity::one()).unwrap(),
                default_fit_order(&s),
                &opts,
            )
            .unwrap();
            assert!(
                (&ex.estimate - &closed).abs() < 1e-4,
                "{} {}",
                s.poly(),
                numeric::format_real(&ex.estimate.re, 10)
            );
        }
    }
}

#[test]
fn long_cycles_with_large_lower_coefficients() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let c = mean_zero_cycle(&mut rng, 6);
    let closed = closed_form_limit(&c).unwrap();
    for s in [&[-9, 0, 4, -7, 6][..], &[-1, -5, 8]] {
        let s = PolynomialExponent::from_ints(s).unwrap();
        let spec = SeriesSpec::polynomial(c.clone(), s.clone());
        let grid = default_grid(&spec, &RootOfUnity::one()).unwrap();
        // the degree-only grid never reaches many periods past the roots
        assert!(grid.x_max < Grid::for_degree(s.degree()).x_max);
        let ex = extrapolate_limit(
            &spec,
            &RootOfUnity::one(),
            &grid,
            default_fit_order(&s),
            &EvalOptions::with_precision(P),
        )
        .unwrap();
        assert!((&ex.estimate - &closed).abs() < 1e-4, "{}", s.poly());
    }
}

#[test]
fn closed_form_examples() {
    assert_eq!(closed_form_limit(&ints(&[1, -1])).unwrap().re, 0.5);
    assert!(closed_form_limit(&ints(&[0, 0, 0]))
        .unwrap()
        .abs()
        .is_zero());
    assert!(matches!(
        closed_form_limit(&ints(&[1, 1])),
        Err(qseries::Error::NonzeroMean { .. })
    ));
}

#[test]
fn sixth_root_magnitude_slope() {
    let spec = SeriesSpec::polynomial(
        ints(&[1, -1]),
        PolynomialExponent::from_ints(&[0, 0, 1]).unwrap(),
    );
    let xi = RootOfUnity::new(1, 6).unwrap();
    let xs: Vec<Float> = [1e-2, 1e-3, 1e-4]
        .iter()
        .map(|&x| Float::with_val(P, x))
        .collect();
    let samples = radial_samples(&spec, &xi, &xs, &EvalOptions::with_precision(P)).unwrap();
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .map(|s| (s.x.to_f64().ln(), s.value.abs().to_f64().ln()))
        .collect();
    let slope = (pts[2].1 - pts[0].1) / (pts[2].0 - pts[0].0);
    assert!((slope + 0.5).abs() < 0.1, "{slope}");
}

#[test]
fn converged_value_ignores_lower_coefficients() {
    let c = ints(&[2, -1, -1]);
    let one = RootOfUnity::one();
    let base = match classify_radial_limit(
        &SeriesSpec::polynomial(
            c.clone(),
            PolynomialExponent::from_ints(&[0, 0, 1]).unwrap(),
        ),
        &one,
    )
    .unwrap()
    {
        RadialLimitResult::Converges(v) => v,
        other => panic!("{}", other.tag()),
    };
    for s in [[5, 0, 1], [0, 7, 1], [-3, -2, 1]] {
        let spec = SeriesSpec::polynomial(c.clone(), PolynomialExponent::from_ints(&s).unwrap());
        let RadialLimitResult::Converges(v) = classify_radial_limit(&spec, &one).unwrap() else {
            panic!()
        };
        assert!((&v - &base).abs().is_zero());
    }
    // at ξ of order 4, shifting coefficients by multiples of 4 leaves the twisted cycle unchanged
    let xi = RootOfUnity::new(1, 4).unwrap();
    let c = ints(&[1, -1]);
    let at = |s: &[i64]| {
        classify_radial_limit(
            &SeriesSpec::polynomial(c.clone(), PolynomialExponent::from_ints(s).unwrap()),
            &xi,
        )
        .unwrap()
    };
    let (RadialLimitResult::Converges(a), RadialLimitResult::Converges(b)) =
        (at(&[0, 2, 2]), at(&[4, 6, 2]))
    else {
        panic!("expected convergence")
    };
    assert!((&a - &b).abs() < numeric::pow2(P, -240));
}

#[test]
fn twist_rejects_rational_polynomial() {
    let s =
        PolynomialExponent::new(qseries::poly::RatPoly::parse("1/2*t^2 + 1/2*t").unwrap()).unwrap();
    let err = twist(&ints(&[1, -1]), &s, &RootOfUnity::new(1, 3).unwrap()).unwrap_err();
    assert!(matches!(err, qseries::Error::NonIntegerPolynomial(_)));
    assert!(twist(&ints(&[1, -1]), &s, &RootOfUnity::one()).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn closed_forms_agree_and_replicate(seed in any::<u64>(), k in 2usize..=7, m in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = mean_zero_cycle(&mut rng, k);
        let l = closed_form_limit(&c).unwrap();
        prop_assert!((&l - &closed_form_limit_first_moment(&c)).abs().is_zero());
        let r = closed_form_limit(&c.replicate(m)).unwrap();
        prop_assert!((&l - &r).abs() <= numeric::pow2(P, -240));
    }

    #[test]
    fn twist_identity_and_product(seed in any::<u64>(), k in 1usize..=4, s in prop::collection::vec(-6i64..=6, 3),
                                  p1 in 0i64..5, p2 in 0i64..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = PeriodicCoefficients::new((0..k).map(|_| HpComplex::from_f64(P, rng.gen_range(-3..=3) as f64, 0.0)).collect()).unwrap();
        let mut coeffs = s.clone();
        coeffs.push(1);
        let s = PolynomialExponent::from_ints(&coeffs).unwrap();
        prop_assert_eq!(twist(&c, &s, &RootOfUnity::one()).unwrap(), c.clone());
        // orders 5 and 7 are coprime
        let (a, b) = (RootOfUnity::new(p1, 5).unwrap(), RootOfUnity::new(p2, 7).unwrap());
        let two_step = twist(&twist(&c, &s, &a).unwrap(), &s, &b).unwrap();
        let one_step = twist(&c, &s, &a.mul(&b)).unwrap();
        prop_assert_eq!(two_step.period(), one_step.period());
        for (x, y) in two_step.values().iter().zip(one_step.values()) {
            prop_assert!((x - y).abs() <= numeric::pow2(P, -240));
        }
    }
}
