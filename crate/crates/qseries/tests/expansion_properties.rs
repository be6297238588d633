use proptest::prelude::*;
use qseries::euler_maclaurin::*;
use qseries::numeric::{self, HpComplex};
use qseries::radial::{closed_form_limit, Grid};
use qseries::series::{EvalOptions, PeriodicCoefficients, PolynomialExponent, SeriesSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;

const P: u32 = 256;

fn mean_zero_cycle(rng: &mut ChaCha8Rng, k: usize) -> PeriodicCoefficients {
    let mut v: Vec<HpComplex> = (0..k - 1)
        .map(|_| {
            HpComplex::from_f64(
                P,
                rng.gen_range(-9..=9) as f64,
                rng.gen_range(-9..=9) as f64,
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

fn random_poly(rng: &mut ChaCha8Rng, d: usize) -> PolynomialExponent {
    let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-9..=9)).collect();
    c.push(rng.gen_range(1..=9));
    PolynomialExponent::from_ints(&c).unwrap()
}

#[test]
fn remainder_bound_examples() {
    let s = PolynomialExponent::from_ints(&[0, 1]).unwrap();
    let x = Float::with_val(P, 0.1);
    let b1 = remainder_bound(&s, 1, &x, P).unwrap().to_f64();
    assert!((b1 - 0.133_993_925_154_502_2 * 0.1).abs() < 1e-15);
    assert!((b1 - 0.0134).abs() < 1e-4);
    let b2 = remainder_bound(&s, 2, &x, P).unwrap().to_f64();
    assert!((b2 / 1e-3 - 0.002_672_136_670_724_43).abs() < 1e-15);
}

#[test]
fn theta_expansion_through_half_power() {
    let spec = SeriesSpec::polynomial(
        PeriodicCoefficients::from_reals(&[1.0, 1.0], P).unwrap(),
        PolynomialExponent::from_ints(&[0, 0, 1]).unwrap(),
    );
    let e = series_expansion(&spec, 4, 1, P).unwrap();
    let xs = Grid {
        x_min: 1e-3,
        x_max: 1e-2,
        count: 6,
    }
    .points(P)
    .unwrap();
    let v = verify_expansion(&spec, &e, &xs, &EvalOptions::with_precision(P)).unwrap();
    assert!(v.consistent());
    // the remaining error is of order e^{-π²/x}
    assert!(v.rows.iter().all(|r| r.residual <= v.noise_floor));
    assert!(v.noise_floor < 1e-30);
}

#[test]
fn integral_expansion_t2_plus_t_against_quadrature() {
    let s = PolynomialExponent::from_ints(&[0, 1, 1]).unwrap();
    let e = integral_expansion(&s, 1, P).unwrap();
    for x in [1e-2f64, 1e-3] {
        let xv = Float::with_val(P, x);
        let q = numeric::quadrature::exp_sinh(
            |t: &Float| {
                let st = Float::with_val(P, t * t) + t;
                Float::with_val(P, -(st * &xv)).exp()
            },
            &Float::new(P),
            &numeric::pow2(P, -150),
            P,
        );
        let approx = e.eval(&xv).re;
        let resid = Float::with_val(P, q.value - approx).abs().to_f64();
        // next term is O(x^{1/2}) with coefficient √π/8
        assert!(resid < 0.25 * x.sqrt(), "{x}: {resid}");
    }
}

#[test]
fn leading_cancellation_and_constant_term_random_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(20_241_016);
    for _ in 0..12 {
        let k = rng.gen_range(2..=6);
        let d = rng.gen_range(1..=3);
        let c = mean_zero_cycle(&mut rng, k);
        let s = random_poly(&mut rng, d);
        let m = rng.gen_range(3..=5);
        let e = series_expansion(
            &SeriesSpec::polynomial(c.clone(), s.clone()),
            m,
            2 * d + 2,
            P,
        )
        .unwrap();
        assert!(e.coefficient(-1, P).abs() <= 1e-20);
        let c0 = e.coefficient(0, P);
        assert!(
            (&c0 - &closed_form_limit(&c).unwrap()).abs() <= 1e-10,
            "k={k} s={}",
            s.poly()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn derivative_slices_vanish(coeffs in prop::collection::vec(-5i64..=5, 1..=3), lead in 1i64..=4, k in 1usize..=8) {
        let mut c = coeffs;
        c.push(lead);
        let s = PolynomialExponent::from_ints(&c).unwrap();
        let d = s.degree();
        let ps = derivative_polynomials(&s, k);
        let pk = &ps[k];
        prop_assert!(pk.max_lambda_power().unwrap_or(0) <= k);
        for r in 1..=k {
            let slice = pk.slice(r);
            if let Some(deg) = slice.degree() {
                prop_assert!(deg <= r * (d - 1));
            }
            if k / r > d && k > r * d {
                prop_assert!(slice.is_zero());
            }
        }
    }
}
