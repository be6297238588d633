//! Double-exponential quadrature at arbitrary precision.
//!
//! `tanh_sinh` handles finite intervals (including integrable endpoint
//! singularities), `exp_sinh` handles `[a, ∞)` for integrands that decay at
//! least exponentially on the unit scale. Both halve the step until two
//! consecutive levels agree to the requested tolerance.

use rug::Float;

use super::HpReal;

#[derive(Clone, Debug)]
pub struct Quadrature {
    pub value: HpReal,
    /// Difference between the last two refinement levels.
    pub error_estimate: HpReal,
    pub levels: u32,
}

const MAX_LEVEL: u32 = 14;
const MIN_LEVEL: u32 = 3;

fn half_pi(prec: u32) -> Float {
    super::pi(prec) / 2u32
}

/// ∫_a^b f(x) dx.
pub fn tanh_sinh<F>(f: F, a: &HpReal, b: &HpReal, tol: &HpReal, prec: u32) -> Quadrature
where
    F: Fn(&HpReal) -> HpReal,
{
    let wp = prec + 16;
    let a = Float::with_val(wp, a);
    let b = Float::with_val(wp, b);
    let center = Float::with_val(wp, &a + &b) / 2u32;
    let half_len = Float::with_val(wp, &b - &a) / 2u32;
    let hp = half_pi(wp);
    // beyond this the weights are below 2^-wp
    let t_max = ((wp as f64) * std::f64::consts::LN_2 / std::f64::consts::FRAC_PI_2 + 2.0)
        .ln()
        .max(1.0)
        + 0.5;

    // node at parameter t: returns (distance to nearest endpoint as fraction of half_len, weight)
    let node = |t: &Float| -> (Float, Float) {
        let sh = Float::with_val(wp, t.sinh_ref());
        let ch = Float::with_val(wp, t.cosh_ref());
        let u = Float::with_val(wp, &hp * &sh);
        // 1 - tanh(|u|) = 2 / (e^{2|u|} + 1)
        let e2u = (Float::with_val(wp, u.abs_ref()) * 2u32).exp();
        let one_minus = Float::with_val(wp, 2u32) / (e2u + 1u32);
        let cu = Float::with_val(wp, u.cosh_ref());
        let w = Float::with_val(wp, &hp * &ch) / cu.square();
        (one_minus, w)
    };

    let eval_pair = |t: &Float| -> Float {
        let (one_minus, w) = node(t);
        if w.is_zero() {
            return Float::new(wp);
        }
        let offset = Float::with_val(wp, &half_len * &one_minus);
        let right = Float::with_val(wp, &b - &offset);
        let left = Float::with_val(wp, &a + &offset);
        let fr = f(&right);
        let fl = f(&left);
        Float::with_val(wp, fr + fl) * w
    };

    // level 0: h = 1, nodes at t = 0, ±1, ±2, ...
    let mut h = Float::with_val(wp, 1);
    let mut sum = {
        let zero = Float::new(wp);
        let (_, w0) = node(&zero);
        Float::with_val(wp, f(&center) * w0)
    };
    let mut t = 1.0f64;
    while t <= t_max {
        sum += eval_pair(&Float::with_val(wp, t));
        t += 1.0;
    }
    let mut estimate = Float::with_val(wp, &sum * &h) * &half_len;
    let mut err = Float::with_val(wp, f64::INFINITY);
    let mut level = 0;
    while level < MAX_LEVEL {
        level += 1;
        h /= 2u32;
        // new nodes are odd multiples of h
        let mut k = 1u64;
        loop {
            let tk = Float::with_val(wp, &h * k);
            if tk.to_f64() > t_max {
                break;
            }
            sum += eval_pair(&tk);
            k += 2;
        }
        let next = Float::with_val(wp, &sum * &h) * &half_len;
        err = Float::with_val(wp, &next - &estimate).abs();
        estimate = next;
        if level >= MIN_LEVEL && err <= *tol {
            break;
        }
    }
    Quadrature {
        value: Float::with_val(prec, estimate),
        error_estimate: Float::with_val(prec, err),
        levels: level,
    }
}

/// ∫_a^∞ f(x) dx for integrands decaying at least like e^{-x}.
pub fn exp_sinh<F>(f: F, a: &HpReal, tol: &HpReal, prec: u32) -> Quadrature
where
    F: Fn(&HpReal) -> HpReal,
{
    let wp = prec + 16;
    let a = Float::with_val(wp, a);
    let hp = half_pi(wp);
    let ln2 = std::f64::consts::LN_2;
    // right end: x = e^{(π/2) sinh t} up to where e^{-x} is negligible
    let x_max = (wp as f64) * ln2 + 64.0;
    let t_hi = (x_max.ln() / std::f64::consts::FRAC_PI_2).asinh();
    // left end: x below 2^{-wp}
    let t_lo = -((wp as f64) * ln2 / std::f64::consts::FRAC_PI_2).asinh();

    let term = |t: &Float| -> Float {
        let sh = Float::with_val(wp, t.sinh_ref());
        let ch = Float::with_val(wp, t.cosh_ref());
        let ex = Float::with_val(wp, &hp * &sh).exp();
        let w = Float::with_val(wp, &hp * &ch) * &ex;
        let x = Float::with_val(wp, &a + &ex);
        let fx = f(&x);
        if fx.is_zero() {
            return Float::new(wp);
        }
        fx * w
    };

    let mut h = Float::with_val(wp, 1);
    let mut sum = Float::new(wp);
    let mut t = t_lo.ceil();
    while t <= t_hi {
        sum += term(&Float::with_val(wp, t));
        t += 1.0;
    }
    let mut estimate = Float::with_val(wp, &sum * &h);
    let mut err = Float::with_val(wp, f64::INFINITY);
    let mut level = 0;
    while level < MAX_LEVEL {
        level += 1;
        h /= 2u32;
        let hf = h.to_f64();
        let k_start = ((t_lo / hf).ceil() as i64) | 1; // odd
        let mut k = k_start;
        loop {
            let tk = Float::with_val(wp, &h * k);
            if tk.to_f64() > t_hi {
                break;
            }
            sum += term(&tk);
            k += 2;
        }
        let next = Float::with_val(wp, &sum * &h);
        err = Float::with_val(wp, &next - &estimate).abs();
        estimate = next;
        if level >= MIN_LEVEL && err <= *tol {
            break;
        }
    }
    Quadrature {
        value: Float::with_val(prec, estimate),
        error_estimate: Float::with_val(prec, err),
        levels: level,
    }
}
