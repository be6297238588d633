use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use rug::Float;

use super::HpReal;

/// Complex number with both parts at one shared precision.
#[derive(Clone, Debug, PartialEq)]
pub struct HpComplex {
    pub re: HpReal,
    pub im: HpReal,
}

impl HpComplex {
    pub fn new(re: HpReal, im: HpReal) -> Self {
        let prec = re.prec().max(im.prec());
        let mut re = re;
        let mut im = im;
        re.set_prec(prec);
        im.set_prec(prec);
        HpComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        HpComplex {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_real(Float::with_val(prec, 1))
    }

    pub fn from_real(re: HpReal) -> Self {
        let im = Float::new(re.prec());
        HpComplex { re, im }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        HpComplex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    /// e^{i·angle}.
    pub fn cis(angle: &HpReal) -> Self {
        let prec = angle.prec();
        let (s, c) = angle.clone().sin_cos(Float::new(prec));
        HpComplex { re: c, im: s }
    }

    /// e^{2πi·num/den} for integers; the reduction mod den happens before any
    /// floating-point work.
    pub fn root_of_unity_power(num: i64, den: u64, prec: u32) -> Self {
        let r = num.rem_euclid(den as i64);
        if r == 0 {
            return Self::one(prec);
        }
        // exact points on the axes
        let (r4, d4) = (4 * r as u64, den);
        if r4 % d4 == 0 {
            let (re, im) = [(1, 0), (0, 1), (-1, 0), (0, -1)][(r4 / d4) as usize];
            return HpComplex::new(Float::with_val(prec, re), Float::with_val(prec, im));
        }
        let wp = prec + 16;
        let mut angle = super::pi(wp) * 2u32;
        angle *= r;
        angle /= den;
        let c = Self::cis(&angle);
        c.with_prec(prec)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn with_prec(mut self, prec: u32) -> Self {
        self.re.set_prec(prec);
        self.im.set_prec(prec);
        self
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn abs(&self) -> HpReal {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn norm_sqr(&self) -> HpReal {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn arg(&self) -> HpReal {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn conj(&self) -> Self {
        HpComplex {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn scale(&self, k: &HpReal) -> Self {
        let p = self.prec();
        HpComplex {
            re: Float::with_val(p, &self.re * k),
            im: Float::with_val(p, &self.im * k),
        }
    }

    pub fn div_real(&self, k: &HpReal) -> Self {
        let p = self.prec();
        HpComplex {
            re: Float::with_val(p, &self.re / k),
            im: Float::with_val(p, &self.im / k),
        }
    }

    pub fn div(&self, other: &HpComplex) -> Self {
        let d = other.norm_sqr();
        (self * &other.conj()).div_real(&d)
    }

    /// Adds `c·w` for a real weight `w`.
    pub fn add_scaled(&mut self, c: &HpComplex, w: &HpReal) {
        self.re += Float::with_val(self.re.prec(), &c.re * w);
        self.im += Float::with_val(self.im.prec(), &c.im * w);
    }

    /// Formats with `digits` significant digits per component.
    pub fn format(&self, digits: usize) -> (String, String) {
        (
            super::format_real(&self.re, digits),
            super::format_real(&self.im, digits),
        )
    }

    /// Lossy conversion for diagnostics and plots.
    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for HpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.format(20);
        write!(f, "({re}, {im})")
    }
}

impl Add<&HpComplex> for &HpComplex {
    type Output = HpComplex;
    fn add(self, rhs: &HpComplex) -> HpComplex {
        let p = self.prec().max(rhs.prec());
        HpComplex {
            re: Float::with_val(p, &self.re + &rhs.re),
            im: Float::with_val(p, &self.im + &rhs.im),
        }
    }
}

impl Sub<&HpComplex> for &HpComplex {
    type Output = HpComplex;
    fn sub(self, rhs: &HpComplex) -> HpComplex {
        let p = self.prec().max(rhs.prec());
        HpComplex {
            re: Float::with_val(p, &self.re - &rhs.re),
            im: Float::with_val(p, &self.im - &rhs.im),
        }
    }
}

impl Mul<&HpComplex> for &HpComplex {
    type Output = HpComplex;
    fn mul(self, rhs: &HpComplex) -> HpComplex {
        let p = self.prec().max(rhs.prec());
        let rr = Float::with_val(p, &self.re * &rhs.re);
        let ii = Float::with_val(p, &self.im * &rhs.im);
        let ri = Float::with_val(p, &self.re * &rhs.im);
        let ir = Float::with_val(p, &self.im * &rhs.re);
        HpComplex {
            re: rr - ii,
            im: ri + ir,
        }
    }
}

impl Neg for HpComplex {
    type Output = HpComplex;
    fn neg(self) -> HpComplex {
        HpComplex {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl AddAssign<&HpComplex> for HpComplex {
    fn add_assign(&mut self, rhs: &HpComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}
