use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Float;

use super::PrecisionContext;

/// Arbitrary-precision complex number as a pair of MPFR reals.
///
/// All results take the precision of the left operand.
#[derive(Clone, Debug, PartialEq)]
pub struct HpComplex {
    pub re: Float,
    pub im: Float,
}

impl HpComplex {
    pub fn new(re: Float, im: Float) -> Self {
        HpComplex { re, im }
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        HpComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        HpComplex::new(Float::new(prec), Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        HpComplex::new(Float::with_val(prec, 1u32), Float::new(prec))
    }

    pub fn i(prec: u32) -> Self {
        HpComplex::new(Float::new(prec), Float::with_val(prec, 1u32))
    }

    pub fn from_f64(ctx: &PrecisionContext, re: f64, im: f64) -> Self {
        HpComplex::new(ctx.real(re), ctx.real(im))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        HpComplex::new(self.re.clone(), Float::with_val(self.prec(), -&self.im))
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn add_real(&self, x: &Float) -> Self {
        HpComplex::new(Float::with_val(self.prec(), &self.re + x), self.im.clone())
    }

    pub fn mul_real(&self, x: &Float) -> Self {
        let p = self.prec();
        HpComplex::new(Float::with_val(p, &self.re * x), Float::with_val(p, &self.im * x))
    }

    pub fn div_real(&self, x: &Float) -> Self {
        let p = self.prec();
        HpComplex::new(Float::with_val(p, &self.re / x), Float::with_val(p, &self.im / x))
    }

    pub fn mul_i(&self) -> Self {
        HpComplex::new(Float::with_val(self.prec(), -&self.im), self.re.clone())
    }

    pub fn square(&self) -> Self {
        let p = self.prec();
        let re = Float::with_val(p, self.re.square_ref()) - Float::with_val(p, self.im.square_ref());
        let im = Float::with_val(p, &self.re * &self.im) * 2u32;
        HpComplex::new(re, im)
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let n = self.norm_sqr();
        HpComplex::new(
            Float::with_val(p, &self.re / &n),
            Float::with_val(p, -&self.im) / &n,
        )
    }

    pub fn div(&self, rhs: &HpComplex) -> Self {
        let p = self.prec();
        let n = rhs.norm_sqr();
        let re = Float::with_val(p, &self.re * &rhs.re + &self.im * &rhs.im);
        let im = Float::with_val(p, &self.im * &rhs.re - &self.re * &rhs.im);
        HpComplex::new(re / &n, im / &n)
    }

    /// Integer power by repeated squaring; `n = 0` gives one.
    pub fn powu(&self, n: u32) -> Self {
        let mut result = HpComplex::one(self.prec());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        result
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let scale = Float::with_val(p, self.re.exp_ref());
        let (sin, cos) = Float::with_val(p, &self.im).sin_cos(Float::new(p));
        HpComplex::new(cos * &scale, sin * &scale)
    }

    /// Principal branch of the logarithm.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        HpComplex::new(Float::with_val(p, self.abs().ln()), self.arg())
    }

    /// Principal square root (branch cut on the negative real axis).
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return HpComplex::zero(p);
        }
        let r = self.abs();
        if self.re.cmp0() != Some(Ordering::Less) {
            let t = Float::with_val(p, &r + &self.re) / 2u32;
            let t = t.sqrt();
            let im = Float::with_val(p, &self.im / &t) / 2u32;
            HpComplex::new(t, im)
        } else {
            let t = Float::with_val(p, &r - &self.re) / 2u32;
            let t = t.sqrt();
            let re = Float::with_val(p, self.im.abs_ref()) / &t / 2u32;
            let im = if self.im.is_sign_negative() { -t } else { t };
            HpComplex::new(re, im)
        }
    }

    pub fn sin(&self) -> Self {
        let p = self.prec();
        let (sin, cos) = Float::with_val(p, &self.re).sin_cos(Float::new(p));
        let (sinh, cosh) = Float::with_val(p, &self.im).sinh_cosh(Float::new(p));
        HpComplex::new(sin * cosh, cos * sinh)
    }

    pub fn cos(&self) -> Self {
        let p = self.prec();
        let (sin, cos) = Float::with_val(p, &self.re).sin_cos(Float::new(p));
        let (sinh, cosh) = Float::with_val(p, &self.im).sinh_cosh(Float::new(p));
        HpComplex::new(cos * cosh, -(sin * sinh))
    }

    /// `base^(-self)` for a positive real base, given `ln(base)`.
    pub fn real_base_pow_neg(&self, ln_base: &Float) -> Self {
        let p = self.prec();
        let exponent = HpComplex::new(
            -Float::with_val(p, &self.re * ln_base),
            -Float::with_val(p, &self.im * ln_base),
        );
        exponent.exp()
    }

    /// `self^w` on the principal branch.
    pub fn pow(&self, w: &HpComplex) -> Self {
        (&self.ln() * w).exp()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a HpComplex> for &'a HpComplex {
            type Output = HpComplex;
            fn $method(self, rhs: &'a HpComplex) -> HpComplex {
                let f: fn(&HpComplex, &HpComplex) -> HpComplex = $body;
                f(self, rhs)
            }
        }
        impl $trait<HpComplex> for HpComplex {
            type Output = HpComplex;
            fn $method(self, rhs: HpComplex) -> HpComplex {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| {
    let p = a.prec();
    HpComplex::new(Float::with_val(p, &a.re + &b.re), Float::with_val(p, &a.im + &b.im))
});

forward_binop!(Sub, sub, |a, b| {
    let p = a.prec();
    HpComplex::new(Float::with_val(p, &a.re - &b.re), Float::with_val(p, &a.im - &b.im))
});

forward_binop!(Mul, mul, |a, b| {
    let p = a.prec();
    HpComplex::new(
        Float::with_val(p, &a.re * &b.re - &a.im * &b.im),
        Float::with_val(p, &a.re * &b.im + &a.im * &b.re),
    )
});

impl Neg for &HpComplex {
    type Output = HpComplex;
    fn neg(self) -> HpComplex {
        let p = self.prec();
        HpComplex::new(Float::with_val(p, -&self.re), Float::with_val(p, -&self.im))
    }
}

impl Neg for HpComplex {
    type Output = HpComplex;
    fn neg(self) -> HpComplex {
        HpComplex::new(-self.re, -self.im)
    }
}

/// Sums in a fixed pairwise order so results do not depend on how the
/// terms were produced.
pub fn pairwise_sum(values: &[HpComplex], prec: u32) -> HpComplex {
    match values.len() {
        0 => HpComplex::zero(prec),
        1 => values[0].clone(),
        n if n <= 8 => values.iter().skip(1).fold(values[0].clone(), |acc, v| &acc + v),
        n => {
            let (lo, hi) = values.split_at(n / 2);
            &pairwise_sum(lo, prec) + &pairwise_sum(hi, prec)
        }
    }
}

/// Real counterpart of [`pairwise_sum`].
pub fn pairwise_sum_real(values: &[Float], prec: u32) -> Float {
    match values.len() {
        0 => Float::new(prec),
        1 => values[0].clone(),
        n if n <= 8 => values
            .iter()
            .skip(1)
            .fold(values[0].clone(), |acc, v| acc + v),
        n => {
            let (lo, hi) = values.split_at(n / 2);
            pairwise_sum_real(lo, prec) + pairwise_sum_real(hi, prec)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hp::with_precision;

    fn close(a: &HpComplex, b: &HpComplex, tol: f64) -> bool {
        (a - b).abs().to_f64() <= tol
    }

    #[test]
    fn exp_ln_roundtrip() {
        let ctx = with_precision(40).unwrap();
        let z = HpComplex::from_f64(&ctx, -1.25, 2.5);
        assert!(close(&z.ln().exp(), &z, 1e-50));
    }

    #[test]
    fn sqrt_branches() {
        let ctx = with_precision(30).unwrap();
        for (re, im) in [(3.0, 4.0), (-3.0, 4.0), (-3.0, -4.0), (-4.0, 0.0), (0.0, 2.0)] {
            let z = HpComplex::from_f64(&ctx, re, im);
            let r = z.sqrt();
            assert!(close(&r.square(), &z, 1e-38), "{re} {im}");
            assert!(r.re >= 0);
        }
    }

    #[test]
    fn trig_identity() {
        let ctx = with_precision(30).unwrap();
        let z = HpComplex::from_f64(&ctx, 0.7, -3.2);
        let s = z.sin().square();
        let c = z.cos().square();
        assert!(close(&(&s + &c), &HpComplex::one(ctx.bits()), 1e-35));
    }

    #[test]
    fn division_and_powers() {
        let ctx = with_precision(30).unwrap();
        let a = HpComplex::from_f64(&ctx, 1.5, -0.5);
        let b = HpComplex::from_f64(&ctx, -2.0, 3.0);
        assert!(close(&(&a.div(&b) * &b), &a, 1e-38));
        assert!(close(&a.powu(5), &(&(&a.square() * &a.square()) * &a), 1e-36));
        let w = HpComplex::from_f64(&ctx, 5.0, 0.0);
        assert!(close(&a.pow(&w), &a.powu(5), 1e-35));
    }
}
