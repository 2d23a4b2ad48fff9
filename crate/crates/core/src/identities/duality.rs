use rug::ops::Pow;
use rug::{Float, Rational};

use super::blocks::{parity_sign, two_pow};
use super::formulas::derivative_term;
use crate::error::{Error, Result};
use crate::hp::{HpReal, PrecisionContext};
use crate::mellin::{lambda_abscissa, lambda_line_integral};
use crate::psi::{series_l, SeriesRequest};
use crate::special::{bernoulli, factorial};

/// Residues of `F_m(s) = zeta^k(2m+1+s) zeta^k(1-s) / cos(pi s/2) (rho/(2 pi)^k)^(-s)`
/// between the production line and the shifted line `Re(s) = lambda`.
#[derive(Clone, Debug)]
pub struct Residues {
    /// At `s = 0`: `2^k D(k, m, rho)`.
    pub at_zero: HpReal,
    /// At `s = -2m`: `(-1)^(m+1) 2^k (rho/(2 pi)^k)^(2m) D(k, m, (4 pi^2)^k / rho)`.
    pub at_minus_2m: HpReal,
    /// At `s = 1 - 2j` for `j = 0, 1, ...` while `1 - 2j > lambda`:
    /// `(-1)^(j+1) (2/pi) zeta^k(2m+2-2j) zeta^k(2j) (rho/(2 pi)^k)^(2j-1)`.
    pub at_odd: Vec<(i32, HpReal)>,
}

impl Residues {
    pub fn total(&self, ctx: &PrecisionContext) -> HpReal {
        let mut t = Float::with_val(ctx.bits(), &self.at_zero + &self.at_minus_2m);
        for (_, r) in &self.at_odd {
            t += r;
        }
        t
    }
}

/// `zeta(2n)` from Bernoulli numbers, with `zeta(0) = -1/2` and the trivial
/// zeros for `n < 0`.
fn zeta_even(n: i32, ctx: &PrecisionContext) -> HpReal {
    let bits = ctx.bits();
    if n < 0 {
        return ctx.zero();
    }
    let n = n as u32;
    let table = bernoulli(2 * n as usize);
    let c = Rational::from(table.get(2 * n as usize).unwrap() / Rational::from(factorial(2 * n))) / 2u32;
    let two_pi = Float::with_val(bits, ctx.pi() * 2u32);
    let v = Float::with_val(bits, &c) * Float::with_val(bits, two_pi.pow(2 * n));
    if n % 2 == 0 {
        -v
    } else {
        v
    }
}

/// `(rho/(2 pi)^k)^e`.
fn ratio_pow(rho: &HpReal, k: u32, e: i64, ctx: &PrecisionContext) -> HpReal {
    let bits = ctx.bits();
    let two_pi_k = Float::with_val(bits, Float::with_val(bits, ctx.pi() * 2u32).pow(k));
    let r = Float::with_val(bits, rho / &two_pi_k);
    r.pow(e as i32)
}

/// Every residue crossed when the line for `L_m(rho)` moves to [`lambda_abscissa`].
pub fn residues(k: u32, m: i32, rho: &HpReal, ctx: &PrecisionContext) -> Result<Residues> {
    if k == 0 || m == 0 {
        return Err(Error::invalid("need k >= 1 and m != 0"));
    }
    let bits = ctx.bits();
    let ki = i64::from(k);
    let mi = i64::from(m);
    let at_zero = derivative_term(k, m, rho, ctx)? * two_pow(ki, ctx);

    let four_pi2_k = Float::with_val(bits, (Float::with_val(bits, ctx.pi().square_ref()) * 4u32).pow(k));
    let dual_rho = Float::with_val(bits, &four_pi2_k / rho);
    let d_dual = derivative_term(k, m, &dual_rho, ctx)?;
    let mut at_minus_2m = d_dual * two_pow(ki, ctx) * ratio_pow(rho, k, 2 * mi, ctx);
    if parity_sign(mi + 1) < 0 {
        at_minus_2m = -at_minus_2m;
    }

    let lambda = lambda_abscissa(m);
    let two_over_pi = Float::with_val(bits, 2u32) / ctx.pi();
    let mut at_odd = Vec::new();
    let mut j = 0i32;
    while f64::from(1 - 2 * j) > lambda {
        let z = zeta_even(m + 1 - j, ctx).pow(k) * zeta_even(j, ctx).pow(k);
        let mut r = z * &two_over_pi * ratio_pow(rho, k, 2 * i64::from(j) - 1, ctx);
        if parity_sign(i64::from(j) + 1) < 0 {
            r = -r;
        }
        at_odd.push((1 - 2 * j, r));
        j += 1;
    }
    Ok(Residues {
        at_zero,
        at_minus_2m,
        at_odd,
    })
}

/// Both ends of the contour shift for `L_m(rho)`.
#[derive(Clone, Debug)]
pub struct DualityCheck {
    pub k: u32,
    pub m: i32,
    /// `2^k L_m(rho)` from the production line.
    pub scaled_series: HpReal,
    pub residues: Residues,
    /// The shifted line integral, computed numerically.
    pub lambda_integral: HpReal,
    /// `2^k L_m(rho)` minus every residue.
    pub assembled: HpReal,
    /// `(-1)^m 2^k (rho/(2 pi)^k)^(2m) L_m((4 pi^2)^k / rho)`, the value the
    /// substitution `s -> -2m - s` predicts for the shifted line.
    pub dual_series: HpReal,
}

impl DualityCheck {
    /// `|lambda_integral - assembled|`.
    pub fn residue_gap(&self) -> HpReal {
        Float::with_val(self.assembled.prec(), &self.lambda_integral - &self.assembled).abs()
    }

    /// `|lambda_integral - dual_series|`.
    pub fn duality_gap(&self) -> HpReal {
        Float::with_val(self.assembled.prec(), &self.lambda_integral - &self.dual_series).abs()
    }
}

/// Evaluates the shifted line numerically and compares it with the series
/// minus the residues and with the dual series.
pub fn self_duality(k: u32, m: i32, rho: &HpReal, ctx: &PrecisionContext) -> Result<DualityCheck> {
    let bits = ctx.bits();
    let ki = i64::from(k);
    let series = series_l(&SeriesRequest::new(rho.clone(), k, m), ctx)?.value;
    let scaled_series = series * two_pow(ki, ctx);
    let residues = residues(k, m, rho, ctx)?;
    let lambda_integral = lambda_line_integral(k, m, rho, ctx)?;
    let assembled = Float::with_val(bits, &scaled_series - &residues.total(ctx));

    let four_pi2_k = Float::with_val(bits, (Float::with_val(bits, ctx.pi().square_ref()) * 4u32).pow(k));
    let dual_rho = Float::with_val(bits, &four_pi2_k / rho);
    let dual = series_l(&SeriesRequest::new(dual_rho, k, m), ctx)?.value;
    let mut dual_series = dual * two_pow(ki, ctx) * ratio_pow(rho, k, 2 * i64::from(m), ctx);
    if parity_sign(i64::from(m)) < 0 {
        dual_series = -dual_series;
    }
    Ok(DualityCheck {
        k,
        m,
        scaled_series,
        residues,
        lambda_integral,
        assembled,
        dual_series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hp::{rel_diff, with_precision, HpComplex};
    use crate::special::zeta;

    #[test]
    fn zeta_even_matches_zeta() {
        let ctx = with_precision(30).unwrap();
        assert_eq!(zeta_even(0, &ctx), ctx.ratio(-1, 2));
        assert!(zeta_even(-2, &ctx).is_zero());
        for n in 1..6 {
            let z = zeta(&HpComplex::from_real(ctx.int(2 * n)), &ctx).unwrap().re;
            assert!(rel_diff(&zeta_even(n as i32, &ctx), &z) < ctx.tolerance(2));
        }
    }

    #[test]
    fn residue_poles_lie_right_of_lambda() {
        let ctx = with_precision(20).unwrap();
        let rho = ctx.int(5);
        let r = residues(1, 1, &rho, &ctx).unwrap();
        assert_eq!(r.at_odd.iter().map(|(s, _)| *s).collect::<Vec<_>>(), vec![1, -1, -3]);
        let r = residues(1, -1, &rho, &ctx).unwrap();
        assert_eq!(r.at_odd.iter().map(|(s, _)| *s).collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn contour_shift_k1_m1() {
        let ctx = with_precision(30).unwrap();
        let rho = ctx.real(5.5);
        let c = self_duality(1, 1, &rho, &ctx).unwrap();
        assert!(c.residue_gap() < ctx.tolerance(5), "{}", c.residue_gap());
        assert!(c.duality_gap() < ctx.tolerance(5), "{}", c.duality_gap());
    }
}
