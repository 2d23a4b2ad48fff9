use rug::float::Constant;
use rug::Float;

use crate::error::{Error, Result};
use crate::hp::{HpComplex, PrecisionContext};

/// `|z|` above which the asymptotic expansion of `K_0` is used.
///
/// The expansion's smallest term is about `exp(-2|z|)` relative to the
/// result, so full working precision needs `|z| > working_digits * ln(10) / 2`.
pub fn k0_asymptotic_threshold(ctx: &PrecisionContext) -> f64 {
    f64::from(ctx.working_digits()) * std::f64::consts::LN_10 / 2.0 + 5.0
}

/// Modified Bessel function `K_0(z)` for `Re(z) > 0`.
pub fn bessel_k0(z: &HpComplex, ctx: &PrecisionContext) -> Result<HpComplex> {
    if z.re.cmp0() != Some(std::cmp::Ordering::Greater) {
        return Err(Error::domain("bessel_k0", "Re(z) must be positive"));
    }
    let r = z.abs().to_f64();
    if r >= k0_asymptotic_threshold(ctx) {
        k0_asymptotic(z, ctx)
    } else {
        Ok(k0_series(z, ctx))
    }
}

/// `K_{1/2}(z) = sqrt(pi / (2 z)) e^(-z)`.
pub fn bessel_k_half(z: &HpComplex, ctx: &PrecisionContext) -> Result<HpComplex> {
    if z.re.cmp0() != Some(std::cmp::Ordering::Greater) {
        return Err(Error::domain("bessel_k_half", "Re(z) must be positive"));
    }
    let bits = ctx.bits();
    let ratio = HpComplex::from_real(Float::with_val(bits, ctx.pi() / 2u32)).div(z);
    Ok(&ratio.sqrt() * &(-z.clone()).exp())
}

/// `K_0(z) = -(ln(z/2) + gamma) I_0(z) + sum_k (z^2/4)^k / (k!)^2 H_k`.
///
/// `I_0` grows like `e^|z|` while `K_0` decays like `e^-Re(z)`, so the sum is
/// carried with that many extra bits.
fn k0_series(z: &HpComplex, ctx: &PrecisionContext) -> HpComplex {
    let r = z.abs().to_f64();
    let extra = ((r + z.re.to_f64().abs()) / std::f64::consts::LN_2).ceil() as u32 + 16;
    let bits = ctx.bits() + extra;
    let zb = HpComplex::new(Float::with_val(bits, &z.re), Float::with_val(bits, &z.im));
    let w = zb.square().div_real(&Float::with_val(bits, 4u32));

    let mut term = HpComplex::one(bits);
    let mut i0 = HpComplex::one(bits);
    let mut tail = HpComplex::zero(bits);
    let mut harmonic = Float::new(bits);
    let eps = Float::with_val(bits, 1u32) >> (bits as i32);
    let mut peak = Float::with_val(bits, 1u32);
    let mut k: u32 = 1;
    loop {
        let kk = Float::with_val(bits, k * k);
        term = (&term * &w).div_real(&kk);
        harmonic += Float::with_val(bits, 1u32) / k;
        let t_abs = term.abs();
        if t_abs > peak {
            peak = t_abs.clone();
        }
        i0 = &i0 + &term;
        tail = &tail + &term.mul_real(&harmonic);
        if f64::from(k) > r && Float::with_val(bits, &harmonic + 1u32) * &t_abs < Float::with_val(bits, &eps * &peak) {
            break;
        }
        k += 1;
    }

    let half_z = zb.div_real(&Float::with_val(bits, 2u32));
    let gamma = Float::with_val(bits, Constant::Euler);
    let log_term = half_z.ln().add_real(&gamma);
    let value = &tail - &(&log_term * &i0);
    let out = ctx.bits();
    HpComplex::new(Float::with_val(out, &value.re), Float::with_val(out, &value.im))
}

/// `K_0(z) ~ sqrt(pi/(2z)) e^-z sum_k a_k z^-k`, `a_k = a_{k-1} * -(2k-1)^2 / (8k)`.
fn k0_asymptotic(z: &HpComplex, ctx: &PrecisionContext) -> Result<HpComplex> {
    let bits = ctx.bits();
    let eps = ctx.working_eps() / 16u32;
    let inv = z.recip();
    let mut term = HpComplex::one(bits);
    let mut sum = HpComplex::one(bits);
    let mut last = Float::with_val(bits, 1u32);
    for k in 1u32..10_000 {
        let factor = -Float::with_val(bits, (2 * k - 1) * (2 * k - 1)) / (8 * k);
        term = term.mul_real(&factor);
        term = &term * &inv;
        let t_abs = term.abs();
        sum = &sum + &term;
        if t_abs < eps {
            let prefactor = HpComplex::from_real(Float::with_val(bits, ctx.pi() / 2u32))
                .div(z)
                .sqrt();
            return Ok(&prefactor * &(&(-z.clone()).exp() * &sum));
        }
        if t_abs > last {
            break;
        }
        last = t_abs;
    }
    Err(Error::NonConvergence {
        what: "K0 asymptotic expansion",
        detail: format!("|z| = {:.3e}", z.abs().to_f64()),
    })
}
