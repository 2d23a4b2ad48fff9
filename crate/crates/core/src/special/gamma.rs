use rug::Float;

use super::bernoulli::bernoulli_floats;
use crate::error::{Error, Result};
use crate::hp::{HpComplex, PrecisionContext};

/// True when `s` is a non-positive integer.
pub(crate) fn is_nonpositive_integer(s: &HpComplex) -> bool {
    s.im.is_zero() && s.re <= 0 && s.re.is_integer()
}

/// Complex Gamma function.
///
/// `Re(s) < 1/2` goes through the reflection formula; otherwise the argument
/// is shifted upward until the Stirling series for `ln Gamma` converges to
/// working precision.
pub fn gamma(s: &HpComplex, ctx: &PrecisionContext) -> Result<HpComplex> {
    if is_nonpositive_integer(s) {
        return Err(Error::Pole {
            function: "gamma",
            at: s.re.to_string(),
        });
    }
    if s.re < 0.5 {
        // Gamma(s) = pi / (sin(pi s) Gamma(1 - s))
        let one_minus = HpComplex::from_real(ctx.int(1)) - s.clone();
        let g = gamma_right(&one_minus, ctx)?;
        let sin = s.mul_real(ctx.pi()).sin();
        let den = &sin * &g;
        Ok(HpComplex::from_real(ctx.pi().clone()).div(&den))
    } else {
        gamma_right(s, ctx)
    }
}

fn gamma_right(s: &HpComplex, ctx: &PrecisionContext) -> Result<HpComplex> {
    gamma_pow_right(s, 1, ctx)
}

/// `Gamma(s)^k` for `Re(s) >= 1/2` with a single exponential.
///
/// The argument is shifted until `|z| + Re(z) >= 0.75 * working_digits + 4`,
/// where the smallest Stirling term is below the working precision.
fn gamma_pow_right(s: &HpComplex, k: u32, ctx: &PrecisionContext) -> Result<HpComplex> {
    let target = 0.75 * f64::from(ctx.working_digits()) + 4.0;
    let mut z = s.clone();
    let mut product = HpComplex::one(ctx.bits());
    let mut shifted = false;
    while z.abs().to_f64() + z.re.to_f64() < target {
        product = &product * &z;
        z = z.add_real(&ctx.int(1));
        shifted = true;
    }
    let lg = ln_gamma_stirling(&z, ctx)?.mul_real(&ctx.int(i64::from(k)));
    let value = lg.exp();
    if shifted {
        Ok(value.div(&product.powu(k)))
    } else {
        Ok(value)
    }
}

/// `Gamma(s)^k`.
pub(crate) fn gamma_pow(s: &HpComplex, k: u32, ctx: &PrecisionContext) -> Result<HpComplex> {
    if s.re >= 0.5 {
        gamma_pow_right(s, k, ctx)
    } else {
        Ok(gamma(s, ctx)?.powu(k))
    }
}

/// Stirling series for `ln Gamma(z)`; accurate once `|z|` is large
/// compared to the working digits.
fn ln_gamma_stirling(z: &HpComplex, ctx: &PrecisionContext) -> Result<HpComplex> {
    let bits = ctx.bits();
    let tables = bernoulli_floats(ctx);
    let ln_z = z.ln();
    let half = ctx.ratio(1, 2);
    // (z - 1/2) ln z - z + ln(2 pi)/2
    let mut sum = &(&z.add_real(&-half.clone()) * &ln_z) - z;
    sum = sum.add_real(&Float::with_val(bits, ctx.ln_2pi() / 2u32));

    let eps = ctx.working_eps() / 16u32;
    let inv = z.recip();
    let inv2 = inv.square();
    let mut power = inv; // z^(1 - 2j)
    for j in 1..tables.stirling.len() {
        let term = power.mul_real(&tables.stirling[j]);
        let small = term.abs() < eps;
        sum = &sum + &term;
        if small {
            return Ok(sum);
        }
        power = &power * &inv2;
    }
    Err(Error::NonConvergence {
        what: "Stirling series",
        detail: format!("|z| = {:.3e} too small", z.abs().to_f64()),
    })
}
