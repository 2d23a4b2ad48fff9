use rug::ops::Pow;
use rug::Float;

use super::quadrature::{line_integral, truncation_height, QuadratureSettings};
use crate::error::{Error, Result};
use crate::hp::{HpComplex, HpReal, PrecisionContext};
use crate::special::{gamma_pow, zeta};

/// Abscissa of every production line integral over `Gamma^k` integrands.
pub const KERNEL_ABSCISSA: f64 = 2.5;

/// `cos(pi s / 2)^n`.
pub fn cos_half_pi_pow(s: &HpComplex, n: u32, ctx: &PrecisionContext) -> HpComplex {
    if n == 0 {
        return HpComplex::one(ctx.bits());
    }
    let arg = s.mul_real(ctx.pi()).div_real(&ctx.int(2));
    arg.cos().powu(n)
}

/// `(1/2 pi i) * integral over Re(s) = 5/2 of Gamma(s)^k cos(pi s / 2)^(k-1) z^(-s) ds`.
///
/// This is the single-term kernel of `Psi_{rho,k}`: `e^(-z)` for `k = 1` and
/// `2 Re K_0(2 e^(i pi/4) sqrt(z))` for `k = 2`.
pub fn psi_kernel(k: u32, z: &HpReal, ctx: &PrecisionContext) -> Result<HpReal> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if z.cmp0() != Some(std::cmp::Ordering::Greater) {
        return Err(Error::domain("psi_kernel", "z must be positive"));
    }
    let ln_z = Float::with_val(ctx.bits(), z.ln_ref());
    let settings = QuadratureSettings::new(ctx.real(KERNEL_ABSCISSA), k, ctx).symmetric();
    let value = line_integral(
        |s: &HpComplex| {
            let g = gamma_pow(s, k, ctx)?;
            let c = cos_half_pi_pow(s, k - 1, ctx);
            Ok(&(&g * &c) * &s.real_base_pow_neg(&ln_z))
        },
        &settings,
        ctx,
    )?;
    Ok(value.re)
}

/// `G^{k+1,0}_{0,2k}((0)_k, 1/2; (1/2)_{k-1} | z^2 / 2^(2k))` through its
/// one-variable reduction: `2^(k-1) / pi^(k/2 - 1)` times [`psi_kernel`].
pub fn meijer_g_psi_kernel(k: u32, z: &HpReal, ctx: &PrecisionContext) -> Result<HpReal> {
    let bits = ctx.bits();
    let kernel = psi_kernel(k, z, ctx)?;
    let two_pow = Float::with_val(bits, Float::u_pow_u(2, k - 1));
    // pi^(1 - k/2)
    let exponent = Float::with_val(bits, 1u32) - Float::with_val(bits, k) / 2u32;
    let pi_pow = Float::with_val(bits, ctx.pi().pow(&exponent));
    Ok(kernel * two_pow * pi_pow)
}

/// Abscissa of the shifted line used for the self-duality check:
/// `-2m - max(2, 1/2 - 2m)`, which lies between `-2m - 3` and `-2m - 1`
/// for `m >= 1` and to the left of `s = 0` for `m = -1`.
pub fn lambda_abscissa(m: i32) -> f64 {
    let shift = 2.0f64.max(0.5 - 2.0 * f64::from(m));
    -2.0 * f64::from(m) - shift
}

/// `(1/2 pi i) * integral over Re(s) = lambda of
/// zeta(2m+1+s)^k zeta(1-s)^k / cos(pi s / 2) * (rho / (2 pi)^k)^(-s) ds`.
pub fn lambda_line_integral(k: u32, m: i32, rho: &HpReal, ctx: &PrecisionContext) -> Result<HpReal> {
    if k == 0 || m == 0 {
        return Err(Error::invalid("need k >= 1 and m != 0"));
    }
    let bits = ctx.bits();
    let lambda = lambda_abscissa(m);
    // ln(rho / (2 pi)^k)
    let ln_ratio = Float::with_val(bits, rho.ln_ref()) - Float::with_val(bits, ctx.ln_2pi() * k);
    let growth = 1.0 - (f64::from(2 * m + 1) + lambda);
    let t = truncation_height(growth, k, ctx.digits());
    let settings = QuadratureSettings {
        c: ctx.real(lambda),
        h: ctx.ratio(1, 8),
        t_max: ctx.real(t.ceil()),
        refine_limit: 8,
        conjugate_symmetric: true,
    };
    let shift = ctx.int(i64::from(2 * m + 1));
    let one = HpComplex::one(bits);
    let value = line_integral(
        |s: &HpComplex| {
            let a = zeta(&s.add_real(&shift), ctx)?.powu(k);
            let b = zeta(&(&one - s), ctx)?.powu(k);
            let c = cos_half_pi_pow(s, 1, ctx);
            Ok((&(&a * &b) * &s.real_base_pow_neg(&ln_ratio)).div(&c))
        },
        &settings,
        ctx,
    )?;
    Ok(value.re)
}
