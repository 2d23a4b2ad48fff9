use std::time::Instant;

use rug::ops::Pow;
use rug::{Float, Rational};

use super::blocks::{bernoulli_block, block_coefficients, parity_sign, two_pow};
use super::{Identity, IdentityParams, VerificationReport};
use crate::error::{Error, Result};
use crate::hp::{HpComplex, HpReal, PrecisionContext};
use crate::mellin::{cauchy_derivative, cos_half_pi_pow, CircleSettings};
use crate::psi::{bessel_pair, psi, series_l, PsiRequest, SeriesRequest, Strategy};
use crate::special::{bernoulli, divisor_sieve, factorial, gamma_pow, lambert_series, zeta, DivisorTable};

const QUIET_TERMS: u32 = 5;
const MAX_OMEGA_TERMS: usize = 50_000_000;

fn signed(x: HpReal, exponent: i64) -> HpReal {
    if parity_sign(exponent) < 0 {
        -x
    } else {
        x
    }
}

fn powi(x: &HpReal, e: i64, ctx: &PrecisionContext) -> HpReal {
    Float::with_val(ctx.bits(), x.pow(e as i32))
}

/// `f^(n)(0) / n!` for `f` real on the real axis, by a Cauchy circle of radius 1/4.
pub fn derivative_at_zero<F>(order: u32, f: F, ctx: &PrecisionContext) -> Result<HpReal>
where
    F: Fn(&HpComplex) -> Result<HpComplex> + Sync,
{
    let settings = CircleSettings::real(ctx.zero(), order, ctx);
    let d = cauchy_derivative(f, order, &settings, ctx)?;
    Ok(d.re / Float::with_val(ctx.bits(), factorial(order)))
}

/// `(1/(k-1)!) d^(k-1)/ds^(k-1) [zeta^k(2m+1+s) zeta^k(s) Gamma^k(s+1) cos^(k-1)(pi s/2) rho^(-s)]`
/// at `s = 0`, where `rho` is the argument of the series (`(2 alpha)^k` in the main formula).
pub fn derivative_term(k: u32, m: i32, rho: &HpReal, ctx: &PrecisionContext) -> Result<HpReal> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if m == 0 {
        return Err(Error::invalid("m must be nonzero"));
    }
    if rho.cmp0() != Some(std::cmp::Ordering::Greater) {
        return Err(Error::domain("derivative_term", "rho must be positive"));
    }
    let ln_rho = Float::with_val(ctx.bits(), rho.ln_ref());
    let shift = ctx.int(i64::from(2 * m + 1));
    derivative_at_zero(
        k - 1,
        |s: &HpComplex| {
            let z = &zeta(&s.add_real(&shift), ctx)? * &zeta(s, ctx)?;
            let g = gamma_pow(&s.add_real(&ctx.int(1)), k, ctx)?;
            let c = cos_half_pi_pow(s, k - 1, ctx);
            Ok(&(&(&z.powu(k) * &g) * &c) * &s.real_base_pow_neg(&ln_rho))
        },
        ctx,
    )
}

fn series(k: u32, m: i32, rho: &HpReal, ctx: &PrecisionContext) -> Result<HpReal> {
    Ok(series_l(&SeriesRequest::new(rho.clone(), k, m), ctx)?.value)
}

fn named(name: &str, value: &HpReal) -> (String, HpReal) {
    (name.to_string(), value.clone())
}

/// Main transformation formula for `zeta^k(2m+1)`:
/// `(alpha^k)^(-m) [L_m((2 alpha)^k) - D_alpha]
///  = (-beta^k)^(-m) [L_m((2 beta)^k) - D_beta] + block`.
pub fn verify_main(params: &IdentityParams, ctx: &PrecisionContext) -> Result<VerificationReport> {
    let started = Instant::now();
    let IdentityParams { k, m, .. } = *params;
    Identity::Main.validate(k, m)?;
    let bits = ctx.bits();
    let alpha = params.alpha(ctx);
    let beta = params.beta(ctx);
    let ak = Float::with_val(bits, (&alpha).pow(k));
    let bk = Float::with_val(bits, (&beta).pow(k));
    let rho_a = Float::with_val(bits, Float::with_val(bits, &alpha * 2u32).pow(k));
    let rho_b = Float::with_val(bits, Float::with_val(bits, &beta * 2u32).pow(k));

    let la = series(k, m, &rho_a, ctx)?;
    let lb = series(k, m, &rho_b, ctx)?;
    let da = derivative_term(k, m, &rho_a, ctx)?;
    let db = derivative_term(k, m, &rho_b, ctx)?;
    let block = bernoulli_block(k, m, &alpha, &beta, ctx);

    let mi = i64::from(m);
    let lhs = powi(&ak, -mi, ctx) * Float::with_val(bits, &la - &da);
    let rhs_bracket = signed(powi(&bk, -mi, ctx), mi) * Float::with_val(bits, &lb - &db);
    let rhs = Float::with_val(bits, &rhs_bracket + &block);
    let terms = vec![
        named("series_alpha", &la),
        named("series_beta", &lb),
        named("deriv_alpha", &da),
        named("deriv_beta", &db),
        named("block", &block),
    ];
    Ok(VerificationReport::assemble(Identity::Main, k, m, params.theta.clone(), lhs, rhs, terms, started, ctx))
}

/// The classical formula for `zeta(2m+1)` with Lambert series
/// `L(a, y) = sum n^a / (e^(n y) - 1)`:
/// `alpha^(-m) {zeta(2m+1)/2 + L(-2m-1, 2 alpha)}
///  = (-beta)^(-m) {zeta(2m+1)/2 + L(-2m-1, 2 beta)}
///  - 2^(2m) sum_j (-1)^j B_2j B_(2m+2-2j) / ((2j)! (2m+2-2j)!) alpha^(m+1-j) beta^j`.
pub fn verify_ramanujan_classical(m: i32, theta: &HpReal, ctx: &PrecisionContext) -> Result<VerificationReport> {
    let started = Instant::now();
    Identity::Ramanujan.validate(1, m)?;
    let bits = ctx.bits();
    let params = IdentityParams::new(1, m, theta.clone());
    let alpha = params.alpha(ctx);
    let beta = params.beta(ctx);
    let a = ctx.int(-2 * i64::from(m) - 1);
    let half_zeta = zeta(&HpComplex::from_real(ctx.int(2 * i64::from(m) + 1)), ctx)?.re / 2u32;
    let la = lambert_series(&a, &Float::with_val(bits, &alpha * 2u32), ctx)?;
    let lb = lambert_series(&a, &Float::with_val(bits, &beta * 2u32), ctx)?;

    let mut sum = Float::new(bits);
    if m >= -1 {
        let top = (m + 1) as u32;
        let table = bernoulli(2 * top as usize);
        for j in 0..=top {
            let num = Rational::from(table.get(2 * j as usize).unwrap() * table.get(2 * (top - j) as usize).unwrap());
            let c = num / Rational::from(factorial(2 * j) * factorial(2 * (top - j)));
            let term = Float::with_val(bits, &c) * powi(&alpha, i64::from(top - j), ctx) * powi(&beta, i64::from(j), ctx);
            sum += signed(term, i64::from(j));
        }
    }
    let sum = sum * two_pow(2 * i64::from(m), ctx);

    let mi = i64::from(m);
    let lhs = powi(&alpha, -mi, ctx) * Float::with_val(bits, &half_zeta + &la);
    let rhs = signed(powi(&beta, -mi, ctx), mi) * Float::with_val(bits, &half_zeta + &lb) - sum.clone();
    let terms = vec![named("lambert_alpha", &la), named("lambert_beta", &lb), named("bernoulli_sum", &sum)];
    Ok(VerificationReport::assemble(Identity::Ramanujan, 1, m, theta.clone(), lhs, rhs, terms, started, ctx))
}

/// `(1/(k-1)!) d^(k-1)/ds^(k-1) [zeta^k(shift+s) zeta^k(s) Gamma^k(s+1) cos^(k-1)(pi s/2) 2^(-ks) weight(s)]` at 0.
fn eisenstein_type_derivative<W>(k: u32, shift: i64, weight: W, ctx: &PrecisionContext) -> Result<HpReal>
where
    W: Fn(&HpComplex) -> HpComplex + Sync,
{
    let shift = ctx.int(shift);
    let ln_2k = Float::with_val(ctx.bits(), Float::with_val(ctx.bits(), 2u32).ln() * k);
    derivative_at_zero(
        k - 1,
        |s: &HpComplex| {
            let z = &zeta(&s.add_real(&shift), ctx)? * &zeta(s, ctx)?;
            let g = gamma_pow(&s.add_real(&ctx.int(1)), k, ctx)?;
            let c = cos_half_pi_pow(s, k - 1, ctx);
            let base = &(&(&z.powu(k) * &g) * &c) * &s.real_base_pow_neg(&ln_2k);
            Ok(&base * &weight(s))
        },
        ctx,
    )
}

/// `x^(-k (s - e))` as a function of `s`, for `x > 0`.
fn shifted_power(x: &HpReal, k: u32, e: i64, ctx: &PrecisionContext) -> impl Fn(&HpComplex) -> HpComplex + Sync {
    let bits = ctx.bits();
    let ln_xk = Float::with_val(bits, Float::with_val(bits, x.ln_ref()) * k);
    let scale = Float::with_val(bits, Float::with_val(bits, &ln_xk * e).exp());
    move |s: &HpComplex| s.real_base_pow_neg(&ln_xk).mul_real(&scale)
}

/// Generalized Eisenstein transformation, `m > 1`:
/// `alpha^(km) L_(-m)((2 alpha)^k) - (-beta^k)^m L_(-m)((2 beta)^k)`
/// against the `(k-1)`-th derivative of
/// `zeta^k(1-2m+s) zeta^k(s) Gamma^k(s+1) cos^(k-1) 2^(-ks) (alpha^(-k(s-m)) - (-1)^m beta^(-k(s-m)))`.
pub fn verify_eisenstein(k: u32, m: i32, theta: &HpReal, ctx: &PrecisionContext) -> Result<VerificationReport> {
    let started = Instant::now();
    Identity::Eisenstein.validate(k, m)?;
    let bits = ctx.bits();
    let params = IdentityParams::new(k, m, theta.clone());
    let alpha = params.alpha(ctx);
    let beta = params.beta(ctx);
    let mi = i64::from(m);
    let ak = Float::with_val(bits, (&alpha).pow(k));
    let bk = Float::with_val(bits, (&beta).pow(k));
    let rho_a = Float::with_val(bits, Float::with_val(bits, &alpha * 2u32).pow(k));
    let rho_b = Float::with_val(bits, Float::with_val(bits, &beta * 2u32).pow(k));
    let la = series(k, -m, &rho_a, ctx)?;
    let lb = series(k, -m, &rho_b, ctx)?;
    let lhs = powi(&ak, mi, ctx) * la.clone() - signed(powi(&bk, mi, ctx), mi) * lb.clone();

    let wa = shifted_power(&alpha, k, mi, ctx);
    let wb = shifted_power(&beta, k, mi, ctx);
    let sign_m = parity_sign(mi);
    let rhs = eisenstein_type_derivative(
        k,
        1 - 2 * mi,
        |s| {
            let b = wb(s);
            if sign_m < 0 {
                &wa(s) + &b
            } else {
                &wa(s) - &b
            }
        },
        ctx,
    )?;
    let terms = vec![named("series_alpha", &la), named("series_beta", &lb)];
    Ok(VerificationReport::assemble(Identity::Eisenstein, k, m, theta.clone(), lhs, rhs, terms, started, ctx))
}

/// Generalized quasi-modular transformation:
/// `alpha^k L_(-1)((2 alpha)^k) + beta^k L_(-1)((2 beta)^k)`
/// against the `(k-1)`-th derivative of
/// `zeta^k(s-1) zeta^k(s) Gamma^k(s+1) cos^(k-1) 2^(-ks) (alpha^(-k(s-1)) + beta^(-k(s-1)))`
/// minus `(pi/2)^(k-1) 2^(-2k)`.
pub fn verify_quasimodular(k: u32, theta: &HpReal, ctx: &PrecisionContext) -> Result<VerificationReport> {
    let started = Instant::now();
    Identity::Quasimodular.validate(k, -1)?;
    let bits = ctx.bits();
    let params = IdentityParams::new(k, -1, theta.clone());
    let alpha = params.alpha(ctx);
    let beta = params.beta(ctx);
    let ak = Float::with_val(bits, (&alpha).pow(k));
    let bk = Float::with_val(bits, (&beta).pow(k));
    let rho_a = Float::with_val(bits, Float::with_val(bits, &alpha * 2u32).pow(k));
    let rho_b = Float::with_val(bits, Float::with_val(bits, &beta * 2u32).pow(k));
    let la = series(k, -1, &rho_a, ctx)?;
    let lb = series(k, -1, &rho_b, ctx)?;
    let lhs = Float::with_val(bits, &ak * &la) + Float::with_val(bits, &bk * &lb);

    let wa = shifted_power(&alpha, k, 1, ctx);
    let wb = shifted_power(&beta, k, 1, ctx);
    let d = eisenstein_type_derivative(k, -1, |s| &wa(s) + &wb(s), ctx)?;
    let half_pi = Float::with_val(bits, ctx.pi() / 2u32);
    let constant = Float::with_val(bits, (&half_pi).pow(k - 1)) * two_pow(-2 * i64::from(k), ctx);
    let rhs = Float::with_val(bits, &d - &constant);
    let terms = vec![named("series_alpha", &la), named("series_beta", &lb), named("derivative", &d)];
    Ok(VerificationReport::assemble(Identity::Quasimodular, k, -1, theta.clone(), lhs, rhs, terms, started, ctx))
}

/// Generalized eta transformation: `L((2 alpha)^k) - L((2 beta)^k)` with
/// the weight-`1/n` series, against
/// `(-1)^k 2^k/(2k-1)! d^(2k-1)/ds^(2k-1) [Gamma^k(1+s) Gamma^k(1-s) zeta^k(s) zeta^k(-s) cos^(2k-1)(pi s/2) e^(-k theta s)]`
/// at 0 plus `2 (-1)^(k+1) pi^(k-1) (beta^k - alpha^k) / 24^k`.
pub fn verify_eta(k: u32, theta: &HpReal, ctx: &PrecisionContext) -> Result<VerificationReport> {
    let started = Instant::now();
    Identity::Eta.validate(k, 0)?;
    let bits = ctx.bits();
    let params = IdentityParams::new(k, 0, theta.clone());
    let alpha = params.alpha(ctx);
    let beta = params.beta(ctx);
    let ak = Float::with_val(bits, (&alpha).pow(k));
    let bk = Float::with_val(bits, (&beta).pow(k));
    let rho_a = Float::with_val(bits, Float::with_val(bits, &alpha * 2u32).pow(k));
    let rho_b = Float::with_val(bits, Float::with_val(bits, &beta * 2u32).pow(k));
    let la = series(k, 0, &rho_a, ctx)?;
    let lb = series(k, 0, &rho_b, ctx)?;
    let lhs = Float::with_val(bits, &la - &lb);

    // e^(-k theta s) = (e^(k theta))^(-s)
    let ln_base = Float::with_val(bits, &params.theta * k);
    let one = HpComplex::one(bits);
    let deriv = derivative_at_zero(
        2 * k - 1,
        |s: &HpComplex| {
            let g = &gamma_pow(&(&one + s), k, ctx)? * &gamma_pow(&(&one - s), k, ctx)?;
            let z = &zeta(s, ctx)? * &zeta(&-s, ctx)?;
            let c = cos_half_pi_pow(s, 2 * k - 1, ctx);
            Ok(&(&(&g * &z.powu(k)) * &c) * &s.real_base_pow_neg(&ln_base))
        },
        ctx,
    )?;
    let ki = i64::from(k);
    let main = signed(deriv * two_pow(ki, ctx), ki);
    let pi_pow = Float::with_val(bits, (&ctx.pi()).pow(k - 1));
    let diff = Float::with_val(bits, &bk - &ak);
    let twenty_four = Float::with_val(bits, Float::u_pow_u(24, k));
    let correction = signed(pi_pow * diff * 2u32 / twenty_four, ki + 1);
    let rhs = Float::with_val(bits, &main + &correction);
    let terms = vec![named("series_alpha", &la), named("series_beta", &lb), named("derivative", &main), named("correction", &correction)];
    Ok(VerificationReport::assemble(Identity::Eta, k, 0, theta.clone(), lhs, rhs, terms, started, ctx))
}

/// Generalized Lerch identity for odd `m`:
/// `L_m((2 pi)^k) = D + 2^(2km-k) pi^(2km+2k-1) sum_n (-1)^(n+1) B_(2m-2n+2)^k B_2n^k / ((2m-2n+2)! (2n)!)^k`
/// with `D = derivative_term(k, m, (2 pi)^k)`.
pub fn verify_lerch_general(k: u32, m: i32, ctx: &PrecisionContext) -> Result<VerificationReport> {
    let started = Instant::now();
    Identity::Lerch.validate(k, m)?;
    let bits = ctx.bits();
    let two_pi = Float::with_val(bits, ctx.pi() * 2u32);
    let rho = Float::with_val(bits, (&two_pi).pow(k));
    let lhs = series(k, m, &rho, ctx)?;
    let d = derivative_term(k, m, &rho, ctx)?;
    let coeff: Rational = -block_coefficients(k, m).into_iter().sum::<Rational>();
    let ki = i64::from(k);
    let mi = i64::from(m);
    let scale = two_pow(2 * ki * mi - ki, ctx) * powi(ctx.pi(), 2 * ki * mi + 2 * ki - 1, ctx);
    let bern = Float::with_val(bits, &coeff) * scale;
    let rhs = Float::with_val(bits, &d + &bern);
    let terms = vec![named("derivative", &d), named("bernoulli", &bern)];
    Ok(VerificationReport::assemble(Identity::Lerch, k, m, ctx.zero(), lhs, rhs, terms, started, ctx))
}

/// Piltz `d_2` table that grows on demand.
struct GrowingDivisors {
    table: DivisorTable,
}

impl GrowingDivisors {
    fn new() -> Result<Self> {
        Ok(GrowingDivisors {
            table: divisor_sieve(2, 4096)?,
        })
    }

    fn get(&mut self, n: usize) -> Result<u64> {
        if n > self.table.bound() {
            self.table = divisor_sieve(2, (2 * self.table.bound()).max(n))?;
        }
        Ok(self.table.get(n))
    }
}

/// Sums `sum_{N>=1} weight(N) pair(4 rho^2 N x)` until five consecutive
/// terms fall below `10^(-digits-5) max(1, |partial|)`.
fn bessel_pair_series<W>(rho: &HpReal, x: &HpReal, mut weight: W, ctx: &PrecisionContext) -> Result<(HpReal, usize)>
where
    W: FnMut(usize) -> Result<HpReal>,
{
    let bits = ctx.bits();
    let threshold = ctx.tolerance(-5);
    let base = Float::with_val(bits, rho.square_ref()) * 4u32 * x;
    let mut sum = Float::new(bits);
    let mut quiet = 0;
    for n in 1..=MAX_OMEGA_TERMS {
        let z = Float::with_val(bits, &base * n as u64);
        let term = weight(n)? * bessel_pair(&z, ctx)?;
        sum += &term;
        let mut scale = Float::with_val(bits, sum.abs_ref());
        if scale < 1 {
            scale = Float::with_val(bits, 1u32);
        }
        if Float::with_val(bits, term.abs_ref()) < scale * &threshold {
            quiet += 1;
            if quiet >= QUIET_TERMS {
                return Ok((sum, n));
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence {
        what: "Bessel pair series",
        detail: format!("no convergence within {MAX_OMEGA_TERMS} terms"),
    })
}

/// Koshliakov's `Omega_rho(x) = 2 sum_j d(j) (K_0(4 rho e^(i pi/4) sqrt(j x)) + K_0(4 rho e^(-i pi/4) sqrt(j x)))`.
pub fn koshliakov_omega(rho: &HpReal, x: &HpReal, ctx: &PrecisionContext) -> Result<HpReal> {
    let bits = ctx.bits();
    let mut d = GrowingDivisors::new()?;
    let (sum, _) = bessel_pair_series(rho, x, |j| Ok(Float::with_val(bits, d.get(j)?)), ctx)?;
    Ok(sum * 2u32)
}

/// `Omega_pi(1) / Psi_{(2 pi)^2, 2}(1)`, with `Psi` from the inverse Mellin
/// path: the constant relating the two normalisations.
pub fn omega_psi_constant(ctx: &PrecisionContext) -> Result<HpReal> {
    let bits = ctx.bits();
    let pi = ctx.pi().clone();
    let omega = koshliakov_omega(&pi, &ctx.int(1), ctx)?;
    let rho = Float::with_val(bits, Float::with_val(bits, &pi * 2u32).square());
    let p = psi(&PsiRequest::new(rho, 2, ctx.int(1)).with_strategy(Strategy::InverseMellin), ctx)?;
    Ok(omega / p.value)
}

/// `sum_n d(n) Omega_rho(n) / n^(2m+1)`, regrouped by `N = n j` into
/// `2 sum_N pair(4 rho^2 N) sum_{n | N} d(n) d(N/n) n^(-2m-1)`.
pub fn dixit_omega_sum(m: i32, rho: &HpReal, ctx: &PrecisionContext) -> Result<(HpReal, usize)> {
    let bits = ctx.bits();
    let mut d = GrowingDivisors::new()?;
    let e = -(2 * m + 1);
    let (sum, terms) = bessel_pair_series(
        rho,
        &ctx.int(1),
        |big_n| {
            let mut w = Float::new(bits);
            let mut n = 1usize;
            while n * n <= big_n {
                if big_n % n == 0 {
                    let other = big_n / n;
                    let (dn, dother) = (d.get(n)?, d.get(other)?);
                    let prod = Float::with_val(bits, dn * dother);
                    w += Float::with_val(bits, &prod * Float::with_val(bits, Float::with_val(bits, n as u64).pow(e)));
                    if other != n {
                        w += prod * Float::with_val(bits, Float::with_val(bits, other as u64).pow(e));
                    }
                }
                n += 1;
            }
            Ok(w)
        },
        ctx,
    )?;
    Ok((sum * 2u32, terms))
}

/// The literal `zeta^2(2m+1)` formula with Koshliakov's `Omega`:
/// `alpha^(-2m) [zeta^2(2m+1) (gamma + log(alpha/pi) - zeta'(2m+1)/zeta(2m+1)) + sum_n d(n) Omega_alpha(n) / n^(2m+1)]
///  = (-1)^m beta^(-2m) [same with beta]
///  - 2^(4m) pi sum_j (-1)^j B_2j^2 B_(2m+2-2j)^2 / ((2j)!^2 (2m+2-2j)!^2) alpha^(2j) beta^(2m+2-2j)`.
pub fn verify_dixit(m: i32, theta: &HpReal, ctx: &PrecisionContext) -> Result<VerificationReport> {
    let started = Instant::now();
    Identity::Dixit.validate(2, m)?;
    let bits = ctx.bits();
    let params = IdentityParams::new(2, m, theta.clone());
    let alpha = params.alpha(ctx);
    let beta = params.beta(ctx);
    let center = ctx.int(2 * i64::from(m) + 1);
    let z = zeta(&HpComplex::from_real(center.clone()), ctx)?.re;
    let dz = cauchy_derivative(|s: &HpComplex| zeta(s, ctx), 1, &CircleSettings::real(center, 1, ctx), ctx)?.re;
    let log_deriv = Float::with_val(bits, &dz / &z);
    let z2 = Float::with_val(bits, z.square_ref());

    let bracket = |x: &HpReal| -> Result<(HpReal, HpReal)> {
        let log_ratio = Float::with_val(bits, x / ctx.pi()).ln();
        let inner = Float::with_val(bits, ctx.euler_gamma() + &log_ratio) - &log_deriv;
        let (omega_sum, _) = dixit_omega_sum(m, x, ctx)?;
        Ok((Float::with_val(bits, &z2 * &inner) + &omega_sum, omega_sum))
    };
    let (ba, oa) = bracket(&alpha)?;
    let (bb, ob) = bracket(&beta)?;

    let mut sum = Float::new(bits);
    if m >= -1 {
        let top = (m + 1) as u32;
        let table = bernoulli(2 * top as usize);
        for j in 0..=top {
            let num = Rational::from(table.get(2 * j as usize).unwrap() * table.get(2 * (top - j) as usize).unwrap());
            let c = num / Rational::from(factorial(2 * j) * factorial(2 * (top - j)));
            let c = Rational::from(c.square_ref());
            let term = Float::with_val(bits, &c) * powi(&alpha, 2 * i64::from(j), ctx) * powi(&beta, 2 * i64::from(top - j), ctx);
            sum += signed(term, i64::from(j));
        }
    }
    let sum = sum * two_pow(4 * i64::from(m), ctx) * ctx.pi();

    let mi = i64::from(m);
    let lhs = powi(&alpha, -2 * mi, ctx) * ba;
    let rhs = signed(powi(&beta, -2 * mi, ctx), mi) * bb - sum.clone();
    let terms = vec![
        named("omega_alpha", &oa),
        named("omega_beta", &ob),
        named("log_deriv", &log_deriv),
        named("bernoulli_sum", &sum),
    ];
    Ok(VerificationReport::assemble(Identity::Dixit, 2, m, theta.clone(), lhs, rhs, terms, started, ctx))
}
