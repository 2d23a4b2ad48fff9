use rug::ops::Pow;
use rug::Float;

use super::bernoulli::bernoulli_floats;
use super::gamma::gamma;
use crate::error::{Error, Result};
use crate::hp::{HpComplex, PrecisionContext};

const LOG_TABLE_SIZE: usize = 4096;

/// `ln n` for `n < LOG_TABLE_SIZE` (index 0 unused).
fn log_table(ctx: &PrecisionContext) -> &[Float] {
    ctx.cache().logs.get_or_init(|| {
        let bits = ctx.bits();
        (0..LOG_TABLE_SIZE)
            .map(|n| {
                if n < 2 {
                    Float::new(bits)
                } else {
                    Float::with_val(bits, n as u32).ln()
                }
            })
            .collect()
    })
}

fn ln_n(n: usize, ctx: &PrecisionContext) -> Float {
    if n < LOG_TABLE_SIZE {
        log_table(ctx)[n].clone()
    } else {
        Float::with_val(ctx.bits(), n as u32).ln()
    }
}

/// `n^(-s)` for `n = 0..=count` (index 0 unused). Only primes need an
/// exponential; every other entry is a product of two earlier ones.
pub(crate) fn dirichlet_powers(s: &HpComplex, count: usize, ctx: &PrecisionContext) -> Vec<HpComplex> {
    let bits = ctx.bits();
    let mut smallest_factor = vec![0usize; count + 1];
    let mut out: Vec<HpComplex> = Vec::with_capacity(count + 1);
    out.push(HpComplex::zero(bits));
    if count >= 1 {
        out.push(HpComplex::one(bits));
    }
    for n in 2..=count {
        if smallest_factor[n] == 0 {
            let mut multiple = n;
            while multiple <= count {
                if smallest_factor[multiple] == 0 {
                    smallest_factor[multiple] = n;
                }
                multiple += n;
            }
        }
        let p = smallest_factor[n];
        let value = if p == n {
            s.real_base_pow_neg(&ln_n(n, ctx))
        } else {
            &out[p] * &out[n / p]
        };
        out.push(value);
    }
    out
}

/// Euler-Maclaurin evaluation of `zeta(s + shift)` for several integer
/// shifts sharing one table of `n^(-s)`.
pub(crate) struct ZetaSeries<'a> {
    ctx: &'a PrecisionContext,
    s: HpComplex,
    cutoff: usize,
    powers: Vec<HpComplex>,
}

impl<'a> ZetaSeries<'a> {
    /// `max_abs_shift` bounds `|shift|` for later [`ZetaSeries::eval`] calls.
    pub(crate) fn new(s: &HpComplex, max_abs_shift: u32, ctx: &'a PrecisionContext) -> Self {
        let reach = s.abs().to_f64() + f64::from(max_abs_shift);
        let cutoff = 20usize.max(ctx.working_digits() as usize).max(reach.ceil() as usize + 1);
        let powers = dirichlet_powers(s, cutoff, ctx);
        ZetaSeries {
            ctx,
            s: s.clone(),
            cutoff,
            powers,
        }
    }

    pub(crate) fn eval(&self, shift: i32) -> Result<HpComplex> {
        let ctx = self.ctx;
        let bits = ctx.bits();
        let s = self.s.add_real(&ctx.int(i64::from(shift)));
        if s.im.is_zero() && s.re == 1 {
            return Err(Error::Pole {
                function: "zeta",
                at: "1".into(),
            });
        }
        let n_cut = self.cutoff;
        // n^(-shift) as an exact rational rounded once per n
        let weight = |n: usize| -> Float {
            let nf = Float::with_val(bits, n as u32);
            nf.pow(-shift)
        };
        let scaled = |n: usize| -> HpComplex {
            if shift == 0 {
                self.powers[n].clone()
            } else {
                self.powers[n].mul_real(&weight(n))
            }
        };
        let terms: Vec<HpComplex> = (1..n_cut).map(scaled).collect();
        let mut sum = crate::hp::pairwise_sum(&terms, bits);

        let n_pow = scaled(n_cut); // N^(-s)
        let n_f = Float::with_val(bits, n_cut as u32);
        // N^(1-s) / (s - 1)
        let s_minus_one = s.add_real(&ctx.int(-1));
        sum = &sum + &n_pow.mul_real(&n_f).div(&s_minus_one);
        sum = &sum + &n_pow.div_real(&ctx.int(2));

        let tables = bernoulli_floats(ctx);
        let eps = ctx.working_eps() / 16u32;
        let n_sq = Float::with_val(bits, n_f.square_ref());
        let mut rising = s.clone(); // s (s+1) ... (s+2j-2)
        let mut n_power = n_pow.div_real(&n_f); // N^(-s-2j+1)
        let scale = sum.abs();
        for j in 1..tables.over_factorial.len() {
            let term = (&rising * &n_power).mul_real(&tables.over_factorial[j]);
            let small = term.abs() <= Float::with_val(bits, &eps * &scale);
            sum = &sum + &term;
            if small {
                return Ok(sum);
            }
            let a = s.add_real(&ctx.int(2 * j as i64 - 1));
            let b = s.add_real(&ctx.int(2 * j as i64));
            rising = &(&rising * &a) * &b;
            n_power = n_power.div_real(&n_sq);
        }
        Err(Error::NonConvergence {
            what: "Euler-Maclaurin zeta",
            detail: format!("s = {:?}", s.to_f64_pair()),
        })
    }
}

/// Riemann zeta function.
///
/// Euler-Maclaurin summation for `Re(s) >= 1/2` (and near `s = 0`, where
/// the functional equation is 0 * inf); the functional equation otherwise.
pub fn zeta(s: &HpComplex, ctx: &PrecisionContext) -> Result<HpComplex> {
    if s.im.is_zero() && s.re == 1 {
        return Err(Error::Pole {
            function: "zeta",
            at: "1".into(),
        });
    }
    if s.re >= 0.5 || s.abs() < 0.0625 {
        return ZetaSeries::new(s, 0, ctx).eval(0);
    }
    zeta_reflected(s, ctx)
}

/// `zeta(s) = 2^s pi^(s-1) Gamma(1-s) zeta(1-s) sin(pi s / 2)`.
fn zeta_reflected(s: &HpComplex, ctx: &PrecisionContext) -> Result<HpComplex> {
    let bits = ctx.bits();
    let one_minus = HpComplex::from_real(ctx.int(1)) - s.clone();
    let z = ZetaSeries::new(&one_minus, 0, ctx).eval(0)?;
    let g = gamma(&one_minus, ctx)?;
    // 2^s pi^(s-1) = exp(s ln 2pi) / pi
    let ln_2pi = ctx.ln_2pi();
    let prefactor = HpComplex::new(
        Float::with_val(bits, &s.re * ln_2pi),
        Float::with_val(bits, &s.im * ln_2pi),
    )
    .exp()
    .div_real(ctx.pi());
    let sin = s.mul_real(ctx.pi()).div_real(&ctx.int(2)).sin();
    Ok(&(&(&prefactor * &g) * &z) * &sin)
}
