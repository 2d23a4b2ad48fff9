use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::hp::PrecisionContext;

/// Consecutive sub-threshold terms required before a Lambert sum stops.
const QUIET_TERMS: u32 = 3;
const MAX_TERMS: usize = 10_000_000;

fn check_y(y: &Float) -> Result<()> {
    if y.cmp0() != Some(std::cmp::Ordering::Greater) {
        return Err(Error::domain("lambert_series", "y must be positive"));
    }
    Ok(())
}

/// `sum_{n>=1} n^a / (e^{n y} - 1)`.
///
/// Stops once three consecutive terms fall below `10^(-digits-5)` times the
/// partial sum.
pub fn lambert_series(a: &Float, y: &Float, ctx: &PrecisionContext) -> Result<Float> {
    check_y(y)?;
    let bits = ctx.bits();
    let threshold = ctx.tolerance(-5);
    let mut sum = Float::new(bits);
    let mut quiet = 0;
    for n in 1..=MAX_TERMS {
        let nf = Float::with_val(bits, n as u64);
        let ny = Float::with_val(bits, &nf * y);
        let den = ny.exp_m1();
        let term = nf.pow(a) / den;
        sum += &term;
        if term.abs() < Float::with_val(bits, sum.abs_ref()) * &threshold {
            quiet += 1;
            if quiet >= QUIET_TERMS {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence {
        what: "Lambert series",
        detail: format!("no convergence within {MAX_TERMS} terms"),
    })
}

/// The same series written as `sum_{n>=1} sigma_a(n) e^{-n y}`.
pub fn lambert_series_sigma(a: &Float, y: &Float, ctx: &PrecisionContext) -> Result<Float> {
    check_y(y)?;
    let bits = ctx.bits();
    let threshold = ctx.tolerance(-5);
    let mut sum = Float::new(bits);
    let mut quiet = 0;
    let q = Float::with_val(bits, -y).exp();
    let mut qn = Float::with_val(bits, 1u32);
    for n in 1..=MAX_TERMS {
        qn *= &q;
        let mut sigma = Float::new(bits);
        let mut d = 1usize;
        while d * d <= n {
            if n % d == 0 {
                sigma += Float::with_val(bits, d as u64).pow(a);
                let e = n / d;
                if e != d {
                    sigma += Float::with_val(bits, e as u64).pow(a);
                }
            }
            d += 1;
        }
        let term = sigma * &qn;
        sum += &term;
        if term.abs() < Float::with_val(bits, sum.abs_ref()) * &threshold {
            quiet += 1;
            if quiet >= QUIET_TERMS {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence {
        what: "Lambert series (divisor form)",
        detail: format!("no convergence within {MAX_TERMS} terms"),
    })
}
