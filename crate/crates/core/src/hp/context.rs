use std::fmt;
use std::sync::{Arc, OnceLock};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

/// Smallest accepted working precision in decimal digits.
pub const MIN_DIGITS: u32 = 15;
/// Smallest accepted number of guard digits.
pub const MIN_GUARD_DIGITS: u32 = 10;
pub const DEFAULT_GUARD_DIGITS: u32 = 15;

/// log2(10)
const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;

/// Working precision plus the constants and lazily built tables that every
/// computation at that precision shares.
///
/// Cloning is cheap; all clones share the same caches. Nothing inside is
/// mutated after initialisation, so a context can be shared across threads.
#[derive(Clone)]
pub struct PrecisionContext {
    inner: Arc<Inner>,
}

struct Inner {
    digits: u32,
    guard_digits: u32,
    bits: u32,
    pi: Float,
    euler_gamma: Float,
    ln_2pi: Float,
    cache: Cache,
}

/// Per-precision tables, filled on first use by the modules that own them.
#[derive(Default)]
pub(crate) struct Cache {
    pub(crate) bernoulli: OnceLock<crate::special::bernoulli::BernoulliFloats>,
    pub(crate) logs: OnceLock<Vec<Float>>,
}

/// Builds a context with `digits` decimal digits and the default guard digits.
pub fn with_precision(digits: u32) -> Result<PrecisionContext> {
    PrecisionContext::new(digits, DEFAULT_GUARD_DIGITS)
}

impl PrecisionContext {
    pub fn new(digits: u32, guard_digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::PrecisionTooLow(digits));
        }
        if guard_digits < MIN_GUARD_DIGITS {
            return Err(Error::invalid(format!(
                "guard_digits must be at least {MIN_GUARD_DIGITS}, got {guard_digits}"
            )));
        }
        let working = digits + guard_digits;
        let bits = (f64::from(working) * BITS_PER_DIGIT).ceil() as u32 + 32;
        let pi = Float::with_val(bits, Constant::Pi);
        let euler_gamma = Float::with_val(bits, Constant::Euler);
        let ln_2pi = Float::with_val(bits, &pi * 2u32).ln();
        Ok(PrecisionContext {
            inner: Arc::new(Inner {
                digits,
                guard_digits,
                bits,
                pi,
                euler_gamma,
                ln_2pi,
                cache: Cache::default(),
            }),
        })
    }

    /// A fresh context carrying `extra` more digits (same guard digits).
    pub fn boosted(&self, extra: u32) -> PrecisionContext {
        PrecisionContext::new(self.digits() + extra, self.guard_digits())
            .expect("boosting a valid context stays valid")
    }

    pub fn digits(&self) -> u32 {
        self.inner.digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.inner.guard_digits
    }

    /// Digits actually carried by every intermediate value.
    pub fn working_digits(&self) -> u32 {
        self.inner.digits + self.inner.guard_digits
    }

    /// Binary precision of every `HpReal` created under this context.
    pub fn bits(&self) -> u32 {
        self.inner.bits
    }

    pub fn pi(&self) -> &Float {
        &self.inner.pi
    }

    pub fn euler_gamma(&self) -> &Float {
        &self.inner.euler_gamma
    }

    pub fn ln_2pi(&self) -> &Float {
        &self.inner.ln_2pi
    }

    /// `10^(-digits + slack)`, the tolerance a module with the given slack works to.
    pub fn tolerance(&self, slack: i32) -> Float {
        self.pow10(slack - self.inner.digits as i32)
    }

    /// `10^(-working_digits)`: the relative size of a rounding error.
    pub fn working_eps(&self) -> Float {
        self.pow10(-(self.working_digits() as i32))
    }

    pub fn pow10(&self, exp: i32) -> Float {
        let ten = Float::with_val(self.bits(), 10u32);
        ten.pow(exp)
    }

    pub fn real(&self, value: f64) -> Float {
        Float::with_val(self.bits(), value)
    }

    pub fn int(&self, value: i64) -> Float {
        Float::with_val(self.bits(), value)
    }

    pub fn zero(&self) -> Float {
        Float::new(self.bits())
    }

    /// Exact ratio `num / den` rounded once.
    pub fn ratio(&self, num: i64, den: i64) -> Float {
        Float::with_val(self.bits(), num) / den
    }

    pub(crate) fn cache(&self) -> &Cache {
        &self.inner.cache
    }
}

impl fmt::Debug for PrecisionContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PrecisionContext")
            .field("digits", &self.inner.digits)
            .field("guard_digits", &self.inner.guard_digits)
            .field("bits", &self.inner.bits)
            .finish()
    }
}

/// pi to the context's working precision.
pub fn const_pi(ctx: &PrecisionContext) -> Float {
    ctx.pi().clone()
}

/// Euler's constant gamma to the context's working precision.
pub fn const_euler_gamma(ctx: &PrecisionContext) -> Float {
    ctx.euler_gamma().clone()
}

/// log(2 pi) to the context's working precision.
pub fn const_log_2pi(ctx: &PrecisionContext) -> Float {
    ctx.ln_2pi().clone()
}
