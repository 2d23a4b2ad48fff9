//! Arbitrary-precision arithmetic layer: precision context, complex numbers,
//! constants and decimal serialization.
//!
//! Reals are MPFR floats (`rug::Float`). The binary precision of a context
//! is `ceil((digits + guard_digits) * log2(10)) + 32` bits.

mod complex;
mod context;
pub mod format;

pub use complex::{pairwise_sum, pairwise_sum_real, HpComplex};
pub use context::{
    const_euler_gamma, const_log_2pi, const_pi, with_precision, PrecisionContext,
    DEFAULT_GUARD_DIGITS, MIN_DIGITS, MIN_GUARD_DIGITS,
};

/// Arbitrary-precision real.
pub type HpReal = rug::Float;

/// `|a - b| / max(|a|, |b|, 1)`.
pub fn rel_diff(a: &HpReal, b: &HpReal) -> HpReal {
    let p = a.prec();
    let diff = HpReal::with_val(p, a - b).abs();
    let mut scale = HpReal::with_val(p, 1u32);
    for v in [a, b] {
        let av = HpReal::with_val(p, v.abs_ref());
        if av > scale {
            scale = av;
        }
    }
    diff / scale
}
