//! Decimal serialization: reals as `±d.ddd…e±XX`, complex numbers as
//! `re + im*i` with both parts in the real format.

use rug::Float;

use super::HpComplex;
use crate::error::{Error, Result};

/// Formats `x` with `digits` significant decimal digits.
pub fn format_real(x: &Float, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() { "-inf" } else { "+inf" }.to_string();
    }
    let sign = if x.is_sign_negative() { '-' } else { '+' };
    if x.is_zero() {
        let mut out = String::with_capacity(digits + 8);
        out.push(sign);
        out.push('0');
        if digits > 1 {
            out.push('.');
            out.extend(std::iter::repeat('0').take(digits - 1));
        }
        out.push_str("e+00");
        return out;
    }
    let (_, mantissa, exp) = x.to_sign_string_exp(10, Some(digits));
    // value = 0.MANTISSA * 10^exp
    let exp = exp.unwrap_or(0) - 1;
    let mut out = String::with_capacity(digits + 8);
    out.push(sign);
    out.push_str(&mantissa[..1]);
    if mantissa.len() > 1 {
        out.push('.');
        out.push_str(&mantissa[1..]);
    }
    out.push('e');
    out.push(if exp < 0 { '-' } else { '+' });
    out.push_str(&format!("{:02}", exp.unsigned_abs()));
    out
}

/// Parses a decimal real into a float of `prec` bits.
pub fn parse_real(src: &str, prec: u32) -> Result<Float> {
    let trimmed = src.trim();
    let parsed = Float::parse(trimmed).map_err(|e| Error::Parse {
        input: src.to_string(),
        reason: e.to_string(),
    })?;
    Ok(Float::with_val(prec, parsed))
}

pub fn format_complex(z: &HpComplex, digits: usize) -> String {
    format!("{} + {}*i", format_real(&z.re, digits), format_real(&z.im, digits))
}

pub fn parse_complex(src: &str, prec: u32) -> Result<HpComplex> {
    let err = |reason: &str| Error::Parse {
        input: src.to_string(),
        reason: reason.to_string(),
    };
    let trimmed = src.trim();
    let body = trimmed
        .strip_suffix("*i")
        .ok_or_else(|| err("missing trailing \"*i\""))?;
    let (re, im) = body
        .split_once(" + ")
        .ok_or_else(|| err("expected \"re + im*i\""))?;
    Ok(HpComplex::new(parse_real(re, prec)?, parse_real(im, prec)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hp::with_precision;
    use proptest::prelude::*;

    #[test]
    fn layout() {
        let ctx = with_precision(20).unwrap();
        assert_eq!(format_real(&ctx.real(1234.5), 6), "+1.23450e+03");
        assert_eq!(format_real(&ctx.real(-0.00125), 3), "-1.25e-03");
        assert_eq!(format_real(&ctx.zero(), 4), "+0.000e+00");
        assert_eq!(format_real(&ctx.real(1e-120), 2), "+1.0e-120");
        let z = HpComplex::from_f64(&ctx, 0.5, -2.0);
        assert_eq!(format_complex(&z, 3), "+5.00e-01 + -2.00e+00*i");
    }

    #[test]
    fn pi_fifteen_digits() {
        let ctx = with_precision(15).unwrap();
        assert_eq!(format_real(ctx.pi(), 15), "+3.14159265358979e+00");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_real("abc", 100).is_err());
        assert!(parse_complex("+1.0e+00", 100).is_err());
    }

    proptest! {
        #[test]
        fn roundtrip_keeps_working_precision(m in -1.0e6f64..1.0e6, e in -40i32..40, im in -1.0f64..1.0) {
            let ctx = with_precision(50).unwrap();
            let x = ctx.real(m) * ctx.pow10(e) / 3u32;
            let z = HpComplex::new(x.clone(), ctx.real(im) / 7u32);
            let digits = ctx.working_digits() as usize;
            let back = parse_real(&format_real(&x, digits), ctx.bits()).unwrap();
            let tol = ctx.pow10(1 - ctx.working_digits() as i32) * x.clone().abs();
            prop_assert!(Float::with_val(ctx.bits(), &back - &x).abs() <= tol);
            let zb = parse_complex(&format_complex(&z, digits), ctx.bits()).unwrap();
            prop_assert!((&zb - &z).abs() <= ctx.pow10(1 - ctx.working_digits() as i32) * z.abs());
        }
    }
}
