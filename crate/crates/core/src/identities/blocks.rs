use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::hp::{HpReal, PrecisionContext};
use crate::special::{bernoulli, factorial, BernoulliTable};

fn sign(exponent: i64) -> i32 {
    if exponent.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn table_for(m: i32) -> BernoulliTable {
    bernoulli((2 * m.max(0) as usize) + 2)
}

/// Exact coefficients `c_j = (-1)^j B_{2m-2j+2}^k B_{2j}^k / ((2m-2j+2)!^k (2j)!^k)`
/// for `j = 0..=m+1`; empty for `m <= -2`.
pub fn block_coefficients(k: u32, m: i32) -> Vec<Rational> {
    if m <= -2 {
        return Vec::new();
    }
    let table = table_for(m);
    let top = (m + 1) as usize;
    (0..=top)
        .map(|j| {
            let a = 2 * (top - j);
            let b = 2 * j;
            let num = Rational::from(table.get(a).expect("table covers 2m+2") * table.get(b).expect("table covers 2m+2"));
            let den = Integer::from(factorial(a as u32) * factorial(b as u32));
            let base = num / den;
            let value = Rational::from(base.pow(k));
            if j % 2 == 1 {
                -value
            } else {
                value
            }
        })
        .collect()
}

/// The same coefficients after `j -> m+1-j`: entry `i` is
/// `(-1)^(m+1-i) B_{2i}^k B_{2m+2-2i}^k / ((2i)!^k (2m+2-2i)!^k)`, so that
/// `reindexed[m+1-j] == direct[j]` exactly.
pub fn block_coefficients_reindexed(k: u32, m: i32) -> Vec<Rational> {
    if m <= -2 {
        return Vec::new();
    }
    let table = table_for(m);
    let top = (m + 1) as usize;
    (0..=top)
        .map(|i| {
            let num = Rational::from(table.get(2 * i).unwrap() * table.get(2 * (top - i)).unwrap());
            let den = Integer::from(factorial(2 * i as u32) * factorial(2 * (top - i) as u32));
            let value = Rational::from((num / den).pow(k));
            if (top - i) % 2 == 1 {
                -value
            } else {
                value
            }
        })
        .collect()
}

/// `(-1)^(km+k+m) (pi/2)^(k-1) 2^(2km) sum_j c_j alpha^(k(m+1-j)) beta^(kj)`.
pub fn bernoulli_block(k: u32, m: i32, alpha: &HpReal, beta: &HpReal, ctx: &PrecisionContext) -> HpReal {
    let bits = ctx.bits();
    let coeffs = block_coefficients(k, m);
    if coeffs.is_empty() {
        return ctx.zero();
    }
    let ak = Float::with_val(bits, (&alpha).pow(k));
    let bk = Float::with_val(bits, (&beta).pow(k));
    let top = (m + 1) as u32;
    let mut sum = Float::new(bits);
    for (j, c) in coeffs.iter().enumerate() {
        let j = j as u32;
        let term = Float::with_val(bits, c) * Float::with_val(bits, (&ak).pow(top - j)) * Float::with_val(bits, (&bk).pow(j));
        sum += term;
    }
    let k_i = i64::from(k);
    let m_i = i64::from(m);
    let s = sign(k_i * m_i + k_i + m_i);
    let half_pi = Float::with_val(bits, ctx.pi() / 2u32);
    let pref = Float::with_val(bits, (&half_pi).pow(k - 1)) * two_pow(2 * k_i * m_i, ctx);
    let out = sum * pref;
    if s < 0 {
        -out
    } else {
        out
    }
}

/// `2^e` for any integer `e`.
pub(crate) fn two_pow(e: i64, ctx: &PrecisionContext) -> HpReal {
    let two = Float::with_val(ctx.bits(), 2u32);
    two.pow(e as i32)
}

/// `(-1)^e` for any integer `e`.
pub(crate) fn parity_sign(e: i64) -> i32 {
    sign(e)
}
