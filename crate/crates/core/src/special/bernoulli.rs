use std::fmt::Write as _;

use rug::{Float, Integer, Rational};

use crate::hp::PrecisionContext;

/// Exact Bernoulli numbers `B_0..=B_N` (convention `B_1 = -1/2`).
#[derive(Clone, Debug, PartialEq)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

/// Builds `B_0..=B_n` from `sum_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli(n: usize) -> BernoulliTable {
    let mut values: Vec<Rational> = Vec::with_capacity(n + 1);
    values.push(Rational::from(1));
    for m in 1..=n {
        if m > 1 && m % 2 == 1 {
            values.push(Rational::new());
            continue;
        }
        // Row m+1 of Pascal's triangle, built incrementally.
        let mut binom = Integer::from(1);
        let mut acc = Rational::new();
        for (j, b) in values.iter().enumerate() {
            if !(j > 1 && j % 2 == 1) {
                acc += Rational::from(b * &binom);
            }
            binom *= (m + 1 - j) as u64;
            binom /= (j + 1) as u64;
        }
        // binom is now C(m+1, m) = m+1
        values.push(-acc / Integer::from(m + 1));
    }
    BernoulliTable { values }
}

impl BernoulliTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest index held.
    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, m: usize) -> Option<&Rational> {
        self.values.get(m)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// CSV rows `m,numerator,denominator` with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,numerator,denominator\n");
        for (m, b) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{},{},{}", m, b.numer(), b.denom());
        }
        out
    }
}

/// `n!` as an exact integer.
pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// Float tables derived from the exact numbers, cached per precision.
pub(crate) struct BernoulliFloats {
    /// `B_{2j} / (2j)!` for `j = 0..`
    pub(crate) over_factorial: Vec<Float>,
    /// `B_{2j} / (2j (2j - 1))` for `j = 1..` (index 0 unused)
    pub(crate) stirling: Vec<Float>,
}

pub(crate) fn bernoulli_floats(ctx: &PrecisionContext) -> &BernoulliFloats {
    ctx.cache().bernoulli.get_or_init(|| {
        let pairs = (ctx.working_digits() as usize + 40).max(60);
        let table = bernoulli(2 * pairs);
        let bits = ctx.bits();
        let mut over_factorial = Vec::with_capacity(pairs + 1);
        let mut stirling = Vec::with_capacity(pairs + 1);
        stirling.push(Float::new(bits));
        let mut fact = Integer::from(1);
        for j in 0..=pairs {
            let b = &table.values[2 * j];
            if j > 0 {
                fact *= (2 * j - 1) as u64;
                fact *= (2 * j) as u64;
                let den = Integer::from((2 * j) as u64 * (2 * j - 1) as u64);
                stirling.push(Float::with_val(bits, b) / den);
            }
            let q = Rational::from((b.numer().clone(), Integer::from(b.denom() * &fact)));
            over_factorial.push(Float::with_val(bits, &q));
        }
        BernoulliFloats {
            over_factorial,
            stirling,
        }
    })
}
