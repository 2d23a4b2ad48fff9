use std::fmt::Write as _;

use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::hp::PrecisionContext;

/// Piltz divisor function `d_k(1..=N)`, optionally with `sigma_a(1..=N)`.
#[derive(Clone, Debug)]
pub struct DivisorTable {
    k: u32,
    counts: Vec<u64>,
    sigma: Option<(Float, Vec<Float>)>,
}

/// `d_k(n)` for `n <= bound`, by `k - 1` Dirichlet convolutions with the
/// all-ones function.
pub fn divisor_sieve(k: u32, bound: usize) -> Result<DivisorTable> {
    if k == 0 {
        return Err(Error::invalid("divisor order k must be at least 1"));
    }
    if bound == 0 {
        return Err(Error::invalid("divisor table bound must be at least 1"));
    }
    let mut counts = vec![1u64; bound + 1];
    counts[0] = 0;
    for _ in 1..k {
        let mut next = vec![0u64; bound + 1];
        for d in 1..=bound {
            let v = counts[d];
            let mut multiple = d;
            while multiple <= bound {
                next[multiple] = next[multiple]
                    .checked_add(v)
                    .ok_or_else(|| Error::invalid("d_k(n) overflowed 64 bits"))?;
                multiple += d;
            }
        }
        counts = next;
    }
    Ok(DivisorTable {
        k,
        counts,
        sigma: None,
    })
}

impl DivisorTable {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn bound(&self) -> usize {
        self.counts.len() - 1
    }

    /// `d_k(n)`; `n` must lie in `1..=bound`.
    pub fn get(&self, n: usize) -> u64 {
        self.counts[n]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts[1..]
    }

    /// Fills `sigma_a(n) = sum_{d | n} d^a` for every `n` in the table.
    pub fn with_sigma(mut self, a: &Float, ctx: &PrecisionContext) -> Self {
        let bound = self.bound();
        let bits = ctx.bits();
        let mut sigma = vec![Float::new(bits); bound + 1];
        for d in 1..=bound {
            let p = Float::with_val(bits, d as u32).pow(a);
            let mut multiple = d;
            while multiple <= bound {
                sigma[multiple] += &p;
                multiple += d;
            }
        }
        self.sigma = Some((Float::with_val(bits, a), sigma));
        self
    }

    /// `sigma_a(n)` if [`DivisorTable::with_sigma`] was called.
    pub fn sigma(&self, n: usize) -> Option<&Float> {
        self.sigma.as_ref().map(|(_, v)| &v[n])
    }

    /// CSV rows `n,d_k(n)` with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = format!("n,d_{}(n)\n", self.k);
        for (n, d) in self.counts.iter().enumerate().skip(1) {
            let _ = writeln!(out, "{n},{d}");
        }
        out
    }
}
