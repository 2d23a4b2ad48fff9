//! `Psi_{rho,k}(x)` by three strategies and the weighted series
//! `L_m(rho) = sum_n d_k(n) n^(-(2m+1)) Psi_{rho,k}(n)`.

use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hp::{HpComplex, HpReal, PrecisionContext};
use crate::mellin::{cos_half_pi_pow, line_integral_traced, psi_kernel, Quadrature, QuadratureSettings, TraceStep, KERNEL_ABSCISSA};
use crate::special::zeta::ZetaSeries;
use crate::special::{bessel_k0, divisor_sieve, gamma_pow, DivisorTable};

/// Default cap on the number of terms of any `n`- or `j`-sum.
pub const DEFAULT_N_MAX: usize = 100_000;
/// Consecutive negligible terms that end a sum.
const QUIET_TERMS: u32 = 5;
const INITIAL_SIEVE: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Auto,
    InverseMellin,
    TermSum,
    ClosedForm,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Strategy::Auto, Strategy::InverseMellin, Strategy::TermSum, Strategy::ClosedForm];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::InverseMellin => "inverse_mellin",
            Strategy::TermSum => "term_sum",
            Strategy::ClosedForm => "closed_form",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown strategy {s:?} (expected auto, inverse_mellin, term_sum or closed_form)")))
    }
}

/// Evaluation request for `Psi_{rho,k}(x)`.
#[derive(Clone, Debug)]
pub struct PsiRequest {
    pub rho: HpReal,
    pub k: u32,
    pub x: HpReal,
    pub strategy: Strategy,
}

impl PsiRequest {
    pub fn new(rho: HpReal, k: u32, x: HpReal) -> Self {
        PsiRequest {
            rho,
            k,
            x,
            strategy: Strategy::Auto,
        }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::invalid("k must be at least 1"));
        }
        if self.rho.cmp0() != Some(std::cmp::Ordering::Greater) {
            return Err(Error::domain("psi", "rho must be positive"));
        }
        if self.x.cmp0() != Some(std::cmp::Ordering::Greater) {
            return Err(Error::domain("psi", "x must be positive"));
        }
        if self.strategy == Strategy::ClosedForm && self.k > 2 {
            return Err(Error::invalid(format!("closed_form is only available for k = 1, 2 (got k = {})", self.k)));
        }
        Ok(())
    }

    /// The strategy actually used: `auto` becomes `closed_form` for
    /// `k <= 2` and `inverse_mellin` otherwise.
    pub fn resolved_strategy(&self) -> Strategy {
        match self.strategy {
            Strategy::Auto if self.k <= 2 => Strategy::ClosedForm,
            Strategy::Auto => Strategy::InverseMellin,
            s => s,
        }
    }
}

/// An evaluated `Psi_{rho,k}(x)`.
#[derive(Clone, Debug)]
pub struct PsiValue {
    pub value: HpReal,
    /// Heuristic: quadrature discrepancy or size of the last retained term.
    pub error_estimate: HpReal,
    pub strategy: Strategy,
    /// Terms used by the summation strategies.
    pub terms: Option<usize>,
    /// Refinement trace of the inverse Mellin line integral; empty otherwise.
    pub trace: Vec<TraceStep>,
}

/// `Psi_{rho,k}(x) = sum_j d_k(j) * kernel_k(rho j x)`.
pub fn psi(req: &PsiRequest, ctx: &PrecisionContext) -> Result<PsiValue> {
    req.validate()?;
    let strategy = req.resolved_strategy();
    let bits = ctx.bits();
    let z = Float::with_val(bits, &req.rho * &req.x);
    match strategy {
        Strategy::InverseMellin => {
            let q = psi_line_integral(req.k, &z, ctx)?;
            Ok(PsiValue {
                value: q.value.re,
                error_estimate: q.error_estimate,
                strategy,
                terms: None,
                trace: q.trace,
            })
        }
        Strategy::ClosedForm if req.k == 1 => {
            let value = Float::with_val(bits, z.exp_m1_ref()).recip();
            let error_estimate = Float::with_val(bits, &value * ctx.working_eps());
            Ok(PsiValue {
                value,
                error_estimate,
                strategy,
                terms: None,
                trace: Vec::new(),
            })
        }
        Strategy::ClosedForm => {
            let (value, last, terms) = kernel_sum(2, &z, |zj| bessel_pair(zj, ctx), ctx)?;
            Ok(PsiValue {
                value,
                error_estimate: last,
                strategy,
                terms: Some(terms),
                trace: Vec::new(),
            })
        }
        Strategy::TermSum => {
            let k = req.k;
            let (value, last, terms) = kernel_sum(
                k,
                &z,
                |zj| match k {
                    1 => Ok(Float::with_val(bits, -zj).exp()),
                    2 => bessel_pair_separate(zj, ctx),
                    _ => psi_kernel(k, zj, ctx),
                },
                ctx,
            )?;
            Ok(PsiValue {
                value,
                error_estimate: last,
                strategy,
                terms: Some(terms),
                trace: Vec::new(),
            })
        }
        Strategy::Auto => unreachable!("auto is resolved above"),
    }
}

/// `2 Re K_0(2 e^(i pi/4) sqrt(z))`.
pub(crate) fn bessel_pair(z: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let bits = ctx.bits();
    let r = Float::with_val(bits, z * 2u32).sqrt();
    let k0 = bessel_k0(&HpComplex::new(r.clone(), r), ctx)?;
    Ok(Float::with_val(bits, &k0.re * 2u32))
}

/// `K_0(2 e^(i pi/4) sqrt(z)) + K_0(2 e^(-i pi/4) sqrt(z))`, both evaluated.
fn bessel_pair_separate(z: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let bits = ctx.bits();
    let r = Float::with_val(bits, z * 2u32).sqrt();
    let up = bessel_k0(&HpComplex::new(r.clone(), r.clone()), ctx)?;
    let down = bessel_k0(&HpComplex::new(r.clone(), -r), ctx)?;
    Ok((&up + &down).re)
}

fn is_quiet(term: &Float, partial: &Float, threshold: &Float) -> bool {
    let bits = partial.prec();
    let mut scale = Float::with_val(bits, partial.abs_ref());
    if scale < 1 {
        scale = Float::with_val(bits, 1u32);
    }
    Float::with_val(bits, term.abs_ref()) < scale * threshold
}

/// Growing divisor table for sums of unknown length.
struct Divisors {
    k: u32,
    cap: usize,
    table: DivisorTable,
}

impl Divisors {
    fn new(k: u32, cap: usize) -> Result<Self> {
        Ok(Divisors {
            k,
            cap,
            table: divisor_sieve(k, INITIAL_SIEVE.min(cap.max(1)))?,
        })
    }

    fn get(&mut self, n: usize) -> Result<Option<u64>> {
        if n > self.cap {
            return Ok(None);
        }
        if n > self.table.bound() {
            let bound = (self.table.bound() * 2).max(n).min(self.cap);
            self.table = divisor_sieve(self.k, bound)?;
        }
        Ok(Some(self.table.get(n)))
    }
}

/// `sum_j d_k(j) kernel(z j)` until five consecutive terms are negligible.
fn kernel_sum<K>(k: u32, z: &Float, kernel: K, ctx: &PrecisionContext) -> Result<(Float, Float, usize)>
where
    K: Fn(&Float) -> Result<Float>,
{
    let bits = ctx.bits();
    let threshold = ctx.tolerance(-5);
    let mut divisors = Divisors::new(k, DEFAULT_N_MAX)?;
    let mut sum = Float::new(bits);
    let mut quiet = 0;
    let mut j = 1usize;
    loop {
        let Some(d) = divisors.get(j)? else {
            return Err(Error::NonConvergence {
                what: "Psi term sum",
                detail: format!("{DEFAULT_N_MAX} terms exhausted at rho*x = {}", z.to_f64()),
            });
        };
        let zj = Float::with_val(bits, z * j as u64);
        let term = kernel(&zj)? * d;
        sum += &term;
        if is_quiet(&term, &sum, &threshold) {
            quiet += 1;
            if quiet >= QUIET_TERMS {
                return Ok((sum, term.abs(), j));
            }
        } else {
            quiet = 0;
        }
        j += 1;
    }
}

/// `(1/2 pi i) * integral over Re(s) = 5/2 of Gamma^k zeta^k cos^(k-1)(pi s/2) z^(-s) ds`.
fn psi_line_integral(k: u32, z: &Float, ctx: &PrecisionContext) -> Result<Quadrature> {
    let ln_z = Float::with_val(ctx.bits(), z.ln_ref());
    let settings = QuadratureSettings::new(ctx.real(KERNEL_ABSCISSA), k, ctx).symmetric();
    line_integral_traced(
        |s: &HpComplex| {
            let g = gamma_pow(s, k, ctx)?;
            let zeta = ZetaSeries::new(s, 0, ctx).eval(0)?.powu(k);
            let c = cos_half_pi_pow(s, k - 1, ctx);
            Ok(&(&(&g * &zeta) * &c) * &s.real_base_pow_neg(&ln_z))
        },
        &settings,
        ctx,
    )
}

/// Request for `L_m(rho)`; `m = 0` gives the weight-`1/n` series `L(rho)`.
#[derive(Clone, Debug)]
pub struct SeriesRequest {
    pub rho: HpReal,
    pub k: u32,
    pub m: i32,
    pub n_max: usize,
}

impl SeriesRequest {
    pub fn new(rho: HpReal, k: u32, m: i32) -> Self {
        SeriesRequest {
            rho,
            k,
            m,
            n_max: DEFAULT_N_MAX,
        }
    }

    pub fn with_n_max(mut self, n_max: usize) -> Self {
        self.n_max = n_max;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::invalid("k must be at least 1"));
        }
        if self.rho.cmp0() != Some(std::cmp::Ordering::Greater) {
            return Err(Error::domain("series_l", "rho must be positive"));
        }
        if self.n_max == 0 {
            return Err(Error::invalid("n_max must be at least 1"));
        }
        Ok(())
    }
}

/// An evaluated `L_m(rho)`.
#[derive(Clone, Debug)]
pub struct SeriesValue {
    pub value: HpReal,
    pub error_estimate: HpReal,
    /// Number of `n`-terms for the summation path; `None` for the line integral.
    pub terms: Option<usize>,
    /// Refinement trace of the line integral.
    pub trace: Vec<TraceStep>,
}

/// Line abscissa for `L_m`: `5/2` for `m >= 0` and `3/2 - 2m` for `m < 0`,
/// keeping `zeta(2m+1+s)` inside its half-plane of absolute convergence.
pub fn series_abscissa(m: i32) -> f64 {
    if m >= 0 {
        KERNEL_ABSCISSA
    } else {
        1.5 - 2.0 * f64::from(m)
    }
}

/// `L_m(rho)` as the single line integral
/// `(1/2 pi i) * integral of Gamma^k(s) zeta^k(s) zeta^k(2m+1+s) cos^(k-1)(pi s/2) rho^(-s) ds`.
pub fn series_l(req: &SeriesRequest, ctx: &PrecisionContext) -> Result<SeriesValue> {
    req.validate()?;
    let k = req.k;
    let shift = 2 * req.m + 1;
    let ln_rho = Float::with_val(ctx.bits(), req.rho.ln_ref());
    let settings = QuadratureSettings::new(ctx.real(series_abscissa(req.m)), k, ctx).symmetric();
    let q = line_integral_traced(
        |s: &HpComplex| {
            let g = gamma_pow(s, k, ctx)?;
            let series = ZetaSeries::new(s, shift.unsigned_abs(), ctx);
            let z = &series.eval(0)? * &series.eval(shift)?;
            let c = cos_half_pi_pow(s, k - 1, ctx);
            Ok(&(&(&g * &z.powu(k)) * &c) * &s.real_base_pow_neg(&ln_rho))
        },
        &settings,
        ctx,
    )?;
    Ok(SeriesValue {
        value: q.value.re,
        error_estimate: q.error_estimate,
        terms: None,
        trace: q.trace,
    })
}

/// `L_m(rho)` by direct summation over `n`, each `Psi_{rho,k}(n)` evaluated
/// with `strategy`. Stops after five consecutive terms below
/// `10^(-digits-5) * max(1, |partial|)`.
pub fn series_l_sum(req: &SeriesRequest, strategy: Strategy, ctx: &PrecisionContext) -> Result<SeriesValue> {
    req.validate()?;
    let bits = ctx.bits();
    let threshold = ctx.tolerance(-5);
    let exponent = -(2 * req.m + 1);
    let mut divisors = Divisors::new(req.k, req.n_max)?;
    let mut sum = Float::new(bits);
    let mut quiet = 0;
    let mut n = 1usize;
    loop {
        let Some(d) = divisors.get(n)? else {
            return Err(Error::NonConvergence {
                what: "L_m series",
                detail: format!("n_max = {} exhausted with partial sum {}", req.n_max, sum.to_f64()),
            });
        };
        let p = psi(&PsiRequest::new(req.rho.clone(), req.k, ctx.int(n as i64)).with_strategy(strategy), ctx)?;
        let weight = Float::with_val(bits, n as u64);
        let weight = if exponent >= 0 {
            Float::with_val(bits, (&weight).pow(exponent as u32))
        } else {
            Float::with_val(bits, (&weight).pow((-exponent) as u32)).recip()
        };
        let term = p.value * weight * d;
        sum += &term;
        if is_quiet(&term, &sum, &threshold) {
            quiet += 1;
            if quiet >= QUIET_TERMS {
                return Ok(SeriesValue {
                    value: sum,
                    error_estimate: term.abs(),
                    terms: Some(n),
                    trace: Vec::new(),
                });
            }
        } else {
            quiet = 0;
        }
        n += 1;
    }
}
