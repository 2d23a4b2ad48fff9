use rayon::prelude::*;
use rug::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hp::format::{format_complex, format_real};
use crate::hp::{pairwise_sum, HpComplex, HpReal, PrecisionContext};

const DEFAULT_REFINE_LIMIT: u32 = 8;

/// Vertical line `Re(s) = c` truncated to `|Im(s)| <= t_max`, sampled with step `h`.
#[derive(Clone, Debug)]
pub struct QuadratureSettings {
    pub c: HpReal,
    pub h: HpReal,
    pub t_max: HpReal,
    /// Maximum number of refinement steps after the first evaluation.
    pub refine_limit: u32,
    /// Set when `f(c - it)` is the conjugate of `f(c + it)`; halves the work
    /// and returns an exactly real value.
    pub conjugate_symmetric: bool,
}

/// Height `T` with `exp(-pi T / 2) T^(k (c - 1/2)) < 10^(-digits - 5)`.
pub fn truncation_height(c: f64, k: u32, digits: u32) -> f64 {
    let target = f64::from(digits + 5) * std::f64::consts::LN_10;
    let power = f64::from(k) * (c - 0.5);
    let mut t: f64 = 10.0;
    for _ in 0..50 {
        t = (2.0 / std::f64::consts::PI) * (target + power * t.ln());
        t = t.max(10.0);
    }
    t
}

impl QuadratureSettings {
    /// Settings for an integrand carrying `k` Gamma factors against
    /// `cos^(k-1)`: initial step 1/8 and the truncation height above.
    pub fn new(c: HpReal, k: u32, ctx: &PrecisionContext) -> Self {
        let t = truncation_height(c.to_f64(), k, ctx.digits());
        QuadratureSettings {
            c,
            h: ctx.ratio(1, 8),
            t_max: ctx.real(t.ceil()),
            refine_limit: DEFAULT_REFINE_LIMIT,
            conjugate_symmetric: false,
        }
    }

    pub fn symmetric(mut self) -> Self {
        self.conjugate_symmetric = true;
        self
    }

    pub fn with_refine_limit(mut self, limit: u32) -> Self {
        self.refine_limit = limit;
        self
    }
}

/// One row of a refinement trace. For circles `h` and `t_max` are absent and
/// `nodes` is the node count `M`.
#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub step: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    pub nodes: usize,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<f64>,
}

/// A converged quadrature with its refinement history.
#[derive(Clone, Debug)]
pub struct Quadrature {
    pub value: HpComplex,
    /// Difference between the last two refinement levels.
    pub error_estimate: HpReal,
    pub trace: Vec<TraceStep>,
}

impl Quadrature {
    pub fn trace_json(&self) -> String {
        serde_json::to_string_pretty(&self.trace).expect("trace serializes")
    }

    /// Ratios of successive discrepancies (earlier over later).
    pub fn contraction_ratios(&self) -> Vec<f64> {
        let d: Vec<f64> = self.trace.iter().filter_map(|s| s.discrepancy).collect();
        d.windows(2).map(|w| w[0] / w[1]).collect()
    }
}

pub(crate) fn eval_all<F>(f: &F, points: &[HpComplex]) -> Result<Vec<HpComplex>>
where
    F: Fn(&HpComplex) -> Result<HpComplex> + Sync,
{
    points.par_iter().map(f).collect()
}

/// `(1/2 pi i) * integral over Re(s) = c of f(s) ds`.
pub fn line_integral<F>(f: F, settings: &QuadratureSettings, ctx: &PrecisionContext) -> Result<HpComplex>
where
    F: Fn(&HpComplex) -> Result<HpComplex> + Sync,
{
    line_integral_traced(f, settings, ctx).map(|q| q.value)
}

/// [`line_integral`] together with its refinement trace.
///
/// Each step halves `h`, reusing every earlier node. `T` grows by a factor
/// 1.5 whenever the integrand at the ends is still above the tolerance.
pub fn line_integral_traced<F>(f: F, settings: &QuadratureSettings, ctx: &PrecisionContext) -> Result<Quadrature>
where
    F: Fn(&HpComplex) -> Result<HpComplex> + Sync,
{
    let bits = ctx.bits();
    if settings.h.cmp0() != Some(std::cmp::Ordering::Greater) || settings.t_max.cmp0() != Some(std::cmp::Ordering::Greater) {
        return Err(Error::invalid("quadrature step and height must be positive"));
    }
    let c = Float::with_val(bits, &settings.c);
    let symmetric = settings.conjugate_symmetric;
    let two_pi = Float::with_val(bits, ctx.pi() * 2u32);
    let rel_tol = ctx.tolerance(0);
    let floor_tol = ctx.pow10(5 - ctx.working_digits() as i32);

    // contribution of the node pair at +-t (or the single node at 0)
    let node_pair = |t: &Float| -> HpComplex {
        HpComplex::new(c.clone(), t.clone())
    };
    let combine = |t_is_zero: bool, plus: HpComplex, minus: Option<HpComplex>| -> HpComplex {
        if t_is_zero {
            plus
        } else if symmetric {
            HpComplex::from_real(Float::with_val(bits, &plus.re * 2u32))
        } else {
            &plus + &minus.expect("both sides evaluated")
        }
    };
    let evaluate = |ts: &[Float]| -> Result<(HpComplex, Float, Float)> {
        let mut points = Vec::with_capacity(ts.len() * 2);
        for t in ts {
            points.push(node_pair(t));
            if !symmetric && !t.is_zero() {
                points.push(node_pair(&Float::with_val(bits, -t)));
            }
        }
        let values = eval_all(&f, &points)?;
        let mut contributions = Vec::with_capacity(ts.len());
        let mut l1 = Vec::with_capacity(ts.len());
        let mut it = values.into_iter();
        let mut last = Float::new(bits);
        for t in ts {
            let plus = it.next().expect("value per node");
            let minus = if !symmetric && !t.is_zero() { it.next() } else { None };
            let mut mag = plus.abs();
            if let Some(m) = &minus {
                mag += m.abs();
            } else if !t.is_zero() {
                mag *= 2u32;
            }
            last = mag.clone();
            contributions.push(combine(t.is_zero(), plus, minus));
            l1.push(mag);
        }
        Ok((
            pairwise_sum(&contributions, bits),
            crate::hp::pairwise_sum_real(&l1, bits),
            last,
        ))
    };

    let mut h = Float::with_val(bits, &settings.h);
    let mut n_pos = (Float::with_val(bits, &settings.t_max / &h).ceil().to_f64() as usize).max(1);
    let ts: Vec<Float> = (0..=n_pos).map(|j| Float::with_val(bits, &h * j as u32)).collect();
    let (mut grid_sum, mut grid_abs, mut boundary) = evaluate(&ts)?;

    let mut trace = Vec::new();
    let mut prev: Option<HpComplex> = None;
    for step in 0..=settings.refine_limit {
        let scale = Float::with_val(bits, &h / &two_pi);
        let value = grid_sum.mul_real(&scale);
        let l1 = Float::with_val(bits, &grid_abs * &scale);
        let threshold = Float::with_val(bits, value.abs() * &rel_tol) + Float::with_val(bits, &l1 * &floor_tol);
        // tail beyond T of an integrand decaying like exp(-pi t / 2)
        let tail = Float::with_val(bits, &boundary * &scale) / Float::with_val(bits, ctx.pi() / 2u32) / &h;
        let tail_ok = tail <= threshold;
        let discrepancy = prev.as_ref().map(|p| (&value - p).abs());
        trace.push(TraceStep {
            step,
            h: Some(h.to_f64()),
            t_max: Some(Float::with_val(bits, &h * n_pos as u32).to_f64()),
            nodes: if symmetric { n_pos + 1 } else { 2 * n_pos + 1 },
            value: format_complex(&value, 25),
            discrepancy: discrepancy.as_ref().map(|d| d.to_f64()),
        });
        if let Some(d) = &discrepancy {
            if *d <= threshold && tail_ok {
                return Ok(Quadrature {
                    value: if symmetric { HpComplex::from_real(value.re) } else { value },
                    error_estimate: d.clone(),
                    trace,
                });
            }
        }
        if step == settings.refine_limit {
            let last = prev.unwrap_or_else(|| value.clone());
            return Err(Error::NonConvergence {
                what: "line integral",
                detail: format!(
                    "c = {}, {} refinements; last two values {} and {}",
                    format_real(&c, 6),
                    settings.refine_limit,
                    format_complex(&last, 20),
                    format_complex(&value, 20)
                ),
            });
        }
        prev = Some(value);

        if !tail_ok {
            let grown = (n_pos * 3).div_ceil(2);
            let ts: Vec<Float> = ((n_pos + 1)..=grown).map(|j| Float::with_val(bits, &h * j as u32)).collect();
            let (s, a, b) = evaluate(&ts)?;
            grid_sum = &grid_sum + &s;
            grid_abs += a;
            boundary = b;
            n_pos = grown;
        }
        h /= 2u32;
        let ts: Vec<Float> = (0..n_pos).map(|j| Float::with_val(bits, &h * (2 * j + 1) as u32)).collect();
        let (s, a, _) = evaluate(&ts)?;
        grid_sum = &grid_sum + &s;
        grid_abs += a;
        n_pos *= 2;
    }
    unreachable!("loop returns on its last step")
}
