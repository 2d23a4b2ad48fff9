use rug::ops::Pow;
use rug::Float;

use super::quadrature::{eval_all, Quadrature, TraceStep};
use crate::error::{Error, Result};
use crate::hp::format::format_complex;
use crate::hp::{pairwise_sum, HpComplex, HpReal, PrecisionContext};
use crate::special::factorial;

const DEFAULT_DOUBLINGS: u32 = 6;

/// Circle `|s - center| = radius` sampled at `nodes` equally spaced points.
#[derive(Clone, Debug)]
pub struct CircleSettings {
    pub center: HpComplex,
    pub radius: HpReal,
    pub nodes: usize,
    /// Maximum number of node doublings.
    pub refine_limit: u32,
    /// Set when the center is real and `f(conj s) = conj f(s)`; only the
    /// upper half circle is evaluated and the result is real.
    pub real_symmetric: bool,
}

impl CircleSettings {
    /// Radius 1/4 and `max(64, 8 (order + 1))` nodes.
    pub fn new(center: HpComplex, order: u32, ctx: &PrecisionContext) -> Self {
        CircleSettings {
            center,
            radius: ctx.ratio(1, 4),
            nodes: 64usize.max(8 * (order as usize + 1)),
            refine_limit: DEFAULT_DOUBLINGS,
            real_symmetric: false,
        }
    }

    /// Circle about the real point `center` for a function real on the real axis.
    pub fn real(center: HpReal, order: u32, ctx: &PrecisionContext) -> Self {
        let mut s = CircleSettings::new(HpComplex::from_real(center), order, ctx);
        s.real_symmetric = true;
        s
    }
}

/// `f^(n)(center)` from the Cauchy integral `n!/(2 pi i) * contour of f(s)/(s - center)^(n+1)`.
pub fn cauchy_derivative<F>(f: F, order: u32, settings: &CircleSettings, ctx: &PrecisionContext) -> Result<HpComplex>
where
    F: Fn(&HpComplex) -> Result<HpComplex> + Sync,
{
    cauchy_derivative_traced(f, order, settings, ctx).map(|q| q.value)
}

/// [`cauchy_derivative`] with its trace. `M` doubles (reusing the old nodes)
/// until two successive values agree to `10^(-digits) * max(1, |value|)`.
pub fn cauchy_derivative_traced<F>(f: F, order: u32, settings: &CircleSettings, ctx: &PrecisionContext) -> Result<Quadrature>
where
    F: Fn(&HpComplex) -> Result<HpComplex> + Sync,
{
    let bits = ctx.bits();
    if settings.nodes < 2 || settings.nodes % 2 == 1 {
        return Err(Error::invalid("circle node count must be even and at least 2"));
    }
    if settings.radius.cmp0() != Some(std::cmp::Ordering::Greater) {
        return Err(Error::invalid("circle radius must be positive"));
    }
    let symmetric = settings.real_symmetric;
    if symmetric && !settings.center.im.is_zero() {
        return Err(Error::invalid("a real-symmetric circle needs a real center"));
    }
    let n = u64::from(order);
    let two_pi = Float::with_val(bits, ctx.pi() * 2u32);
    let tol = ctx.tolerance(0);

    // node j of an M-point grid: center + r e^(i theta), weighted by e^(-i n theta)
    let node = |j: usize, m: usize| -> (HpComplex, HpComplex) {
        let theta = Float::with_val(bits, &two_pi * j as u64) / m as u64;
        let (sin, cos) = theta.clone().sin_cos(Float::new(bits));
        let unit = HpComplex::new(cos, sin);
        let point = &settings.center + &unit.mul_real(&settings.radius);
        let angle = Float::with_val(bits, &theta * n);
        let (ws, wc) = angle.sin_cos(Float::new(bits));
        (point, HpComplex::new(wc, -ws))
    };
    // node contributions; with symmetry node j stands for j and M - j
    let contribution = |j: usize, m: usize, v: &HpComplex, w: &HpComplex| -> HpComplex {
        let t = v * w;
        if symmetric {
            if j == 0 || 2 * j == m {
                HpComplex::from_real(t.re)
            } else {
                HpComplex::from_real(Float::with_val(bits, &t.re * 2u32))
            }
        } else {
            t
        }
    };
    let evaluate = |indices: &[usize], m: usize| -> Result<HpComplex> {
        let nodes: Vec<(HpComplex, HpComplex)> = indices.iter().map(|&j| node(j, m)).collect();
        let points: Vec<HpComplex> = nodes.iter().map(|(p, _)| p.clone()).collect();
        let values = eval_all(&f, &points)?;
        let terms: Vec<HpComplex> = indices
            .iter()
            .zip(nodes.iter().zip(values.iter()))
            .map(|(&j, ((_, w), v))| contribution(j, m, v, w))
            .collect();
        Ok(pairwise_sum(&terms, bits))
    };
    let index_range = |m: usize| -> Vec<usize> {
        if symmetric {
            (0..=m / 2).collect()
        } else {
            (0..m).collect()
        }
    };

    let n_fact = Float::with_val(bits, factorial(order));
    let r_pow = Float::with_val(bits, (&settings.radius).pow(order));
    let finish = |sum: &HpComplex, m: usize| -> HpComplex {
        let scale = Float::with_val(bits, &n_fact / &r_pow) / m as u64;
        sum.mul_real(&scale)
    };

    let mut m = settings.nodes;
    let mut sum = evaluate(&index_range(m), m)?;
    let mut trace = Vec::new();
    let mut prev: Option<HpComplex> = None;
    for step in 0..=settings.refine_limit {
        let value = finish(&sum, m);
        let discrepancy = prev.as_ref().map(|p| (&value - p).abs());
        trace.push(TraceStep {
            step,
            h: None,
            t_max: None,
            nodes: m,
            value: format_complex(&value, 25),
            discrepancy: discrepancy.as_ref().map(|d| d.to_f64()),
        });
        if let Some(d) = &discrepancy {
            let mut scale = value.abs();
            if scale < 1 {
                scale = Float::with_val(bits, 1u32);
            }
            if *d <= Float::with_val(bits, &tol * &scale) {
                return Ok(Quadrature {
                    value: if symmetric { HpComplex::from_real(value.re) } else { value },
                    error_estimate: d.clone(),
                    trace,
                });
            }
        }
        if step == settings.refine_limit {
            return Err(Error::NonConvergence {
                what: "Cauchy derivative",
                detail: format!(
                    "order {order} at {} after {m} nodes (singularity inside the circle?); last two values {} and {}",
                    format_complex(&settings.center, 6),
                    format_complex(prev.as_ref().unwrap_or(&value), 20),
                    format_complex(&value, 20)
                ),
            });
        }
        prev = Some(value);
        let m2 = 2 * m;
        let odd: Vec<usize> = index_range(m2).into_iter().filter(|j| j % 2 == 1).collect();
        let add = evaluate(&odd, m2)?;
        sum = &sum + &add;
        m = m2;
    }
    unreachable!("loop returns on its last step")
}
