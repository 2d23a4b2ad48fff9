//! Both sides of every transformation formula, assembled independently, and
//! the reports that compare them.

pub mod blocks;
mod duality;
mod formulas;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rug::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hp::format::format_real;
use crate::hp::{HpReal, PrecisionContext};

pub use blocks::{bernoulli_block, block_coefficients, block_coefficients_reindexed};
pub use duality::{residues, self_duality, DualityCheck, Residues};
pub use formulas::{
    derivative_at_zero, derivative_term, dixit_omega_sum, omega_psi_constant, verify_dixit, verify_eisenstein, verify_eta,
    verify_lerch_general, verify_main, verify_quasimodular, verify_ramanujan_classical,
};

/// Significant digits written for each number in CSV and JSON output.
pub const REPORT_DIGITS: usize = 25;

/// Header of the CSV report format.
pub const CSV_HEADER: &str = "identity,k,m,theta,lhs,rhs,abs_res,rel_res,digits,seconds";

/// The transformation formulas that can be verified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    Main,
    Ramanujan,
    Dixit,
    Eisenstein,
    Quasimodular,
    Eta,
    Lerch,
}

impl Identity {
    pub const ALL: [Identity; 7] = [
        Identity::Main,
        Identity::Ramanujan,
        Identity::Dixit,
        Identity::Eisenstein,
        Identity::Quasimodular,
        Identity::Eta,
        Identity::Lerch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Main => "main",
            Identity::Ramanujan => "ramanujan",
            Identity::Dixit => "dixit",
            Identity::Eisenstein => "eisenstein",
            Identity::Quasimodular => "quasimodular",
            Identity::Eta => "eta",
            Identity::Lerch => "lerch",
        }
    }

    /// Whether the formula depends on `k` (the others are fixed at one `k`).
    pub fn uses_k(self) -> bool {
        !matches!(self, Identity::Ramanujan | Identity::Dixit)
    }

    /// Whether the formula depends on `m`.
    pub fn uses_m(self) -> bool {
        !matches!(self, Identity::Quasimodular | Identity::Eta)
    }

    /// Whether the formula depends on `theta`.
    pub fn uses_theta(self) -> bool {
        !matches!(self, Identity::Lerch)
    }

    /// Checks the parameter restrictions of this formula.
    pub fn validate(self, k: u32, m: i32) -> Result<()> {
        if k == 0 {
            return Err(Error::invalid("k must be at least 1"));
        }
        match self {
            Identity::Main | Identity::Ramanujan | Identity::Dixit if m == 0 => Err(Error::invalid("m must be nonzero")),
            Identity::Eisenstein if m <= 1 => Err(Error::invalid(format!("eisenstein needs m > 1, got m = {m}"))),
            Identity::Lerch if m == 0 || m % 2 == 0 => {
                Err(Error::invalid(format!("lerch needs a nonzero odd m, got m = {m}")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s.trim())
            .ok_or_else(|| Error::invalid(format!("unknown identity {s:?}; expected one of main, ramanujan, dixit, eisenstein, quasimodular, eta, lerch")))
    }
}

/// `(k, m, theta)` with `alpha = pi e^theta` and `beta = pi e^(-theta)`, so
/// that `alpha beta = pi^2` holds by construction.
#[derive(Clone, Debug)]
pub struct IdentityParams {
    pub k: u32,
    pub m: i32,
    pub theta: HpReal,
}

impl IdentityParams {
    pub fn new(k: u32, m: i32, theta: HpReal) -> Self {
        IdentityParams { k, m, theta }
    }

    pub fn from_f64(k: u32, m: i32, theta: f64, ctx: &PrecisionContext) -> Self {
        IdentityParams::new(k, m, ctx.real(theta))
    }

    /// Parameters with `theta = log(alpha / pi)`.
    pub fn from_alpha(k: u32, m: i32, alpha: &HpReal, ctx: &PrecisionContext) -> Result<Self> {
        if alpha.cmp0() != Some(std::cmp::Ordering::Greater) {
            return Err(Error::domain("IdentityParams", "alpha must be positive"));
        }
        let theta = Float::with_val(ctx.bits(), alpha / ctx.pi()).ln();
        Ok(IdentityParams::new(k, m, theta))
    }

    pub fn alpha(&self, ctx: &PrecisionContext) -> HpReal {
        Float::with_val(ctx.bits(), self.theta.exp_ref()) * ctx.pi()
    }

    pub fn beta(&self, ctx: &PrecisionContext) -> HpReal {
        Float::with_val(ctx.bits(), -&self.theta).exp() * ctx.pi()
    }

    /// The same `k, m` with `theta -> -theta`, i.e. `alpha` and `beta` swapped.
    pub fn swapped(&self) -> Self {
        IdentityParams::new(self.k, self.m, Float::with_val(self.theta.prec(), -&self.theta))
    }
}

/// Pass/fail threshold on the relative residual: `10^(-(digits-20))` from
/// 40 digits up and `10^(-max(5, digits-10))` below.
pub fn tolerance_for(ctx: &PrecisionContext) -> HpReal {
    let d = ctx.digits() as i32;
    if d >= 40 {
        ctx.pow10(-(d - 20))
    } else {
        ctx.pow10(-(d - 10).max(5))
    }
}

/// `|lhs - rhs| / max(|lhs|, |rhs|, 1)`.
pub fn relative_residual(lhs: &HpReal, rhs: &HpReal) -> HpReal {
    let bits = lhs.prec().max(rhs.prec());
    let diff = Float::with_val(bits, lhs - rhs).abs();
    let mut scale = Float::with_val(bits, 1u32);
    for v in [lhs, rhs] {
        let a = Float::with_val(bits, v.abs_ref());
        if a > scale {
            scale = a;
        }
    }
    diff / scale
}

/// Outcome of one verification.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub identity: Identity,
    pub k: u32,
    pub m: i32,
    pub theta: HpReal,
    pub lhs: HpReal,
    pub rhs: HpReal,
    pub abs_residual: HpReal,
    pub rel_residual: HpReal,
    pub tolerance: HpReal,
    pub passed: bool,
    pub digits: u32,
    pub guard_digits: u32,
    /// Wall-clock seconds spent on the verification.
    pub elapsed: f64,
    /// Named intermediate quantities (series values, derivative terms, blocks).
    pub terms: Vec<(String, HpReal)>,
}

/// Serialized form of a [`VerificationReport`].
#[derive(Clone, Debug, Serialize)]
pub struct ReportRecord {
    pub identity: String,
    pub k: u32,
    pub m: i32,
    pub theta: String,
    pub lhs: String,
    pub rhs: String,
    pub abs_res: String,
    pub rel_res: String,
    pub tolerance: String,
    pub passed: bool,
    pub digits: u32,
    pub guard_digits: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
    pub terms: Vec<(String, String)>,
}

/// Shortest decimal that reads back to the same `f64`, used to echo `theta`.
pub fn format_theta(theta: &HpReal) -> String {
    let t = theta.to_f64();
    if t == 0.0 {
        "0".to_string()
    } else {
        format!("{t}")
    }
}

impl VerificationReport {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn assemble(
        identity: Identity,
        k: u32,
        m: i32,
        theta: HpReal,
        lhs: HpReal,
        rhs: HpReal,
        terms: Vec<(String, HpReal)>,
        started: Instant,
        ctx: &PrecisionContext,
    ) -> Self {
        let abs_residual = Float::with_val(ctx.bits(), &lhs - &rhs).abs();
        let rel_residual = relative_residual(&lhs, &rhs);
        let tolerance = tolerance_for(ctx);
        let passed = rel_residual < tolerance;
        VerificationReport {
            identity,
            k,
            m,
            theta,
            lhs,
            rhs,
            abs_residual,
            rel_residual,
            tolerance,
            passed,
            digits: ctx.digits(),
            guard_digits: ctx.guard_digits(),
            elapsed: started.elapsed().as_secs_f64(),
            terms,
        }
    }

    /// Looks up a named intermediate quantity.
    pub fn term(&self, name: &str) -> Option<&HpReal> {
        self.terms.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    /// The serializable record; `seconds` is included only when `timing` is set
    /// so that repeated runs produce identical output.
    pub fn record(&self, timing: bool) -> ReportRecord {
        ReportRecord {
            identity: self.identity.name().to_string(),
            k: self.k,
            m: self.m,
            theta: format_theta(&self.theta),
            lhs: format_real(&self.lhs, REPORT_DIGITS),
            rhs: format_real(&self.rhs, REPORT_DIGITS),
            abs_res: format_real(&self.abs_residual, 6),
            rel_res: format_real(&self.rel_residual, 6),
            tolerance: format_real(&self.tolerance, 3),
            passed: self.passed,
            digits: self.digits,
            guard_digits: self.guard_digits,
            seconds: timing.then_some(self.elapsed),
            terms: self
                .terms
                .iter()
                .map(|(n, v)| (n.clone(), format_real(v, REPORT_DIGITS)))
                .collect(),
        }
    }

    /// One row under [`CSV_HEADER`].
    pub fn csv_row(&self, timing: bool) -> String {
        let r = self.record(timing);
        let seconds = r.seconds.map(|s| format!("{s:.3}")).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            r.identity, r.k, r.m, r.theta, r.lhs, r.rhs, r.abs_res, r.rel_res, r.digits, seconds
        )
    }

    pub fn to_json(&self, timing: bool) -> String {
        serde_json::to_string_pretty(&self.record(timing)).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} k={} m={} theta={} digits={}",
            self.identity,
            self.k,
            self.m,
            format_theta(&self.theta),
            self.digits
        )?;
        writeln!(f, "  lhs          = {}", format_real(&self.lhs, self.digits as usize))?;
        writeln!(f, "  rhs          = {}", format_real(&self.rhs, self.digits as usize))?;
        for (name, value) in &self.terms {
            writeln!(f, "  {name:<12} = {}", format_real(value, self.digits as usize))?;
        }
        writeln!(f, "  abs_residual = {}", format_real(&self.abs_residual, 6))?;
        writeln!(
            f,
            "  rel_residual = {} (tolerance {})",
            format_real(&self.rel_residual, 6),
            format_real(&self.tolerance, 3)
        )?;
        write!(f, "  {}", if self.passed { "PASS" } else { "FAIL" })
    }
}

/// Refinement traces of the line integrals behind `identity` at `params`,
/// labelled by the series argument. Empty for the formulas evaluated
/// without quadrature.
pub fn series_traces(
    identity: Identity,
    params: &IdentityParams,
    ctx: &PrecisionContext,
) -> Result<Vec<(String, Vec<crate::mellin::TraceStep>)>> {
    use crate::psi::{series_l, SeriesRequest};
    identity.validate(params.k, params.m)?;
    let k = params.k;
    let m = match identity {
        Identity::Ramanujan | Identity::Dixit => return Ok(Vec::new()),
        Identity::Main | Identity::Lerch => params.m,
        Identity::Eisenstein => -params.m,
        Identity::Quasimodular => -1,
        Identity::Eta => 0,
    };
    let bases = if identity == Identity::Lerch {
        vec![("2pi", Float::with_val(ctx.bits(), ctx.pi() * 2u32))]
    } else {
        vec![
            ("2alpha", Float::with_val(ctx.bits(), params.alpha(ctx) * 2u32)),
            ("2beta", Float::with_val(ctx.bits(), params.beta(ctx) * 2u32)),
        ]
    };
    bases
        .into_iter()
        .map(|(label, base)| {
            let rho = Float::with_val(ctx.bits(), rug::ops::Pow::pow(&base, k));
            let v = series_l(&SeriesRequest::new(rho, k, m), ctx)?;
            Ok((format!("L_{m}(({label})^{k})"), v.trace))
        })
        .collect()
}

/// Runs `identity` at `params`, ignoring the fields the formula does not use.
pub fn verify(identity: Identity, params: &IdentityParams, ctx: &PrecisionContext) -> Result<VerificationReport> {
    identity.validate(params.k, params.m)?;
    let IdentityParams { k, m, theta } = params;
    match identity {
        Identity::Main => verify_main(params, ctx),
        Identity::Ramanujan => verify_ramanujan_classical(*m, theta, ctx),
        Identity::Dixit => verify_dixit(*m, theta, ctx),
        Identity::Eisenstein => verify_eisenstein(*k, *m, theta, ctx),
        Identity::Quasimodular => verify_quasimodular(*k, theta, ctx),
        Identity::Eta => verify_eta(*k, theta, ctx),
        Identity::Lerch => verify_lerch_general(*k, *m, ctx),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hp::with_precision;

    #[test]
    fn tolerance_policy() {
        assert_eq!(tolerance_for(&with_precision(50).unwrap()).to_f64(), 1e-30);
        assert_eq!(tolerance_for(&with_precision(40).unwrap()).to_f64(), 1e-20);
        assert_eq!(tolerance_for(&with_precision(30).unwrap()).to_f64(), 1e-20);
        assert_eq!(tolerance_for(&with_precision(15).unwrap()).to_f64(), 1e-5);
    }

    #[test]
    fn alpha_beta_product_is_pi_squared() {
        let ctx = with_precision(40).unwrap();
        for t in [-1.3, 0.0, 0.3, 2.0] {
            let p = IdentityParams::from_f64(2, 1, t, &ctx);
            let prod = Float::with_val(ctx.bits(), p.alpha(&ctx) * p.beta(&ctx));
            let pi2 = Float::with_val(ctx.bits(), ctx.pi().square_ref());
            assert!(relative_residual(&prod, &pi2) < ctx.tolerance(0));
        }
        let alpha = ctx.int(5);
        let p = IdentityParams::from_alpha(1, 1, &alpha, &ctx).unwrap();
        assert!(relative_residual(&p.alpha(&ctx), &alpha) < ctx.tolerance(0));
    }

    #[test]
    fn parameter_restrictions() {
        assert!(Identity::Main.validate(1, 0).is_err());
        assert!(Identity::Eisenstein.validate(1, 1).is_err());
        assert!(Identity::Eisenstein.validate(1, 2).is_ok());
        assert!(Identity::Lerch.validate(1, 2).is_err());
        assert!(Identity::Lerch.validate(2, -3).is_ok());
        assert!(Identity::Eta.validate(0, 0).is_err());
        assert!(Identity::Quasimodular.validate(3, 0).is_ok());
        assert_eq!("dixit".parse::<Identity>().unwrap(), Identity::Dixit);
        assert!("nope".parse::<Identity>().is_err());
    }

    #[test]
    fn relative_residual_floor_is_one() {
        let ctx = with_precision(20).unwrap();
        let r = relative_residual(&ctx.ratio(1, 1000), &ctx.ratio(2, 1000));
        assert_eq!(r.to_f64(), 1e-3);
    }
}
