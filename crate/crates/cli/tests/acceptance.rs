//! End-to-end acceptance run at 50 digits. Prints one PASS/FAIL line per
//! criterion and exits nonzero if any criterion fails.

use std::process::Command;
use std::time::Instant;

use rug::ops::Pow;
use rug::Float;
use ztl_core::hp::format::format_real;
use ztl_core::identities::*;
use ztl_core::mellin::{cauchy_derivative, CircleSettings};
use ztl_core::psi::{psi, PsiRequest, Strategy};
use ztl_core::selftest::{run_suites, DEFAULT_SEED};
use ztl_core::special::zeta;
use ztl_core::{with_precision, HpComplex, HpReal, PrecisionContext};

const DIGITS: u32 = 50;
const CASE_LIMIT_SECS: f64 = 30.0;

struct Verdict {
    passed: bool,
    detail: String,
}

fn pass_if(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        passed,
        detail: detail.into(),
    }
}

fn sci(x: &HpReal) -> String {
    format_real(x, 3)
}

fn abs_diff(a: &HpReal, b: &HpReal) -> HpReal {
    Float::with_val(a.prec(), a - b).abs()
}

fn bound(ctx: &PrecisionContext, exp: i32) -> HpReal {
    Float::with_val(ctx.bits(), 10u32).pow(-exp)
}

/// Tracks the largest of a family of errors.
struct Worst {
    value: HpReal,
}

impl Worst {
    fn new(ctx: &PrecisionContext) -> Self {
        Worst { value: ctx.zero() }
    }

    fn see(&mut self, x: &HpReal) {
        if *x > self.value {
            self.value = x.clone();
        }
    }
}

fn main_suite(ctx: &PrecisionContext) -> ztl_core::Result<Verdict> {
    let mut worst = Worst::new(ctx);
    let mut passed = 0;
    let mut slowest = 0.0f64;
    let mut total = 0.0f64;
    let mut failures = Vec::new();
    for k in 1..=4u32 {
        for m in [-2, -1, 1, 2] {
            for t in [0.0, 0.3, 1.0] {
                let started = Instant::now();
                let r = verify_main(&IdentityParams::from_f64(k, m, t, ctx), ctx)?;
                let secs = started.elapsed().as_secs_f64();
                slowest = slowest.max(secs);
                total += secs;
                worst.see(&r.rel_residual);
                if r.rel_residual < bound(ctx, 30) && secs < CASE_LIMIT_SECS {
                    passed += 1;
                } else {
                    failures.push(format!("k={k} m={m} theta={t}"));
                }
            }
        }
    }
    Ok(pass_if(
        passed == 48,
        format!(
            "{passed}/48 cases, max rel_residual {}, slowest case {slowest:.1} s, total {total:.0} s{}",
            sci(&worst.value),
            if failures.is_empty() { String::new() } else { format!(", failing {}", failures.join("; ")) }
        ),
    ))
}

fn ramanujan_reduction(ctx: &PrecisionContext) -> ztl_core::Result<Verdict> {
    let mut worst = Worst::new(ctx);
    let mut all = true;
    for m in [1, -1, 2, -2, 3] {
        for t in [0.0, 0.5] {
            let main = verify_main(&IdentityParams::from_f64(1, m, t, ctx), ctx)?;
            let ram = verify_ramanujan_classical(m, &ctx.real(t), ctx)?;
            let gap = abs_diff(&main.lhs, &ram.lhs).max(&abs_diff(&main.rhs, &ram.rhs));
            worst.see(&gap);
            all &= main.passed && ram.passed && gap < bound(ctx, 30);
        }
    }
    Ok(pass_if(all, format!("10 cases, max side gap {}", sci(&worst.value))))
}

fn dixit_reduction(ctx: &PrecisionContext) -> ztl_core::Result<Verdict> {
    let c = omega_psi_constant(ctx)?;
    let mut worst = Worst::new(ctx);
    let mut all = true;
    for m in [1, -1] {
        for t in [0.0, 0.3] {
            let theta = ctx.real(t);
            let dixit = verify_dixit(m, &theta, ctx)?;
            let main = verify_main(&IdentityParams::new(2, m, theta), ctx)?;
            let scaled = Float::with_val(ctx.bits(), &main.lhs * &c);
            let gap = abs_diff(&dixit.lhs, &scaled);
            worst.see(&gap);
            all &= dixit.passed && main.passed && gap < bound(ctx, 25);
        }
    }
    Ok(pass_if(all, format!("constant {}, max lhs gap {}", format_real(&c, 12), sci(&worst.value))))
}

fn lerch_value(ctx: &PrecisionContext) -> ztl_core::Result<Verdict> {
    let bits = ctx.bits();
    let r = verify_lerch_general(1, 1, ctx)?;
    let z3 = zeta(&HpComplex::from_real(ctx.int(3)), ctx)?.re;
    let combo = Float::with_val(bits, &r.lhs * 2u32) + z3;
    let expected = Float::with_val(bits, ctx.pi().pow(3u32)) * 7u32 / 180u32;
    let gap = abs_diff(&combo, &expected);
    Ok(pass_if(r.passed && gap < bound(ctx, 30), format!("|zeta(3) + 2 L - 7 pi^3/180| = {}", sci(&gap))))
}

fn quasimodular_constant(ctx: &PrecisionContext) -> ztl_core::Result<Verdict> {
    let bits = ctx.bits();
    let r = verify_quasimodular(1, &ctx.zero(), ctx)?;
    let series = r.term("series_alpha").expect("quasimodular reports series_alpha");
    let expected = ctx.ratio(1, 24) - Float::with_val(bits, ctx.pi() * 8u32).recip();
    let gap = abs_diff(series, &expected);
    Ok(pass_if(r.passed && gap < bound(ctx, 30), format!("|sum - (1/24 - 1/(8 pi))| = {}", sci(&gap))))
}

fn eta_suite(ctx: &PrecisionContext) -> ztl_core::Result<Verdict> {
    let bits = ctx.bits();
    let mut worst = Worst::new(ctx);
    let mut all = true;
    let mut classical = Worst::new(ctx);
    for k in 1..=3u32 {
        for t in [0.2, 0.7] {
            let theta = ctx.real(t);
            let r = verify_eta(k, &theta, ctx)?;
            worst.see(&r.rel_residual);
            all &= r.passed;
            if k == 1 {
                let p = IdentityParams::new(1, 0, theta.clone());
                let expected = Float::with_val(bits, &p.beta(ctx) - &p.alpha(ctx)) / 12u32 + Float::with_val(bits, &theta / 2u32);
                let gap = abs_diff(&r.rhs, &expected);
                classical.see(&gap);
                all &= gap < bound(ctx, 30);
            }
        }
    }
    Ok(pass_if(
        all,
        format!("6 cases, max rel_residual {}, k=1 rhs gap {}", sci(&worst.value), sci(&classical.value)),
    ))
}

fn psi_oracle(ctx: &PrecisionContext) -> ztl_core::Result<Verdict> {
    let bits = ctx.bits();
    let grid = [ctx.int(1), Float::with_val(bits, ctx.pi() * 2u32), ctx.int(10)];
    let mut worst = Worst::new(ctx);
    for k in 1..=2u32 {
        for rho in &grid {
            for x in &grid {
                let eval = |s| psi(&PsiRequest::new(rho.clone(), k, x.clone()).with_strategy(s), ctx).map(|v| v.value);
                let im = eval(Strategy::InverseMellin)?;
                for other in [Strategy::TermSum, Strategy::ClosedForm] {
                    let v = eval(other)?;
                    worst.see(&abs_diff(&im, &v));
                }
            }
        }
    }
    Ok(pass_if(worst.value < bound(ctx, 42), format!("18 points, max disagreement {}", sci(&worst.value))))
}

fn residue_machinery(ctx: &PrecisionContext) -> ztl_core::Result<Verdict> {
    let bits = ctx.bits();
    let two_alpha = Float::with_val(bits, IdentityParams::from_f64(1, 1, 0.3, ctx).alpha(ctx) * 2u32);
    let mut worst = Worst::new(ctx);
    for k in 1..=2u32 {
        let rho = Float::with_val(bits, (&two_alpha).pow(k));
        for m in [1, -1] {
            worst.see(&self_duality(k, m, &rho, ctx)?.residue_gap());
        }
    }
    Ok(pass_if(worst.value < bound(ctx, 42), format!("4 contour shifts, max residue gap {}", sci(&worst.value))))
}

fn special_suites(ctx: &PrecisionContext) -> ztl_core::Result<Verdict> {
    let names = ["gamma_reflection", "gamma_duplication", "zeta_functional_equation", "zeta_euler_formula"];
    let mut all = true;
    let mut cases = 0;
    for name in names {
        for r in run_suites(ctx, Some(name), DEFAULT_SEED) {
            cases += r.cases;
            all &= r.passed();
        }
    }
    let d = cauchy_derivative(|s: &HpComplex| zeta(s, ctx), 1, &CircleSettings::real(ctx.zero(), 1, ctx), ctx)?.re;
    let expected = -Float::with_val(ctx.bits(), ctx.pi() * 2u32).ln() / 2u32;
    let gap = abs_diff(&d, &expected);
    Ok(pass_if(
        all && gap < bound(ctx, 45),
        format!("{cases} sampled cases, |zeta'(0) + log(2 pi)/2| = {}", sci(&gap)),
    ))
}

fn determinism() -> Verdict {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ztl"))
            .args(["sweep", "--identity", "main,eta,lerch", "--k", "1", "--m", "-1,1", "--theta", "0,0.3"])
            .args(["--digits", &DIGITS.to_string()])
            .env_remove("ZTL_DIGITS")
            .output()
            .expect("ztl runs")
    };
    let a = run();
    let b = run();
    let ok = a.status.success() && b.status.success() && !a.stdout.is_empty() && a.stdout == b.stdout;
    let rows = String::from_utf8_lossy(&a.stdout).lines().count().saturating_sub(1);
    pass_if(ok, format!("{rows} rows, {} bytes, identical: {}", a.stdout.len(), a.stdout == b.stdout))
}

fn main() {
    let ctx = with_precision(DIGITS).expect("50 digits is a valid precision");
    type Check = fn(&PrecisionContext) -> ztl_core::Result<Verdict>;
    let checks: [(&str, Check); 9] = [
        ("main theorem suite", main_suite),
        ("reduction to Ramanujan's formula", ramanujan_reduction),
        ("reduction to the squared-zeta formula", dixit_reduction),
        ("Lerch value", lerch_value),
        ("quasi-modular constant", quasimodular_constant),
        ("eta suite", eta_suite),
        ("Psi strategy equivalence", psi_oracle),
        ("residue machinery", residue_machinery),
        ("special-function suites", special_suites),
    ];
    let mut failed = 0;
    let mut report = |i: usize, name: &str, v: Verdict, secs: f64| {
        let tag = if v.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {i:>2}. {name}: {} ({secs:.1} s)", v.detail);
        if !v.passed {
            failed += 1;
        }
    };
    for (i, (name, check)) in checks.into_iter().enumerate() {
        let started = Instant::now();
        let v = check(&ctx).unwrap_or_else(|e| pass_if(false, format!("error: {e}")));
        report(i + 1, name, v, started.elapsed().as_secs_f64());
    }
    let started = Instant::now();
    report(10, "sweep determinism", determinism(), started.elapsed().as_secs_f64());
    println!("acceptance: {}/10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
