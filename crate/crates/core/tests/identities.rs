use proptest::prelude::*;
use rug::ops::Pow;
use rug::Float;
use ztl_core::hp::format::parse_real;
use ztl_core::hp::{rel_diff, with_precision, HpReal, PrecisionContext};
use ztl_core::identities::*;

fn theta(ctx: &PrecisionContext, t: f64) -> HpReal {
    ctx.real(t)
}

fn abs_diff(a: &Float, b: &Float) -> Float {
    Float::with_val(a.prec(), a - b).abs()
}

fn assert_passes(r: &VerificationReport) {
    assert!(r.passed, "{r}");
}

#[test]
fn main_k1_m1_at_pi_is_ramanujan() {
    let ctx = with_precision(40).unwrap();
    let main = verify_main(&IdentityParams::from_f64(1, 1, 0.0, &ctx), &ctx).unwrap();
    assert!(main.rel_residual < ctx.tolerance(10), "{main}");
    let ram = verify_ramanujan_classical(1, &theta(&ctx, 0.0), &ctx).unwrap();
    assert!(abs_diff(&main.lhs, &ram.lhs) < ctx.tolerance(5));
    assert!(abs_diff(&main.rhs, &ram.rhs) < ctx.tolerance(5));
}

#[test]
fn main_k2_m1_theta_03() {
    let ctx = with_precision(40).unwrap();
    let r = verify_main(&IdentityParams::from_f64(2, 1, 0.3, &ctx), &ctx).unwrap();
    assert!(r.rel_residual < ctx.tolerance(10), "{r}");
}

#[test]
fn main_k3_m_minus_1() {
    let ctx = with_precision(30).unwrap();
    assert_passes(&verify_main(&IdentityParams::from_f64(3, -1, 0.3, &ctx), &ctx).unwrap());
}

#[test]
fn main_rejects_m_zero() {
    let ctx = with_precision(20).unwrap();
    let err = verify_main(&IdentityParams::from_f64(1, 0, 0.0, &ctx), &ctx).unwrap_err();
    assert!(err.to_string().contains("m must be nonzero"));
}

#[test]
fn ramanujan_at_pi_gives_lerch_value() {
    // zeta(3) + 2 sum 1/(n^3 (e^(2 pi n) - 1)) = 7 pi^3 / 180
    let ctx = with_precision(40).unwrap();
    let r = verify_ramanujan_classical(1, &theta(&ctx, 0.0), &ctx).unwrap();
    assert!(r.rel_residual < ctx.tolerance(8), "{r}");
    let z3 = ztl_core::special::zeta(&ztl_core::HpComplex::from_real(ctx.int(3)), &ctx).unwrap().re;
    let combo = z3 + Float::with_val(ctx.bits(), r.term("lambert_alpha").unwrap() * 2u32);
    let expected = Float::with_val(ctx.bits(), ctx.pi() * ctx.pi()) * ctx.pi() * 7u32 / 180u32;
    assert!(abs_diff(&combo, &expected) < ctx.tolerance(8));
}

#[test]
fn ramanujan_other_cases() {
    let ctx = with_precision(40).unwrap();
    assert_passes(&verify_ramanujan_classical(1, &theta(&ctx, 1.0), &ctx).unwrap());
    assert_passes(&verify_ramanujan_classical(-2, &theta(&ctx, 0.4), &ctx).unwrap());
    assert_passes(&verify_ramanujan_classical(4, &theta(&ctx, -0.6), &ctx).unwrap());
}

#[test]
fn eisenstein_k1_m2_is_weight_four_law() {
    // rhs = (alpha^2 - beta^2) B_4 / 8 with B_4 = -1/30
    let ctx = with_precision(30).unwrap();
    let t = theta(&ctx, 0.5);
    let r = verify_eisenstein(1, 2, &t, &ctx).unwrap();
    assert_passes(&r);
    let p = IdentityParams::new(1, 2, t);
    let (a, b) = (p.alpha(&ctx), p.beta(&ctx));
    let diff = Float::with_val(ctx.bits(), a.square_ref()) - Float::with_val(ctx.bits(), b.square_ref());
    let expected = -diff / 240u32;
    assert!(rel_diff(&r.rhs, &expected) < ctx.tolerance(5));
}

#[test]
fn eisenstein_symmetric_point_vanishes() {
    let ctx = with_precision(30).unwrap();
    let r = verify_eisenstein(1, 2, &theta(&ctx, 0.0), &ctx).unwrap();
    assert!(r.lhs.clone().abs() < ctx.tolerance(5));
    assert!(r.rhs.clone().abs() < ctx.tolerance(5));
}

#[test]
fn eisenstein_k2_m2() {
    let ctx = with_precision(30).unwrap();
    assert_passes(&verify_eisenstein(2, 2, &theta(&ctx, 0.2), &ctx).unwrap());
    assert!(verify_eisenstein(2, 1, &theta(&ctx, 0.2), &ctx).is_err());
}

#[test]
fn quasimodular_k1_at_pi() {
    // sum n/(e^(2 pi n) - 1) = 1/24 - 1/(8 pi)
    let ctx = with_precision(40).unwrap();
    let r = verify_quasimodular(1, &theta(&ctx, 0.0), &ctx).unwrap();
    assert_passes(&r);
    let expected = ctx.ratio(1, 24) - Float::with_val(ctx.bits(), ctx.pi() * 8u32).recip();
    assert!(abs_diff(r.term("series_alpha").unwrap(), &expected) < ctx.tolerance(5));
}

#[test]
fn quasimodular_other_cases() {
    let ctx = with_precision(30).unwrap();
    assert_passes(&verify_quasimodular(1, &theta(&ctx, 0.7), &ctx).unwrap());
    assert_passes(&verify_quasimodular(2, &theta(&ctx, 0.0), &ctx).unwrap());
}

#[test]
fn eta_k1_is_classical_law() {
    let ctx = with_precision(40).unwrap();
    let t = theta(&ctx, 0.4);
    let r = verify_eta(1, &t, &ctx).unwrap();
    assert_passes(&r);
    // sum sigma_{-1}(n) (e^(-2 n alpha) - e^(-2 n beta)) from mpmath, 60 digits
    let frozen = parse_real("-0.015069414864507746930845301186072953671192185852555", ctx.bits()).unwrap();
    assert!(abs_diff(&r.lhs, &frozen) < ctx.tolerance(2));
    // (beta - alpha)/12 + log(alpha/beta)/4
    let p = IdentityParams::new(1, 0, t.clone());
    let expected = Float::with_val(ctx.bits(), &p.beta(&ctx) - &p.alpha(&ctx)) / 12u32 + Float::with_val(ctx.bits(), &t / 2u32);
    assert!(abs_diff(&r.rhs, &expected) < ctx.tolerance(5));
}

#[test]
fn eta_vanishes_at_symmetric_point() {
    let ctx = with_precision(30).unwrap();
    for k in 1..=2 {
        let r = verify_eta(k, &theta(&ctx, 0.0), &ctx).unwrap();
        assert!(r.lhs.clone().abs() < ctx.tolerance(5));
        assert!(r.rhs.clone().abs() < ctx.tolerance(5));
    }
}

#[test]
fn eta_k2() {
    let ctx = with_precision(30).unwrap();
    assert_passes(&verify_eta(2, &theta(&ctx, 0.4), &ctx).unwrap());
}

#[test]
fn lerch_k1_m1_value() {
    let ctx = with_precision(40).unwrap();
    let r = verify_lerch_general(1, 1, &ctx).unwrap();
    assert_passes(&r);
    // 2 (L_1(2 pi) - D) = 7 pi^3 / 180
    let combo = Float::with_val(ctx.bits(), &r.lhs - r.term("derivative").unwrap()) * 2u32;
    let expected = Float::with_val(ctx.bits(), ctx.pi() * ctx.pi()) * ctx.pi() * 7u32 / 180u32;
    assert!(abs_diff(&combo, &expected) < ctx.tolerance(5));
}

#[test]
fn lerch_k1_m3_agrees_with_lambert_path() {
    let ctx = with_precision(30).unwrap();
    let r = verify_lerch_general(1, 3, &ctx).unwrap();
    assert_passes(&r);
    let ram = verify_ramanujan_classical(3, &theta(&ctx, 0.0), &ctx).unwrap();
    assert!(abs_diff(&r.lhs, ram.term("lambert_alpha").unwrap()) < ctx.tolerance(5));
}

#[test]
fn lerch_other_cases() {
    let ctx = with_precision(30).unwrap();
    assert_passes(&verify_lerch_general(2, 1, &ctx).unwrap());
    assert_passes(&verify_lerch_general(3, 1, &ctx).unwrap());
    assert_passes(&verify_lerch_general(1, -3, &ctx).unwrap());
    assert!(verify_lerch_general(1, 2, &ctx).is_err());
}

#[test]
fn dixit_cases() {
    let ctx = with_precision(30).unwrap();
    assert_passes(&verify_dixit(1, &theta(&ctx, 0.0), &ctx).unwrap());
    assert_passes(&verify_dixit(-1, &theta(&ctx, 0.2), &ctx).unwrap());
}

#[test]
fn dixit_bracket_is_twice_main_k2() {
    let ctx = with_precision(30).unwrap();
    let t = theta(&ctx, 0.3);
    let dixit = verify_dixit(1, &t, &ctx).unwrap();
    let main = verify_main(&IdentityParams::new(2, 1, t), &ctx).unwrap();
    assert_passes(&dixit);
    assert_passes(&main);
    let c = omega_psi_constant(&ctx).unwrap();
    let scaled = Float::with_val(ctx.bits(), &main.lhs * &c);
    assert!(abs_diff(&dixit.lhs, &scaled) < ctx.tolerance(5));
}

#[test]
fn swapping_alpha_and_beta() {
    // rhs(theta) - block(theta) = (-1)^m lhs(-theta)
    let ctx = with_precision(30).unwrap();
    for (k, m) in [(1, 1), (2, -1), (2, 2)] {
        let p = IdentityParams::from_f64(k, m, 0.3, &ctx);
        let fwd = verify_main(&p, &ctx).unwrap();
        let back = verify_main(&p.swapped(), &ctx).unwrap();
        assert_passes(&fwd);
        assert_passes(&back);
        let bracket = Float::with_val(ctx.bits(), &fwd.rhs - fwd.term("block").unwrap());
        let other = if m % 2 == 0 { back.lhs.clone() } else { -back.lhs.clone() };
        assert!(abs_diff(&bracket, &other) < ctx.tolerance(5), "k={k} m={m}");
    }
}

#[test]
fn residue_cross_check() {
    let ctx = with_precision(30).unwrap();
    let rho = Float::with_val(ctx.bits(), IdentityParams::from_f64(1, 1, 0.3, &ctx).alpha(&ctx) * 2u32);
    for k in 1..=2u32 {
        let rho_k = Float::with_val(ctx.bits(), (&rho).pow(k));
        for m in [1, -1] {
            let c = self_duality(k, m, &rho_k, &ctx).unwrap();
            assert!(c.residue_gap() < ctx.tolerance(8), "k={k} m={m}: {}", c.residue_gap());
            assert!(c.duality_gap() < ctx.tolerance(8), "k={k} m={m}: {}", c.duality_gap());
        }
    }
}

#[test]
fn report_serialization() {
    let ctx = with_precision(20).unwrap();
    let r = verify_ramanujan_classical(1, &theta(&ctx, 0.5), &ctx).unwrap();
    let row = r.csv_row(false);
    assert_eq!(row.split(',').count(), CSV_HEADER.split(',').count());
    assert!(row.starts_with("ramanujan,1,1,0.5,"));
    assert!(row.ends_with(",20,"));
    assert!(r.csv_row(true).split(',').last().unwrap().parse::<f64>().is_ok());
    let json: serde_json::Value = serde_json::from_str(&r.to_json(false)).unwrap();
    assert_eq!(json["identity"], "ramanujan");
    assert_eq!(json["passed"], true);
    assert!(json.get("seconds").is_none());
}

#[test]
fn dispatcher_checks_parameters() {
    let ctx = with_precision(20).unwrap();
    let p = IdentityParams::from_f64(1, 0, 0.0, &ctx);
    assert!(verify(Identity::Lerch, &p, &ctx).is_err());
    assert!(verify(Identity::Eta, &p, &ctx).unwrap().passed);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reindexed_block_coefficients_are_identical(k in 1u32..6, m in -3i32..8) {
        let direct = block_coefficients(k, m);
        let mut re = block_coefficients_reindexed(k, m);
        re.reverse();
        prop_assert_eq!(direct, re);
    }

    #[test]
    fn classical_formula_holds_for_random_theta(m in prop_oneof![-4i32..=-1, 1i32..=4], t in -1.5f64..1.5) {
        let ctx = with_precision(30).unwrap();
        let r = verify_ramanujan_classical(m, &ctx.real(t), &ctx).unwrap();
        prop_assert!(r.passed, "{}", r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn main_formula_holds_for_random_parameters(k in 1u32..=3, m in prop_oneof![Just(-2i32), Just(-1), Just(1), Just(2)], t in -1.0f64..1.0) {
        let ctx = with_precision(20).unwrap();
        let r = verify_main(&IdentityParams::from_f64(k, m, t, &ctx), &ctx).unwrap();
        prop_assert!(r.passed, "{}", r);
    }
}
