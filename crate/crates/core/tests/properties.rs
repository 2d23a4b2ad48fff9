use proptest::prelude::*;
use rug::ops::Pow;
use rug::{Float, Rational};
use ztl_core::hp::{rel_diff, with_precision, HpComplex, PrecisionContext};
use ztl_core::mellin::{cauchy_derivative, line_integral, CircleSettings, QuadratureSettings};
use ztl_core::psi::{series_l, series_l_sum, SeriesRequest, Strategy};
use ztl_core::special::{bernoulli, factorial, gamma, zeta};

const DIGITS: u32 = 30;

fn ctx() -> PrecisionContext {
    with_precision(DIGITS).unwrap()
}

fn crel(a: &HpComplex, b: &HpComplex) -> f64 {
    let d = (a - b).abs();
    let scale = b.abs().max(&Float::with_val(d.prec(), 1u32)).clone();
    (d / scale).to_f64()
}

fn away_from_poles(re: f64, im: f64) -> bool {
    im.abs() > 0.05 || (re - re.round()).abs() > 0.05
}

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig::with_cases(cases)
}

proptest! {
    #![proptest_config(cfg(24))]

    #[test]
    fn gamma_reflection(re in -5.0f64..5.0, im in -5.0f64..5.0) {
        prop_assume!(away_from_poles(re, im));
        let ctx = ctx();
        let s = HpComplex::from_f64(&ctx, re, im);
        let one = HpComplex::one(ctx.bits());
        let lhs = &(&gamma(&s, &ctx).unwrap() * &gamma(&(&one - &s), &ctx).unwrap()) * &s.mul_real(ctx.pi()).sin();
        let rhs = HpComplex::from_real(ctx.pi().clone());
        prop_assert!(crel(&lhs, &rhs) < 1e-26, "s = {re} + {im}i");
    }

    #[test]
    fn gamma_duplication(re in -5.0f64..5.0, im in -5.0f64..5.0) {
        prop_assume!(away_from_poles(re, im) && away_from_poles(2.0 * re, 2.0 * im));
        let ctx = ctx();
        let s = HpComplex::from_f64(&ctx, re, im);
        let lhs = &gamma(&s, &ctx).unwrap() * &gamma(&s.add_real(&ctx.ratio(1, 2)), &ctx).unwrap();
        let two_s = s.mul_real(&ctx.int(2));
        let ln2 = Float::with_val(ctx.bits(), 2u32).ln();
        let pow = (&HpComplex::one(ctx.bits()) - &two_s).mul_real(&ln2).exp();
        let sqrt_pi = Float::with_val(ctx.bits(), ctx.pi().sqrt_ref());
        let rhs = (&pow * &gamma(&two_s, &ctx).unwrap()).mul_real(&sqrt_pi);
        prop_assert!(crel(&lhs, &rhs) < 1e-26, "s = {re} + {im}i");
    }

    #[test]
    fn zeta_functional_equation(re in -2.95f64..-1.05, im in -4.0f64..4.0) {
        let ctx = ctx();
        let s = HpComplex::from_f64(&ctx, re, im);
        let one = HpComplex::one(ctx.bits());
        let one_minus_s = &one - &s;
        let ln2 = Float::with_val(ctx.bits(), 2u32).ln();
        let ln_pi = Float::with_val(ctx.bits(), ctx.pi().ln_ref());
        let two_s = s.mul_real(&ln2).exp();
        let pi_s1 = (&s - &one).mul_real(&ln_pi).exp();
        let sine = s.mul_real(ctx.pi()).div_real(&ctx.int(2)).sin();
        let rhs = &(&(&two_s * &pi_s1) * &gamma(&one_minus_s, &ctx).unwrap()) * &(&zeta(&one_minus_s, &ctx).unwrap() * &sine);
        prop_assert!(crel(&zeta(&s, &ctx).unwrap(), &rhs) < 1e-26, "s = {re} + {im}i");
    }

    #[test]
    fn euler_formula(m in 1u32..=8) {
        let ctx = ctx();
        let b = bernoulli(2 * m as usize);
        let c = Rational::from(b.get(2 * m as usize).unwrap() / Rational::from(factorial(2 * m))) / 2u32;
        let two_pi = Float::with_val(ctx.bits(), ctx.pi() * 2u32);
        let mut expected = Float::with_val(ctx.bits(), &c) * two_pi.pow(2 * m);
        if m % 2 == 0 {
            expected = -expected;
        }
        let z = zeta(&HpComplex::from_real(ctx.int(2 * i64::from(m))), &ctx).unwrap().re;
        prop_assert!(rel_diff(&z, &expected) < ctx.tolerance(2));
    }

    #[test]
    fn stirling_decay(t in 5.0f64..40.0, dt in 0.05f64..5.0) {
        let ctx = ctx();
        let near = gamma(&HpComplex::from_f64(&ctx, 2.0, t), &ctx).unwrap().abs();
        let far = gamma(&HpComplex::from_f64(&ctx, 2.0, t + dt), &ctx).unwrap().abs();
        prop_assert!(far < near);
    }

    #[test]
    fn cauchy_order_zero_is_evaluation(re in -1.5f64..1.5, im in -2.0f64..2.0) {
        let ctx = ctx();
        let center = HpComplex::from_f64(&ctx, re, im);
        let three = ctx.int(3);
        let f = |s: &HpComplex| gamma(&s.add_real(&three), &ctx);
        let v = cauchy_derivative(f, 0, &CircleSettings::new(center.clone(), 0, &ctx), &ctx).unwrap();
        prop_assert!(crel(&v, &f(&center).unwrap()) < 1e-28);
    }
}

proptest! {
    #![proptest_config(cfg(8))]

    #[test]
    fn line_integral_of_real_integrand_is_real(x in 0.2f64..4.0) {
        // (1/2 pi i) integral Gamma(s) x^(-s) ds = e^(-x)
        let ctx = ctx();
        let x = ctx.real(x);
        let ln_x = Float::with_val(ctx.bits(), x.ln_ref());
        let settings = QuadratureSettings::new(ctx.int(2), 1, &ctx);
        let v = line_integral(|s: &HpComplex| Ok(&gamma(s, &ctx)? * &s.real_base_pow_neg(&ln_x)), &settings, &ctx).unwrap();
        prop_assert!(v.im.clone().abs() < ctx.tolerance(2));
        let expected = Float::with_val(ctx.bits(), -&x).exp();
        prop_assert!(rel_diff(&v.re, &expected) < ctx.tolerance(4));
    }

    #[test]
    fn series_sum_matches_line_integral(rho in 2.0f64..10.0, k in 1u32..=2, m in prop::sample::select(vec![-1i32, 1])) {
        let ctx = ctx();
        let req = SeriesRequest::new(ctx.real(rho), k, m);
        let line = series_l(&req, &ctx).unwrap().value;
        let doubled = req.clone().with_n_max(2 * req.n_max);
        let sum = series_l_sum(&doubled, Strategy::ClosedForm, &ctx).unwrap().value;
        prop_assert!(Float::with_val(ctx.bits(), &line - &sum).abs() < ctx.tolerance(5));
    }
}
