use fraclag::approximation::{self, projection_bound, Expansion, Family};
use fraclag::experiments::parse_real_list;
use fraclag::fractional::{self, eval_flf};
use fraclag::generalized::eval_gflf;
use fraclag::laguerre::{eval_laguerre, gauss_rule, laguerre_norm};
use fraclag::special::gamma::{gamma, ln_gamma};
use fraclag::special::mittag_leffler::{integral, mittag_leffler, series};
use fraclag::{FracParams, GenParams};
use proptest::prelude::*;

fn frac_params() -> impl Strategy<Value = FracParams> {
    (-0.9f64..3.0, 0.0f64..25.0, 0.1f64..=1.0).prop_map(|(t, b, g)| FracParams::new(t, b, g).unwrap())
}

fn gen_params() -> impl Strategy<Value = GenParams> {
    (0.0f64..3.0, 0.0f64..3.0, 0.2f64..=1.0, 0.0f64..20.0).prop_map(|(t, s, g, b)| GenParams::new(t, s, g, b).unwrap())
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![frac_params().prop_map(Family::Fractional), gen_params().prop_map(Family::Generalized)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gauss_rule_integrates_monomials(theta in -0.9f64..3.0, n in 1usize..40) {
        let r = gauss_rule(theta, n).unwrap();
        for k in 0..2 * n {
            let ln_exact = ln_gamma(k as f64 + theta + 1.0);
            let s: f64 = r.log_weights.iter().zip(&r.nodes).map(|(lw, y)| (lw + k as f64 * y.ln() - ln_exact).exp()).sum();
            prop_assert!((s - 1.0).abs() < 1e-10, "k={k}: {s}");
        }
    }

    #[test]
    fn fractional_function_is_pulled_back_polynomial(p in frac_params(), m in 0usize..30, x in 1e-6f64..50.0) {
        let a = eval_flf(&p, m, x).unwrap();
        let b = eval_laguerre(p.theta, m, fractional::map_forward(&p, x).unwrap()).unwrap();
        prop_assert!((a - b).abs() <= 1e-13 * b.abs().max(1e-300));
    }

    #[test]
    fn generalized_function_carries_prefactor(p in gen_params(), m in 0usize..25, x in 1e-4f64..30.0) {
        let a = eval_gflf(&p, m, x).unwrap();
        let b = x.powf(p.eta()) * eval_flf(&p.frac(), m, x).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1e-300));
    }

    #[test]
    fn projection_reproduces_span(f in family(), coeffs in prop::collection::vec(-1.0f64..1.0, 1..14)) {
        let m = coeffs.len() - 1;
        let v = Expansion { family: f, coeffs: coeffs.clone() };
        let e = approximation::project_family(|x| v.evaluate(x), m, &f, approximation::default_oversample(m)).unwrap();
        for (a, b) in coeffs.iter().zip(&e.coeffs) {
            prop_assert!((a - b).abs() < 1e-11, "{a} vs {b}");
        }
    }

    #[test]
    fn interpolation_is_idempotent(f in family(), coeffs in prop::collection::vec(-1.0f64..1.0, 1..14)) {
        let m = coeffs.len() - 1;
        let v = Expansion { family: f, coeffs: coeffs.clone() };
        let once = approximation::interpolate_family(|x| v.evaluate(x), m, &f).unwrap();
        let twice = approximation::interpolate_family(|x| once.evaluate(x), m, &f).unwrap();
        for ((a, b), c) in coeffs.iter().zip(&once.coeffs).zip(&twice.coeffs) {
            prop_assert!((a - b).abs() < 1e-11 && (b - c).abs() < 1e-11);
        }
    }

    #[test]
    fn parseval_on_the_rule(f in family(), coeffs in prop::collection::vec(-1.0f64..1.0, 1..16)) {
        let v = Expansion { family: f, coeffs: coeffs.clone() };
        let rule = f.rule(coeffs.len() + 1).unwrap();
        let vals: Vec<f64> = rule.x.iter().map(|&x| v.evaluate(x)).collect();
        let lhs = rule.norm(&vals).powi(2);
        let rhs: f64 = coeffs.iter().enumerate().map(|(m, c)| c * c * laguerre_norm(f.theta(), m).unwrap()).sum();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(1e-300));
    }

    #[test]
    fn mapped_derivative_matches_coefficient_shift(p in frac_params(), coeffs in prop::collection::vec(-1.0f64..1.0, 1..12), x in 0.01f64..10.0) {
        let v = Expansion { family: Family::Fractional(p), coeffs };
        let direct = fractional::apply_mapped_derivative(&p, |s| {
            v.coeffs.iter().enumerate().map(|(m, c)| c * fractional::flf_ordinary_derivative(&p, m, s).unwrap()).sum()
        }, x).unwrap();
        let shifted = v.mapped_derivative().evaluate(x);
        let scale: f64 = v.coeffs.iter().enumerate().map(|(m, c)| (c * fractional::flf_mapped_derivative(&p, m, x).unwrap()).abs()).sum();
        prop_assert!((direct - shifted).abs() <= 1e-9 * (1.0 + scale));
    }

    #[test]
    fn gamma_recurrence(x in 0.05f64..150.0) {
        let r = gamma(x + 1.0) / (x * gamma(x));
        prop_assert!((r - 1.0).abs() < 1e-13);
    }

    #[test]
    fn mittag_leffler_reduces_to_exponential(z in -30.0f64..5.0) {
        let v = mittag_leffler(1.0, 1.0, z).unwrap();
        prop_assert!((v / z.exp() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mittag_leffler_series_agrees_with_integral(alpha in 0.25f64..0.95, z in -1.0f64..-0.01) {
        if let (Some(s), Some(i)) = (series(alpha, 1.0, z), integral(alpha, 1.0, z)) {
            prop_assert!((s - i).abs() <= 1e-11 * s.abs());
        }
    }

    #[test]
    fn projection_factor_never_exceeds_one(m in 1usize..200, mu in 0usize..12, s in 0usize..3) {
        let mh = approximation::mu_hat(m, mu);
        prop_assume!(s <= mh);
        let b = projection_bound(m, mu, s, 0.0).unwrap();
        prop_assert!(b.value <= 1.0 + 1e-15 && b.value > 0.0);
    }

    #[test]
    fn real_lists_round_trip(v in prop::collection::vec(-1e6f64..1e6, 1..8)) {
        let s = v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(",");
        prop_assert_eq!(parse_real_list(&s).unwrap(), v);
    }
}
