use proptest::prelude::*;

use ottofridge::dynamics;
use ottofridge::qsl::{self, GaussianState};
use ottofridge::ramp::Ramp;
use ottofridge::thermo::{self, CycleConfig};

/// Refrigerator parameters satisfying `omega2 > omega1` and `beta1 > beta2`.
fn cycle() -> impl Strategy<Value = CycleConfig> {
    (0.05..1.0f64, 1.05..8.0f64, 0.1..5.0f64, 0.05..0.95f64, 0.1..50.0f64).prop_map(|(w1, ratio, b1, frac, tau)| {
        CycleConfig {
            omega1: w1,
            omega2: w1 * ratio,
            beta1: b1,
            beta2: b1 * frac,
            tau,
        }
    })
}

fn mixed_state() -> impl Strategy<Value = GaussianState> {
    (0.05..5.0f64, 1.0..20.0f64).prop_map(|(omega, c)| GaussianState::new(0.5 * c / omega, 0.5 * c * omega).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qstar_never_below_one(wi in 0.05..2.0f64, ratio in 0.2..5.0f64, tau in 0.01..40.0f64) {
        let q = dynamics::qstar(&Ramp::quintic(wi, wi * ratio, tau).unwrap()).unwrap();
        prop_assert!(q.qstar >= 1.0 - 1e-9, "{}", q.qstar);
        prop_assert!(q.wronskian_drift <= 1e-9);
    }

    #[test]
    fn qstar_is_scale_invariant(wi in 0.05..1.0f64, ratio in 1.2..6.0f64, tau in 0.1..20.0f64, lambda in 0.2..5.0f64) {
        let base = dynamics::qstar(&Ramp::quintic(wi, wi * ratio, tau).unwrap()).unwrap().qstar;
        let scaled = dynamics::qstar(&Ramp::quintic(lambda * wi, lambda * wi * ratio, tau / lambda).unwrap()).unwrap().qstar;
        prop_assert!((base - scaled).abs() <= 1e-7 * base, "{base} vs {scaled}");
    }

    #[test]
    fn energy_is_conserved(config in cycle(), q1 in 1.0..5.0f64, q3 in 1.0..5.0f64) {
        let (q2, q4) = thermo::heats(&config, q1, q3).unwrap();
        let (w1, w3) = thermo::works(&config, q1, q3).unwrap();
        let scale = q2.abs().max(q4.abs()).max(w1.abs()).max(w3.abs()).max(1.0);
        prop_assert!((w1 + w3 + q2 + q4).abs() <= 1e-12 * scale);
    }

    #[test]
    fn entropy_production_is_non_negative(config in cycle(), q1 in 1.0..5.0f64, q3 in 1.0..5.0f64) {
        prop_assert!(thermo::entropy_production(&config, q1, q3).unwrap() >= -1e-12);
    }

    #[test]
    fn nonadiabatic_cop_forms_agree(config in cycle(), q1 in 1.0..5.0f64, q3 in 1.0..5.0f64) {
        if let (Ok(a), Ok(b)) = (
            thermo::cop_nonadiabatic(&config, q1, q3),
            thermo::cop_nonadiabatic_explicit(&config, q1, q3),
        ) {
            prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0));
        }
    }

    #[test]
    fn fidelity_is_a_symmetric_overlap(a in mixed_state(), b in mixed_state()) {
        let ab = qsl::fidelity(&a, &b);
        prop_assert!((ab - qsl::fidelity(&b, &a)).abs() <= 1e-14);
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert!((qsl::fidelity(&a, &a) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn bures_angle_triangle_inequality(a in mixed_state(), b in mixed_state(), c in mixed_state()) {
        let (ab, bc, ac) = (qsl::bures_angle(&a, &b), qsl::bures_angle(&b, &c), qsl::bures_angle(&a, &c));
        prop_assert!(ac <= ab + bc + 1e-7);
    }

    #[test]
    fn sta_cost_scales_inversely_with_tau_squared(wi in 0.05..1.0f64, ratio in 0.2..6.0f64, tau in 0.2..20.0f64, beta in 0.1..5.0f64) {
        prop_assume!((ratio - 1.0).abs() > 1e-3);
        let c1 = Ramp::quintic(wi, wi * ratio, tau).unwrap().sta_cost_avg(beta).unwrap().value();
        let c2 = Ramp::quintic(wi, wi * ratio, 2.0 * tau).unwrap().sta_cost_avg(beta).unwrap().value();
        prop_assert!(c1 > 0.0);
        prop_assert!((4.0 * c2 - c1).abs() <= 1e-8 * c1);
    }
}
