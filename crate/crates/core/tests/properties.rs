//! Property tests over randomized lossless stacks.

use photonic_tmm::classical::{characteristic_matrix, classical_transmissivity};
use photonic_tmm::observables::{current_at, default_incident_state, density_at, net_flux_at};
use photonic_tmm::quantum::{solve_scatter, transmissivity};
use photonic_tmm::{Complex64, Layer, LayerKind, Stack};
use proptest::prelude::*;

fn layer() -> impl Strategy<Value = Layer> {
    (1.0f64..4.0, 50.0f64..500.0, any::<bool>()).prop_map(|(n, d, a)| {
        Layer::new(n, d, if a { LayerKind::A } else { LayerKind::B }).unwrap()
    })
}

fn stack() -> impl Strategy<Value = Stack> {
    proptest::collection::vec(layer(), 0..=20).prop_map(Stack::new)
}

fn omega() -> impl Strategy<Value = f64> {
    1e14f64..6e15
}

fn theta() -> impl Strategy<Value = f64> {
    0.0f64..1.3
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn quantum_equals_classical(s in stack(), th in theta(), w in omega()) {
        let (tq, rq) = transmissivity(&s, th, w).unwrap();
        let (tc, rc) = classical_transmissivity(&s, th, w).unwrap();
        prop_assert!((tq - tc).abs() < 1e-9, "{tq} vs {tc}");
        prop_assert!((rq - rc).abs() < 1e-9);
    }

    #[test]
    fn flux_is_conserved_and_bounded(s in stack(), th in theta(), w in omega()) {
        let (t, r) = transmissivity(&s, th, w).unwrap();
        prop_assert!((t + r - 1.0).abs() < 1e-10);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&t));
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&r));
        let (tc, rc) = classical_transmissivity(&s, th, w).unwrap();
        prop_assert!((tc + rc - 1.0).abs() < 1e-10);
    }

    #[test]
    fn reversal_reciprocity(s in stack(), th in theta(), w in omega()) {
        let (t, _) = transmissivity(&s, th, w).unwrap();
        let (tr, _) = transmissivity(&s.reversed(), th, w).unwrap();
        prop_assert!((t - tr).abs() < 1e-10);
    }

    #[test]
    fn frequency_thickness_scale_invariance(s in stack(), th in theta(), w in omega(), k in 0.25f64..4.0) {
        let (t, _) = transmissivity(&s, th, w).unwrap();
        let (ts, _) = transmissivity(&s.scaled(1.0 / k).unwrap(), th, w * k).unwrap();
        prop_assert!((t - ts).abs() < 1e-10);
    }

    #[test]
    fn characteristic_matrices_are_unimodular(l in layer(), th in theta(), w in omega()) {
        let m = characteristic_matrix(&l, th, w).unwrap();
        prop_assert!((m.det() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn density_and_current_continuous_at_interfaces(s in stack(), th in theta(), w in omega()) {
        prop_assume!(s.len() >= 2);
        let sol = solve_scatter(&s, th, w, &default_incident_state().amplitude).unwrap();
        let p = &sol.params;
        for j in 0..s.len() - 1 {
            let left = &sol.layer_coefficients[j];
            let right = &sol.layer_coefficients[j + 1];
            let d = s.layers()[j].thickness();
            let (cl, cr) = (p.layer_c[j], p.layer_c[j + 1]);
            let rho_l = density_at(left, p, cl, d);
            let rho_r = density_at(right, p, cr, 0.0);
            prop_assert!(rel_close(rho_l, rho_r, 1e-10) || (rho_l - rho_r).abs() < 1e-14);
            let j_l = current_at(left, p, cl, d);
            let j_r = current_at(right, p, cr, 0.0);
            prop_assert!(rel_close(j_l, j_r, 1e-10) || (j_l - j_r).abs() < 1e-14);
            prop_assert!(rho_l >= -1e-12);
            let flux = net_flux_at(left, p, cl);
            prop_assert!((flux - sol.transmissivity).abs() < 1e-9);
        }
    }

    #[test]
    fn exit_current_equals_t(s in stack(), th in theta(), w in omega(), x in 0.0f64..1000.0) {
        let sol = solve_scatter(&s, th, w, &default_incident_state().amplitude).unwrap();
        let j = current_at(&sol.exit_pair(), &sol.params, sol.params.c_ambient, x);
        prop_assert!((j - sol.transmissivity).abs() < 1e-10);
    }

    #[test]
    fn incident_direction_does_not_change_r_t(s in stack(), th in theta(), w in omega()) {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let a = solve_scatter(&s, th, w, &[zero, one, zero]).unwrap();
        let b = solve_scatter(&s, th, w, &[zero, zero, one]).unwrap();
        prop_assert!((a.transmissivity - b.transmissivity).abs() < 1e-12);
        prop_assert_eq!(a.r, b.r);
    }
}
