use proptest::prelude::*;

use gsqg_patch::functional::{Evaluator, PatchGeometry, QuadratureScheme, WindowPolicy};
use gsqg_patch::kernels::MultiplierTable;
use gsqg_patch::solver::{reflect_solution, BranchRecord};
use gsqg_patch::spectral::{analyze, synthesize, FourierCosSeries, Parity, PeriodicGrid};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cosine_round_trip(coeffs in prop::collection::vec(-1.0f64..1.0, 1..15)) {
        let f = FourierCosSeries::new(coeffs.clone()).unwrap();
        let grid = PeriodicGrid::new(64);
        let a = analyze(&synthesize(&f, &grid).unwrap(), Parity::Even);
        let back = a.cos_series(f.truncation()).unwrap();
        for (x, y) in back.coeffs().iter().zip(&coeffs) {
            prop_assert!((x - y).abs() < 1e-13);
        }
        prop_assert!(a.leakage < 1e-13);
    }

    #[test]
    fn multipliers_increase(alpha in 0.05f64..1.95) {
        let t = MultiplierTable::new(alpha, 24).unwrap();
        prop_assert!(t.beta(1) > 0.0);
        for j in 1..24 {
            prop_assert!(t.beta(j + 1) > t.beta(j));
        }
    }

    #[test]
    fn functional_output_is_odd(
        alpha in 1.0f64..1.9,
        m in 2usize..5,
        eps in 0.005f64..0.05,
        coeffs in prop::collection::vec(-0.5f64..0.5, 3..8),
        speed in -1.0f64..1.0,
    ) {
        let g = PatchGeometry::corotating(alpha, 1.0, m, eps).unwrap();
        let q = QuadratureScheme::new(64, 64, WindowPolicy::Corrected).unwrap();
        let ev = Evaluator::new(&g, &q).unwrap();
        let e = ev.evaluate(eps, &FourierCosSeries::new(coeffs).unwrap(), speed).unwrap();
        prop_assert!(e.leakage < 1e-10);
    }

    #[test]
    fn reflection_is_an_involution(
        eps in -0.1f64..0.1,
        coeffs in prop::collection::vec(-1.0f64..1.0, 1..12),
    ) {
        let r = BranchRecord {
            eps,
            speed: 0.3,
            residual: 0.0,
            iters: 0,
            coeffs: FourierCosSeries::new(coeffs).unwrap(),
            history: vec![],
            diagnostics: None,
        };
        prop_assert_eq!(reflect_solution(&reflect_solution(&r)), r);
    }
}
