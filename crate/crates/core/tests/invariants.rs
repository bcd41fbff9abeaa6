//! Property tests over random parameters.

use num_complex::Complex64 as C64;
use oscfock::fock::{inner_product, FockState, ModePair, SqueezeSpec};
use oscfock::observables::{dispersion_2d_analytic, schmidt_analysis, uncertainty_products};
use oscfock::states::{
    coherent_1d, coherent_min_cutoff, eigen_residual_1d, squeezed_1d, squeezed_2d, squeezed_min_cutoff,
    su2_coherent, su2_overlap, Su2CoherentSpec,
};
use proptest::prelude::*;

fn modes() -> impl Strategy<Value = ModePair> {
    (0.0..std::f64::consts::FRAC_PI_2, 0.0..6.3f64, 0.0..6.3f64)
        .prop_map(|(t, pa, pb)| ModePair::from_polar(t.cos(), pa, t.sin(), pb).unwrap())
}

fn squeeze() -> impl Strategy<Value = SqueezeSpec> {
    (0.0..1.5f64, 0.0..6.3f64, 0.0..0.9f64, 0.0..6.3f64)
        .prop_map(|(pm, pa, r, th)| SqueezeSpec::new(C64::from_polar(pm, pa), r, th).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coherent_states_are_unit_norm(m in 0.0..4.0f64, a in 0.0..6.3f64) {
        let z = C64::from_polar(m, a);
        let s = coherent_1d(z, coherent_min_cutoff(z)).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn squeezed_1d_is_an_eigenstate(sp in squeeze()) {
        let c = squeezed_min_cutoff(&sp).unwrap();
        let s = squeezed_1d(&sp, c).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-9);
        prop_assert!(eigen_residual_1d(&s, sp.canonical_z(), sp.canonical_gamma()) < 1e-6);
    }

    #[test]
    fn su2_states_are_normalized_and_orthogonal(nu in 0usize..30, m in modes()) {
        let s = su2_coherent(&Su2CoherentSpec::new(nu, m), nu + 2).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        let t = su2_coherent(&Su2CoherentSpec::new(nu, m.orthogonal()), nu + 2).unwrap();
        let ov = inner_product(&s, &t).unwrap().norm();
        prop_assert!(ov < 1e-12, "overlap {ov}");
        prop_assert!((su2_overlap(nu, &m, nu, &m).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn squeezed_2d_dispersions_match_closed_form(sp in squeeze(), m in modes()) {
        let c = squeezed_min_cutoff(&sp).unwrap().max(40);
        let s = squeezed_2d(&sp, &m, c, None).unwrap();
        let num = uncertainty_products(&s, true).unwrap();
        let ana = dispersion_2d_analytic(&sp, &m);
        prop_assert!(num.max_abs_diff(&ana) < 1e-6, "{num:?} vs {ana:?}");
        prop_assert!(num.product_x >= 0.5 - 1e-8 && num.product_y >= 0.5 - 1e-8);
    }

    #[test]
    fn schmidt_entropy_is_bounded(sp in squeeze(), m in modes()) {
        let c = squeezed_min_cutoff(&sp).unwrap().min(60);
        let s = squeezed_2d(&sp, &m, c, Some(c.min(25) + 1)).unwrap();
        let rep = schmidt_analysis(&s).unwrap();
        prop_assert!(rep.entropy >= 0.0);
        prop_assert!(rep.entropy <= ((s.cutoff() + 1) as f64).ln() + 1e-12);
        prop_assert!(rep.rank >= 1);
    }
}
