//! End-to-end: build, serialize, read back, measure.

use num_complex::Complex64 as C64;
use oscfock::density::{count_local_maxima, default_half_width, density_grid, MAXIMA_FLOOR};
use oscfock::fock::{AnyState, FockState, ModePair, SqueezeSpec, StateFile};
use oscfock::observables::{dispersion_2d_analytic, schmidt_analysis, uncertainty_products};
use oscfock::states::{
    coherent_1d, squeezed_1d, squeezed_2d, squeezed_vacuum_exponential, su2_coherent, Su2CoherentSpec,
};

fn roundtrip(state: AnyState) -> AnyState {
    let text = StateFile::from_state(&state).to_json().unwrap();
    let back = StateFile::from_json(&text).unwrap().into_state().unwrap();
    assert_eq!(back, state, "json round trip changed the state");
    back
}

#[test]
fn every_constructor_survives_json_bit_for_bit() {
    let sp = SqueezeSpec::new(C64::new(0.3, -1.1), 0.7, 2.9).unwrap();
    let modes = ModePair::tilted_complex();
    roundtrip(coherent_1d(C64::from_polar(1.3, 0.4), 40).unwrap().into());
    roundtrip(squeezed_1d(&sp, 80).unwrap().into());
    roundtrip(su2_coherent(&Su2CoherentSpec::new(9, modes), 12).unwrap().into());
    roundtrip(squeezed_2d(&sp, &modes, 70, None).unwrap().into());
    roundtrip(squeezed_2d(&sp, &modes, 20, Some(7)).unwrap().into());
    roundtrip(squeezed_vacuum_exponential(&SqueezeSpec::vacuum(0.4, 1.0).unwrap(), &modes, 50).unwrap().into());
}

#[test]
fn file_io_round_trip() {
    let dir = std::env::temp_dir().join(format!("oscfock-pipeline-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s.json");
    let s: AnyState = su2_coherent(&Su2CoherentSpec::new(5, ModePair::tilted_real()), 7).unwrap().into();
    StateFile::from_state(&s).write(&path).unwrap();
    let back = StateFile::read(&path).unwrap().into_state().unwrap();
    assert_eq!(back, s);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn serialized_squeezed_vacuum_keeps_its_dispersions() {
    let xi = SqueezeSpec::vacuum(0.5, 0.0).unwrap();
    let modes = ModePair::tilted_real();
    let s = roundtrip(squeezed_vacuum_exponential(&xi, &modes, 70).unwrap().into()).into_2d();
    let num = uncertainty_products(&s, false).unwrap();
    assert!(num.max_abs_diff(&dispersion_2d_analytic(&xi, &modes)) < 1e-8);
    assert!(schmidt_analysis(&s).unwrap().entropy > 0.1);
}

#[test]
fn one_d_states_embed_along_x() {
    let s = roundtrip(coherent_1d(C64::new(0.0, 0.0), 30).unwrap().into()).into_2d();
    let rep = uncertainty_products(&s, false).unwrap();
    for v in [rep.var_x, rep.var_px, rep.var_y, rep.var_py] {
        assert!((v - 0.5).abs() < 1e-14);
    }
}

#[test]
fn su2_state_forms_a_ring() {
    // complex alpha: an elliptical ring, empty at the centre
    let s = su2_coherent(&Su2CoherentSpec::new(40, ModePair::tilted_complex()), 40).unwrap();
    let w = default_half_width(&s);
    let g = density_grid(&s, (-w, w), (-w, w), 161, 161).unwrap();
    assert!((g.mass - 1.0).abs() < 1e-6);
    assert!(g.value(80, 80) < 1e-10 * g.max_value());

    // real modes give a rotated Hermite-Gauss pattern instead, with a
    // central lobe for even nu
    let s = su2_coherent(&Su2CoherentSpec::new(40, ModePair::tilted_real()), 40).unwrap();
    let g = density_grid(&s, (-w, w), (-w, w), 161, 161).unwrap();
    assert!(g.value(80, 80) > 1e-3 * g.max_value());
    assert!(count_local_maxima(&g, MAXIMA_FLOOR) > 2);
}

#[test]
fn truncated_wide_squeeze_is_flagged() {
    let sp = SqueezeSpec::new(C64::new(1.0, 0.0), 10.0, 0.0).unwrap();
    let s = squeezed_2d(&sp, &ModePair::tilted_real(), 19, Some(20)).unwrap();
    assert!(s.meta().unnormalized);
    assert!(uncertainty_products(&s, false).is_err());
    assert!(uncertainty_products(&s, true).is_ok());
    assert!(s.norm_sqr() < 1e-3);
}
