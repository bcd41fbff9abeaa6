//! Constructors for the 1D squeezed states, the SU(2) coherent states and
//! the 2D squeezed states, plus operator-built oracles for each.
//!
//! Closed-form states are never renormalized. The weight missing because of
//! the cutoff is stored as `leakage` in the state metadata.

use serde::{Deserialize, Serialize};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{
    block_start, dim_2d, Construction, FockState, ModePair, SqueezeSpec, StateMeta, StateVector1D,
    StateVector2D,
};
use crate::operators::{
    apply_generalized, displacement_generator, displacement_generator_1d, expm_action,
    matrix_exponential, squeeze_generator, squeeze_generator_1d, Direction, OperatorMatrix, Space,
};
use crate::special::squeeze_terms;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Closed-form expansions refuse squeeze moduli at or above this.
pub const MAX_EXPANSION_SQUEEZE: f64 = 3.0;

/// Weight allowed in the last ten retained levels (and beyond).
pub const TAIL_WEIGHT: f64 = 1e-10;

/// Scan limit for the weight sequence when sizing a cutoff.
const MAX_SCAN: usize = 200_000;

/// `nu` quanta shared between the two modes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Su2CoherentSpec {
    pub nu: usize,
    pub modes: ModePair,
}

impl Su2CoherentSpec {
    pub fn new(nu: usize, modes: ModePair) -> Self {
        Self { nu, modes }
    }
}

fn meta(construction: Construction, leakage: f64) -> StateMeta {
    StateMeta {
        construction: Some(construction),
        unnormalized: false,
        prior_norm: None,
        leakage,
    }
}

fn missing_weight(norm_sqr: f64) -> f64 {
    (1.0 - norm_sqr).max(0.0)
}

/// Cutoff that keeps the Poisson tail of `|z>` below `1e-12`.
pub fn coherent_min_cutoff(z: C64) -> usize {
    let n = z.norm_sqr();
    (n + 10.0 * (n + 1.0).sqrt() + 20.0).ceil() as usize
}

/// `c_n = e^{-|z|^2/2} z^n / sqrt(n!)`.
pub fn coherent_1d(z: C64, cutoff: usize) -> Result<StateVector1D> {
    let needed = coherent_min_cutoff(z);
    if cutoff < needed {
        return Err(Error::Convergence {
            message: format!("cutoff {cutoff} too small for coherent amplitude |z| = {}", z.norm()),
            suggested_cutoff: needed,
        });
    }
    let mut c = Vec::with_capacity(cutoff + 1);
    let mut cur = C64::new((-0.5 * z.norm_sqr()).exp(), 0.0);
    c.push(cur);
    for n in 1..=cutoff {
        cur = cur * z / (n as f64).sqrt();
        c.push(cur);
    }
    let s = StateVector1D::new(c)?;
    let leak = missing_weight(s.norm_sqr());
    Ok(s.with_meta(meta(Construction::Coherent1d { z }, leak)))
}

/// `1/N(z, gamma)` for the squeezed expansion.
///
/// ```text
/// 1/N = (cosh r)^{-1/2} exp(-cosh^2 r (|z|^2 + tanh r Re(e^{i theta} conj(z)^2)) / 2)
/// ```
///
/// Obtained by summing `|t_k|^2` with Mehler's formula. At `r = 0` it is the
/// coherent-state factor.
pub fn normalization_prefactor(spec: &SqueezeSpec) -> f64 {
    let r = spec.squeeze_modulus();
    let z = spec.canonical_z();
    let (c, t) = (r.cosh(), r.tanh());
    let rot = C64::from_polar(1.0, spec.squeeze_phase()) * z.conj() * z.conj();
    c.powf(-0.5) * (-0.5 * c * c * (z.norm_sqr() + t * rot.re)).exp()
}

/// `|c_k|^2` for `k = 0..` until the sequence has clearly died out.
fn level_weights(spec: &SqueezeSpec) -> Result<Vec<f64>> {
    let pref = normalization_prefactor(spec);
    let z = spec.canonical_z();
    let g = spec.canonical_gamma();
    let mean = spec.displacement().norm_sqr() + spec.squeeze_modulus().sinh().powi(2);
    let floor = 2.0 * mean + 30.0;

    let mut w = Vec::new();
    let (mut prev, mut cur) = (ZERO, C64::new(1.0, 0.0));
    let mut quiet = 0usize;
    for k in 0..MAX_SCAN {
        let v = (pref * cur).norm_sqr();
        w.push(v);
        quiet = if v < 1e-22 { quiet + 1 } else { 0 };
        if quiet >= 30 && k as f64 > floor {
            return Ok(w);
        }
        let kf = k as f64;
        let next = (z * cur - g * kf.sqrt() * prev) / (kf + 1.0).sqrt();
        prev = cur;
        cur = next;
    }
    Err(Error::Convergence {
        message: format!("level weights still significant after {MAX_SCAN} terms"),
        suggested_cutoff: MAX_SCAN,
    })
}

/// Smallest cutoff whose last ten levels, together with everything above,
/// hold less than [`TAIL_WEIGHT`]. Squeezes past [`MAX_EXPANSION_SQUEEZE`]
/// are refused, as the constructors refuse them.
pub fn squeezed_min_cutoff(spec: &SqueezeSpec) -> Result<usize> {
    check_expansion_modulus(spec)?;
    let w = level_weights(spec)?;
    let mut tail = 0.0;
    let mut best = w.len() - 1;
    for c in (0..w.len()).rev() {
        tail += w[c];
        // tail now covers c..; a cutoff of c + 9 keeps c..=c+9 as its last ten
        if tail >= TAIL_WEIGHT {
            break;
        }
        best = c + 9;
    }
    Ok(best.max(9))
}

/// Rough geometric estimate used in error messages when a scan is too long.
fn geometric_cutoff_estimate(r: f64) -> usize {
    let t = r.tanh();
    if t <= 0.0 {
        return 20;
    }
    let n = TAIL_WEIGHT.ln() / (2.0 * t.ln());
    if n.is_finite() && n < usize::MAX as f64 / 4.0 {
        n.ceil() as usize + 20
    } else {
        usize::MAX / 4
    }
}

fn check_expansion_modulus(spec: &SqueezeSpec) -> Result<()> {
    let r = spec.squeeze_modulus();
    if r >= MAX_EXPANSION_SQUEEZE {
        return Err(Error::Convergence {
            message: format!(
                "squeeze modulus {r} >= {MAX_EXPANSION_SQUEEZE}: the expansion converges too \
                 slowly; build the state from operator exponentials or pass a term count"
            ),
            suggested_cutoff: geometric_cutoff_estimate(r),
        });
    }
    Ok(())
}

fn check_cutoff(spec: &SqueezeSpec, cutoff: usize) -> Result<()> {
    let needed = squeezed_min_cutoff(spec)?;
    if cutoff < needed {
        return Err(Error::Convergence {
            message: format!(
                "cutoff {cutoff} leaves more than {TAIL_WEIGHT:e} of the weight in the last ten levels"
            ),
            suggested_cutoff: needed,
        });
    }
    Ok(())
}

/// `c_k = t_k(z, gamma) / N` for `k = 0..=cutoff`.
pub fn squeezed_1d(spec: &SqueezeSpec, cutoff: usize) -> Result<StateVector1D> {
    check_expansion_modulus(spec)?;
    check_cutoff(spec, cutoff)?;
    let pref = normalization_prefactor(spec);
    let c: Vec<C64> = squeeze_terms(cutoff, spec.canonical_z(), spec.canonical_gamma())?
        .into_iter()
        .map(|t| t * pref)
        .collect();
    let s = StateVector1D::new(c)?;
    let leak = missing_weight(s.norm_sqr());
    Ok(s.with_meta(meta(
        Construction::Squeezed1d {
            displacement: spec.displacement(),
            r: spec.squeeze_modulus(),
            theta: spec.squeeze_phase(),
        },
        leak,
    )))
}

/// Amplitudes `alpha^n beta^{nu-n} sqrt(C(nu, n))` of `|n, nu - n>`,
/// indexed by `n`. Products are formed in log space so large `nu` neither
/// overflows the binomial nor underflows the powers.
pub fn su2_block(nu: usize, modes: &ModePair) -> Vec<C64> {
    let (a, b) = (modes.alpha(), modes.beta());
    let (la, lb) = (a.norm().ln(), b.norm().ln());
    let (pa, pb) = (a.arg(), b.arg());
    let mut ln_fact = vec![0.0f64; nu + 1];
    for k in 1..=nu {
        ln_fact[k] = ln_fact[k - 1] + (k as f64).ln();
    }
    (0..=nu)
        .map(|n| {
            let m = nu - n;
            if (n > 0 && a.norm() == 0.0) || (m > 0 && b.norm() == 0.0) {
                return ZERO;
            }
            let mut ln_mod = 0.5 * (ln_fact[nu] - ln_fact[n] - ln_fact[m]);
            if n > 0 {
                ln_mod += n as f64 * la;
            }
            if m > 0 {
                ln_mod += m as f64 * lb;
            }
            C64::from_polar(ln_mod.exp(), n as f64 * pa + m as f64 * pb)
        })
        .collect()
}

/// The SU(2) coherent state `|nu>_{alpha, beta}`.
pub fn su2_coherent(spec: &Su2CoherentSpec, cutoff: usize) -> Result<StateVector2D> {
    if spec.nu > cutoff {
        return Err(Error::Dimension(format!("nu = {} exceeds cutoff {cutoff}", spec.nu)));
    }
    let mut c = vec![ZERO; dim_2d(cutoff)];
    let start = block_start(spec.nu);
    c[start..=start + spec.nu].copy_from_slice(&su2_block(spec.nu, &spec.modes));
    let s = StateVector2D::new(cutoff, c)?;
    Ok(s.with_meta(meta(
        Construction::Su2Coherent {
            nu: spec.nu,
            alpha: spec.modes.alpha(),
            beta: spec.modes.beta(),
        },
        0.0,
    )))
}

/// `<mu|_{gamma, delta} |nu>_{alpha, beta} = (conj(gamma) alpha + conj(delta) beta)^nu delta_{mu nu}`.
pub fn su2_overlap(mu: usize, modes_a: &ModePair, nu: usize, modes_b: &ModePair) -> C64 {
    if mu != nu {
        return ZERO;
    }
    let w = modes_a.alpha().conj() * modes_b.alpha() + modes_a.beta().conj() * modes_b.beta();
    w.powu(nu as u32)
}

/// `(1/N) sum_nu t_nu(Z, Gamma) |nu>_{alpha, beta}`.
///
/// With `terms = None` the sum runs to the cutoff, which must hold all but
/// [`TAIL_WEIGHT`] of the state. `Some(k)` keeps only `nu < k`, for any
/// squeeze modulus, and flags the result as unnormalized.
pub fn squeezed_2d(
    spec: &SqueezeSpec,
    modes: &ModePair,
    cutoff: usize,
    terms: Option<usize>,
) -> Result<StateVector2D> {
    let top = match terms {
        Some(0) => return Err(Error::Usage("term count must be at least 1".into())),
        Some(k) => {
            if k - 1 > cutoff {
                return Err(Error::Dimension(format!(
                    "{k} terms need cutoff >= {}, got {cutoff}",
                    k - 1
                )));
            }
            k - 1
        }
        None => {
            check_expansion_modulus(spec)?;
            check_cutoff(spec, cutoff)?;
            cutoff
        }
    };
    let pref = normalization_prefactor(spec);
    let t = squeeze_terms(top, spec.canonical_z(), spec.canonical_gamma())?;
    let mut c = vec![ZERO; dim_2d(cutoff)];
    for (nu, tn) in t.iter().enumerate() {
        let w = pref * tn;
        let start = block_start(nu);
        for (slot, b) in c[start..=start + nu].iter_mut().zip(su2_block(nu, modes)) {
            *slot = w * b;
        }
    }
    let s = StateVector2D::new(cutoff, c)?;
    let leak = missing_weight(s.norm_sqr());
    let mut m = meta(
        Construction::Squeezed2d {
            displacement: spec.displacement(),
            r: spec.squeeze_modulus(),
            theta: spec.squeeze_phase(),
            alpha: modes.alpha(),
            beta: modes.beta(),
            terms,
        },
        leak,
    );
    m.unnormalized = terms.is_some();
    Ok(s.with_meta(m))
}

/// Squeezed vacuum from the exponential of the creation-only quadratic:
///
/// ```text
/// (cosh R)^{-1/2} exp((e^{i Theta} tanh R / 2) (alpha^2 a_x+^2 + beta^2 a_y+^2 + 2 alpha beta a_x+ a_y+)) |0,0>
/// ```
///
/// The quadratic is `A+^2`, so each power series term is two generalized
/// raisings of the previous one. Any displacement in `xi` is ignored.
pub fn squeezed_vacuum_exponential(xi: &SqueezeSpec, modes: &ModePair, cutoff: usize) -> Result<StateVector2D> {
    let r = xi.squeeze_modulus();
    let vac = SqueezeSpec::vacuum(r, xi.squeeze_phase())?;
    check_expansion_modulus(&vac)?;
    let half_t = C64::from_polar(0.5 * r.tanh(), xi.squeeze_phase());

    let mut term = StateVector2D::basis(0, 0, cutoff)?.into_coeffs();
    let pref = r.cosh().powf(-0.5);
    term[0] = C64::new(pref, 0.0);
    let mut acc = term.clone();
    let mut k = 0usize;
    while 2 * (k + 1) <= cutoff {
        let s = StateVector2D::new(cutoff, term)?;
        let once = apply_generalized(Direction::Raise, modes, &s).state;
        let twice = apply_generalized(Direction::Raise, modes, &once).state;
        k += 1;
        let f = half_t / k as f64;
        term = twice.into_coeffs().into_iter().map(|x| x * f).collect();
        for (a, t) in acc.iter_mut().zip(&term) {
            *a += t;
        }
    }
    let s = StateVector2D::new(cutoff, acc)?;
    let tail = missing_weight(s.norm_sqr());
    if tail > TAIL_WEIGHT {
        return Err(Error::Convergence {
            message: format!("weight {tail:e} lies above cutoff {cutoff}"),
            suggested_cutoff: squeezed_min_cutoff(&vac)?,
        });
    }
    Ok(s.with_meta(meta(
        Construction::SqueezedVacuum {
            r,
            theta: xi.squeeze_phase(),
            alpha: modes.alpha(),
            beta: modes.beta(),
        },
        tail,
    )))
}

/// `||(a + gamma a+) s - z s||` over levels `n <= cutoff / 2`.
pub fn eigen_residual_1d(state: &StateVector1D, z: C64, gamma: C64) -> f64 {
    let c = state.coeffs();
    let top = state.cutoff() / 2;
    (0..=top)
        .map(|n| {
            let down = c[n + 1] * ((n + 1) as f64).sqrt();
            let up = if n > 0 { c[n - 1] * (n as f64).sqrt() } else { ZERO };
            (down + gamma * up - z * c[n]).norm_sqr()
        })
        .sum::<f64>()
        .sqrt()
}

/// `||(A- + gamma A+) s - z s||` over the blocks `nu <= cutoff / 2`.
pub fn eigen_residual_2d(state: &StateVector2D, z: C64, gamma: C64, modes: &ModePair) -> f64 {
    let down = apply_generalized(Direction::Lower, modes, state).state;
    let up = apply_generalized(Direction::Raise, modes, state).state;
    let len = dim_2d(state.cutoff() / 2);
    (0..len)
        .map(|k| (down.coeffs()[k] + gamma * up.coeffs()[k] - z * state.coeffs()[k]).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// `D(psi) S(xi) |0>` with both exponentials formed as dense matrices.
pub fn operator_built_1d(spec: &SqueezeSpec, cutoff: usize) -> Result<StateVector1D> {
    let s = OperatorMatrix::from_sparse(&squeeze_generator_1d(spec.squeeze(), cutoff), cutoff, Space::OneD, "G_S")?;
    let d = OperatorMatrix::from_sparse(
        &displacement_generator_1d(spec.displacement(), cutoff),
        cutoff,
        Space::OneD,
        "G_D",
    )?;
    let ds = matrix_exponential(&d)?.compose(&matrix_exponential(&s)?)?;
    let c: Vec<C64> = ds.entries().column(0).iter().copied().collect();
    let out = StateVector1D::new(c)?;
    let leak = missing_weight(out.norm_sqr());
    Ok(out.with_meta(meta(operator_construction(spec, None), leak)))
}

/// `D(Psi) S(Xi) |0,0>` in the generalized modes, applied as exponential
/// actions on the vacuum. A dense 2D exponential at cutoff 120 would need
/// a 7381 x 7381 matrix.
pub fn operator_built_2d(spec: &SqueezeSpec, modes: &ModePair, cutoff: usize) -> Result<StateVector2D> {
    let vac = StateVector2D::basis(0, 0, cutoff)?.into_coeffs();
    let squeezed = expm_action(&squeeze_generator(spec.squeeze(), modes, cutoff), &vac)?;
    let c = expm_action(&displacement_generator(spec.displacement(), modes, cutoff), &squeezed)?;
    let out = StateVector2D::new(cutoff, c)?;
    let leak = missing_weight(out.norm_sqr());
    Ok(out.with_meta(meta(operator_construction(spec, Some(*modes)), leak)))
}

fn operator_construction(spec: &SqueezeSpec, modes: Option<ModePair>) -> Construction {
    Construction::OperatorBuilt {
        displacement: spec.displacement(),
        r: spec.squeeze_modulus(),
        theta: spec.squeeze_phase(),
        modes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::inner_product;
    use std::f64::consts::FRAC_PI_2;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn spec(psi: C64, r: f64, theta: f64) -> SqueezeSpec {
        SqueezeSpec::new(psi, r, theta).unwrap()
    }

    #[test]
    fn coherent_examples() {
        let v = coherent_1d(c(0.0, 0.0), 30).unwrap();
        assert_eq!(v.coeffs()[0], c(1.0, 0.0));
        assert!(v.coeffs()[1..].iter().all(|x| *x == ZERO));

        let s = coherent_1d(c(1.0, 0.0), 60).unwrap();
        assert!((s.coeffs()[0].re - 0.606_530_7).abs() < 1e-7);
        assert!((s.norm() - 1.0).abs() < 1e-10);
        assert!(eigen_residual_1d(&s, c(1.0, 0.0), ZERO) <= 1e-10);

        match coherent_1d(c(3.0, 0.0), 20) {
            Err(Error::Convergence { suggested_cutoff, .. }) => assert_eq!(suggested_cutoff, 61),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn prefactor_reduces_to_coherent() {
        let z = c(0.7, -0.4);
        let p = normalization_prefactor(&spec(z, 0.0, 1.1));
        assert!((p - (-0.5 * z.norm_sqr()).exp()).abs() < 1e-15);
    }

    #[test]
    fn prefactor_gives_unit_norm() {
        // direct sum of |t_k|^2, no closed form involved
        for (psi, r, th) in [(c(1.0, 0.0), 0.5, 0.0), (c(0.3, -1.2), 0.8, 2.0), (c(-1.5, 0.4), 1.7, 4.0)] {
            let s = spec(psi, r, th);
            let w = level_weights(&s).unwrap();
            let total: f64 = w.iter().sum();
            assert!((total - 1.0).abs() < 1e-12, "{psi} {r} {th}: {total}");
        }
    }

    #[test]
    fn ground_overlap_known_value() {
        // <0| D(1) S(r) |0> squared = sqrt(1 - T^2) exp(-(1 - T)), theta = 0
        let r = 0.5f64;
        let t = r.tanh();
        let p = normalization_prefactor(&spec(c(1.0, 0.0), r, 0.0));
        let expected = (1.0 - t * t).sqrt() * (-(1.0 - t)).exp();
        assert!((p * p - expected).abs() < 1e-15);
    }

    #[test]
    fn r_zero_is_coherent() {
        let z = c(0.8, 0.5);
        let a = squeezed_1d(&spec(z, 0.0, 0.3), 60).unwrap();
        let b = coherent_1d(z, 60).unwrap();
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn squeezed_vacuum_ratio_sign() {
        let s = squeezed_1d(&spec(ZERO, 0.5, 0.0), 80).unwrap();
        let cf = s.coeffs();
        for k in (1..80).step_by(2) {
            assert_eq!(cf[k], ZERO);
        }
        // c_2 / c_0 = -gamma / sqrt 2 = +tanh(0.5) / sqrt 2
        let ratio = cf[2] / cf[0];
        let expected = 0.5f64.tanh() / 2f64.sqrt();
        assert!((ratio - expected).norm() < 1e-15);
        assert!((ratio.re - 0.3268).abs() < 1e-4);
    }

    #[test]
    fn squeezed_vacuum_closed_form() {
        // S = exp((xi a+^2 - conj(xi) a-^2) / 2) takes the vacuum to
        // c_2k ~ (e^{i theta} tanh r)^k sqrt((2k)!) / (2^k k!)
        let (r, th) = (0.7, 1.3);
        let s = squeezed_1d(&spec(ZERO, r, th), 100).unwrap();
        let g = C64::from_polar(r.tanh(), th);
        let c0 = r.cosh().powf(-0.5);
        let mut ln_f = vec![0.0f64; 101];
        for k in 1..=100 {
            ln_f[k] = ln_f[k - 1] + (k as f64).ln();
        }
        for k in 0..=50usize {
            let mag = (0.5 * ln_f[2 * k] - k as f64 * 2f64.ln() - ln_f[k]).exp();
            let e = c0 * g.powu(k as u32) * mag;
            assert!((s.coeffs()[2 * k] - e).norm() < 1e-14, "k={k}");
        }
    }

    #[test]
    fn squeezed_matches_operator_oracle() {
        let sp = spec(c(1.0, 0.0), 0.5, 0.0);
        let a = squeezed_1d(&sp, 120).unwrap();
        let b = operator_built_1d(&sp, 120).unwrap();
        let ov = inner_product(&a, &b).unwrap().norm();
        assert!(ov >= 1.0 - 1e-8, "{ov}");
        assert!(eigen_residual_1d(&a, sp.canonical_z(), sp.canonical_gamma()) <= 1e-8);
    }

    #[test]
    fn squeezed_refusals() {
        assert!(matches!(
            squeezed_1d(&spec(c(1.0, 0.0), 3.0, 0.0), 2000),
            Err(Error::Convergence { .. })
        ));
        let sp = spec(c(2.0, 0.0), 1.0, 0.0);
        let need = squeezed_min_cutoff(&sp).unwrap();
        match squeezed_1d(&sp, need - 1) {
            Err(Error::Convergence { suggested_cutoff, .. }) => assert_eq!(suggested_cutoff, need),
            other => panic!("{other:?}"),
        }
        let s = squeezed_1d(&sp, need).unwrap();
        let last: f64 = s.coeffs()[need - 9..].iter().map(|x| x.norm_sqr()).sum();
        assert!(last < TAIL_WEIGHT);
        assert!(s.meta().leakage < TAIL_WEIGHT);
    }

    #[test]
    fn su2_examples() {
        let modes = ModePair::tilted_complex();
        let v = su2_coherent(&Su2CoherentSpec::new(0, modes), 5).unwrap();
        assert_eq!(v.amplitude(0, 0), c(1.0, 0.0));

        let s = su2_coherent(&Su2CoherentSpec::new(1, modes), 5).unwrap();
        let h = 3f64.sqrt() / 2.0;
        assert!((s.amplitude(1, 0) - c(0.0, h)).norm() < 1e-15);
        assert!((s.amplitude(0, 1) - c(0.5, 0.0)).norm() < 1e-15);

        let (a, b) = (modes.alpha(), modes.beta());
        let s = su2_coherent(&Su2CoherentSpec::new(2, modes), 5).unwrap();
        assert!((s.amplitude(2, 0) - a * a).norm() < 1e-15);
        assert!((s.amplitude(1, 1) - 2f64.sqrt() * a * b).norm() < 1e-15);
        assert!((s.amplitude(0, 2) - b * b).norm() < 1e-15);

        assert!(matches!(
            su2_coherent(&Su2CoherentSpec::new(6, modes), 5),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn su2_degenerate_modes() {
        let s = su2_coherent(&Su2CoherentSpec::new(7, ModePair::x_only()), 7).unwrap();
        assert_eq!(s.amplitude(7, 0), c(1.0, 0.0));
        assert!((s.norm() - 1.0).abs() < 1e-15);
        let s = su2_coherent(&Su2CoherentSpec::new(7, ModePair::x_only().swapped()), 7).unwrap();
        assert!((s.amplitude(0, 7) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn su2_support_and_norm() {
        let modes = ModePair::tilted_real();
        for nu in [0usize, 1, 13, 40, 120] {
            let s = su2_coherent(&Su2CoherentSpec::new(nu, modes), 120).unwrap();
            assert!((s.norm() - 1.0).abs() < 1e-12, "nu={nu}");
            for mu in 0..=120 {
                if mu != nu {
                    assert!(s.block(mu).iter().all(|x| *x == ZERO));
                }
            }
        }
    }

    #[test]
    fn raising_walks_the_ladder() {
        let modes = ModePair::tilted_complex();
        for nu in 0..=30usize {
            let s = su2_coherent(&Su2CoherentSpec::new(nu, modes), 31).unwrap();
            let up = apply_generalized(Direction::Raise, &modes, &s).state;
            let next = su2_coherent(&Su2CoherentSpec::new(nu + 1, modes), 31).unwrap();
            let f = ((nu + 1) as f64).sqrt();
            for (x, y) in up.coeffs().iter().zip(next.coeffs()) {
                assert!((x - y * f).norm() < 1e-12, "nu={nu}");
            }
        }
    }

    #[test]
    fn overlaps_match_closed_form() {
        let a = ModePair::tilted_complex();
        let b = ModePair::from_polar(0.6, 0.4, 0.8, -1.1).unwrap();
        for (mu, nu) in [(3usize, 3usize), (0, 0), (2, 5), (9, 9)] {
            let sa = su2_coherent(&Su2CoherentSpec::new(mu, a), 10).unwrap();
            let sb = su2_coherent(&Su2CoherentSpec::new(nu, b), 10).unwrap();
            let num = inner_product(&sa, &sb).unwrap();
            assert!((num - su2_overlap(mu, &a, nu, &b)).norm() < 1e-12);
        }
        assert!((su2_overlap(4, &a, 4, &a) - 1.0).norm() < 1e-15);
        assert_eq!(su2_overlap(1, &a, 2, &a), ZERO);
        assert!(su2_overlap(3, &a.orthogonal(), 3, &a).norm() < 1e-15);
    }

    #[test]
    fn squeezed_2d_trivial_and_coherent() {
        let modes = ModePair::tilted_real();
        let v = squeezed_2d(&spec(ZERO, 0.0, 0.0), &modes, 30, None).unwrap();
        assert_eq!(v.amplitude(0, 0), c(1.0, 0.0));

        // R = 0: coherent product with amplitudes alpha Psi and beta Psi
        let s = squeezed_2d(&spec(c(1.0, 0.0), 0.0, 0.0), &modes, 40, None).unwrap();
        let (a, b) = (modes.alpha(), modes.beta());
        let cx = coherent_1d(a, 40).unwrap();
        let cy = coherent_1d(b, 40).unwrap();
        for n in 0..=20usize {
            for m in 0..=20usize {
                let e = cx.coeffs()[n] * cy.coeffs()[m];
                assert!((s.amplitude(n, m) - e).norm() < 1e-14);
            }
        }
        let o = operator_built_2d(&spec(c(1.0, 0.0), 0.0, 0.0), &modes, 40).unwrap();
        assert!(inner_product(&s, &o).unwrap().norm() >= 1.0 - 1e-12);
    }

    #[test]
    fn squeezed_2d_terms_mode() {
        let modes = ModePair::tilted_real();
        let s = squeezed_2d(&spec(c(1.0, 0.0), 10.0, 0.0), &modes, 19, Some(20)).unwrap();
        assert!(s.meta().unnormalized);
        assert!(s.norm() < 1.0);
        assert!(matches!(
            squeezed_2d(&spec(c(1.0, 0.0), 10.0, 0.0), &modes, 40, None),
            Err(Error::Convergence { .. })
        ));
        assert!(squeezed_2d(&spec(ZERO, 0.1, 0.0), &modes, 10, Some(12)).is_err());
        assert!(squeezed_2d(&spec(ZERO, 0.1, 0.0), &modes, 10, Some(0)).is_err());
    }

    #[test]
    fn parity_of_squeezed_vacuum() {
        let modes = ModePair::tilted_complex();
        let s = squeezed_2d(&spec(ZERO, 0.4, 1.0), &modes, 60, None).unwrap();
        for nu in (1..=59).step_by(2) {
            assert!(s.block(nu).iter().all(|x| *x == ZERO));
        }
        assert!((s.norm() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn dual_constructions_agree() {
        for modes in [ModePair::tilted_complex(), ModePair::tilted_real()] {
            for r in [0.1, 0.3, 0.5] {
                let xi = spec(ZERO, r, 0.0);
                let a = squeezed_2d(&xi, &modes, 60, None).unwrap();
                let b = squeezed_vacuum_exponential(&xi, &modes, 60).unwrap();
                let ov = inner_product(&a, &b).unwrap().norm();
                assert!(ov >= 1.0 - 1e-8, "r={r} {ov}");
            }
        }
    }

    #[test]
    fn exponential_factorizes_for_x_only() {
        let xi = spec(ZERO, 0.6, FRAC_PI_2);
        let s = squeezed_vacuum_exponential(&xi, &ModePair::x_only(), 60).unwrap();
        let one = squeezed_1d(&xi, 60).unwrap();
        for n in 0..=60usize {
            assert!((s.amplitude(n, 0) - one.coeffs()[n]).norm() < 1e-14);
        }
        for (n, m) in [(0usize, 1usize), (2, 2), (0, 4)] {
            assert_eq!(s.amplitude(n, m), ZERO);
        }
        assert!(matches!(
            squeezed_vacuum_exponential(&spec(ZERO, 1.5, 0.0), &ModePair::x_only(), 20),
            Err(Error::Convergence { .. })
        ));
    }

    #[test]
    fn eigen_residual_2d_small() {
        let sp = spec(c(1.0, 0.0), 0.5, 0.0);
        let modes = ModePair::tilted_real();
        let s = squeezed_2d(&sp, &modes, 60, None).unwrap();
        let r = eigen_residual_2d(&s, sp.canonical_z(), sp.canonical_gamma(), &modes);
        assert!(r <= 1e-6, "{r}");
    }
}
