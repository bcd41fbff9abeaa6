use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `|alpha|^2 + |beta|^2 = 1`.
pub const MODE_NORM_TOL: f64 = 1e-12;

/// Complex weights `(alpha, beta)` of the generalized ladder operators
/// `A+ = alpha a_x+ + beta a_y+` and `A- = conj(alpha) a_x- + conj(beta) a_y-`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModePair {
    alpha: C64,
    beta: C64,
}

impl ModePair {
    pub fn new(alpha: C64, beta: C64) -> Result<Self> {
        let w = alpha.norm_sqr() + beta.norm_sqr();
        if !w.is_finite() || (w - 1.0).abs() > MODE_NORM_TOL {
            return Err(Error::ParameterDomain(format!(
                "mode pair must satisfy |alpha|^2 + |beta|^2 = 1, got {w}"
            )));
        }
        Ok(Self { alpha, beta })
    }

    /// Rescales `(alpha, beta)` onto the unit sphere. Returns the pair and
    /// the factor that was applied.
    pub fn normalized(alpha: C64, beta: C64) -> Result<(Self, f64)> {
        let w = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::ParameterDomain(
                "mode pair (0, 0) cannot be normalized".into(),
            ));
        }
        let f = 1.0 / w;
        Ok((
            Self {
                alpha: alpha * f,
                beta: beta * f,
            },
            f,
        ))
    }

    pub fn from_polar(alpha_mod: f64, alpha_arg: f64, beta_mod: f64, beta_arg: f64) -> Result<Self> {
        Self::new(
            C64::from_polar(alpha_mod, alpha_arg),
            C64::from_polar(beta_mod, beta_arg),
        )
    }

    pub fn alpha(&self) -> C64 {
        self.alpha
    }

    pub fn beta(&self) -> C64 {
        self.beta
    }

    /// `alpha = 1, beta = 0`: the generalized operators reduce to the x ladder.
    pub fn x_only() -> Self {
        Self {
            alpha: C64::new(1.0, 0.0),
            beta: C64::new(0.0, 0.0),
        }
    }

    /// `(beta, alpha)`, the same construction with x and y exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.alpha,
        }
    }

    /// `(conj(beta), -conj(alpha))`, whose SU(2) states are orthogonal to ours.
    pub fn orthogonal(&self) -> Self {
        Self {
            alpha: self.beta.conj(),
            beta: -self.alpha.conj(),
        }
    }

    /// `alpha = (sqrt(3)/2) e^{i pi/2}, beta = 1/2`.
    pub fn tilted_complex() -> Self {
        Self {
            alpha: C64::from_polar(3f64.sqrt() / 2.0, FRAC_PI_2),
            beta: C64::new(0.5, 0.0),
        }
    }

    /// `alpha = sqrt(3)/2, beta = 1/2`.
    pub fn tilted_real() -> Self {
        Self {
            alpha: C64::new(3f64.sqrt() / 2.0, 0.0),
            beta: C64::new(0.5, 0.0),
        }
    }
}

/// Displacement and squeeze parameters together with the canonical pair
/// `(z, gamma)` of the Fock-space expansion:
///
/// ```text
/// gamma = -e^{i theta} tanh r
/// z     = psi - conj(psi) e^{i theta} tanh r
/// ```
///
/// The same type carries the 2D parameters `(Psi, R, Theta, Z, Gamma)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SqueezeSpec {
    displacement: C64,
    squeeze_modulus: f64,
    squeeze_phase: f64,
    canonical_z: C64,
    canonical_gamma: C64,
}

impl SqueezeSpec {
    pub fn new(displacement: C64, squeeze_modulus: f64, squeeze_phase: f64) -> Result<Self> {
        if !(squeeze_modulus.is_finite() && squeeze_modulus >= 0.0) {
            return Err(Error::ParameterDomain(format!(
                "squeeze modulus must be finite and >= 0, got {squeeze_modulus}"
            )));
        }
        if !squeeze_phase.is_finite() || !displacement.re.is_finite() || !displacement.im.is_finite() {
            return Err(Error::ParameterDomain("non-finite squeeze parameters".into()));
        }
        let phase = squeeze_phase.rem_euclid(TAU);
        // rem_euclid can round up to exactly TAU
        let phase = if phase >= TAU { 0.0 } else { phase };
        let t = C64::from_polar(squeeze_modulus.tanh(), phase);
        let canonical_gamma = -t;
        if canonical_gamma.norm() >= 1.0 {
            return Err(Error::ParameterDomain(format!(
                "tanh modulus must be < 1 (r = {squeeze_modulus} saturates tanh in double precision)"
            )));
        }
        Ok(Self {
            displacement,
            squeeze_modulus,
            squeeze_phase: phase,
            canonical_z: displacement - displacement.conj() * t,
            canonical_gamma,
        })
    }

    /// Pure squeezing, no displacement.
    pub fn vacuum(squeeze_modulus: f64, squeeze_phase: f64) -> Result<Self> {
        Self::new(C64::new(0.0, 0.0), squeeze_modulus, squeeze_phase)
    }

    pub fn displacement(&self) -> C64 {
        self.displacement
    }

    pub fn squeeze_modulus(&self) -> f64 {
        self.squeeze_modulus
    }

    pub fn squeeze_phase(&self) -> f64 {
        self.squeeze_phase
    }

    /// `xi = r e^{i theta}`.
    pub fn squeeze(&self) -> C64 {
        C64::from_polar(self.squeeze_modulus, self.squeeze_phase)
    }

    pub fn canonical_z(&self) -> C64 {
        self.canonical_z
    }

    pub fn canonical_gamma(&self) -> C64 {
        self.canonical_gamma
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mode_pair_validation() {
        assert!(ModePair::new(C64::new(0.866, 0.0), C64::new(0.5, 0.0)).is_err());
        let (m, f) = ModePair::normalized(C64::new(0.8660, 0.0), C64::new(0.5, 0.0)).unwrap();
        assert!((f - 1.0 / (0.866f64.powi(2) + 0.25).sqrt()).abs() < 1e-15);
        assert!((m.alpha().norm_sqr() + m.beta().norm_sqr() - 1.0).abs() < 1e-15);
        assert!(ModePair::normalized(C64::new(0.0, 0.0), C64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn tilted_pairs_are_normalized() {
        for m in [ModePair::tilted_complex(), ModePair::tilted_real()] {
            assert!(ModePair::new(m.alpha(), m.beta()).is_ok());
        }
        let l = ModePair::tilted_complex();
        assert!((l.alpha() - C64::new(0.0, 3f64.sqrt() / 2.0)).norm() < 1e-15);
    }

    #[test]
    fn canonical_pair_relations() {
        let s = SqueezeSpec::new(C64::new(1.0, 0.5), 0.7, 1.1).unwrap();
        let e = C64::from_polar(1.0, 1.1);
        let g = -e * 0.7f64.tanh();
        assert!((s.canonical_gamma() - g).norm() < 1e-15);
        let z = C64::new(1.0, 0.5) - C64::new(1.0, -0.5) * e * 0.7f64.tanh();
        assert!((s.canonical_z() - z).norm() < 1e-15);
        assert!(s.canonical_gamma().norm() < 1.0);
    }

    #[test]
    fn phase_wraps_into_range() {
        let s = SqueezeSpec::vacuum(0.1, -FRAC_PI_2).unwrap();
        assert!((s.squeeze_phase() - 3.0 * FRAC_PI_2).abs() < 1e-12);
        let s = SqueezeSpec::vacuum(0.1, TAU).unwrap();
        assert_eq!(s.squeeze_phase(), 0.0);
    }

    #[test]
    fn rejects_bad_modulus() {
        assert!(SqueezeSpec::vacuum(-0.1, 0.0).is_err());
        assert!(SqueezeSpec::vacuum(f64::NAN, 0.0).is_err());
        // tanh(40) == 1.0 in double precision
        assert!(SqueezeSpec::vacuum(40.0, 0.0).is_err());
        assert!(SqueezeSpec::vacuum(10.0, 0.0).is_ok());
    }
}
