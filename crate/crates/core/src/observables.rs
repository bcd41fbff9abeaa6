//! Quadrature variances, the closed-form dispersions they are checked
//! against, and the Schmidt decomposition across the x/y split.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{basis_pairs, FockState, ModePair, SqueezeSpec, StateVector1D, StateVector2D};
use crate::operators::{apply_ladder_sum, OperatorId};

/// A state whose squared norm is further than this from one needs an
/// explicit override before its variances are taken.
pub const VARIANCE_NORM_TOL: f64 = 1e-8;

/// Singular values at or below this (relative to the state norm) do not
/// count towards the Schmidt rank.
pub const SCHMIDT_RANK_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quadrature {
    X,
    Px,
    Y,
    Py,
}

impl Quadrature {
    pub const ALL: [Quadrature; 4] = [Quadrature::X, Quadrature::Px, Quadrature::Y, Quadrature::Py];

    fn operator(self) -> OperatorId {
        match self {
            Quadrature::X => OperatorId::X,
            Quadrature::Px => OperatorId::Px,
            Quadrature::Y => OperatorId::Y,
            Quadrature::Py => OperatorId::Py,
        }
    }
}

impl fmt::Display for Quadrature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.operator().label())
    }
}

impl FromStr for Quadrature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" | "x" => Ok(Quadrature::X),
            "Px" | "px" => Ok(Quadrature::Px),
            "Y" | "y" => Ok(Quadrature::Y),
            "Py" | "py" => Ok(Quadrature::Py),
            other => Err(Error::Usage(format!("unknown quadrature {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Variance {
    pub mean: f64,
    pub variance: f64,
    /// Squared norm of `O s` above the cutoff. It is included in `<O^2>`.
    pub leakage: f64,
}

fn check_norm<S: FockState>(state: &S, allow_unnormalized: bool) -> Result<f64> {
    let n2 = state.norm_sqr();
    if allow_unnormalized {
        if !(n2 > 0.0 && n2.is_finite()) {
            return Err(Error::Degenerate(format!("state has squared norm {n2}")));
        }
        return Ok(n2);
    }
    if state.meta().unnormalized {
        return Err(Error::Usage(
            "state is flagged unnormalized (truncated sum); pass the override to use it anyway".into(),
        ));
    }
    if (n2 - 1.0).abs() > VARIANCE_NORM_TOL {
        return Err(Error::Usage(format!(
            "state has squared norm {n2}, not 1; normalize it or pass the override"
        )));
    }
    Ok(n2)
}

/// `<O^2> - <O>^2` for a Hermitian quadrature.
///
/// `<O^2>` is taken as `||O s||^2`, counting the part of `O s` that lands
/// above the cutoff, so only one operator application is needed. Both
/// moments are divided by `||s||^2`.
pub fn variance_numeric(state: &StateVector2D, q: Quadrature, allow_unnormalized: bool) -> Result<Variance> {
    let n2 = check_norm(state, allow_unnormalized)?;
    let terms = q.operator().terms(None)?;
    let applied = apply_ladder_sum(&terms, state);
    let mean: C64 = state
        .coeffs()
        .iter()
        .zip(applied.state.coeffs())
        .map(|(a, b)| a.conj() * b)
        .sum();
    let mean = mean.re / n2;
    let second = (applied.state.norm_sqr() + applied.leakage) / n2;
    Ok(Variance {
        mean,
        variance: (second - mean * mean).max(0.0),
        leakage: applied.leakage,
    })
}

/// 1D variance of `X` or `Px` (`Y`, `Py` are zero-point values here).
pub fn variance_numeric_1d(state: &StateVector1D, q: Quadrature, allow_unnormalized: bool) -> Result<Variance> {
    check_norm(state, allow_unnormalized)?;
    let mut embedded = state.embed_x();
    if allow_unnormalized {
        let mut m = embedded.meta().clone();
        m.unnormalized = false;
        embedded = embedded.with_meta(m);
    }
    variance_numeric(&embedded, q, true)
}

/// `(var X, var P)` for the 1D squeezed state:
///
/// ```text
/// var X = 1/2 + sinh^2 r + cos(theta) cosh r sinh r
/// var P = 1/2 + sinh^2 r - cos(theta) cosh r sinh r
/// ```
pub fn dispersion_1d_analytic(spec: &SqueezeSpec) -> (f64, f64) {
    let r = spec.squeeze_modulus();
    let (s, c) = (r.sinh(), r.cosh());
    let cross = spec.squeeze_phase().cos() * c * s;
    (0.5 + s * s + cross, 0.5 + s * s - cross)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DispersionReport {
    pub var_x: f64,
    pub var_px: f64,
    pub var_y: f64,
    pub var_py: f64,
    /// `dX dPx`
    pub product_x: f64,
    /// `dY dPy`
    pub product_y: f64,
    /// Largest weight pushed past the cutoff by any of the four quadratures.
    pub leakage: f64,
}

impl DispersionReport {
    fn from_variances(var_x: f64, var_px: f64, var_y: f64, var_py: f64, leakage: f64) -> Self {
        Self {
            var_x,
            var_px,
            var_y,
            var_py,
            product_x: (var_x * var_px).sqrt(),
            product_y: (var_y * var_py).sqrt(),
            leakage,
        }
    }

    pub fn max_abs_diff(&self, other: &DispersionReport) -> f64 {
        [
            self.var_x - other.var_x,
            self.var_px - other.var_px,
            self.var_y - other.var_y,
            self.var_py - other.var_py,
        ]
        .iter()
        .fold(0.0f64, |m, d| m.max(d.abs()))
    }
}

/// Dispersions of the 2D squeezed states in the mode pair `(alpha, beta)`:
///
/// ```text
/// var X  = 1/2 + |alpha|^2 sinh^2 R + Re(e^{i Theta} alpha^2) sinh R cosh R
/// var Px = 1/2 + |alpha|^2 sinh^2 R - Re(e^{i Theta} alpha^2) sinh R cosh R
/// ```
///
/// and the same with `beta` for `y`. Displacement does not enter.
pub fn dispersion_2d_analytic(xi: &SqueezeSpec, modes: &ModePair) -> DispersionReport {
    let r = xi.squeeze_modulus();
    let (s, c) = (r.sinh(), r.cosh());
    let e = C64::from_polar(1.0, xi.squeeze_phase());
    let pair = |w: C64| {
        let base = 0.5 + w.norm_sqr() * s * s;
        let cross = (e * w * w).re * s * c;
        (base + cross, base - cross)
    };
    let (vx, vpx) = pair(modes.alpha());
    let (vy, vpy) = pair(modes.beta());
    DispersionReport::from_variances(vx, vpx, vy, vpy, 0.0)
}

/// All four numeric variances and the two uncertainty products.
pub fn uncertainty_products(state: &StateVector2D, allow_unnormalized: bool) -> Result<DispersionReport> {
    let v: Vec<Variance> = Quadrature::ALL
        .iter()
        .map(|&q| variance_numeric(state, q, allow_unnormalized))
        .collect::<Result<_>>()?;
    let leak = v.iter().fold(0.0f64, |m, x| m.max(x.leakage));
    Ok(DispersionReport::from_variances(
        v[0].variance,
        v[1].variance,
        v[2].variance,
        v[3].variance,
        leak,
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchmidtReport {
    pub rank: usize,
    /// `-sum p_k ln p_k` with `p_k = sigma_k^2 / ||s||^2`.
    pub entropy: f64,
    /// Descending.
    pub singular_values: Vec<f64>,
}

/// Schmidt decomposition of the amplitude matrix `c[n][m]`.
pub fn schmidt_analysis(state: &StateVector2D) -> Result<SchmidtReport> {
    let side = state.cutoff() + 1;
    let mut m = DMatrix::<C64>::zeros(side, side);
    for (k, n, mm) in basis_pairs(state.cutoff()) {
        m[(n, mm)] = state.coeffs()[k];
    }
    let norm = state.norm();
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::Degenerate("Schmidt analysis of a zero state".into()));
    }
    let mut sv: Vec<f64> = m.svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let rank = sv.iter().filter(|&&s| s / norm > SCHMIDT_RANK_TOL).count();
    let entropy = sv
        .iter()
        .map(|s| (s / norm).powi(2))
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.ln())
        .sum::<f64>()
        .max(0.0);
    Ok(SchmidtReport {
        rank,
        entropy,
        singular_values: sv,
    })
}
