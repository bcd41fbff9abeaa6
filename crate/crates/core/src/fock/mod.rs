//! Truncated Fock-space states of the 1D and 2D isotropic oscillator.

mod index;
pub mod json;
mod params;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use index::{basis_pairs, block_start, decode_index, dim_2d, encode_index};
pub(crate) use index::index_of;
pub use params::{ModePair, SqueezeSpec, MODE_NORM_TOL};
pub use json::{AnyState, StateFile, StateKind};

/// A state is considered normalized when its norm is within this of one.
pub const NORMALIZED_TOL: f64 = 1e-12;

/// How a state was produced. Serialized alongside the amplitudes so that a
/// state file can be checked against closed-form predictions later.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Construction {
    Coherent1d {
        z: C64,
    },
    Squeezed1d {
        displacement: C64,
        r: f64,
        theta: f64,
    },
    Su2Coherent {
        nu: usize,
        alpha: C64,
        beta: C64,
    },
    Squeezed2d {
        displacement: C64,
        r: f64,
        theta: f64,
        alpha: C64,
        beta: C64,
        terms: Option<usize>,
    },
    SqueezedVacuum {
        r: f64,
        theta: f64,
        alpha: C64,
        beta: C64,
    },
    /// `D(psi) S(xi) |0>` built from operator exponentials.
    OperatorBuilt {
        displacement: C64,
        r: f64,
        theta: f64,
        modes: Option<ModePair>,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StateMeta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<Construction>,
    /// Set on deliberately truncated sums whose norm is below one.
    #[serde(default)]
    pub unnormalized: bool,
    /// Norm before the last call to [`FockState::normalize`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prior_norm: Option<f64>,
    /// Probability weight dropped by truncation while building the state.
    #[serde(default)]
    pub leakage: f64,
}

/// Behaviour shared by the 1D and 2D state vectors.
pub trait FockState: Sized {
    fn amplitudes(&self) -> &[C64];
    fn meta(&self) -> &StateMeta;
    fn cutoff(&self) -> usize;
    /// Same basis, new amplitudes and metadata.
    fn rebuild(&self, coeffs: Vec<C64>, meta: StateMeta) -> Self;

    fn norm_sqr(&self) -> f64 {
        self.amplitudes().iter().map(|c| c.norm_sqr()).sum()
    }

    fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= NORMALIZED_TOL
    }

    /// Scales to unit norm and records the previous norm in the metadata.
    fn normalize(&self) -> Result<Self> {
        let n = self.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::Degenerate(format!("cannot normalize a state of norm {n}")));
        }
        let coeffs = self.amplitudes().iter().map(|c| c / n).collect();
        let mut meta = self.meta().clone();
        meta.prior_norm = Some(n);
        meta.unnormalized = false;
        Ok(self.rebuild(coeffs, meta))
    }
}

/// `sum_k conj(a_k) b_k`.
pub fn inner_product<S: FockState>(a: &S, b: &S) -> Result<C64> {
    if a.cutoff() != b.cutoff() {
        return Err(Error::Dimension(format!(
            "inner product of states with cutoffs {} and {}",
            a.cutoff(),
            b.cutoff()
        )));
    }
    Ok(a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// Amplitudes over `|n>`, `n = 0..=cutoff`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector1D {
    coeffs: Vec<C64>,
    meta: StateMeta,
}

impl StateVector1D {
    pub fn new(coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Dimension("a 1D state needs at least one amplitude".into()));
        }
        Ok(Self {
            coeffs,
            meta: StateMeta::default(),
        })
    }

    pub fn zeros(cutoff: usize) -> Self {
        Self {
            coeffs: vec![C64::new(0.0, 0.0); cutoff + 1],
            meta: StateMeta::default(),
        }
    }

    /// The Fock state `|n>`.
    pub fn basis(n: usize, cutoff: usize) -> Result<Self> {
        if n > cutoff {
            return Err(Error::Domain(format!("level {n} exceeds cutoff {cutoff}")));
        }
        let mut s = Self::zeros(cutoff);
        s.coeffs[n] = C64::new(1.0, 0.0);
        Ok(s)
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn with_meta(mut self, meta: StateMeta) -> Self {
        self.meta = meta;
        self
    }

    pub fn into_coeffs(self) -> Vec<C64> {
        self.coeffs
    }

    /// Embeds into the 2D basis as `|n> (x) |0>_y`.
    pub fn embed_x(&self) -> StateVector2D {
        let cutoff = self.cutoff();
        let mut out = StateVector2D::zeros(cutoff);
        for (n, c) in self.coeffs.iter().enumerate() {
            out.coeffs[index_of(n, 0)] = *c;
        }
        out.meta = self.meta.clone();
        out
    }
}

impl FockState for StateVector1D {
    fn amplitudes(&self) -> &[C64] {
        &self.coeffs
    }
    fn meta(&self) -> &StateMeta {
        &self.meta
    }
    fn cutoff(&self) -> usize {
        self.coeffs.len() - 1
    }
    fn rebuild(&self, coeffs: Vec<C64>, meta: StateMeta) -> Self {
        debug_assert_eq!(coeffs.len(), self.coeffs.len());
        Self { coeffs, meta }
    }
}

/// Amplitudes over `|n, m>` with `n + m <= cutoff`, in canonical order
/// (see [`encode_index`]).
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector2D {
    cutoff: usize,
    coeffs: Vec<C64>,
    meta: StateMeta,
}

impl StateVector2D {
    pub fn new(cutoff: usize, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.len() != dim_2d(cutoff) {
            return Err(Error::Dimension(format!(
                "cutoff {cutoff} needs {} amplitudes, got {}",
                dim_2d(cutoff),
                coeffs.len()
            )));
        }
        Ok(Self {
            cutoff,
            coeffs,
            meta: StateMeta::default(),
        })
    }

    pub fn zeros(cutoff: usize) -> Self {
        Self {
            cutoff,
            coeffs: vec![C64::new(0.0, 0.0); dim_2d(cutoff)],
            meta: StateMeta::default(),
        }
    }

    /// The Fock state `|n, m>`.
    pub fn basis(n: usize, m: usize, cutoff: usize) -> Result<Self> {
        let k = encode_index(n, m, cutoff)?;
        let mut s = Self::zeros(cutoff);
        s.coeffs[k] = C64::new(1.0, 0.0);
        Ok(s)
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn with_meta(mut self, meta: StateMeta) -> Self {
        self.meta = meta;
        self
    }

    pub fn into_coeffs(self) -> Vec<C64> {
        self.coeffs
    }

    /// Amplitude of `|n, m>`; zero outside the truncated basis.
    pub fn amplitude(&self, n: usize, m: usize) -> C64 {
        if n + m > self.cutoff {
            C64::new(0.0, 0.0)
        } else {
            self.coeffs[index_of(n, m)]
        }
    }

    /// Amplitudes of the `nu` block, ordered by `n`.
    pub fn block(&self, nu: usize) -> &[C64] {
        if nu > self.cutoff {
            return &[];
        }
        &self.coeffs[block_start(nu)..block_start(nu + 1)]
    }

    /// `<n + m>` weighted by `|c|^2`, divided by the squared norm.
    pub fn mean_total_quanta(&self) -> f64 {
        let w = self.norm_sqr();
        if w == 0.0 {
            return 0.0;
        }
        (0..=self.cutoff)
            .map(|nu| nu as f64 * self.block(nu).iter().map(|c| c.norm_sqr()).sum::<f64>())
            .sum::<f64>()
            / w
    }
}

impl FockState for StateVector2D {
    fn amplitudes(&self) -> &[C64] {
        &self.coeffs
    }
    fn meta(&self) -> &StateMeta {
        &self.meta
    }
    fn cutoff(&self) -> usize {
        self.cutoff
    }
    fn rebuild(&self, coeffs: Vec<C64>, meta: StateMeta) -> Self {
        debug_assert_eq!(coeffs.len(), self.coeffs.len());
        Self {
            cutoff: self.cutoff,
            coeffs,
            meta,
        }
    }
}
