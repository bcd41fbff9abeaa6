//! JSON state files.
//!
//! ```json
//! { "kind": "fock2d", "cutoff": 2, "coeffs": [[1.0, 0.0], [0.0, 0.0], ...],
//!   "construction": { "name": "su2_coherent", ... }, "unnormalized": false, "leakage": 0.0 }
//! ```
//!
//! Coefficients are in canonical index order. Floats are written in the
//! shortest form that parses back to the identical `f64`.

use std::fs;
use std::path::Path;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::{Construction, FockState, StateMeta, StateVector1D, StateVector2D};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Fock1d,
    Fock2d,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub kind: StateKind,
    pub cutoff: usize,
    pub coeffs: Vec<C64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<Construction>,
    #[serde(default)]
    pub unnormalized: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prior_norm: Option<f64>,
    #[serde(default)]
    pub leakage: f64,
    /// Resolved command-line configuration that produced the file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<serde_json::Value>,
}

/// Either dimensionality, as read back from a file.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyState {
    OneD(StateVector1D),
    TwoD(StateVector2D),
}

impl AnyState {
    pub fn meta(&self) -> &StateMeta {
        match self {
            AnyState::OneD(s) => s.meta(),
            AnyState::TwoD(s) => s.meta(),
        }
    }

    /// 1D states are embedded as `|n> (x) |0>_y`.
    pub fn into_2d(self) -> StateVector2D {
        match self {
            AnyState::OneD(s) => s.embed_x(),
            AnyState::TwoD(s) => s,
        }
    }
}

impl From<StateVector1D> for AnyState {
    fn from(s: StateVector1D) -> Self {
        AnyState::OneD(s)
    }
}

impl From<StateVector2D> for AnyState {
    fn from(s: StateVector2D) -> Self {
        AnyState::TwoD(s)
    }
}

impl StateFile {
    pub fn from_state(state: &AnyState) -> Self {
        let (kind, cutoff, coeffs, meta) = match state {
            AnyState::OneD(s) => (StateKind::Fock1d, s.cutoff(), s.coeffs().to_vec(), s.meta()),
            AnyState::TwoD(s) => (StateKind::Fock2d, s.cutoff(), s.coeffs().to_vec(), s.meta()),
        };
        Self {
            kind,
            cutoff,
            coeffs,
            construction: meta.construction.clone(),
            unnormalized: meta.unnormalized,
            prior_norm: meta.prior_norm,
            leakage: meta.leakage,
            config: None,
        }
    }

    pub fn into_state(self) -> Result<AnyState> {
        let meta = StateMeta {
            construction: self.construction,
            unnormalized: self.unnormalized,
            prior_norm: self.prior_norm,
            leakage: self.leakage,
        };
        Ok(match self.kind {
            StateKind::Fock1d => {
                if self.coeffs.len() != self.cutoff + 1 {
                    return Err(crate::Error::Dimension(format!(
                        "fock1d cutoff {} needs {} coefficients, got {}",
                        self.cutoff,
                        self.cutoff + 1,
                        self.coeffs.len()
                    )));
                }
                AnyState::OneD(StateVector1D::new(self.coeffs)?.with_meta(meta))
            }
            StateKind::Fock2d => {
                AnyState::TwoD(StateVector2D::new(self.cutoff, self.coeffs)?.with_meta(meta))
            }
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }
}
