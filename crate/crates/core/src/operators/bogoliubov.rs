//! Numerical check of the Bogoliubov transformation induced by the 2D
//! squeeze operator `S(Xi) = exp((Xi A+^2 - conj(Xi) A-^2) / 2)`:
//!
//! ```text
//! S^dag a_x- S = (|beta|^2 + |alpha|^2 cosh R) a_x- + alpha conj(beta) (cosh R - 1) a_y-
//!              + e^{i Theta} sinh R (alpha^2 a_x+ + alpha beta a_y+)
//! ```
//!
//! and its adjoint for `a_x+`. Only the columns of `S` for basis states with
//! `nu <= cutoff / 2` are computed (by the action of the exponential on unit
//! vectors), and residuals are taken over that insulated block.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;

use super::{expm_action, ladder_sum_matrix, squeeze_generator, Axis, Direction, SparseOperator};
use crate::error::{Error, Result};
use crate::fock::{dim_2d, ModePair, SqueezeSpec};

const RESIDUAL_FLOOR: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BogoliubovReport {
    pub cutoff: usize,
    /// Largest total quanta in the insulated block.
    pub insulated_nu: usize,
    /// `max |S^dag a_x- S - rhs|` over the insulated block.
    pub annihilation_residual: f64,
    /// Same for `a_x+` against the adjoint right-hand side.
    pub creation_residual: f64,
    /// `max |S^dag S - I|` over the insulated block.
    pub unitarity_residual: f64,
}

impl BogoliubovReport {
    pub fn max_residual(&self) -> f64 {
        self.annihilation_residual.max(self.creation_residual)
    }
}

/// Smallest cutoff accepted for squeeze modulus `r`. Pair amplitudes in the
/// squeezed image of a basis state fall off like `tanh(r)^k`, and the
/// block above `cutoff / 2` must hold about `ln(1e-12) / ln(tanh r)` pairs
/// plus a margin. The Bosonic `sqrt(n)` growth eats part of that, so this
/// is a floor and the achieved residual is measured, not promised (about
/// `2e-6` for a pure x squeeze at `r = 0.2`, cutoff 60).
pub fn min_bogoliubov_cutoff(r: f64) -> usize {
    let t = r.tanh();
    let pairs = if t <= 0.0 {
        0.0
    } else {
        (RESIDUAL_FLOOR.ln() / t.ln()).ceil()
    };
    2 * (pairs as usize + 10)
}

/// `(|beta|^2 + |alpha|^2 C) a_x- + alpha conj(beta) (C - 1) a_y- + e^{i Theta} s (alpha^2 a_x+ + alpha beta a_y+)`.
fn predicted_annihilation(modes: &ModePair, xi: &SqueezeSpec, cutoff: usize) -> SparseOperator {
    let (a, b) = (modes.alpha(), modes.beta());
    let r = xi.squeeze_modulus();
    let (ch, sh) = (r.cosh(), r.sinh());
    let e = C64::from_polar(1.0, xi.squeeze_phase());
    let terms = [
        (C64::from(b.norm_sqr() + a.norm_sqr() * ch), Axis::X, Direction::Lower),
        (a * b.conj() * (ch - 1.0), Axis::Y, Direction::Lower),
        (e * sh * a * a, Axis::X, Direction::Raise),
        (e * sh * a * b, Axis::Y, Direction::Raise),
    ];
    ladder_sum_matrix(&terms, cutoff)
}

pub fn bogoliubov_check(modes: &ModePair, xi: &SqueezeSpec, cutoff: usize) -> Result<BogoliubovReport> {
    let r = xi.squeeze_modulus();
    if r > 1.0 {
        return Err(Error::ParameterDomain(format!(
            "Bogoliubov check supports R <= 1, got R = {r}"
        )));
    }
    let needed = min_bogoliubov_cutoff(r);
    if cutoff < needed {
        return Err(Error::Convergence {
            message: format!("cutoff {cutoff} does not insulate nu <= {} at R = {r}", cutoff / 2),
            suggested_cutoff: needed,
        });
    }

    let insulated_nu = cutoff / 2;
    let cols = dim_2d(insulated_nu);
    let dim = dim_2d(cutoff);
    let g = squeeze_generator(xi.squeeze(), modes, cutoff);

    // columns S e_k for the insulated block
    let s_cols: Vec<Vec<C64>> = (0..cols)
        .into_par_iter()
        .map(|k| {
            let mut e = vec![C64::new(0.0, 0.0); dim];
            e[k] = C64::new(1.0, 0.0);
            expm_action(&g, &e)
        })
        .collect::<Result<_>>()?;

    let lower = ladder_sum_matrix(&[(C64::new(1.0, 0.0), Axis::X, Direction::Lower)], cutoff);
    let rhs = predicted_annihilation(modes, xi, cutoff);

    let p = DMatrix::from_fn(dim, cols, |i, k| s_cols[k][i]);
    let mut ap = DMatrix::zeros(dim, cols);
    for k in 0..cols {
        ap.set_column(k, &DVector::from_vec(lower.matvec(&s_cols[k])));
    }
    drop(s_cols);
    let ph = p.adjoint();
    // <S e_j | a_x- S e_k>; the a_x+ block is its adjoint
    let ann = &ph * &ap;
    let gram = &ph * &p;

    let mut target = DMatrix::<C64>::zeros(cols, cols);
    for (r, c, v) in rhs.triplets() {
        if r < cols && c < cols {
            target[(r, c)] = v;
        }
    }
    let ann_dev = &ann - &target;
    let cre_dev = ann.adjoint() - target.adjoint();
    let max_abs = |m: &DMatrix<C64>| m.iter().fold(0.0f64, |a, x| a.max(x.norm()));
    let uni = max_abs(&(gram - DMatrix::<C64>::identity(cols, cols)));

    Ok(BogoliubovReport {
        cutoff,
        insulated_nu,
        annihilation_residual: max_abs(&ann_dev),
        creation_residual: max_abs(&cre_dev),
        unitarity_residual: uni,
    })
}
