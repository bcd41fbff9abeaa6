use num_complex::Complex64 as C64;

use super::{OperatorMatrix, SparseOperator};
use crate::error::{Error, Result};

/// Dense `exp(m)` by scaling and squaring with Pade approximants
/// (nalgebra's implementation of the Al-Mohy & Higham selection).
pub fn matrix_exponential(m: &OperatorMatrix) -> Result<OperatorMatrix> {
    if m.entries().iter().any(|x| !(x.re.is_finite() && x.im.is_finite())) {
        return Err(Error::Numeric(format!("non-finite entries in {}", m.label())));
    }
    let e = m.entries().exp();
    if e.iter().any(|x| !(x.re.is_finite() && x.im.is_finite())) {
        return Err(Error::Numeric(format!("exp({}) overflowed", m.label())));
    }
    OperatorMatrix::new(e, m.cutoff(), m.space(), format!("exp({})", m.label()))
}

/// Norm budget per Taylor step.
const STEP_NORM: f64 = 1.0;
const MAX_TERMS: usize = 80;

/// `exp(op) v` without forming the exponential.
///
/// The operator is split into `s = ceil(||op||_1)` steps of norm at most one;
/// each step sums the Taylor series until two consecutive terms fall below
/// double-precision relative size.
pub fn expm_action(op: &SparseOperator, v: &[C64]) -> Result<Vec<C64>> {
    if v.len() != op.dim() {
        return Err(Error::Dimension(format!(
            "vector of length {} for operator of dimension {}",
            v.len(),
            op.dim()
        )));
    }
    let norm = op.one_norm();
    if !norm.is_finite() || v.iter().any(|x| !(x.re.is_finite() && x.im.is_finite())) {
        return Err(Error::Numeric("non-finite input to expm_action".into()));
    }
    let steps = ((norm / STEP_NORM).ceil() as usize).max(1);
    let scale = C64::new(1.0 / steps as f64, 0.0);
    let inf_norm = |x: &[C64]| x.iter().fold(0.0f64, |m, c| m.max(c.norm()));

    let mut w = v.to_vec();
    let mut term = vec![C64::new(0.0, 0.0); v.len()];
    let mut next = vec![C64::new(0.0, 0.0); v.len()];
    for _ in 0..steps {
        term.copy_from_slice(&w);
        let mut prev_small = false;
        let mut converged = false;
        for k in 1..=MAX_TERMS {
            op.matvec_into(&term, &mut next);
            let f = scale / k as f64;
            for (t, n) in term.iter_mut().zip(&next) {
                *t = n * f;
            }
            for (a, t) in w.iter_mut().zip(&term) {
                *a += t;
            }
            let small = inf_norm(&term) <= f64::EPSILON * 0.5 * inf_norm(&w);
            if small && prev_small {
                converged = true;
                break;
            }
            prev_small = small;
        }
        if !converged {
            return Err(Error::Numeric("Taylor series for exp action did not converge".into()));
        }
    }
    Ok(w)
}
