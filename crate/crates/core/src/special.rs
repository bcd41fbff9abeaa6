//! Hermite polynomials with complex argument and oscillator eigenfunctions.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// `H_0(x) ..= H_order(x)` (physicists' convention) at a fixed argument.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteSequence {
    argument: C64,
    values: Vec<C64>,
}

impl HermiteSequence {
    pub fn new(order: usize, x: C64) -> Self {
        let mut values = Vec::with_capacity(order + 1);
        values.push(C64::new(1.0, 0.0));
        if order >= 1 {
            values.push(2.0 * x);
        }
        for k in 1..order {
            let next = 2.0 * x * values[k] - 2.0 * k as f64 * values[k - 1];
            values.push(next);
        }
        Self { argument: x, values }
    }

    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn argument(&self) -> C64 {
        self.argument
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }
}

/// `H_order(x)` by the three-term recurrence. Overflows to infinity at high
/// order; use [`squeeze_terms`] for the weighted combination.
pub fn hermite_eval(order: usize, x: C64) -> C64 {
    let mut prev = C64::new(0.0, 0.0);
    let mut cur = C64::new(1.0, 0.0);
    for k in 0..order {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn check_gamma(gamma: C64) -> Result<()> {
    if !(gamma.norm() < 1.0) {
        return Err(Error::ParameterDomain(format!(
            "tanh modulus must be < 1, got |gamma| = {}",
            gamma.norm()
        )));
    }
    Ok(())
}

/// Expansion terms `t_k = (gamma/2)^{k/2} H_k(z / sqrt(2 gamma)) / sqrt(k!)`
/// for `k = 0..=max_order`.
///
/// The three factors are never formed separately. Substituting the Hermite
/// recurrence gives
///
/// ```text
/// t_0 = 1,  t_1 = z,
/// t_{k+1} = (z t_k - gamma sqrt(k) t_{k-1}) / sqrt(k + 1)
/// ```
///
/// which contains no square root of `gamma`, so the result does not depend on
/// a branch choice and `gamma = 0` yields `z^k / sqrt(k!)` directly.
pub fn squeeze_terms(max_order: usize, z: C64, gamma: C64) -> Result<Vec<C64>> {
    check_gamma(gamma)?;
    let mut t = Vec::with_capacity(max_order + 1);
    t.push(C64::new(1.0, 0.0));
    if max_order >= 1 {
        t.push(z);
    }
    for k in 1..max_order {
        let kf = k as f64;
        let next = (z * t[k] - gamma * kf.sqrt() * t[k - 1]) / (kf + 1.0).sqrt();
        t.push(next);
    }
    Ok(t)
}

/// A single term of [`squeeze_terms`].
pub fn squeeze_term(order: usize, z: C64, gamma: C64) -> Result<C64> {
    check_gamma(gamma)?;
    let mut prev = C64::new(0.0, 0.0);
    let mut cur = C64::new(1.0, 0.0);
    for k in 0..order {
        let kf = k as f64;
        let next = (z * cur - gamma * kf.sqrt() * prev) / (kf + 1.0).sqrt();
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

const RESCALE: f64 = 1e150;

/// `psi_0(x) ..= psi_max_n(x)`, the normalized oscillator eigenfunctions.
///
/// Uses the normalized recurrence
/// `psi_{k+1} = x sqrt(2/(k+1)) psi_k - sqrt(k/(k+1)) psi_{k-1}` on an
/// unscaled seed, carrying the Gaussian factor as a log-scale so that high
/// orders far from the origin do not lose everything to underflow of
/// `exp(-x^2/2)`.
pub fn oscillator_eigenfunctions(max_n: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(max_n + 1);
    let mut log_scale = -0.5 * x * x - 0.25 * PI.ln();
    let mut prev = 0.0f64;
    let mut cur = 1.0f64;
    out.push(log_scale.exp());
    for k in 0..max_n {
        let kf = k as f64;
        let mut next = x * (2.0 / (kf + 1.0)).sqrt() * cur - (kf / (kf + 1.0)).sqrt() * prev;
        if next.abs() > RESCALE {
            next /= RESCALE;
            cur /= RESCALE;
            log_scale += RESCALE.ln();
        }
        out.push(next * log_scale.exp());
        prev = cur;
        cur = next;
    }
    out
}

/// `psi_n(x) = (2^n n!)^{-1/2} pi^{-1/4} e^{-x^2/2} H_n(x)`.
pub fn oscillator_eigenfunction(n: usize, x: f64) -> f64 {
    oscillator_eigenfunctions(n, x)[n]
}
