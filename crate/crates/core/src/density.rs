//! Position-space densities `|<x, y|s>|^2` on rectangular grids.

use std::io::Write;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{basis_pairs, FockState, StateVector2D};
use crate::special::oscillator_eigenfunctions;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Relative floor used when counting maxima by the acceptance checks.
pub const MAXIMA_FLOOR: f64 = 0.1;

/// `sum c_{n,m} psi_n(x) psi_m(y)`.
pub fn wavefunction_2d(state: &StateVector2D, x: f64, y: f64) -> C64 {
    let tx = oscillator_eigenfunctions(state.cutoff(), x);
    let ty = oscillator_eigenfunctions(state.cutoff(), y);
    basis_pairs(state.cutoff())
        .map(|(k, n, m)| state.coeffs()[k] * (tx[n] * ty[m]))
        .sum()
}

/// Density samples, row-major with `y` outer and `x` inner.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityGrid {
    pub x_axis: Vec<f64>,
    pub y_axis: Vec<f64>,
    pub values: Vec<f64>,
    /// Trapezoidal integral over the grid.
    pub mass: f64,
}

impl DensityGrid {
    pub fn nx(&self) -> usize {
        self.x_axis.len()
    }

    pub fn ny(&self) -> usize {
        self.y_axis.len()
    }

    /// Density at `(x_axis[i], y_axis[j])`.
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.nx() + i]
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// `x,y,density` rows in storage order.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "x,y,density")?;
        for (j, y) in self.y_axis.iter().enumerate() {
            for (i, x) in self.x_axis.iter().enumerate() {
                writeln!(w, "{x:.16e},{y:.16e},{:.16e}", self.value(i, j))?;
            }
        }
        Ok(())
    }
}

fn linspace(range: (f64, f64), n: usize) -> Vec<f64> {
    let step = (range.1 - range.0) / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { range.1 } else { range.0 + step * i as f64 })
        .collect()
}

fn trapezoid_weights(axis: &[f64]) -> Vec<f64> {
    let n = axis.len();
    (0..n)
        .map(|i| {
            let left = if i > 0 { axis[i] - axis[i - 1] } else { 0.0 };
            let right = if i + 1 < n { axis[i + 1] - axis[i] } else { 0.0 };
            0.5 * (left + right)
        })
        .collect()
}

/// Evaluates the density on an `nx x ny` grid. Per row, the sums
/// `b_n(y) = sum_m c_{n,m} psi_m(y)` are formed once and then contracted
/// against the `x` table, so the cost is `ny (cutoff^2 / 2 + nx cutoff)`.
pub fn density_grid(
    state: &StateVector2D,
    x_range: (f64, f64),
    y_range: (f64, f64),
    nx: usize,
    ny: usize,
) -> Result<DensityGrid> {
    if nx < 2 || ny < 2 {
        return Err(Error::Usage(format!("grid needs at least 2 x 2 points, got {nx} x {ny}")));
    }
    let finite = [x_range.0, x_range.1, y_range.0, y_range.1].iter().all(|v| v.is_finite());
    if !finite || x_range.0 >= x_range.1 || y_range.0 >= y_range.1 {
        return Err(Error::Usage(format!("bad grid ranges {x_range:?} x {y_range:?}")));
    }
    let cutoff = state.cutoff();
    let x_axis = linspace(x_range, nx);
    let y_axis = linspace(y_range, ny);
    let tx: Vec<Vec<f64>> = x_axis.par_iter().map(|&x| oscillator_eigenfunctions(cutoff, x)).collect();

    let rows: Vec<Vec<f64>> = y_axis
        .par_iter()
        .map(|&y| {
            let ty = oscillator_eigenfunctions(cutoff, y);
            let mut b = vec![ZERO; cutoff + 1];
            for (k, n, m) in basis_pairs(cutoff) {
                b[n] += state.coeffs()[k] * ty[m];
            }
            tx.iter()
                .map(|t| b.iter().zip(t).map(|(bn, pn)| bn * pn).sum::<C64>().norm_sqr())
                .collect()
        })
        .collect();
    let values: Vec<f64> = rows.into_iter().flatten().collect();

    let (wx, wy) = (trapezoid_weights(&x_axis), trapezoid_weights(&y_axis));
    let mut mass = 0.0;
    for (j, wyj) in wy.iter().enumerate() {
        for (i, wxi) in wx.iter().enumerate() {
            mass += wxi * wyj * values[j * nx + i];
        }
    }
    Ok(DensityGrid {
        x_axis,
        y_axis,
        values,
        mass,
    })
}

/// Half-width `sqrt(2 nu_bar) + 4` of a square window covering the classical
/// turning points plus Gaussian tails. `nu_bar` is taken relative to the
/// state's own norm.
pub fn default_half_width(state: &StateVector2D) -> f64 {
    (2.0 * state.mean_total_quanta()).sqrt() + 4.0
}

/// Grid points strictly greater than every one of their (up to eight)
/// neighbours and at least `floor` times the global maximum.
pub fn count_local_maxima(grid: &DensityGrid, floor: f64) -> usize {
    let (nx, ny) = (grid.nx(), grid.ny());
    let threshold = floor * grid.max_value();
    let mut count = 0;
    for j in 0..ny {
        for i in 0..nx {
            let v = grid.value(i, j);
            if v <= 0.0 || v < threshold {
                continue;
            }
            let mut is_max = true;
            'nb: for dj in -1i64..=1 {
                for di in -1i64..=1 {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let (ii, jj) = (i as i64 + di, j as i64 + dj);
                    if ii < 0 || jj < 0 || ii >= nx as i64 || jj >= ny as i64 {
                        continue;
                    }
                    if grid.value(ii as usize, jj as usize) >= v {
                        is_max = false;
                        break 'nb;
                    }
                }
            }
            if is_max {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{ModePair, SqueezeSpec};
    use crate::special::oscillator_eigenfunction;
    use crate::states::{squeezed_2d, squeezed_vacuum_exponential, su2_coherent, Su2CoherentSpec};
    use std::f64::consts::PI;

    #[test]
    fn wavefunction_examples() {
        let v = StateVector2D::basis(0, 0, 3).unwrap();
        let w = wavefunction_2d(&v, 0.0, 0.0);
        assert!((w.re - PI.powf(-0.5)).abs() < 1e-15 && (w.re - 0.5642).abs() < 1e-4);

        let s = StateVector2D::basis(1, 0, 3).unwrap();
        for y in [-1.3, 0.0, 2.2] {
            assert_eq!(wavefunction_2d(&s, 0.0, y).norm(), 0.0);
        }
        let s = su2_coherent(&Su2CoherentSpec::new(1, ModePair::x_only()), 4).unwrap();
        let e = oscillator_eigenfunction(1, 1.0) * oscillator_eigenfunction(0, 0.0);
        assert!((wavefunction_2d(&s, 1.0, 0.0).re - e).abs() < 1e-15);
    }

    #[test]
    fn grid_matches_pointwise_evaluation() {
        let modes = ModePair::tilted_complex();
        let s = squeezed_2d(&SqueezeSpec::new(C64::new(0.5, 0.2), 0.3, 0.4).unwrap(), &modes, 40, None).unwrap();
        let g = density_grid(&s, (-3.0, 2.0), (-1.0, 4.0), 7, 5).unwrap();
        for j in 0..5 {
            for i in 0..7 {
                let w = wavefunction_2d(&s, g.x_axis[i], g.y_axis[j]).norm_sqr();
                assert!((g.value(i, j) - w).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn vacuum_grid() {
        let v = StateVector2D::basis(0, 0, 4).unwrap();
        let g = density_grid(&v, (-5.0, 5.0), (-5.0, 5.0), 101, 101).unwrap();
        assert!((g.mass - 1.0).abs() < 1e-6, "{}", g.mass);
        assert_eq!(count_local_maxima(&g, MAXIMA_FLOOR), 1);
        assert_eq!(g.value(50, 50), g.max_value());
        assert!(g.values.iter().all(|v| *v >= 0.0));
    }

    #[test]
    fn mass_converges_under_refinement() {
        let s = su2_coherent(&Su2CoherentSpec::new(6, ModePair::tilted_real()), 10).unwrap();
        let w = default_half_width(&s);
        let coarse = density_grid(&s, (-w, w), (-w, w), 121, 121).unwrap();
        let fine = density_grid(&s, (-w, w), (-w, w), 241, 241).unwrap();
        assert!((coarse.mass - fine.mass).abs() < 1e-4);
        assert!((fine.mass - 1.0).abs() < 1e-4);
    }

    #[test]
    fn inversion_symmetry_for_real_modes() {
        let xi = SqueezeSpec::vacuum(0.5, 0.0).unwrap();
        let s = squeezed_vacuum_exponential(&xi, &ModePair::tilted_real(), 40).unwrap();
        let g = density_grid(&s, (-4.0, 4.0), (-3.0, 3.0), 41, 31).unwrap();
        for j in 0..31 {
            for i in 0..41 {
                assert!((g.value(i, j) - g.value(40 - i, 30 - j)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn truncated_state_integrates_to_its_norm() {
        let sp = SqueezeSpec::new(C64::new(1.0, 0.0), 0.8, 0.0).unwrap();
        let s = squeezed_2d(&sp, &ModePair::tilted_real(), 19, Some(6)).unwrap();
        assert!(s.norm_sqr() < 0.99);
        let w = default_half_width(&s) + 2.0;
        let g = density_grid(&s, (-w, w), (-w, w), 161, 161).unwrap();
        assert!((g.mass - s.norm_sqr()).abs() < 1e-6, "{} {}", g.mass, s.norm_sqr());
    }

    #[test]
    fn maxima_detector() {
        let mk = |vals: Vec<f64>, nx: usize| DensityGrid {
            x_axis: (0..nx).map(|i| i as f64).collect(),
            y_axis: (0..vals.len() / nx).map(|j| j as f64).collect(),
            values: vals,
            mass: 0.0,
        };
        // a plateau has no strict maximum
        assert_eq!(count_local_maxima(&mk(vec![1.0; 9], 3), 0.1), 0);
        // corner peak counts against its three neighbours only
        assert_eq!(count_local_maxima(&mk(vec![5.0, 1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0], 3), 0.1), 1);
        // second peak below the floor is ignored
        let g = mk(vec![9.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5], 3);
        assert_eq!(count_local_maxima(&g, 0.1), 1);
        assert_eq!(count_local_maxima(&g, 0.05), 2);
    }

    #[test]
    fn rejects_bad_grids() {
        let v = StateVector2D::basis(0, 0, 2).unwrap();
        assert!(density_grid(&v, (-1.0, 1.0), (-1.0, 1.0), 1, 5).is_err());
        assert!(density_grid(&v, (1.0, -1.0), (-1.0, 1.0), 5, 5).is_err());
        assert!(density_grid(&v, (-1.0, f64::NAN), (-1.0, 1.0), 5, 5).is_err());
    }
}
