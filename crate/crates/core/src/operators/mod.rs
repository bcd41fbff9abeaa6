//! Ladder and quadrature operators on the truncated 1D and 2D bases.
//!
//! Every operator exists in two forms that share one definition of the
//! ladder action ([`ladder_target`]): a direct action on a state vector that
//! reports the weight pushed past the cutoff, and a matrix (sparse or dense).

mod bogoliubov;
mod expm;
mod sparse;

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{
    basis_pairs, dim_2d, index_of, FockState, ModePair, StateMeta, StateVector1D, StateVector2D,
};

pub use bogoliubov::{bogoliubov_check, min_bogoliubov_cutoff, BogoliubovReport};
pub use expm::{expm_action, matrix_exponential};
pub use sparse::SparseOperator;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Raise,
    Lower,
}

/// Result of applying an operator to a truncated state.
#[derive(Clone, Debug, PartialEq)]
pub struct Applied<S> {
    pub state: S,
    /// Squared norm of the component mapped above the cutoff and dropped.
    pub leakage: f64,
}

/// `a_axis^dir |n, m> = weight |n', m'>`, or `None` when a lowering
/// operator annihilates the state. The target may exceed the cutoff.
#[inline]
pub(crate) fn ladder_target(axis: Axis, dir: Direction, n: usize, m: usize) -> Option<(usize, usize, f64)> {
    match (axis, dir) {
        (Axis::X, Direction::Raise) => Some((n + 1, m, ((n + 1) as f64).sqrt())),
        (Axis::Y, Direction::Raise) => Some((n, m + 1, ((m + 1) as f64).sqrt())),
        (Axis::X, Direction::Lower) => (n > 0).then(|| (n - 1, m, (n as f64).sqrt())),
        (Axis::Y, Direction::Lower) => (m > 0).then(|| (n, m - 1, (m as f64).sqrt())),
    }
}

/// A linear combination `sum_i c_i a_{axis_i}^{dir_i}` of single ladders.
pub(crate) type LadderSum = [(C64, Axis, Direction)];

/// Applies a linear combination of single ladder operators. Amplitudes mapped
/// onto the `cutoff + 1` block are summed there before their weight is
/// counted as leakage.
pub(crate) fn apply_ladder_sum(terms: &LadderSum, state: &StateVector2D) -> Applied<StateVector2D> {
    let cutoff = state.cutoff();
    let mut out = vec![ZERO; dim_2d(cutoff)];
    let mut overflow = vec![ZERO; cutoff + 2];
    for (k, n, m) in basis_pairs(cutoff) {
        let amp = state.coeffs()[k];
        if amp == ZERO {
            continue;
        }
        for &(w, axis, dir) in terms {
            if let Some((n2, m2, s)) = ladder_target(axis, dir, n, m) {
                let v = w * s * amp;
                if n2 + m2 <= cutoff {
                    out[index_of(n2, m2)] += v;
                } else {
                    overflow[n2] += v;
                }
            }
        }
    }
    Applied {
        state: StateVector2D::new(cutoff, out).expect("dimension preserved"),
        leakage: overflow.iter().map(|c| c.norm_sqr()).sum(),
    }
}

pub fn apply_ladder(axis: Axis, dir: Direction, state: &StateVector2D) -> Applied<StateVector2D> {
    apply_ladder_sum(&[(ONE, axis, dir)], state)
}

fn generalized_terms(dir: Direction, modes: &ModePair) -> [(C64, Axis, Direction); 2] {
    match dir {
        Direction::Raise => [(modes.alpha(), Axis::X, dir), (modes.beta(), Axis::Y, dir)],
        Direction::Lower => [
            (modes.alpha().conj(), Axis::X, dir),
            (modes.beta().conj(), Axis::Y, dir),
        ],
    }
}

/// `A+ = alpha a_x+ + beta a_y+`, `A- = conj(alpha) a_x- + conj(beta) a_y-`.
pub fn apply_generalized(dir: Direction, modes: &ModePair, state: &StateVector2D) -> Applied<StateVector2D> {
    apply_ladder_sum(&generalized_terms(dir, modes), state)
}

/// The single-mode ladder on a 1D state.
pub fn apply_ladder_1d(dir: Direction, state: &StateVector1D) -> Applied<StateVector1D> {
    let c = state.coeffs();
    let cutoff = state.cutoff();
    let mut out = vec![ZERO; cutoff + 1];
    let mut leakage = 0.0;
    match dir {
        Direction::Raise => {
            for n in 0..=cutoff {
                let v = c[n] * ((n + 1) as f64).sqrt();
                if n < cutoff {
                    out[n + 1] = v;
                } else {
                    leakage = v.norm_sqr();
                }
            }
        }
        Direction::Lower => {
            for n in 1..=cutoff {
                out[n - 1] = c[n] * (n as f64).sqrt();
            }
        }
    }
    Applied {
        state: StateVector1D::new(out).expect("non-empty").with_meta(StateMeta::default()),
        leakage,
    }
}

/// Which truncated basis an operator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    OneD,
    TwoD,
}

impl Space {
    pub fn dim(self, cutoff: usize) -> usize {
        match self {
            Space::OneD => cutoff + 1,
            Space::TwoD => dim_2d(cutoff),
        }
    }
}

/// Operators that can be requested by label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorId {
    Ladder(Axis, Direction),
    Generalized(Direction),
    /// `(a_x+ + a_x-) / sqrt 2`
    X,
    Y,
    /// `(a_x- - a_x+) / (sqrt 2 i)`
    Px,
    Py,
}

impl OperatorId {
    pub fn label(&self) -> &'static str {
        match self {
            OperatorId::Ladder(Axis::X, Direction::Lower) => "a_x-",
            OperatorId::Ladder(Axis::X, Direction::Raise) => "a_x+",
            OperatorId::Ladder(Axis::Y, Direction::Lower) => "a_y-",
            OperatorId::Ladder(Axis::Y, Direction::Raise) => "a_y+",
            OperatorId::Generalized(Direction::Lower) => "A-",
            OperatorId::Generalized(Direction::Raise) => "A+",
            OperatorId::X => "X",
            OperatorId::Y => "Y",
            OperatorId::Px => "Px",
            OperatorId::Py => "Py",
        }
    }

    /// The operator as a sum of single ladders.
    pub(crate) fn terms(&self, modes: Option<&ModePair>) -> Result<Vec<(C64, Axis, Direction)>> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // 1/(sqrt 2 i) = -i/sqrt 2
        let mi = C64::new(0.0, -h);
        Ok(match *self {
            OperatorId::Ladder(axis, dir) => vec![(ONE, axis, dir)],
            OperatorId::Generalized(dir) => {
                let modes = modes.ok_or_else(|| {
                    Error::Usage(format!("operator {} needs a mode pair", self.label()))
                })?;
                generalized_terms(dir, modes).to_vec()
            }
            OperatorId::X => vec![
                (C64::new(h, 0.0), Axis::X, Direction::Raise),
                (C64::new(h, 0.0), Axis::X, Direction::Lower),
            ],
            OperatorId::Y => vec![
                (C64::new(h, 0.0), Axis::Y, Direction::Raise),
                (C64::new(h, 0.0), Axis::Y, Direction::Lower),
            ],
            OperatorId::Px => vec![(mi, Axis::X, Direction::Lower), (-mi, Axis::X, Direction::Raise)],
            OperatorId::Py => vec![(mi, Axis::Y, Direction::Lower), (-mi, Axis::Y, Direction::Raise)],
        })
    }
}

impl fmt::Display for OperatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for OperatorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "a_x-" => OperatorId::Ladder(Axis::X, Direction::Lower),
            "a_x+" => OperatorId::Ladder(Axis::X, Direction::Raise),
            "a_y-" => OperatorId::Ladder(Axis::Y, Direction::Lower),
            "a_y+" => OperatorId::Ladder(Axis::Y, Direction::Raise),
            "A-" => OperatorId::Generalized(Direction::Lower),
            "A+" => OperatorId::Generalized(Direction::Raise),
            "X" => OperatorId::X,
            "Y" => OperatorId::Y,
            "Px" => OperatorId::Px,
            "Py" => OperatorId::Py,
            other => return Err(Error::Usage(format!("unknown operator label {other:?}"))),
        })
    }
}

/// Sparse matrix of a ladder sum on the 2D basis truncated at `cutoff`.
/// Entries that would land above the cutoff are omitted.
pub(crate) fn ladder_sum_matrix(terms: &LadderSum, cutoff: usize) -> SparseOperator {
    let mut t = Vec::new();
    for (k, n, m) in basis_pairs(cutoff) {
        for &(w, axis, dir) in terms {
            if let Some((n2, m2, s)) = ladder_target(axis, dir, n, m) {
                if n2 + m2 <= cutoff {
                    t.push((index_of(n2, m2), k, w * s));
                }
            }
        }
    }
    SparseOperator::from_triplets(dim_2d(cutoff), t)
}

/// Sparse form of [`build_matrix`].
pub fn sparse_operator(id: OperatorId, modes: Option<&ModePair>, cutoff: usize) -> Result<SparseOperator> {
    Ok(ladder_sum_matrix(&id.terms(modes)?, cutoff))
}

/// Single-mode annihilation or creation matrix on `|0> ..= |cutoff>`.
pub fn ladder_matrix_1d(dir: Direction, cutoff: usize) -> SparseOperator {
    let t = (0..cutoff)
        .map(|n| {
            let s = C64::new(((n + 1) as f64).sqrt(), 0.0);
            match dir {
                Direction::Raise => (n + 1, n, s),
                Direction::Lower => (n, n + 1, s),
            }
        })
        .collect();
    SparseOperator::from_triplets(cutoff + 1, t)
}

/// `psi a+ - conj(psi) a-` on the 1D basis.
pub fn displacement_generator_1d(psi: C64, cutoff: usize) -> SparseOperator {
    SparseOperator::combine(
        psi,
        &ladder_matrix_1d(Direction::Raise, cutoff),
        -psi.conj(),
        &ladder_matrix_1d(Direction::Lower, cutoff),
    )
}

/// `(xi a+^2 - conj(xi) a-^2) / 2` on the 1D basis.
pub fn squeeze_generator_1d(xi: C64, cutoff: usize) -> SparseOperator {
    let up = ladder_matrix_1d(Direction::Raise, cutoff);
    let down = ladder_matrix_1d(Direction::Lower, cutoff);
    SparseOperator::combine(xi * 0.5, &up.matmul(&up), -xi.conj() * 0.5, &down.matmul(&down))
}

/// `Psi A+ - conj(Psi) A-` on the 2D basis.
pub fn displacement_generator(psi: C64, modes: &ModePair, cutoff: usize) -> SparseOperator {
    let up = ladder_sum_matrix(&generalized_terms(Direction::Raise, modes), cutoff);
    let down = ladder_sum_matrix(&generalized_terms(Direction::Lower, modes), cutoff);
    SparseOperator::combine(psi, &up, -psi.conj(), &down)
}

/// `(Xi A+^2 - conj(Xi) A-^2) / 2` on the 2D basis. The truncated product
/// `A+ A+` equals the truncation of `A+^2` because raising never returns
/// from above the cutoff.
pub fn squeeze_generator(xi: C64, modes: &ModePair, cutoff: usize) -> SparseOperator {
    let up = ladder_sum_matrix(&generalized_terms(Direction::Raise, modes), cutoff);
    let down = ladder_sum_matrix(&generalized_terms(Direction::Lower, modes), cutoff);
    SparseOperator::combine(xi * 0.5, &up.matmul(&up), -xi.conj() * 0.5, &down.matmul(&down))
}

/// Dense operator on a truncated basis.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    entries: DMatrix<C64>,
    cutoff: usize,
    space: Space,
    label: String,
}

impl OperatorMatrix {
    pub fn new(entries: DMatrix<C64>, cutoff: usize, space: Space, label: impl Into<String>) -> Result<Self> {
        let dim = space.dim(cutoff);
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(Error::Dimension(format!(
                "operator on cutoff {cutoff} needs {dim}x{dim} entries, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        Ok(Self {
            entries,
            cutoff,
            space,
            label: label.into(),
        })
    }

    pub fn from_sparse(op: &SparseOperator, cutoff: usize, space: Space, label: impl Into<String>) -> Result<Self> {
        Self::new(op.to_dense(), cutoff, space, label)
    }

    pub fn identity(cutoff: usize, space: Space) -> Self {
        let dim = space.dim(cutoff);
        Self {
            entries: DMatrix::identity(dim, dim),
            cutoff,
            space,
            label: "I".into(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim());
        let mut out = vec![ZERO; self.dim()];
        for (j, &x) in v.iter().enumerate() {
            if x == ZERO {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.entries.column(j).iter()) {
                *o += a * x;
            }
        }
        out
    }

    fn check_same_basis(&self, other: &Self) -> Result<()> {
        if self.space != other.space || self.cutoff != other.cutoff {
            return Err(Error::Dimension(format!(
                "operators {} and {} act on different truncations",
                self.label, other.label
            )));
        }
        Ok(())
    }

    /// `self * rhs`. Zero entries of `rhs` are skipped, so composing with a
    /// ladder-type operator costs `O(nnz(rhs) * dim)`.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        self.check_same_basis(rhs)?;
        let dim = self.dim();
        let mut out = DMatrix::<C64>::zeros(dim, dim);
        for j in 0..dim {
            for k in 0..dim {
                let b = rhs.entries[(k, j)];
                if b == ZERO {
                    continue;
                }
                let src = self.entries.column(k);
                let mut dst = out.column_mut(j);
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d += s * b;
                }
            }
        }
        Ok(Self {
            entries: out,
            cutoff: self.cutoff,
            space: self.space,
            label: format!("{}*{}", self.label, rhs.label),
        })
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: C64, other: &Self, b: C64) -> Result<Self> {
        self.check_same_basis(other)?;
        Ok(Self {
            entries: self.entries.map(|x| x * a) + other.entries.map(|x| x * b),
            cutoff: self.cutoff,
            space: self.space,
            label: format!("({a})*{} + ({b})*{}", self.label, other.label),
        })
    }

    /// `[self, other] = self other - other self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let ab = self.compose(other)?;
        let ba = other.compose(self)?;
        let mut c = ab.combine(ONE, &ba, -ONE)?;
        c.label = format!("[{}, {}]", self.label, other.label);
        Ok(c)
    }

    pub fn adjoint(&self) -> Self {
        Self {
            entries: self.entries.adjoint(),
            cutoff: self.cutoff,
            space: self.space,
            label: format!("{}^dag", self.label),
        }
    }

    /// Number of leading basis states with total quanta `<= nu_max`.
    pub fn block_len(&self, nu_max: usize) -> usize {
        self.space.dim(nu_max.min(self.cutoff))
    }

    /// Leading square block over basis states with total quanta `<= nu_max`.
    /// The canonical ordering makes this a contiguous top-left block.
    pub fn leading_block(&self, nu_max: usize) -> DMatrix<C64> {
        let l = self.block_len(nu_max);
        self.entries.view((0, 0), (l, l)).into_owned()
    }

    /// `max |self - scale * I|` over the leading block `nu <= nu_max`.
    pub fn max_deviation_from_identity(&self, scale: f64, nu_max: usize) -> f64 {
        let b = self.leading_block(nu_max);
        let mut worst = 0.0f64;
        for j in 0..b.ncols() {
            for i in 0..b.nrows() {
                let target = if i == j { scale } else { 0.0 };
                worst = worst.max((b[(i, j)] - target).norm());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, x| m.max(x.norm()))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let n = self.dim();
        (0..n).all(|j| (0..=j).all(|i| (self.entries[(i, j)] - self.entries[(j, i)].conj()).norm() <= tol))
    }

    pub fn to_sparse(&self) -> SparseOperator {
        SparseOperator::from_dense(&self.entries)
    }
}

/// Dense matrix of a labelled operator on the 2D basis truncated at `cutoff`.
pub fn build_matrix(id: OperatorId, modes: Option<&ModePair>, cutoff: usize) -> Result<OperatorMatrix> {
    let op = sparse_operator(id, modes, cutoff)?;
    OperatorMatrix::from_sparse(&op, cutoff, Space::TwoD, id.label())
}

/// [`build_matrix`] from a text label such as `"a_x-"`, `"A+"` or `"Py"`.
pub fn build_matrix_by_label(label: &str, modes: Option<&ModePair>, cutoff: usize) -> Result<OperatorMatrix> {
    build_matrix(label.parse()?, modes, cutoff)
}
