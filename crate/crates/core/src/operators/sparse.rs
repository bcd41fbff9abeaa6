use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

/// Compressed-row complex matrix. Every operator in this crate has a few
/// non-zeros per row, so products and exponential actions run on this form;
/// [`super::OperatorMatrix`] is the dense view.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<C64>,
}

impl SparseOperator {
    /// Duplicate `(row, col)` entries are summed; exact zeros are dropped.
    pub fn from_triplets(dim: usize, mut triplets: Vec<(usize, usize, C64)>) -> Self {
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut merged: Vec<(usize, usize, C64)> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            debug_assert!(r < dim && c < dim);
            match merged.last_mut() {
                Some(last) if (last.0, last.1) == (r, c) => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|t| t.2 != C64::new(0.0, 0.0));
        let mut row_ptr = vec![0usize; dim + 1];
        for &(r, _, _) in &merged {
            row_ptr[r + 1] += 1;
        }
        for i in 0..dim {
            row_ptr[i + 1] += row_ptr[i];
        }
        Self {
            dim,
            row_ptr,
            cols: merged.iter().map(|t| t.1).collect(),
            vals: merged.iter().map(|t| t.2).collect(),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_triplets(dim, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.dim).flat_map(move |r| {
            (self.row_ptr[r]..self.row_ptr[r + 1]).map(move |k| (r, self.cols[k], self.vals[k]))
        })
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.dim];
        self.matvec_into(v, &mut out);
        out
    }

    pub fn matvec_into(&self, v: &[C64], out: &mut [C64]) {
        assert_eq!(v.len(), self.dim);
        for (r, o) in out.iter_mut().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.vals[k] * v[self.cols[k]];
            }
            *o = acc;
        }
    }

    /// `self * rhs`.
    pub fn matmul(&self, rhs: &SparseOperator) -> SparseOperator {
        assert_eq!(self.dim, rhs.dim);
        let mut t = Vec::new();
        for r in 0..self.dim {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                let mid = self.cols[k];
                for q in rhs.row_ptr[mid]..rhs.row_ptr[mid + 1] {
                    t.push((r, rhs.cols[q], self.vals[k] * rhs.vals[q]));
                }
            }
        }
        SparseOperator::from_triplets(self.dim, t)
    }

    /// `a * self + b * other`.
    pub fn combine(a: C64, lhs: &SparseOperator, b: C64, rhs: &SparseOperator) -> SparseOperator {
        assert_eq!(lhs.dim, rhs.dim);
        let t = lhs
            .triplets()
            .map(|(r, c, v)| (r, c, a * v))
            .chain(rhs.triplets().map(|(r, c, v)| (r, c, b * v)))
            .collect();
        SparseOperator::from_triplets(lhs.dim, t)
    }

    pub fn scaled(&self, a: C64) -> SparseOperator {
        let mut out = self.clone();
        out.vals.iter_mut().for_each(|v| *v *= a);
        out
    }

    pub fn adjoint(&self) -> SparseOperator {
        SparseOperator::from_triplets(self.dim, self.triplets().map(|(r, c, v)| (c, r, v.conj())).collect())
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        let mut sums = vec![0.0f64; self.dim];
        for (_, c, v) in self.triplets() {
            sums[c] += v.norm();
        }
        sums.into_iter().fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (r, c, v) in self.triplets() {
            m[(r, c)] += v;
        }
        m
    }

    pub fn from_dense(m: &DMatrix<C64>) -> SparseOperator {
        assert!(m.is_square());
        let mut t = Vec::new();
        for c in 0..m.ncols() {
            for r in 0..m.nrows() {
                let v = m[(r, c)];
                if v != C64::new(0.0, 0.0) {
                    t.push((r, c, v));
                }
            }
        }
        SparseOperator::from_triplets(m.nrows(), t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn duplicates_merge_and_zeros_drop() {
        let s = SparseOperator::from_triplets(
            3,
            vec![(0, 1, c(1.0)), (0, 1, c(2.0)), (2, 0, c(0.0)), (1, 1, c(1.0)), (1, 1, c(-1.0))],
        );
        assert_eq!(s.nnz(), 1);
        assert_eq!(s.to_dense()[(0, 1)], c(3.0));
    }

    #[test]
    fn products_match_dense() {
        let a = SparseOperator::from_triplets(3, vec![(0, 1, c(1.0)), (1, 2, C64::new(0.0, 2.0)), (2, 0, c(3.0))]);
        let b = SparseOperator::from_triplets(3, vec![(0, 0, c(1.0)), (1, 0, c(-1.0)), (2, 2, c(0.5))]);
        let dense = a.to_dense() * b.to_dense();
        assert_eq!(a.matmul(&b).to_dense(), dense);
        let v = vec![c(1.0), c(2.0), c(3.0)];
        let mv = a.to_dense() * nalgebra::DVector::from_vec(v.clone());
        assert_eq!(a.matvec(&v), mv.as_slice());
        assert_eq!(a.adjoint().to_dense(), a.to_dense().adjoint());
        assert_eq!(SparseOperator::from_dense(&dense), a.matmul(&b));
        assert_eq!(a.one_norm(), 3.0);
    }
}
