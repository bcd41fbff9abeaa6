//! Canonical linear indexing of the 2D Fock basis.
//!
//! Pairs `(n, m)` with `n + m <= cutoff` are ordered by total quanta
//! `nu = n + m` ascending, then by `n` ascending inside each `nu` block:
//!
//! ```text
//! (0,0) | (0,1) (1,0) | (0,2) (1,1) (2,0) | ...
//!   0   |   1     2   |   3     4     5   | ...
//! ```
//!
//! Every block `nu` is contiguous and starts at `nu (nu + 1) / 2`.

use crate::error::{Error, Result};

/// Number of basis states with `n + m <= cutoff`.
pub const fn dim_2d(cutoff: usize) -> usize {
    (cutoff + 1) * (cutoff + 2) / 2
}

/// First linear index of the `nu` block.
pub const fn block_start(nu: usize) -> usize {
    nu * (nu + 1) / 2
}

/// Unchecked encode, for callers that already enforce `n + m <= cutoff`.
#[inline]
pub(crate) const fn index_of(n: usize, m: usize) -> usize {
    block_start(n + m) + n
}

pub fn encode_index(n: usize, m: usize, cutoff: usize) -> Result<usize> {
    if n + m > cutoff {
        return Err(Error::Domain(format!(
            "(n, m) = ({n}, {m}) violates n + m <= cutoff = {cutoff}"
        )));
    }
    Ok(index_of(n, m))
}

pub fn decode_index(index: usize, cutoff: usize) -> Result<(usize, usize)> {
    if index >= dim_2d(cutoff) {
        return Err(Error::Domain(format!(
            "index {index} violates index < {} for cutoff {cutoff}",
            dim_2d(cutoff)
        )));
    }
    Ok(pair_of(index))
}

/// Unchecked decode.
#[inline]
pub(crate) fn pair_of(index: usize) -> (usize, usize) {
    // float guess, then fix up the rounding
    let mut nu = (((8 * index + 1) as f64).sqrt() as usize).saturating_sub(1) / 2;
    while block_start(nu + 1) <= index {
        nu += 1;
    }
    while block_start(nu) > index {
        nu -= 1;
    }
    let n = index - block_start(nu);
    (n, nu - n)
}

/// Iterator over `(index, n, m)` in canonical order.
pub fn basis_pairs(cutoff: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..=cutoff)
        .flat_map(|nu| (0..=nu).map(move |n| (n, nu - n)))
        .enumerate()
        .map(|(k, (n, m))| (k, n, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert_eq!(encode_index(0, 0, 10).unwrap(), 0);
        assert_eq!(encode_index(0, 1, 10).unwrap(), 1);
        assert_eq!(encode_index(1, 0, 10).unwrap(), 2);
        assert_eq!(encode_index(0, 2, 10).unwrap(), 3);
        assert_eq!(encode_index(1, 1, 10).unwrap(), 4);
        assert_eq!(encode_index(2, 0, 10).unwrap(), 5);
    }

    #[test]
    fn enumeration_oracle() {
        // walk the canonical order by hand and compare positions
        for cutoff in 0..=30 {
            let mut k = 0;
            for nu in 0..=cutoff {
                for n in 0..=nu {
                    let m = nu - n;
                    assert_eq!(encode_index(n, m, cutoff).unwrap(), k);
                    assert_eq!(decode_index(k, cutoff).unwrap(), (n, m));
                    k += 1;
                }
            }
            assert_eq!(k, dim_2d(cutoff));
        }
    }

    #[test]
    fn basis_pairs_matches_encode() {
        for (k, n, m) in basis_pairs(12) {
            assert_eq!(index_of(n, m), k);
        }
        assert_eq!(basis_pairs(12).count(), dim_2d(12));
    }

    #[test]
    fn out_of_range() {
        let err = encode_index(3, 2, 4).unwrap_err();
        assert!(err.to_string().contains("n + m <= cutoff"));
        assert!(decode_index(dim_2d(4), 4).is_err());
    }

    #[test]
    fn decode_large_indices() {
        for nu in [1000usize, 4096, 100_000] {
            let k = block_start(nu);
            assert_eq!(pair_of(k), (0, nu));
            assert_eq!(pair_of(k - 1), (nu - 1, 0));
        }
    }
}
