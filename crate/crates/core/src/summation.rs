//! Pairwise (tree) summation.
//!
//! Terms are combined in index order by recursive halving, so a given input
//! slice always produces the same bits regardless of how callers schedule
//! work. The error bound grows as O(log n) instead of O(n).

use crate::Scalar;

const BLOCK: usize = 8;

pub fn pairwise_sum(terms: &[f64]) -> f64 {
    if terms.len() <= BLOCK {
        let mut acc = 0.0;
        for &t in terms {
            acc += t;
        }
        return acc;
    }
    let mid = terms.len() / 2;
    pairwise_sum(&terms[..mid]) + pairwise_sum(&terms[mid..])
}

/// Sums real and imaginary parts independently with [`pairwise_sum`].
pub fn pairwise_sum_complex(terms: &[Scalar]) -> Scalar {
    let re: Vec<f64> = terms.iter().map(|z| z.re).collect();
    let im: Vec<f64> = terms.iter().map(|z| z.im).collect();
    Scalar::new(pairwise_sum(&re), pairwise_sum(&im))
}
