//! Weighted inner products, norms and the Schwarz gap.
//!
//! All sums run over the weighted support (indices with `w_i > 0`) in index
//! order, so padding a pair with zero-weight components never changes a
//! result bit.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::summation::{pairwise_sum, pairwise_sum_complex};
use crate::Scalar;

pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Whether data is interpreted over the reals or the complex numbers.
///
/// Chosen once at ingestion; real mode rejects entries with a nonzero
/// imaginary part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Real,
    Complex,
}

/// Library-wide slack for sign tests that sit exactly at zero on extremal
/// inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rel_tol: DEFAULT_REL_TOL,
        }
    }
}

impl Tolerance {
    pub fn new(rel_tol: f64) -> Result<Self> {
        if !(rel_tol.is_finite() && rel_tol >= 0.0) {
            return Err(invalid(format!("rel_tol must be finite and >= 0, got {rel_tol}")));
        }
        Ok(Self { rel_tol })
    }

    /// `rel_tol * (1 + |x|^2)(1 + |y|^2)(1 + |a|^2 + |A|^2)`.
    pub fn scale(&self, norm_x_sq: f64, norm_y_sq: f64, a: Scalar, upper: Scalar) -> f64 {
        self.rel_tol * (1.0 + norm_x_sq) * (1.0 + norm_y_sq) * (1.0 + a.norm_sqr() + upper.norm_sqr())
    }
}

#[derive(Debug, Deserialize)]
struct RawPair {
    mode: Mode,
    x: Vec<Scalar>,
    y: Vec<Scalar>,
    w: Option<Vec<f64>>,
}

/// Paired vectors `x`, `y` with nonnegative weights `w`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPair")]
pub struct WeightedVectorPair {
    mode: Mode,
    x: Vec<Scalar>,
    y: Vec<Scalar>,
    w: Vec<f64>,
}

impl TryFrom<RawPair> for WeightedVectorPair {
    type Error = Error;

    fn try_from(raw: RawPair) -> Result<Self> {
        Self::new(raw.mode, raw.x, raw.y, raw.w)
    }
}

impl WeightedVectorPair {
    /// Validates lengths, finiteness, weight signs and the mode.
    /// Missing weights default to all ones.
    pub fn new(mode: Mode, x: Vec<Scalar>, y: Vec<Scalar>, w: Option<Vec<f64>>) -> Result<Self> {
        let w = w.unwrap_or_else(|| vec![1.0; x.len()]);
        if x.len() != y.len() || x.len() != w.len() {
            return Err(invalid(format!(
                "length mismatch: x has {}, y has {}, w has {}",
                x.len(),
                y.len(),
                w.len()
            )));
        }
        for (i, (xi, yi)) in x.iter().zip(&y).enumerate() {
            if !(xi.re.is_finite() && xi.im.is_finite() && yi.re.is_finite() && yi.im.is_finite()) {
                return Err(invalid(format!("non-finite entry at index {i}")));
            }
            if mode == Mode::Real && (xi.im != 0.0 || yi.im != 0.0) {
                return Err(invalid(format!("complex entry at index {i} in real mode")));
            }
        }
        if let Some(i) = w.iter().position(|wi| !(wi.is_finite() && *wi >= 0.0)) {
            return Err(invalid(format!("weight at index {i} is negative or non-finite")));
        }
        Ok(Self { mode, x, y, w })
    }

    pub fn real(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        Self::real_weighted(x, y, None)
    }

    pub fn real_weighted(x: Vec<f64>, y: Vec<f64>, w: Option<Vec<f64>>) -> Result<Self> {
        let lift = |v: Vec<f64>| v.into_iter().map(|re| Scalar::new(re, 0.0)).collect();
        Self::new(Mode::Real, lift(x), lift(y), w)
    }

    pub fn complex(x: Vec<Scalar>, y: Vec<Scalar>, w: Option<Vec<f64>>) -> Result<Self> {
        Self::new(Mode::Complex, x, y, w)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn x(&self) -> &[Scalar] {
        &self.x
    }

    pub fn y(&self) -> &[Scalar] {
        &self.y
    }

    pub fn w(&self) -> &[f64] {
        &self.w
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Indices with strictly positive weight, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.w.iter().enumerate().filter(|(_, w)| **w > 0.0).map(|(i, _)| i)
    }

    /// True when every weight is exactly one.
    pub fn has_unit_weights(&self) -> bool {
        self.w.iter().all(|&w| w == 1.0)
    }

    /// Real parts of `x` and `y`; meaningful in real mode.
    pub fn real_parts(&self) -> (Vec<f64>, Vec<f64>) {
        (
            self.x.iter().map(|z| z.re).collect(),
            self.y.iter().map(|z| z.re).collect(),
        )
    }

    pub(crate) fn sum_over_support(&self, term: impl Fn(usize) -> f64) -> f64 {
        let terms: Vec<f64> = self.support().map(term).collect();
        pairwise_sum(&terms)
    }

    pub fn norm_x_sq(&self) -> f64 {
        self.sum_over_support(|i| self.w[i] * self.x[i].norm_sqr())
    }

    pub fn norm_y_sq(&self) -> f64 {
        self.sum_over_support(|i| self.w[i] * self.y[i].norm_sqr())
    }
}

/// `sum_i w_i |v_i|^2` for an arbitrary vector on the pair's weights.
pub fn weighted_norm_sq(v: &[Scalar], w: &[f64]) -> f64 {
    let terms: Vec<f64> = v
        .iter()
        .zip(w)
        .filter(|(_, &wi)| wi > 0.0)
        .map(|(vi, &wi)| wi * vi.norm_sqr())
        .collect();
    pairwise_sum(&terms)
}

/// `sum_i w_i u_i conj(v_i)`.
pub fn weighted_dot(u: &[Scalar], v: &[Scalar], w: &[f64]) -> Scalar {
    let terms: Vec<Scalar> = u
        .iter()
        .zip(v)
        .zip(w)
        .filter(|(_, &wi)| wi > 0.0)
        .map(|((ui, vi), &wi)| ui * vi.conj() * wi)
        .collect();
    pairwise_sum_complex(&terms)
}

/// `<x, y>_w = sum_i w_i x_i conj(y_i)`.
pub fn weighted_inner(pair: &WeightedVectorPair) -> Scalar {
    weighted_dot(&pair.x, &pair.y, &pair.w)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub gap: f64,
    pub norm_x_sq: f64,
    pub norm_y_sq: f64,
    pub inner_xy: Scalar,
}

/// `|x|^2 |y|^2 - |<x,y>|^2` together with its ingredients.
///
/// The gap is evaluated as `|y|^2 * |x - t y|^2` with `t = <x,y>/|y|^2`
/// (one refinement pass on `t`), which equals the textbook difference but
/// does not cancel catastrophically when `x` is nearly parallel to `y`.
/// A pair with `|y| = 0` has gap 0.
pub fn schwarz_gap(pair: &WeightedVectorPair) -> GapReport {
    let norm_x_sq = pair.norm_x_sq();
    let norm_y_sq = pair.norm_y_sq();
    let inner_xy = weighted_inner(pair);
    let gap = if norm_y_sq > 0.0 {
        let t = inner_xy / norm_y_sq;
        let mut resid: Vec<Scalar> = pair.x.iter().zip(&pair.y).map(|(x, y)| x - t * y).collect();
        let dt = weighted_dot(&resid, &pair.y, &pair.w) / norm_y_sq;
        for (r, y) in resid.iter_mut().zip(&pair.y) {
            *r -= dt * y;
        }
        norm_y_sq * weighted_norm_sq(&resid, &pair.w)
    } else {
        0.0
    };
    GapReport {
        gap,
        norm_x_sq,
        norm_y_sq,
        inner_xy,
    }
}
