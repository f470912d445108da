//! Reverse Cauchy–Schwarz certificates for the disk condition.
//!
//! For scalars `a`, `A` and vectors `x`, `y`, the condition
//! `Re<Ay - x, x - ay> >= 0` (equivalently `|x - c y| <= r |y|` with
//! `c = (a + A)/2`, `r = |A - a|/2`) implies
//!
//! ```text
//! |x|^2 |y|^2 - |<x,y>|^2 <= 1/4 |A - a|^2 |y|^4
//! ```
//!
//! and the constant 1/4 cannot be improved. This module evaluates both forms
//! of the condition, the bound, the underlying exact identity, and builds the
//! vectors that attain the constant.

pub mod enclosing;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::inner::{schwarz_gap, weighted_dot, weighted_norm_sq, Mode, Tolerance, WeightedVectorPair};
use crate::Scalar;

pub use enclosing::{min_enclosing_disk, Disk};

/// Seed used by [`fit_disk`] for the Welzl shuffle.
pub const DEFAULT_FIT_SEED: u64 = 0x5eed_d15c;

/// The disk whose diameter is the segment `[a, A]` in the scalar field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskBound {
    #[serde(rename = "a")]
    pub lower: Scalar,
    #[serde(rename = "A")]
    pub upper: Scalar,
}

impl DiskBound {
    pub fn new(lower: Scalar, upper: Scalar) -> Result<Self> {
        let finite = |z: Scalar| z.re.is_finite() && z.im.is_finite();
        if !(finite(lower) && finite(upper)) {
            return Err(invalid("disk endpoints must be finite"));
        }
        let disk = Self { lower, upper };
        if !(disk.center().norm().is_finite() && disk.radius().is_finite()) {
            return Err(invalid("disk center or radius overflows"));
        }
        Ok(disk)
    }

    pub fn real(lower: f64, upper: f64) -> Result<Self> {
        Self::new(Scalar::new(lower, 0.0), Scalar::new(upper, 0.0))
    }

    pub fn center(&self) -> Scalar {
        (self.lower + self.upper) * 0.5
    }

    /// `|A - a| / 2`.
    pub fn radius(&self) -> f64 {
        (self.upper - self.lower).norm() * 0.5
    }

    pub fn is_degenerate(&self) -> bool {
        self.lower == self.upper
    }

    pub fn is_real(&self) -> bool {
        self.lower.im == 0.0 && self.upper.im == 0.0
    }

    /// Same center, radius multiplied by `factor`, orientation kept.
    pub fn scaled_about_center(&self, factor: f64) -> Self {
        let c = self.center();
        let half = (self.upper - self.lower) * 0.5 * factor;
        Self {
            lower: c - half,
            upper: c + half,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditionDiagnostics {
    /// `Re<Ay - x, x - ay>_w`.
    pub aggregate_re: f64,
    /// `1/4 |A - a|^2 |y|^2_w - |x - c y|^2_w`.
    pub ball_residual: f64,
    /// Every supported component satisfies the disk condition on its own.
    pub pointwise_ok: bool,
    pub satisfied: bool,
    pub tol_scale: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifiedBound {
    pub gap: f64,
    pub bound: f64,
    /// `gap / bound`; 0 when both vanish.
    pub tightness: f64,
    pub condition: ConditionDiagnostics,
}

impl CertifiedBound {
    /// True when the condition holds but the gap exceeds the bound beyond
    /// tolerance. Always a defect.
    pub fn is_violation(&self) -> bool {
        self.condition.satisfied && self.gap > self.bound + self.condition.tol_scale
    }
}

pub(crate) fn tightness(lhs: f64, rhs: f64) -> f64 {
    if rhs > 0.0 {
        lhs / rhs
    } else if lhs <= 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

fn condition_term(x: Scalar, y: Scalar, disk: &DiskBound) -> f64 {
    ((disk.upper * y - x) * (x - disk.lower * y).conj()).re
}

/// Evaluates the condition in its inner-product form and its ball form,
/// each from the raw data.
pub fn check_condition(pair: &WeightedVectorPair, disk: &DiskBound, tol: Tolerance) -> ConditionDiagnostics {
    let (x, y, w) = (pair.x(), pair.y(), pair.w());
    let aggregate_re = pair.sum_over_support(|i| w[i] * condition_term(x[i], y[i], disk));

    let c = disk.center();
    let r = disk.radius();
    let offset: Vec<Scalar> = x.iter().zip(y).map(|(xi, yi)| xi - c * yi).collect();
    let norm_y_sq = pair.norm_y_sq();
    let ball_residual = r * r * norm_y_sq - weighted_norm_sq(&offset, w);

    let tol_scale = tol.scale(pair.norm_x_sq(), norm_y_sq, disk.lower, disk.upper);
    // Per-component slack is spread over the total weight so that the
    // pointwise test can never pass while the aggregate test fails.
    let total_w = pair.sum_over_support(|i| w[i]);
    let entry_slack = if total_w > 0.0 { tol_scale / total_w } else { tol_scale };
    let pointwise_ok = pair
        .support()
        .all(|i| condition_term(x[i], y[i], disk) >= -entry_slack);

    ConditionDiagnostics {
        aggregate_re,
        ball_residual,
        pointwise_ok,
        satisfied: pointwise_ok || aggregate_re >= -tol_scale,
        tol_scale,
    }
}

/// Gap, the quarter bound `1/4 |A - a|^2 |y|^4_w`, and the condition.
///
/// The bound is always reported; it is only a claim when
/// `condition.satisfied` holds.
pub fn certify(pair: &WeightedVectorPair, disk: &DiskBound, tol: Tolerance) -> CertifiedBound {
    let condition = check_condition(pair, disk, tol);
    let report = schwarz_gap(pair);
    let diam = (disk.upper - disk.lower).norm();
    let bound = 0.25 * diam * diam * report.norm_y_sq * report.norm_y_sq;
    CertifiedBound {
        gap: report.gap,
        bound,
        tightness: tightness(report.gap, bound),
        condition,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityTerms {
    pub i1: f64,
    pub i2: f64,
}

impl IdentityTerms {
    pub fn difference(&self) -> f64 {
        self.i1 - self.i2
    }
}

/// The two terms whose difference is exactly the Schwarz gap for any
/// `x, y, a, A`:
///
/// ```text
/// I1 = Re[(A|y|^2 - <x,y>)(conj<x,y> - conj(a)|y|^2)]
/// I2 = |y|^2 Re<Ay - x, x - ay>
/// ```
pub fn identity_terms(pair: &WeightedVectorPair, disk: &DiskBound) -> IdentityTerms {
    let (x, y, w) = (pair.x(), pair.y(), pair.w());
    let p = weighted_dot(x, y, w);
    let ny = pair.norm_y_sq();
    let i1 = ((disk.upper * ny - p) * (p.conj() - disk.lower.conj() * ny)).re;
    let aggregate = pair.sum_over_support(|i| w[i] * condition_term(x[i], y[i], disk));
    IdentityTerms { i1, i2: ny * aggregate }
}

/// `(Re[u conj(v)], |u + v|^2 / 4)`; the first never exceeds the second.
pub fn quarter_bound(u: Scalar, v: Scalar) -> (f64, f64) {
    ((u * v.conj()).re, 0.25 * (u + v).norm_sqr())
}

/// Builds `x = c y + r m` with `y` normalised to unit weighted norm, `m` a
/// unit vector orthogonal to `y`, `c = (a + A)/2` and `r = |A - a|/2`.
/// The returned pair sits on the boundary of the condition and attains the
/// bound.
///
/// `m` is the orthogonal residual of the standard basis vector with the
/// largest residual norm (lowest index on ties).
pub fn extremal_witness(y: &[Scalar], w: &[f64], disk: &DiskBound) -> Result<WeightedVectorPair> {
    if y.len() != w.len() {
        return Err(invalid(format!("length mismatch: y has {}, w has {}", y.len(), w.len())));
    }
    if disk.is_degenerate() {
        return Err(Error::DegenerateDisk);
    }
    let real = disk.is_real() && y.iter().all(|z| z.im == 0.0);
    let mode = if real { Mode::Real } else { Mode::Complex };
    // Validates y and w.
    let probe = WeightedVectorPair::new(mode, y.to_vec(), y.to_vec(), Some(w.to_vec()))?;
    let norm_y = probe.norm_y_sq().sqrt();
    if norm_y == 0.0 {
        return Err(invalid("y must be nonzero on the weighted support"));
    }
    let unit_y: Vec<Scalar> = y.iter().map(|z| z / norm_y).collect();

    // |e_k - <e_k, y>y|^2 = w_k (1 - w_k |y_k|^2) for unit y.
    let mut best: Option<(usize, f64)> = None;
    for k in probe.support() {
        let res = w[k] * (1.0 - w[k] * unit_y[k].norm_sqr());
        if best.is_none_or(|(_, b)| res > b) {
            best = Some((k, res));
        }
    }
    let (k, res) = best.ok_or(Error::InsufficientDimension)?;
    if res <= 1e-12 * w[k] {
        return Err(Error::InsufficientDimension);
    }

    let coeff = unit_y[k].conj() * w[k];
    let mut m: Vec<Scalar> = unit_y.iter().map(|yi| -coeff * yi).collect();
    m[k] += 1.0;
    // One re-orthogonalisation pass.
    let drift = weighted_dot(&m, &unit_y, w);
    for (mi, yi) in m.iter_mut().zip(&unit_y) {
        *mi -= drift * yi;
    }
    let norm_m = weighted_norm_sq(&m, w).sqrt();

    let c = disk.center();
    let r = disk.radius();
    let x: Vec<Scalar> = unit_y
        .iter()
        .zip(&m)
        .map(|(yi, mi)| c * yi + mi * (r / norm_m))
        .collect();
    WeightedVectorPair::new(mode, x, unit_y, Some(w.to_vec()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitMode {
    /// `[min x_i/y_i, max x_i/y_i]` for real data.
    RealInterval,
    /// Smallest disk enclosing the complex ratios `x_i/y_i`.
    ComplexMinDisk,
}

/// Ratios `x_i / y_i` over the weighted support; components with
/// `x_i = y_i = 0` place no constraint and are skipped.
pub fn support_ratios(pair: &WeightedVectorPair) -> Result<Vec<Scalar>> {
    let mut ratios = Vec::new();
    let mut any = false;
    for i in pair.support() {
        any = true;
        let (x, y) = (pair.x()[i], pair.y()[i]);
        if y == Scalar::new(0.0, 0.0) {
            if x != Scalar::new(0.0, 0.0) {
                return Err(Error::NoFiniteBounds { index: i });
            }
            continue;
        }
        ratios.push(x / y);
    }
    if !any {
        return Err(Error::EmptySupport);
    }
    Ok(ratios)
}

/// Tightest disk for which every supported component satisfies the
/// pointwise condition. The diameter is always laid along the real axis;
/// only the center and `|A - a|` matter to the condition and the bound.
pub fn fit_disk(pair: &WeightedVectorPair, mode: FitMode) -> Result<DiskBound> {
    fit_disk_seeded(pair, mode, DEFAULT_FIT_SEED)
}

pub fn fit_disk_seeded(pair: &WeightedVectorPair, mode: FitMode, seed: u64) -> Result<DiskBound> {
    let ratios = support_ratios(pair)?;
    if ratios.is_empty() {
        return DiskBound::real(0.0, 0.0);
    }
    match mode {
        FitMode::RealInterval => {
            if pair.mode() != Mode::Real {
                return Err(invalid("real-interval fitting needs real-mode data"));
            }
            let lo = ratios.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
            let hi = ratios.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
            DiskBound::real(lo, hi)
        }
        FitMode::ComplexMinDisk => {
            let disk = min_enclosing_disk(&ratios, seed).expect("nonempty ratio set");
            let half = Scalar::new(disk.radius, 0.0);
            DiskBound::new(disk.center - half, disk.center + half)
        }
    }
}
