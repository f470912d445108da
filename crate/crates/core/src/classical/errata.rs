//! The commonly printed forms of two ratio inequalities, kept verbatim so
//! their failures stay documented.
//!
//! * Generalized Diaz–Metcalf printed with `m <= a_k/b_k <= M`. Valid only
//!   when the constants bound `b_k/a_k`.
//! * Klamkin–McLenaghan printed with a closing factor `sum w a^2`. The
//!   scaling-consistent closing factor is `sum w b^2`.
//!
//! The evaluators here never set `errata_applied`; [`super::evaluate_bound`]
//! is the corrected counterpart.

use super::{BoundReport, ConvexSplit, Family, Params, PositiveData, RatioBounds, RatioDirection};
use crate::error::Result;
use crate::inner::{Tolerance, WeightedVectorPair};
use crate::reverse::tightness;

/// `u Σwb² + v M m Σwa² <= (v m + u M) Σwab` with `m <= a/b <= M`.
pub fn printed_gen_diaz_metcalf(
    pair: &WeightedVectorPair,
    ratio: RatioBounds,
    split: ConvexSplit,
    tol: Tolerance,
) -> Result<BoundReport> {
    let data = PositiveData::new(pair)?;
    let s = data.moments();
    let lhs = split.u * s.bb + split.v * ratio.big_m * ratio.m * s.aa;
    let rhs = (split.v * ratio.m + split.u * ratio.big_m) * s.ab;
    Ok(report(
        Family::GenDiazMetcalf,
        &data,
        ratio,
        Some(split),
        lhs,
        rhs,
        lhs,
        tol,
    ))
}

/// `Σwa²Σwb² − (Σwab)² <= (√M − √m)² Σwab Σwa²` with `m <= a/b <= M`.
pub fn printed_klamkin_mclenaghan(pair: &WeightedVectorPair, ratio: RatioBounds, tol: Tolerance) -> Result<BoundReport> {
    let data = PositiveData::new(pair)?;
    let s = data.moments();
    let lhs = s.aa * s.bb - s.ab * s.ab;
    let rhs = (ratio.big_m.sqrt() - ratio.m.sqrt()).powi(2) * s.ab * s.aa;
    Ok(report(
        Family::KlamkinMclenaghan,
        &data,
        ratio,
        None,
        lhs,
        rhs,
        s.aa * s.bb,
        tol,
    ))
}

#[allow(clippy::too_many_arguments)]
fn report(
    family: Family,
    data: &PositiveData<'_>,
    ratio: RatioBounds,
    split: Option<ConvexSplit>,
    lhs: f64,
    rhs: f64,
    magnitude: f64,
    tol: Tolerance,
) -> BoundReport {
    let violation = data.ratio_violation(&ratio, RatioDirection::AOverB, tol);
    BoundReport {
        family,
        hypothesis_ok: violation.is_none(),
        lhs,
        rhs,
        tightness: tightness(lhs, rhs),
        errata_applied: false,
        tol_scale: tol.rel_tol * (1.0 + magnitude.abs() + rhs.abs()),
        params: Some(Params::Ratio(ratio)),
        split,
        reason: violation,
    }
}
