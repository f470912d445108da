//! Classical counterpart inequalities for positive real sequences.
//!
//! Each family bounds a Schwarz-type quantity of `a = x`, `b = y` in terms of
//! entrywise box constants `m1 <= a_i <= M1`, `m2 <= b_i <= M2` or ratio
//! constants `m <= a_i/b_i <= M`. Reports carry both sides, whether the
//! supplied constants really hold on the data, and a tightness ratio.

pub mod errata;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::inner::{Mode, Tolerance, WeightedVectorPair};
use crate::reverse::{self, tightness, DiskBound, FitMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    PolyaSzego,
    ShishaMond,
    Ozeki,
    DiazMetcalf,
    Cassels,
    GreubReinboldt,
    GenDiazMetcalf,
    KlamkinMclenaghan,
    /// The quarter-disk bound of [`crate::reverse`].
    Theorem21,
}

impl Family {
    pub const CLASSICAL: [Family; 8] = [
        Family::PolyaSzego,
        Family::ShishaMond,
        Family::Ozeki,
        Family::DiazMetcalf,
        Family::Cassels,
        Family::GreubReinboldt,
        Family::GenDiazMetcalf,
        Family::KlamkinMclenaghan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::PolyaSzego => "polya-szego",
            Family::ShishaMond => "shisha-mond",
            Family::Ozeki => "ozeki",
            Family::DiazMetcalf => "diaz-metcalf",
            Family::Cassels => "cassels",
            Family::GreubReinboldt => "greub-reinboldt",
            Family::GenDiazMetcalf => "gen-diaz-metcalf",
            Family::KlamkinMclenaghan => "klamkin-mclenaghan",
            Family::Theorem21 => "theorem21",
        }
    }

    /// Stated for plain (unweighted) sums only.
    pub fn requires_unit_weights(self) -> bool {
        matches!(
            self,
            Family::PolyaSzego | Family::ShishaMond | Family::Ozeki | Family::DiazMetcalf
        )
    }

    /// Ratio orientation for ratio-parameterized families, `None` for box
    /// families and the disk bound.
    pub fn ratio_direction(self) -> Option<RatioDirection> {
        match self {
            Family::Cassels | Family::KlamkinMclenaghan => Some(RatioDirection::AOverB),
            Family::GenDiazMetcalf => Some(RatioDirection::BOverA),
            _ => None,
        }
    }

    pub fn uses_box(self) -> bool {
        matches!(
            self,
            Family::PolyaSzego | Family::ShishaMond | Family::Ozeki | Family::DiazMetcalf | Family::GreubReinboldt
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::CLASSICAL
            .into_iter()
            .chain([Family::Theorem21])
            .find(|f| f.name() == s)
            .ok_or_else(|| invalid(format!("unknown family '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RatioDirection {
    AOverB,
    BOverA,
}

/// Entrywise constants `0 < m1 <= a_i <= M1`, `0 < m2 <= b_i <= M2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxBounds {
    pub m1: f64,
    #[serde(rename = "M1")]
    pub big_m1: f64,
    pub m2: f64,
    #[serde(rename = "M2")]
    pub big_m2: f64,
}

impl BoxBounds {
    pub fn new(m1: f64, big_m1: f64, m2: f64, big_m2: f64) -> Result<Self> {
        let ok = |lo: f64, hi: f64| lo.is_finite() && hi.is_finite() && 0.0 < lo && lo <= hi;
        if !(ok(m1, big_m1) && ok(m2, big_m2)) {
            return Err(invalid(format!(
                "box bounds need 0 < m1 <= M1 and 0 < m2 <= M2, got ({m1}, {big_m1}, {m2}, {big_m2})"
            )));
        }
        Ok(Self {
            m1,
            big_m1,
            m2,
            big_m2,
        })
    }
}

/// Ratio constants `0 < m <= M`; the orientation lives with the family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioBounds {
    pub m: f64,
    #[serde(rename = "M")]
    pub big_m: f64,
}

impl RatioBounds {
    pub fn new(m: f64, big_m: f64) -> Result<Self> {
        if !(m.is_finite() && big_m.is_finite() && 0.0 < m && m <= big_m) {
            return Err(invalid(format!("ratio bounds need 0 < m <= M, got ({m}, {big_m})")));
        }
        Ok(Self { m, big_m })
    }
}

/// Weights `u + v = 1`, `0 <= v <= u <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvexSplit {
    pub u: f64,
    pub v: f64,
}

impl ConvexSplit {
    pub fn new(u: f64, v: f64) -> Result<Self> {
        let unit = |t: f64| (0.0..=1.0).contains(&t);
        if !(unit(u) && unit(v) && v <= u && ((u + v) - 1.0).abs() <= 1e-12) {
            return Err(invalid(format!("split needs u, v in [0,1], v <= u, u + v = 1; got ({u}, {v})")));
        }
        Ok(Self { u, v })
    }

    pub fn half() -> Self {
        Self { u: 0.5, v: 0.5 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Params {
    Box(BoxBounds),
    Ratio(RatioBounds),
    Disk(DiskBound),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub family: Family,
    pub hypothesis_ok: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub tightness: f64,
    /// The evaluated form departs from the commonly printed one.
    pub errata_applied: bool,
    pub tol_scale: f64,
    pub params: Option<Params>,
    pub split: Option<ConvexSplit>,
    /// Why the family was not evaluated or its hypothesis failed.
    pub reason: Option<String>,
}

impl BoundReport {
    /// Hypothesis verified but the inequality fails beyond tolerance.
    pub fn is_violation(&self) -> bool {
        self.hypothesis_ok && self.lhs > self.rhs + self.tol_scale
    }

    fn inapplicable(family: Family, reason: String) -> Self {
        Self {
            family,
            hypothesis_ok: false,
            lhs: f64::NAN,
            rhs: f64::NAN,
            tightness: 0.0,
            errata_applied: false,
            tol_scale: 0.0,
            params: None,
            split: None,
            reason: Some(reason),
        }
    }
}

/// Weighted sums over the support.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Moments {
    pub aa: f64,
    pub bb: f64,
    pub ab: f64,
    pub n: usize,
}

pub(crate) struct PositiveData<'p> {
    pair: &'p WeightedVectorPair,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl<'p> PositiveData<'p> {
    pub(crate) fn new(pair: &'p WeightedVectorPair) -> Result<Self> {
        if pair.mode() != Mode::Real {
            return Err(invalid("classical inequalities need real-mode data"));
        }
        if pair.is_empty() {
            return Err(invalid("empty data"));
        }
        let (a, b) = pair.real_parts();
        if let Some(i) = a.iter().zip(&b).position(|(ai, bi)| !(*ai > 0.0 && *bi > 0.0)) {
            return Err(invalid(format!("entries must be strictly positive (index {i})")));
        }
        Ok(Self { pair, a, b })
    }

    pub(crate) fn moments(&self) -> Moments {
        let w = self.pair.w();
        Moments {
            aa: self.pair.sum_over_support(|i| w[i] * self.a[i] * self.a[i]),
            bb: self.pair.sum_over_support(|i| w[i] * self.b[i] * self.b[i]),
            ab: self.pair.sum_over_support(|i| w[i] * self.a[i] * self.b[i]),
            n: self.pair.len(),
        }
    }

    fn ratios(&self, dir: RatioDirection) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.pair.support().map(move |i| {
            let r = match dir {
                RatioDirection::AOverB => self.a[i] / self.b[i],
                RatioDirection::BOverA => self.b[i] / self.a[i],
            };
            (i, r)
        })
    }

    /// First supported index violating the box, if any.
    fn box_violation(&self, bx: &BoxBounds, tol: Tolerance) -> Option<String> {
        self.pair.support().find_map(|i| {
            if !within(self.a[i], bx.m1, bx.big_m1, tol) {
                Some(format!("a[{i}] = {} outside [{}, {}]", self.a[i], bx.m1, bx.big_m1))
            } else if !within(self.b[i], bx.m2, bx.big_m2, tol) {
                Some(format!("b[{i}] = {} outside [{}, {}]", self.b[i], bx.m2, bx.big_m2))
            } else {
                None
            }
        })
    }

    pub(crate) fn ratio_violation(&self, r: &RatioBounds, dir: RatioDirection, tol: Tolerance) -> Option<String> {
        let label = match dir {
            RatioDirection::AOverB => "a/b",
            RatioDirection::BOverA => "b/a",
        };
        self.ratios(dir).find_map(|(i, q)| {
            (!within(q, r.m, r.big_m, tol)).then(|| format!("{label}[{i}] = {q} outside [{}, {}]", r.m, r.big_m))
        })
    }
}

/// `lo <= v <= hi` with relative slack.
fn within(v: f64, lo: f64, hi: f64, tol: Tolerance) -> bool {
    v >= lo - tol.rel_tol * (v.abs() + lo.abs()) && v <= hi + tol.rel_tol * (v.abs() + hi.abs())
}

/// Tightest box constants over the weighted support.
pub fn fit_box(pair: &WeightedVectorPair) -> Result<BoxBounds> {
    let data = PositiveData::new(pair)?;
    let mut it = pair.support().peekable();
    if it.peek().is_none() {
        return Err(Error::EmptySupport);
    }
    let (mut m1, mut big_m1, mut m2, mut big_m2) = (f64::INFINITY, 0.0f64, f64::INFINITY, 0.0f64);
    for i in it {
        m1 = m1.min(data.a[i]);
        big_m1 = big_m1.max(data.a[i]);
        m2 = m2.min(data.b[i]);
        big_m2 = big_m2.max(data.b[i]);
    }
    BoxBounds::new(m1, big_m1, m2, big_m2)
}

/// Tightest ratio constants over the weighted support.
pub fn fit_ratio(pair: &WeightedVectorPair, dir: RatioDirection) -> Result<RatioBounds> {
    let data = PositiveData::new(pair)?;
    let (lo, hi) = data
        .ratios(dir)
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), (_, q)| (lo.min(q), hi.max(q)));
    if lo.is_infinite() {
        return Err(Error::EmptySupport);
    }
    RatioBounds::new(lo, hi)
}

fn expect_box(family: Family, params: &Params) -> Result<BoxBounds> {
    match params {
        Params::Box(b) => Ok(*b),
        _ => Err(invalid(format!("{family} takes box bounds (m1, M1, m2, M2)"))),
    }
}

fn expect_ratio(family: Family, params: &Params) -> Result<RatioBounds> {
    match params {
        Params::Ratio(r) => Ok(*r),
        _ => Err(invalid(format!("{family} takes ratio bounds (m, M)"))),
    }
}

/// Evaluates one inequality on `a = x`, `b = y`.
///
/// `Theorem21` takes [`Params::Disk`] and accepts complex or signed data; all
/// other families need strictly positive real entries. The generalized
/// Diaz–Metcalf family requires `split` and reads its ratio constants as
/// bounds on `b/a`; Klamkin–McLenaghan closes with `sum w b^2`. Both are
/// flagged with `errata_applied`.
pub fn evaluate_bound(
    family: Family,
    pair: &WeightedVectorPair,
    params: &Params,
    split: Option<ConvexSplit>,
    tol: Tolerance,
) -> Result<BoundReport> {
    if family == Family::GenDiazMetcalf && split.is_none() {
        return Err(invalid("gen-diaz-metcalf needs a split (u, v)"));
    }
    if family != Family::GenDiazMetcalf && split.is_some() {
        return Err(invalid(format!("{family} takes no split")));
    }
    if family == Family::Theorem21 {
        let Params::Disk(disk) = params else {
            return Err(invalid("theorem21 takes a disk (a, A)"));
        };
        return Ok(theorem21_report(pair, disk, tol));
    }

    let data = PositiveData::new(pair)?;
    if family.requires_unit_weights() && !pair.has_unit_weights() {
        return Err(Error::UnsupportedWeights(family.name()));
    }
    let s = data.moments();
    let n = s.n as f64;

    // (lhs, rhs, magnitude of the uncancelled terms, hypothesis violation)
    let (lhs, rhs, magnitude, violation) = match family {
        Family::PolyaSzego => {
            let bx = expect_box(family, params)?;
            let q = (bx.big_m1 * bx.big_m2 / (bx.m1 * bx.m2)).sqrt();
            let lhs = s.aa * s.bb / (s.ab * s.ab);
            (lhs, 0.25 * (q + 1.0 / q).powi(2), lhs, data.box_violation(&bx, tol))
        }
        Family::ShishaMond => {
            let bx = expect_box(family, params)?;
            let t1 = s.aa / s.ab;
            let t2 = s.ab / s.bb;
            let rhs = ((bx.big_m1 / bx.m2).sqrt() - (bx.m1 / bx.big_m2).sqrt()).powi(2);
            (t1 - t2, rhs, t1 + t2, data.box_violation(&bx, tol))
        }
        Family::Ozeki => {
            let bx = expect_box(family, params)?;
            let rhs = n * n / 4.0 * (bx.big_m1 * bx.big_m2 - bx.m1 * bx.m2).powi(2);
            (s.aa * s.bb - s.ab * s.ab, rhs, s.aa * s.bb, data.box_violation(&bx, tol))
        }
        Family::DiazMetcalf => {
            let bx = expect_box(family, params)?;
            let lhs = s.bb + bx.m2 * bx.big_m2 / (bx.m1 * bx.big_m1) * s.aa;
            let rhs = (bx.big_m2 / bx.m1 + bx.m2 / bx.big_m1) * s.ab;
            (lhs, rhs, lhs, data.box_violation(&bx, tol))
        }
        Family::Cassels => {
            let r = expect_ratio(family, params)?;
            let lhs = s.aa * s.bb / (s.ab * s.ab);
            let rhs = (r.big_m + r.m).powi(2) / (4.0 * r.m * r.big_m);
            (lhs, rhs, lhs, data.ratio_violation(&r, RatioDirection::AOverB, tol))
        }
        Family::GreubReinboldt => {
            let bx = expect_box(family, params)?;
            let p = bx.m1 * bx.m2;
            let q = bx.big_m1 * bx.big_m2;
            let rhs = (q + p).powi(2) / (4.0 * p * q) * s.ab * s.ab;
            (s.aa * s.bb, rhs, s.aa * s.bb, data.box_violation(&bx, tol))
        }
        Family::GenDiazMetcalf => {
            let r = expect_ratio(family, params)?;
            let sp = split.expect("checked above");
            let lhs = sp.u * s.bb + sp.v * r.big_m * r.m * s.aa;
            let rhs = (sp.v * r.m + sp.u * r.big_m) * s.ab;
            (lhs, rhs, lhs, data.ratio_violation(&r, RatioDirection::BOverA, tol))
        }
        Family::KlamkinMclenaghan => {
            let r = expect_ratio(family, params)?;
            let rhs = (r.big_m.sqrt() - r.m.sqrt()).powi(2) * s.ab * s.bb;
            (s.aa * s.bb - s.ab * s.ab, rhs, s.aa * s.bb, data.ratio_violation(&r, RatioDirection::AOverB, tol))
        }
        Family::Theorem21 => unreachable!("handled above"),
    };

    Ok(BoundReport {
        family,
        hypothesis_ok: violation.is_none(),
        lhs,
        rhs,
        tightness: tightness(lhs, rhs),
        errata_applied: matches!(family, Family::GenDiazMetcalf | Family::KlamkinMclenaghan),
        tol_scale: tol.rel_tol * (1.0 + magnitude.abs() + rhs.abs()),
        params: Some(*params),
        split,
        reason: violation,
    })
}

fn theorem21_report(pair: &WeightedVectorPair, disk: &DiskBound, tol: Tolerance) -> BoundReport {
    let cb = reverse::certify(pair, disk, tol);
    BoundReport {
        family: Family::Theorem21,
        hypothesis_ok: cb.condition.satisfied,
        lhs: cb.gap,
        rhs: cb.bound,
        tightness: cb.tightness,
        errata_applied: false,
        tol_scale: cb.condition.tol_scale,
        params: Some(Params::Disk(*disk)),
        split: None,
        reason: (!cb.condition.satisfied)
            .then(|| format!("disk condition fails: Re<Ay-x, x-ay> = {}", cb.condition.aggregate_re)),
    }
}

/// Parameters fitted from the data for `family`.
pub fn fit_params(family: Family, pair: &WeightedVectorPair) -> Result<Params> {
    if family == Family::Theorem21 {
        let mode = match pair.mode() {
            Mode::Real => FitMode::RealInterval,
            Mode::Complex => FitMode::ComplexMinDisk,
        };
        return reverse::fit_disk(pair, mode).map(Params::Disk);
    }
    match family.ratio_direction() {
        Some(dir) => fit_ratio(pair, dir).map(Params::Ratio),
        None => fit_box(pair).map(Params::Box),
    }
}

/// Fits and evaluates every family plus the disk bound, sorted by
/// descending tightness. Families whose weight requirements are not met
/// are listed with `hypothesis_ok = false` and a reason.
pub fn compare_all(pair: &WeightedVectorPair, tol: Tolerance) -> Result<Vec<BoundReport>> {
    PositiveData::new(pair)?;
    let mut reports = Vec::with_capacity(9);
    for family in Family::CLASSICAL.into_iter().chain([Family::Theorem21]) {
        if family.requires_unit_weights() && !pair.has_unit_weights() {
            reports.push(BoundReport::inapplicable(
                family,
                Error::UnsupportedWeights(family.name()).to_string(),
            ));
            continue;
        }
        let split = (family == Family::GenDiazMetcalf).then(ConvexSplit::half);
        let report = fit_params(family, pair).and_then(|p| evaluate_bound(family, pair, &p, split, tol));
        reports.push(match report {
            Ok(r) => r,
            Err(e) => BoundReport::inapplicable(family, e.to_string()),
        });
    }
    sort_by_tightness(&mut reports);
    Ok(reports)
}

/// Stable sort, descending tightness.
pub fn sort_by_tightness(reports: &mut [BoundReport]) {
    reports.sort_by(|x, y| y.tightness.total_cmp(&x.tightness));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn pair(a: &[f64], b: &[f64], w: Option<&[f64]>) -> WeightedVectorPair {
        WeightedVectorPair::real_weighted(a.to_vec(), b.to_vec(), w.map(<[f64]>::to_vec)).unwrap()
    }

    fn unit_box() -> Params {
        Params::Box(BoxBounds::new(1.0, 2.0, 1.0, 2.0).unwrap())
    }

    fn eval(family: Family, p: &WeightedVectorPair, params: Params, split: Option<ConvexSplit>) -> BoundReport {
        evaluate_bound(family, p, &params, split, tol()).unwrap()
    }

    #[test]
    fn equality_cases() {
        let p = pair(&[1.0, 2.0], &[2.0, 1.0], None);
        let r = eval(Family::PolyaSzego, &p, unit_box(), None);
        assert_eq!((r.lhs, r.rhs), (25.0 / 16.0, 25.0 / 16.0));
        let r = eval(Family::Ozeki, &p, unit_box(), None);
        assert_eq!((r.lhs, r.rhs), (9.0, 9.0));
        let r = eval(Family::DiazMetcalf, &p, unit_box(), None);
        assert_eq!((r.lhs, r.rhs), (10.0, 10.0));
        let r = eval(Family::GreubReinboldt, &p, unit_box(), None);
        assert_eq!((r.lhs, r.rhs), (25.0, 25.0));
        assert!(r.hypothesis_ok && !r.errata_applied);

        let p = pair(&[1.0, 2.0], &[1.0, 1.0], None);
        let r = eval(
            Family::GenDiazMetcalf,
            &p,
            Params::Ratio(RatioBounds::new(0.5, 1.0).unwrap()),
            Some(ConvexSplit::half()),
        );
        assert_eq!((r.lhs, r.rhs, r.tightness), (2.25, 2.25, 1.0));
        assert!(r.hypothesis_ok && r.errata_applied);
    }

    #[test]
    fn strict_cases() {
        let p = pair(&[1.0, 2.0], &[2.0, 1.0], None);
        let r = eval(Family::ShishaMond, &p, unit_box(), None);
        assert!((r.lhs - 0.45).abs() < 1e-15);
        assert!((r.rhs - 0.5).abs() < 1e-15);

        let p = pair(&[1.0, 2.0], &[1.0, 1.0], Some(&[1.0, 1.0]));
        let r = eval(Family::Cassels, &p, Params::Ratio(RatioBounds::new(1.0, 2.0).unwrap()), None);
        assert!((r.lhs - 10.0 / 9.0).abs() < 1e-15);
        assert_eq!(r.rhs, 9.0 / 8.0);

        let p = pair(&[1.0, 2.0], &[10.0, 10.0], None);
        let r = eval(
            Family::KlamkinMclenaghan,
            &p,
            Params::Ratio(RatioBounds::new(0.1, 0.2).unwrap()),
            None,
        );
        assert!((r.lhs - 100.0).abs() < 1e-10);
        let expect = (0.2f64.sqrt() - 0.1f64.sqrt()).powi(2) * 30.0 * 200.0;
        assert!((r.rhs - expect).abs() < 1e-12);
        assert!((r.rhs - 102.94).abs() < 5e-3);
        assert!(r.hypothesis_ok && !r.is_violation());
    }

    #[test]
    fn hypothesis_is_checked_against_data() {
        let p = pair(&[1.0, 3.0], &[2.0, 1.0], None);
        let r = eval(Family::Ozeki, &p, unit_box(), None);
        assert!(!r.hypothesis_ok);
        assert!(r.reason.unwrap().contains("a[1]"));
        // Zero-weight entries are exempt.
        let p = pair(&[1.0, 3.0], &[2.0, 1.0], Some(&[1.0, 0.0]));
        let r = eval(Family::GreubReinboldt, &p, unit_box(), None);
        assert!(r.hypothesis_ok);
    }

    #[test]
    fn input_errors() {
        let p = pair(&[1.0, 2.0], &[1.0, 1.0], Some(&[1.0, 2.0]));
        assert_eq!(
            evaluate_bound(Family::Ozeki, &p, &unit_box(), None, tol()),
            Err(Error::UnsupportedWeights("ozeki"))
        );
        let p = pair(&[1.0, 0.0], &[1.0, 1.0], None);
        assert!(matches!(evaluate_bound(Family::Ozeki, &p, &unit_box(), None, tol()), Err(Error::InvalidInput(_))));
        let p = pair(&[1.0, 2.0], &[1.0, 1.0], None);
        let ratio = Params::Ratio(RatioBounds::new(0.5, 1.0).unwrap());
        assert!(evaluate_bound(Family::GenDiazMetcalf, &p, &ratio, None, tol()).is_err());
        assert!(evaluate_bound(Family::Cassels, &p, &ratio, Some(ConvexSplit::half()), tol()).is_err());
        assert!(evaluate_bound(Family::Cassels, &p, &unit_box(), None, tol()).is_err());
        let c = WeightedVectorPair::complex(vec![crate::Scalar::new(1.0, 1.0)], vec![crate::Scalar::new(1.0, 0.0)], None)
            .unwrap();
        assert!(fit_box(&c).is_err());
    }

    #[test]
    fn parameter_types_validate() {
        assert!(BoxBounds::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(BoxBounds::new(2.0, 1.0, 1.0, 1.0).is_err());
        assert!(RatioBounds::new(1.0, 0.5).is_err());
        assert!(ConvexSplit::new(0.4, 0.6).is_err());
        assert!(ConvexSplit::new(0.7, 0.4).is_err());
        assert!(ConvexSplit::new(1.0, 0.0).is_ok());
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::CLASSICAL.into_iter().chain([Family::Theorem21]) {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
            assert_eq!(serde_json::to_string(&f).unwrap(), format!("\"{}\"", f.name()));
        }
        assert!("kantorovich".parse::<Family>().is_err());
    }

    #[test]
    fn fit_examples() {
        assert_eq!(
            fit_box(&pair(&[1.0, 2.0], &[2.0, 1.0], None)).unwrap(),
            BoxBounds::new(1.0, 2.0, 1.0, 2.0).unwrap()
        );
        assert_eq!(
            fit_box(&pair(&[3.0, 3.0], &[5.0, 5.0], None)).unwrap(),
            BoxBounds::new(3.0, 3.0, 5.0, 5.0).unwrap()
        );
        assert_eq!(
            fit_box(&pair(&[1.0, 4.0, 2.0], &[2.0, 2.0, 2.0], None)).unwrap(),
            BoxBounds::new(1.0, 4.0, 2.0, 2.0).unwrap()
        );
        let p = pair(&[1.0, 2.0], &[1.0, 1.0], None);
        assert_eq!(fit_ratio(&p, RatioDirection::AOverB).unwrap(), RatioBounds::new(1.0, 2.0).unwrap());
        assert_eq!(fit_ratio(&p, RatioDirection::BOverA).unwrap(), RatioBounds::new(0.5, 1.0).unwrap());
        let p = pair(&[1.5, 0.25], &[1.5, 0.25], None);
        assert_eq!(fit_ratio(&p, RatioDirection::AOverB).unwrap(), RatioBounds::new(1.0, 1.0).unwrap());
        let p = pair(&[1.0], &[1.0], Some(&[0.0]));
        assert_eq!(fit_box(&p), Err(Error::EmptySupport));
    }

    #[test]
    fn compare_equality_dataset() {
        let p = pair(&[1.0, 2.0], &[2.0, 1.0], None);
        let reports = compare_all(&p, tol()).unwrap();
        assert_eq!(reports.len(), 9);
        assert!(reports.windows(2).all(|w| w[0].tightness >= w[1].tightness));
        for f in [Family::PolyaSzego, Family::Ozeki, Family::DiazMetcalf, Family::GreubReinboldt] {
            let r = reports.iter().find(|r| r.family == f).unwrap();
            assert!((r.tightness - 1.0).abs() < 1e-12, "{f}");
        }
        assert!(reports.iter().all(|r| r.hypothesis_ok && !r.is_violation()));
        let t21 = reports.iter().find(|r| r.family == Family::Theorem21).unwrap();
        assert!((t21.tightness - 9.0 / 14.0625).abs() < 1e-12);
    }

    #[test]
    fn compare_constant_dataset() {
        let p = pair(&[1.0, 1.0], &[1.0, 1.0], None);
        for r in compare_all(&p, tol()).unwrap() {
            assert!(r.hypothesis_ok, "{}", r.family);
            match r.params.unwrap() {
                Params::Box(b) => assert!(b.m1 == b.big_m1 && b.m2 == b.big_m2),
                Params::Ratio(q) => assert_eq!(q.m, q.big_m),
                Params::Disk(d) => assert!(d.is_degenerate()),
            }
            // Difference-type families vanish; the others sit at equality.
            assert!(r.tightness == 0.0 || (r.tightness - 1.0).abs() < 1e-12, "{}", r.family);
        }
    }

    #[test]
    fn compare_weighted_dataset() {
        let p = pair(&[1.0, 2.0], &[1.0, 1.0], Some(&[1.0, 2.0]));
        let reports = compare_all(&p, tol()).unwrap();
        for r in &reports {
            if r.family.requires_unit_weights() {
                assert!(!r.hypothesis_ok);
                assert!(r.reason.as_ref().unwrap().contains("unit weights"));
            } else {
                assert!(r.hypothesis_ok, "{}", r.family);
                assert!(r.lhs.is_finite());
            }
        }
        // Inapplicable entries sort last.
        assert!(reports[reports.len() - 4..].iter().all(|r| r.family.requires_unit_weights()));
    }
}
