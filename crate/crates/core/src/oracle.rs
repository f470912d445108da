//! Seeded instance generators and the randomized verification suites.
//!
//! Every trial draws from its own ChaCha8 stream (`seed`, stream = trial
//! index), so results do not depend on how trials are scheduled across
//! threads.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classical::{evaluate_bound, BoxBounds, ConvexSplit, Family, Params, RatioBounds, RatioDirection};
use crate::error::{invalid, Result};
use crate::inner::{schwarz_gap, Mode, Tolerance, WeightedVectorPair};
use crate::reverse::{certify, check_condition, extremal_witness, identity_terms, DiskBound};
use crate::Scalar;

/// Tightness above this is a soundness defect.
pub const TIGHTNESS_CEILING: f64 = 1.0 + 1e-9;

/// Relative tolerance of the algebraic identity checks.
pub const IDENTITY_REL_TOL: f64 = 1e-10;

/// Share of offsets placed exactly on the disk boundary.
const BOUNDARY_SHARE: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub trials: usize,
    pub dim_range: (usize, usize),
    pub magnitude_range: (f64, f64),
    pub mode: Mode,
}

impl FuzzConfig {
    pub fn new(seed: u64, trials: usize, dim_range: (usize, usize), magnitude_range: (f64, f64), mode: Mode) -> Result<Self> {
        let cfg = Self {
            seed,
            trials,
            dim_range,
            magnitude_range,
            mode,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let (dmin, dmax) = self.dim_range;
        let (lo, hi) = self.magnitude_range;
        if self.trials == 0 {
            return Err(invalid("trials must be >= 1"));
        }
        if dmin == 0 || dmin > dmax {
            return Err(invalid(format!("dim_range needs 1 <= min <= max, got {:?}", self.dim_range)));
        }
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return Err(invalid(format!(
                "magnitude_range needs 0 < lo <= hi, got {:?}",
                self.magnitude_range
            )));
        }
        Ok(())
    }

    pub fn trial_rng(&self, trial: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial as u64);
        rng
    }
}

/// How condition instances place `x_i / y_i` inside the disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OffsetPolicy {
    /// Uniform in the disk, with a share pinned to the boundary.
    Uniform,
    /// Every ratio at the center, so `x` is parallel to `y`.
    Center,
}

struct Sampler<'c> {
    cfg: &'c FuzzConfig,
    rng: ChaCha8Rng,
}

impl<'c> Sampler<'c> {
    fn new(cfg: &'c FuzzConfig, trial: usize) -> Self {
        Self {
            cfg,
            rng: cfg.trial_rng(trial),
        }
    }

    fn dim(&mut self) -> usize {
        let (lo, hi) = self.cfg.dim_range;
        self.rng.gen_range(lo..=hi)
    }

    fn magnitude(&mut self) -> f64 {
        let (lo, hi) = self.cfg.magnitude_range;
        if lo == hi {
            lo
        } else {
            self.rng.gen_range(lo..=hi)
        }
    }

    fn unit_direction(&mut self) -> Scalar {
        match self.cfg.mode {
            Mode::Real => Scalar::new(if self.rng.gen_bool(0.5) { 1.0 } else { -1.0 }, 0.0),
            Mode::Complex => Scalar::from_polar(1.0, self.rng.gen_range(0.0..std::f64::consts::TAU)),
        }
    }

    /// Random sign or phase times a magnitude from the configured range.
    fn scalar(&mut self) -> Scalar {
        let m = self.magnitude();
        self.unit_direction() * m
    }

    /// Uniform in `[-hi, hi]` (real) or the disk of radius `hi` (complex).
    fn box_scalar(&mut self) -> Scalar {
        let hi = self.cfg.magnitude_range.1;
        match self.cfg.mode {
            Mode::Real => Scalar::new(self.rng.gen_range(-hi..=hi), 0.0),
            Mode::Complex => Scalar::new(self.rng.gen_range(-hi..=hi), self.rng.gen_range(-hi..=hi)),
        }
    }

    fn weights(&mut self, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.rng.gen_range(0.5..=2.0)).collect()
    }

    fn offset(&mut self, policy: OffsetPolicy) -> Scalar {
        if policy == OffsetPolicy::Center {
            return Scalar::new(0.0, 0.0);
        }
        let on_boundary = self.rng.gen_bool(BOUNDARY_SHARE);
        match self.cfg.mode {
            Mode::Real if on_boundary => self.unit_direction(),
            Mode::Real => Scalar::new(self.rng.gen_range(-1.0..=1.0), 0.0),
            Mode::Complex => {
                let radius = if on_boundary {
                    1.0
                } else {
                    self.rng.gen_range(0.0f64..=1.0).sqrt()
                };
                self.unit_direction() * radius
            }
        }
    }

    /// Center from the magnitude range, radius from the magnitude range and,
    /// in complex mode, a random orientation of the diameter.
    fn disk(&mut self) -> DiskBound {
        let center = self.scalar();
        let radius = self.magnitude();
        let dir = match self.cfg.mode {
            Mode::Real => Scalar::new(1.0, 0.0),
            Mode::Complex => self.unit_direction(),
        };
        DiskBound::new(center - dir * radius, center + dir * radius).expect("finite sample")
    }
}

/// Instance for trial `trial` whose ratios `x_i / y_i` all lie in the disk.
pub fn condition_instance(cfg: &FuzzConfig, trial: usize, policy: OffsetPolicy) -> (WeightedVectorPair, DiskBound) {
    let mut s = Sampler::new(cfg, trial);
    let n = s.dim();
    let disk = s.disk();
    let (c, r) = (disk.center(), disk.radius());
    let y: Vec<Scalar> = (0..n).map(|_| s.scalar()).collect();
    let x: Vec<Scalar> = y
        .iter()
        .map(|&yi| {
            let z = s.offset(policy);
            c * yi + z * r * yi
        })
        .collect();
    let w = s.weights(n);
    let pair = WeightedVectorPair::new(cfg.mode, x, y, Some(w)).expect("generated pair is valid");
    (pair, disk)
}

/// First instance of the stream for `cfg`.
pub fn gen_condition_instance(cfg: &FuzzConfig) -> (WeightedVectorPair, DiskBound) {
    condition_instance(cfg, 0, OffsetPolicy::Uniform)
}

/// Unconstrained instance: `x`, `y` and the disk endpoints uniform in the
/// magnitude box, some weights zero.
pub fn free_instance(cfg: &FuzzConfig, trial: usize) -> (WeightedVectorPair, DiskBound) {
    let mut s = Sampler::new(cfg, trial);
    let n = s.dim();
    let x: Vec<Scalar> = (0..n).map(|_| s.box_scalar()).collect();
    let y: Vec<Scalar> = (0..n).map(|_| s.box_scalar()).collect();
    let w: Vec<f64> = (0..n)
        .map(|_| if s.rng.gen_bool(0.1) { 0.0 } else { s.rng.gen_range(0.0..=2.0) })
        .collect();
    let disk = DiskBound::new(s.box_scalar(), s.box_scalar()).expect("finite sample");
    let pair = WeightedVectorPair::new(cfg.mode, x, y, Some(w)).expect("generated pair is valid");
    (pair, disk)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpnessResult {
    pub max_tightness: f64,
    /// `{"pair": ..., "disk": ...}` of the maximizing instance.
    pub argmax_instance: serde_json::Value,
    pub argmax_trial: usize,
    pub trials_run: usize,
    pub witnesses_evaluated: usize,
    /// Instances with tightness above [`TIGHTNESS_CEILING`].
    pub over_ceiling: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub offsets: OffsetPolicy,
    pub include_witness: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            offsets: OffsetPolicy::Uniform,
            include_witness: true,
        }
    }
}

pub fn sharpness_search(cfg: &FuzzConfig, tol: Tolerance) -> Result<SharpnessResult> {
    sharpness_search_with(cfg, SearchOptions::default(), tol)
}

/// Maximum tightness over condition-satisfying random instances and, when
/// enabled, the extremal witness built from each instance's `y` and disk.
pub fn sharpness_search_with(cfg: &FuzzConfig, opts: SearchOptions, tol: Tolerance) -> Result<SharpnessResult> {
    cfg.validate()?;
    if cfg.dim_range.0 < 2 {
        return Err(invalid("sharpness search needs dim >= 2 for the extremal witness"));
    }

    struct Candidate {
        trial: usize,
        tightness: f64,
        pair: WeightedVectorPair,
        disk: DiskBound,
        over: usize,
        witnesses: usize,
    }

    let best = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let (pair, disk) = condition_instance(cfg, trial, opts.offsets);
            let cb = certify(&pair, &disk, tol);
            debug_assert!(cb.condition.satisfied);
            let mut cand = Candidate {
                trial,
                tightness: cb.tightness,
                over: usize::from(cb.tightness > TIGHTNESS_CEILING),
                pair,
                disk,
                witnesses: 0,
            };
            if opts.include_witness {
                if let Ok(wit) = extremal_witness(cand.pair.y(), cand.pair.w(), &disk) {
                    let wt = certify(&wit, &disk, tol).tightness;
                    cand.witnesses = 1;
                    cand.over += usize::from(wt > TIGHTNESS_CEILING);
                    if wt > cand.tightness {
                        cand.tightness = wt;
                        cand.pair = wit;
                    }
                }
            }
            cand
        })
        .reduce_with(|a, b| {
            let (over, witnesses) = (a.over + b.over, a.witnesses + b.witnesses);
            let keep_b = b.tightness > a.tightness || (b.tightness == a.tightness && b.trial < a.trial);
            let mut winner = if keep_b { b } else { a };
            winner.over = over;
            winner.witnesses = witnesses;
            winner
        })
        .expect("trials >= 1");

    Ok(SharpnessResult {
        max_tightness: best.tightness,
        argmax_instance: serde_json::json!({ "pair": best.pair, "disk": best.disk }),
        argmax_trial: best.trial,
        trials_run: cfg.trials,
        witnesses_evaluated: best.witnesses,
        over_ceiling: best.over,
    })
}

/// Relative residuals of the two algebraic identities on one instance:
/// `I1 - I2 = gap` and `Re<Ay-x, x-ay> = r^2|y|^2 - |x - cy|^2`.
///
/// Residuals are measured against the magnitude of the uncancelled terms,
/// `S = (|x| + (|a| + |A|)|y|)^2` for the condition forms and `|y|^2 S` for
/// the gap identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityResiduals {
    pub identity: f64,
    pub equivalence: f64,
}

pub fn identity_residuals(pair: &WeightedVectorPair, disk: &DiskBound, tol: Tolerance) -> IdentityResiduals {
    let terms = identity_terms(pair, disk);
    let gap = schwarz_gap(pair);
    let cond = check_condition(pair, disk, tol);
    let spread = disk.lower.norm() + disk.upper.norm();
    let s = (gap.norm_x_sq.sqrt() + spread * gap.norm_y_sq.sqrt()).powi(2);
    let rel = |diff: f64, scale: f64| {
        if diff == 0.0 {
            0.0
        } else {
            diff.abs() / scale.max(f64::MIN_POSITIVE)
        }
    };
    IdentityResiduals {
        identity: rel(terms.difference() - gap.gap, gap.norm_y_sq * s),
        equivalence: rel(cond.aggregate_re - cond.ball_residual, s),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentitySummary {
    pub trials: usize,
    pub identity_failures: usize,
    pub equivalence_failures: usize,
    pub worst_identity: f64,
    pub worst_equivalence: f64,
}

impl IdentitySummary {
    pub fn passed(&self) -> bool {
        self.identity_failures == 0 && self.equivalence_failures == 0
    }

    fn from_residuals(res: &[IdentityResiduals]) -> Self {
        Self {
            trials: res.len(),
            identity_failures: res.iter().filter(|r| !(r.identity <= IDENTITY_REL_TOL)).count(),
            equivalence_failures: res.iter().filter(|r| !(r.equivalence <= IDENTITY_REL_TOL)).count(),
            worst_identity: res.iter().map(|r| r.identity).fold(0.0, f64::max),
            worst_equivalence: res.iter().map(|r| r.equivalence).fold(0.0, f64::max),
        }
    }
}

/// Checks both identities on `cfg.trials` unconstrained instances.
pub fn verify_identity_suite(cfg: &FuzzConfig, tol: Tolerance) -> Result<IdentitySummary> {
    cfg.validate()?;
    let res: Vec<IdentityResiduals> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let (pair, disk) = free_instance(cfg, trial);
            identity_residuals(&pair, &disk, tol)
        })
        .collect();
    Ok(IdentitySummary::from_residuals(&res))
}

/// Same check on caller-supplied instances.
pub fn verify_identity_instances(instances: &[(WeightedVectorPair, DiskBound)], tol: Tolerance) -> IdentitySummary {
    let res: Vec<IdentityResiduals> = instances.iter().map(|(p, d)| identity_residuals(p, d, tol)).collect();
    IdentitySummary::from_residuals(&res)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SoundnessSummary {
    pub trials: usize,
    pub unsatisfied: usize,
    pub violations: usize,
    pub max_tightness: f64,
}

/// Certifies `cfg.trials` condition instances and counts any that fail the
/// condition or exceed the bound.
pub fn verify_soundness(cfg: &FuzzConfig, tol: Tolerance) -> Result<SoundnessSummary> {
    cfg.validate()?;
    let results: Vec<(bool, bool, f64)> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let (pair, disk) = condition_instance(cfg, trial, OffsetPolicy::Uniform);
            let cb = certify(&pair, &disk, tol);
            (cb.condition.satisfied, cb.gap > cb.bound + cb.condition.tol_scale, cb.tightness)
        })
        .collect();
    Ok(SoundnessSummary {
        trials: results.len(),
        unsatisfied: results.iter().filter(|r| !r.0).count(),
        violations: results.iter().filter(|r| r.1).count(),
        max_tightness: results.iter().map(|r| r.2).fold(0.0, f64::max),
    })
}

/// A positive real instance satisfying `family`'s hypothesis by
/// construction, with the constants it was drawn from.
pub fn classical_instance(
    family: Family,
    cfg: &FuzzConfig,
    trial: usize,
) -> (WeightedVectorPair, Params, Option<ConvexSplit>) {
    let mut rng = cfg.trial_rng(trial);
    let (lo, hi) = cfg.magnitude_range;
    let (dmin, dmax) = cfg.dim_range;
    let n = rng.gen_range(dmin..=dmax);

    let band = |rng: &mut ChaCha8Rng| {
        let m = rng.gen_range(lo..=hi);
        let spread = rng.gen_range(1.0..=10.0);
        (m, m * spread)
    };
    let draw = |rng: &mut ChaCha8Rng, lo: f64, hi: f64| {
        let u: f64 = rng.gen();
        if u < 0.1 {
            lo
        } else if u < 0.2 {
            hi
        } else {
            rng.gen_range(lo..=hi)
        }
    };

    let weights = if family.requires_unit_weights() {
        None
    } else {
        Some((0..n).map(|_| rng.gen_range(0.1..=3.0)).collect::<Vec<f64>>())
    };

    let (a, b, params) = match family.ratio_direction() {
        None => {
            let (m1, big_m1) = band(&mut rng);
            let (m2, big_m2) = band(&mut rng);
            let a: Vec<f64> = (0..n).map(|_| draw(&mut rng, m1, big_m1)).collect();
            let b: Vec<f64> = (0..n).map(|_| draw(&mut rng, m2, big_m2)).collect();
            (a, b, Params::Box(BoxBounds::new(m1, big_m1, m2, big_m2).expect("valid band")))
        }
        Some(dir) => {
            let (m, big_m) = band(&mut rng);
            let base: Vec<f64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
            let scaled: Vec<f64> = base.iter().map(|v| v * draw(&mut rng, m, big_m)).collect();
            let (a, b) = match dir {
                RatioDirection::AOverB => (scaled, base),
                RatioDirection::BOverA => (base, scaled),
            };
            (a, b, Params::Ratio(RatioBounds::new(m, big_m).expect("valid band")))
        }
    };
    let split = (family == Family::GenDiazMetcalf).then(|| {
        let v = rng.gen_range(0.0..=0.5);
        ConvexSplit::new(1.0 - v, v).expect("valid split")
    });
    let pair = WeightedVectorPair::real_weighted(a, b, weights).expect("positive finite data");
    (pair, params, split)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySummary {
    pub family: Family,
    pub trials: usize,
    pub hypothesis_failures: usize,
    pub violations: usize,
    pub max_tightness: f64,
}

/// Validity fuzz for each classical family.
pub fn classical_validity_suite(cfg: &FuzzConfig, tol: Tolerance) -> Result<Vec<FamilySummary>> {
    cfg.validate()?;
    Family::CLASSICAL
        .iter()
        .map(|&family| {
            let reports = (0..cfg.trials)
                .into_par_iter()
                .map(|trial| {
                    let (pair, params, split) = classical_instance(family, cfg, trial);
                    evaluate_bound(family, &pair, &params, split, tol)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(FamilySummary {
                family,
                trials: reports.len(),
                hypothesis_failures: reports.iter().filter(|r| !r.hypothesis_ok).count(),
                violations: reports.iter().filter(|r| r.is_violation()).count(),
                max_tightness: reports.iter().map(|r| r.tightness).fold(0.0, f64::max),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(mode: Mode, trials: usize) -> FuzzConfig {
        FuzzConfig::new(42, trials, (2, 8), (0.1, 10.0), mode).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(FuzzConfig::new(1, 0, (1, 2), (0.1, 1.0), Mode::Real).is_err());
        assert!(FuzzConfig::new(1, 1, (0, 2), (0.1, 1.0), Mode::Real).is_err());
        assert!(FuzzConfig::new(1, 1, (3, 2), (0.1, 1.0), Mode::Real).is_err());
        assert!(FuzzConfig::new(1, 1, (1, 2), (0.0, 1.0), Mode::Real).is_err());
    }

    #[test]
    fn seed_42_instance_satisfies_condition() {
        let c = FuzzConfig::new(42, 1, (4, 4), (0.1, 10.0), Mode::Real).unwrap();
        let (pair, disk) = gen_condition_instance(&c);
        assert_eq!(pair.len(), 4);
        let d = check_condition(&pair, &disk, Tolerance::default());
        assert!(d.satisfied && d.pointwise_ok);
    }

    #[test]
    fn generation_is_deterministic() {
        for mode in [Mode::Real, Mode::Complex] {
            let c = cfg(mode, 1);
            let a = serde_json::to_string(&gen_condition_instance(&c)).unwrap();
            let b = serde_json::to_string(&gen_condition_instance(&c)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn center_offsets_give_parallel_vectors() {
        let c = cfg(Mode::Complex, 1);
        let (pair, disk) = condition_instance(&c, 3, OffsetPolicy::Center);
        let cb = certify(&pair, &disk, Tolerance::default());
        assert!(cb.condition.satisfied);
        assert!(cb.tightness < 1e-20);
        for (x, y) in pair.x().iter().zip(pair.y()) {
            assert!((x / y - disk.center()).norm() < 1e-12 * (1.0 + disk.center().norm()));
        }
    }

    #[test]
    fn generator_soundness_and_coverage() {
        for mode in [Mode::Real, Mode::Complex] {
            let c = cfg(mode, 2000);
            let (mut draws, mut near_edge) = (0usize, 0usize);
            for t in 0..c.trials {
                let (pair, disk) = condition_instance(&c, t, OffsetPolicy::Uniform);
                assert!(check_condition(&pair, &disk, Tolerance::default()).satisfied);
                for (x, y) in pair.x().iter().zip(pair.y()) {
                    let z = (x / y - disk.center()) / disk.radius();
                    draws += 1;
                    near_edge += usize::from(z.norm() > 0.99);
                }
            }
            assert!(near_edge * 100 >= draws, "{mode:?}: {near_edge}/{draws}");
        }
    }

    #[test]
    fn degenerate_identity_instances() {
        let zero = WeightedVectorPair::real(vec![0.0; 3], vec![0.0; 3]).unwrap();
        let disk = DiskBound::real(-2.0, 5.0).unwrap();
        let s = verify_identity_instances(&[(zero, disk)], Tolerance::default());
        assert!(s.passed());

        let pair = WeightedVectorPair::real(vec![1.0, -3.0], vec![2.0, 0.5]).unwrap();
        let flat = DiskBound::real(1.5, 1.5).unwrap();
        assert_eq!(certify(&pair, &flat, Tolerance::default()).bound, 0.0);
        let s = verify_identity_instances(&[(pair, flat)], Tolerance::default());
        assert!(s.passed());
    }

    #[test]
    fn small_suites() {
        let tol = Tolerance::default();
        assert!(verify_identity_suite(&cfg(Mode::Complex, 200), tol).unwrap().passed());
        let s = verify_soundness(&cfg(Mode::Real, 200), tol).unwrap();
        assert_eq!((s.unsatisfied, s.violations), (0, 0));
        let r = sharpness_search(&cfg(Mode::Complex, 50), tol).unwrap();
        assert!((r.max_tightness - 1.0).abs() < 1e-12);
        assert_eq!(r.over_ceiling, 0);
        assert_eq!(r.witnesses_evaluated, 50);
        for f in classical_validity_suite(&cfg(Mode::Real, 100), tol).unwrap() {
            assert_eq!((f.hypothesis_failures, f.violations), (0, 0), "{}", f.family);
        }
    }

    #[test]
    fn sharpness_rejects_dim_one() {
        let c = FuzzConfig::new(1, 5, (1, 4), (0.1, 10.0), Mode::Real).unwrap();
        assert!(sharpness_search(&c, Tolerance::default()).is_err());
    }
}
