//! Isotonic linear functionals on finite sample sets, and weighted integrals
//! realized by quadrature.
//!
//! On a finite sample set every isotonic linear functional is a nonnegative
//! weighted sum `A(f) = sum_t w_t f(t)`, so the weighted-sum form is the
//! whole story here. Integrals enter as the same weighted sums with
//! quadrature weights times the density, which makes the certificate exact
//! for the discrete sums and approximate for the continuum integral.

pub mod quadrature;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::inner::{Mode, Tolerance, WeightedVectorPair};
use crate::reverse::{certify, CertifiedBound, DiskBound};
use crate::summation::pairwise_sum;
use crate::Scalar;

pub use quadrature::{build_quadrature, QuadratureKind, QuadratureRule};

/// `A(f) = sum_t w_t f_t` with `w_t >= 0`, `sum w_t > 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteFunctional {
    sample_weights: Vec<f64>,
    normalised: bool,
}

impl DiscreteFunctional {
    pub fn new(sample_weights: Vec<f64>) -> Result<Self> {
        if let Some(i) = sample_weights.iter().position(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(invalid(format!("sample weight {i} is negative or non-finite")));
        }
        let total = pairwise_sum(&sample_weights);
        if !(total > 0.0) {
            return Err(invalid("sample weights must have a positive sum"));
        }
        Ok(Self {
            normalised: (total - 1.0).abs() <= 1e-12,
            sample_weights,
        })
    }

    /// Rescales so that `A(1) = 1`.
    pub fn normalised(sample_weights: Vec<f64>) -> Result<Self> {
        let raw = Self::new(sample_weights)?;
        let total = pairwise_sum(&raw.sample_weights);
        Ok(Self {
            sample_weights: raw.sample_weights.iter().map(|w| w / total).collect(),
            normalised: true,
        })
    }

    pub fn sample_weights(&self) -> &[f64] {
        &self.sample_weights
    }

    pub fn is_normalised(&self) -> bool {
        self.normalised
    }

    pub fn len(&self) -> usize {
        self.sample_weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sample_weights.is_empty()
    }
}

pub fn functional_apply(functional: &DiscreteFunctional, f: &[f64]) -> Result<f64> {
    if f.len() != functional.len() {
        return Err(invalid(format!("expected {} samples, got {}", functional.len(), f.len())));
    }
    if f.iter().any(|v| !v.is_finite()) {
        return Err(invalid("non-finite sample value"));
    }
    let terms: Vec<f64> = functional.sample_weights.iter().zip(f).map(|(w, v)| w * v).collect();
    Ok(pairwise_sum(&terms))
}

/// Real samples `f`, `g` and a nonnegative density `h` on one sample set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledTriple {
    pub f: Vec<f64>,
    pub g: Vec<f64>,
    pub h: Vec<f64>,
}

impl SampledTriple {
    pub fn new(f: Vec<f64>, g: Vec<f64>, h: Vec<f64>) -> Result<Self> {
        if f.len() != g.len() || f.len() != h.len() {
            return Err(invalid("f, g and h must have equal lengths"));
        }
        if f.iter().chain(&g).chain(&h).any(|v| !v.is_finite()) {
            return Err(invalid("non-finite sample value"));
        }
        if let Some(t) = h.iter().position(|v| *v < 0.0) {
            return Err(invalid(format!("h is negative at sample {t}")));
        }
        Ok(Self { f, g, h })
    }

    /// `h = 1` everywhere.
    pub fn unweighted(f: Vec<f64>, g: Vec<f64>) -> Result<Self> {
        let h = vec![1.0; f.len()];
        Self::new(f, g, h)
    }
}

fn check_lengths(functional: &DiscreteFunctional, triple: &SampledTriple) -> Result<()> {
    if triple.f.len() != functional.len() {
        return Err(invalid(format!(
            "functional has {} samples, triple has {}",
            functional.len(),
            triple.f.len()
        )));
    }
    Ok(())
}

fn positive_mass(functional: &DiscreteFunctional, triple: &SampledTriple) -> Result<f64> {
    check_lengths(functional, triple)?;
    let mass = functional_apply(functional, &triple.h)?;
    if !(mass > 0.0) {
        return Err(Error::DegenerateWeight(mass));
    }
    Ok(mass)
}

/// `(f, g)_{A,h} = A(fgh) / A(h)`.
pub fn inner_a_h(functional: &DiscreteFunctional, triple: &SampledTriple) -> Result<f64> {
    let mass = positive_mass(functional, triple)?;
    let fgh: Vec<f64> = (0..triple.f.len()).map(|t| triple.f[t] * triple.g[t] * triple.h[t]).collect();
    Ok(functional_apply(functional, &fgh)? / mass)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionMode {
    /// `m g <= f <= M g` at every sample, weighted or not.
    Pointwise,
    /// `A[h (M g - f)(f - m g)] >= 0`.
    Weak,
}

/// `A(hf^2) A(hg^2) - A(hfg)^2 <= 1/4 (M - m)^2 A(hg^2)^2`.
///
/// The quantities are those of the weighted pair `(f, g)` with weights
/// `w_t h_t` and the real disk `[m, M]`; only the notion of "condition
/// satisfied" depends on `mode`.
pub fn certify_functional(
    functional: &DiscreteFunctional,
    triple: &SampledTriple,
    m: f64,
    big_m: f64,
    mode: ConditionMode,
    tol: Tolerance,
) -> Result<CertifiedBound> {
    positive_mass(functional, triple)?;
    if !(m <= big_m) {
        return Err(invalid(format!("need m <= M, got m = {m}, M = {big_m}")));
    }
    let weights: Vec<f64> = functional
        .sample_weights
        .iter()
        .zip(&triple.h)
        .map(|(w, h)| w * h)
        .collect();
    let pair = WeightedVectorPair::real_weighted(triple.f.clone(), triple.g.clone(), Some(weights))?;
    let disk = DiskBound::real(m, big_m)?;
    let mut cb = certify(&pair, &disk, tol);

    let slack = |v: f64| tol.rel_tol * (1.0 + v.abs());
    let pointwise = triple
        .f
        .iter()
        .zip(&triple.g)
        .all(|(&f, &g)| m * g <= f + slack(f) && f <= big_m * g + slack(f));
    cb.condition.pointwise_ok = pointwise;
    cb.condition.satisfied = match mode {
        ConditionMode::Pointwise => pointwise,
        ConditionMode::Weak => pointwise || cb.condition.aggregate_re >= -cb.condition.tol_scale,
    };
    Ok(cb)
}

/// A disk certificate on quadrature-weighted samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralCertificate {
    pub certificate: CertifiedBound,
    pub rule: QuadratureKind,
    pub nodes: usize,
    /// States that the certificate binds the discrete sums; the continuum
    /// integrals are matched only up to quadrature error.
    pub note: String,
}

/// Certifies `f`, `g` sampled at the rule's nodes with density `rho`, using
/// combined weights `weight_k * rho_k`.
pub fn certify_integral(
    rule: &QuadratureRule,
    f: &[Scalar],
    g: &[Scalar],
    rho: &[f64],
    disk: &DiskBound,
    tol: Tolerance,
) -> Result<IntegralCertificate> {
    let n = rule.len();
    if f.len() != n || g.len() != n || rho.len() != n {
        return Err(invalid(format!("expected {n} node values for f, g and rho")));
    }
    if let Some(k) = rho.iter().position(|r| !(r.is_finite() && *r >= 0.0)) {
        return Err(invalid(format!("rho is negative or non-finite at node {k}")));
    }
    let weights: Vec<f64> = rule.weights.iter().zip(rho).map(|(w, r)| w * r).collect();
    let real = f.iter().chain(g).all(|z| z.im == 0.0);
    let mode = if real { Mode::Real } else { Mode::Complex };
    let pair = WeightedVectorPair::new(mode, f.to_vec(), g.to_vec(), Some(weights))?;
    Ok(IntegralCertificate {
        certificate: certify(&pair, disk, tol),
        rule: rule.kind,
        nodes: n,
        note: format!(
            "exact for the {n}-node {} sums; approximates the integrals up to quadrature error",
            match rule.kind {
                QuadratureKind::CompositeSimpson => "composite Simpson",
                QuadratureKind::GaussLegendre => "Gauss-Legendre",
            }
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn lift(v: Vec<f64>) -> Vec<Scalar> {
        v.into_iter().map(|re| Scalar::new(re, 0.0)).collect()
    }

    #[test]
    fn apply_examples() {
        let f = DiscreteFunctional::new(vec![1.0, 1.0]).unwrap();
        assert_eq!(functional_apply(&f, &[1.0, 2.0]).unwrap(), 3.0);
        let f = DiscreteFunctional::new(vec![0.5, 0.5]).unwrap();
        assert!(f.is_normalised());
        assert_eq!(functional_apply(&f, &[7.25, 7.25]).unwrap(), 7.25);
        let f = DiscreteFunctional::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(functional_apply(&f, &[4.0, 99.0]).unwrap(), 4.0);
        assert!(functional_apply(&f, &[1.0]).is_err());
    }

    #[test]
    fn functional_validation() {
        assert!(DiscreteFunctional::new(vec![0.0, 0.0]).is_err());
        assert!(DiscreteFunctional::new(vec![1.0, -0.5]).is_err());
        let n = DiscreteFunctional::normalised(vec![2.0, 6.0]).unwrap();
        assert_eq!(n.sample_weights(), &[0.25, 0.75]);
        assert!(n.is_normalised());
    }

    #[test]
    fn inner_examples() {
        let f = DiscreteFunctional::new(vec![1.0, 1.0]).unwrap();
        let t = SampledTriple::unweighted(vec![1.0, 1.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(inner_a_h(&f, &t).unwrap(), 1.0);
        let t = SampledTriple::unweighted(vec![1.0, 2.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(inner_a_h(&f, &t).unwrap(), 1.5);
        let t = SampledTriple::new(vec![1.0, 2.0], vec![1.0, 1.0], vec![0.0, 0.0]).unwrap();
        assert_eq!(inner_a_h(&f, &t), Err(Error::DegenerateWeight(0.0)));
        assert!(SampledTriple::new(vec![1.0], vec![1.0], vec![-1.0]).is_err());
    }

    #[test]
    fn certify_functional_examples() {
        let f = DiscreteFunctional::new(vec![1.0, 1.0]).unwrap();
        let t = SampledTriple::unweighted(vec![1.0, 2.0], vec![1.0, 1.0]).unwrap();
        let cb = certify_functional(&f, &t, 1.0, 2.0, ConditionMode::Pointwise, tol()).unwrap();
        assert_eq!((cb.gap, cb.bound, cb.tightness), (1.0, 1.0, 1.0));
        assert!(cb.condition.satisfied);

        let t = SampledTriple::unweighted(vec![3.0, -1.5], vec![2.0, -1.0]).unwrap();
        let cb = certify_functional(&f, &t, 1.5, 1.5, ConditionMode::Pointwise, tol());
        // g < 0 with m = M: m g <= f <= M g is equality.
        let cb = cb.unwrap();
        assert_eq!((cb.gap, cb.bound), (0.0, 0.0));
        assert!(cb.condition.satisfied);

        let t = SampledTriple::unweighted(vec![1.0, 2.0], vec![1.0, 1.0]).unwrap();
        let pw = certify_functional(&f, &t, 1.0, 1.5, ConditionMode::Pointwise, tol()).unwrap();
        assert!(!pw.condition.satisfied);
        let weak = certify_functional(&f, &t, 1.0, 1.5, ConditionMode::Weak, tol()).unwrap();
        assert_eq!(weak.condition.aggregate_re, -0.5);
        assert!(!weak.condition.satisfied);

        assert!(certify_functional(&f, &t, 2.0, 1.0, ConditionMode::Weak, tol()).is_err());
    }

    #[test]
    fn weak_condition_without_pointwise() {
        // Sample 3 breaks m g <= f <= M g but carries no weight.
        let f = DiscreteFunctional::new(vec![1.0, 1.0, 0.0]).unwrap();
        let t = SampledTriple::unweighted(vec![1.0, 2.0, 10.0], vec![1.0, 1.0, 1.0]).unwrap();
        let pw = certify_functional(&f, &t, 1.0, 2.0, ConditionMode::Pointwise, tol()).unwrap();
        assert!(!pw.condition.satisfied);
        let weak = certify_functional(&f, &t, 1.0, 2.0, ConditionMode::Weak, tol()).unwrap();
        assert!(weak.condition.satisfied && !weak.condition.pointwise_ok);
        assert!(weak.gap <= weak.bound);
    }

    #[test]
    fn integral_examples() {
        let rule = build_quadrature(QuadratureKind::CompositeSimpson, (0.0, 1.0), 512).unwrap();
        let f = lift(rule.sample(|s| s));
        let g = lift(rule.sample(|_| 1.0));
        let disk = DiskBound::real(0.0, 1.0).unwrap();
        let c = certify_integral(&rule, &f, &g, &vec![1.0; rule.len()], &disk, tol()).unwrap();
        assert!((c.certificate.gap - 1.0 / 12.0).abs() < 1e-10);
        assert!((c.certificate.bound - 0.25).abs() < 1e-15);
        assert!(c.certificate.condition.pointwise_ok);
        assert_eq!(c.nodes, 1025);

        let rho = rule.sample(|s| s);
        let c = certify_integral(&rule, &f, &g, &rho, &disk, tol()).unwrap();
        assert!((c.certificate.gap - 1.0 / 72.0).abs() < 1e-10);
        assert!((c.certificate.bound - 1.0 / 16.0).abs() < 1e-12);

        let same = certify_integral(&rule, &f, &f, &rho, &DiskBound::real(1.0, 1.0).unwrap(), tol()).unwrap();
        assert_eq!((same.certificate.gap, same.certificate.bound), (0.0, 0.0));

        let mut neg = rho.clone();
        neg[3] = -1e-3;
        assert!(certify_integral(&rule, &f, &g, &neg, &disk, tol()).is_err());
        // Zeros in rho are fine.
        let mut zero = rho;
        zero[10] = 0.0;
        assert!(certify_integral(&rule, &f, &g, &zero, &disk, tol()).is_ok());
    }

    fn samples(n: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-10.0f64..10.0, n)
    }

    fn functional_and_pair() -> impl Strategy<Value = (DiscreteFunctional, Vec<f64>, Vec<f64>)> {
        (1usize..20).prop_flat_map(|n| {
            (prop::collection::vec(0.0f64..5.0, n), samples(n), samples(n)).prop_filter_map(
                "positive mass",
                |(w, f, g)| DiscreteFunctional::new(w).ok().map(|d| (d, f, g)),
            )
        })
    }

    proptest! {
        #[test]
        fn isotonic((func, f, g) in functional_and_pair(), bump in prop::collection::vec(0.0f64..3.0, 20)) {
            let upper: Vec<f64> = f.iter().zip(&bump).map(|(v, b)| v + b).collect();
            prop_assert!(functional_apply(&func, &upper).unwrap() >= functional_apply(&func, &f).unwrap());
            let _ = g;
        }

        #[test]
        fn linear((func, f, g) in functional_and_pair(), alpha in -5.0f64..5.0, beta in -5.0f64..5.0) {
            let mix: Vec<f64> = f.iter().zip(&g).map(|(u, v)| alpha * u + beta * v).collect();
            let lhs = functional_apply(&func, &mix).unwrap();
            let rhs = alpha * functional_apply(&func, &f).unwrap() + beta * functional_apply(&func, &g).unwrap();
            let abs: Vec<f64> = f.iter().zip(&g).map(|(u, v)| alpha.abs() * u.abs() + beta.abs() * v.abs()).collect();
            let scale = functional_apply(&func, &abs).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE));
        }

        #[test]
        fn a_h_form((func, f, g) in functional_and_pair(), k in -3.0f64..3.0, hseed in prop::collection::vec(0.0f64..2.0, 20)) {
            let n = f.len();
            let h: Vec<f64> = hseed[..n].iter().map(|v| v + 0.1).collect();
            let ff = SampledTriple::new(f.clone(), f.clone(), h.clone()).unwrap();
            prop_assert!(inner_a_h(&func, &ff).unwrap() >= 0.0);

            let fg = SampledTriple::new(f.clone(), g.clone(), h.clone()).unwrap();
            let gf = SampledTriple::new(g.clone(), f.clone(), h.clone()).unwrap();
            prop_assert_eq!(inner_a_h(&func, &fg).unwrap(), inner_a_h(&func, &gf).unwrap());

            // (k f + g, f) = k (f, f) + (g, f)
            let mixed: Vec<f64> = f.iter().zip(&g).map(|(u, v)| k * u + v).collect();
            let lhs = inner_a_h(&func, &SampledTriple::new(mixed, f.clone(), h.clone()).unwrap()).unwrap();
            let rhs = k * inner_a_h(&func, &ff).unwrap() + inner_a_h(&func, &gf).unwrap();
            let scale = k.abs() * inner_a_h(&func, &ff).unwrap()
                + inner_a_h(&func, &SampledTriple::new(
                    f.iter().map(|v| v.abs()).collect(),
                    g.iter().map(|v| v.abs()).collect(),
                    h,
                ).unwrap()).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE));
        }
    }
}
