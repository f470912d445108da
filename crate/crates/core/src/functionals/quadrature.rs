use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::summation::pairwise_sum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureKind {
    CompositeSimpson,
    GaussLegendre,
}

/// Nodes and positive weights on `[alpha, beta]`; weights sum to the
/// interval length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub kind: QuadratureKind,
    pub interval: (f64, f64),
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn sample<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        self.nodes.iter().map(|&s| f(s)).collect()
    }

    /// `sum_k weight_k * values_k`.
    pub fn integrate(&self, values: &[f64]) -> Result<f64> {
        if values.len() != self.nodes.len() {
            return Err(invalid(format!(
                "expected {} node values, got {}",
                self.nodes.len(),
                values.len()
            )));
        }
        let terms: Vec<f64> = self.weights.iter().zip(values).map(|(w, v)| w * v).collect();
        Ok(pairwise_sum(&terms))
    }
}

/// Builds a rule on `interval`.
///
/// For `CompositeSimpson`, `n` is the number of panels (each panel spans two
/// subintervals, so there are `2n + 1` nodes). For `GaussLegendre`, `n` is
/// the number of nodes, exact through degree `2n - 1`.
pub fn build_quadrature(kind: QuadratureKind, interval: (f64, f64), n: usize) -> Result<QuadratureRule> {
    let (alpha, beta) = interval;
    if !(alpha.is_finite() && beta.is_finite() && alpha < beta) {
        return Err(invalid(format!("interval needs finite alpha < beta, got [{alpha}, {beta}]")));
    }
    if n == 0 {
        return Err(invalid("panel/order count must be positive"));
    }
    let (nodes, weights) = match kind {
        QuadratureKind::CompositeSimpson => simpson(alpha, beta, n),
        QuadratureKind::GaussLegendre => {
            let (t, w) = gauss_legendre_reference(n);
            let half = 0.5 * (beta - alpha);
            let mid = 0.5 * (alpha + beta);
            (
                t.iter().map(|ti| mid + half * ti).collect(),
                w.iter().map(|wi| half * wi).collect(),
            )
        }
    };
    Ok(QuadratureRule {
        kind,
        interval,
        nodes,
        weights,
    })
}

fn simpson(alpha: f64, beta: f64, panels: usize) -> (Vec<f64>, Vec<f64>) {
    let intervals = 2 * panels;
    let h = (beta - alpha) / intervals as f64;
    let third = h / 3.0;
    let mut nodes = Vec::with_capacity(intervals + 1);
    let mut weights = Vec::with_capacity(intervals + 1);
    for i in 0..=intervals {
        nodes.push(if i == intervals { beta } else { alpha + i as f64 * h });
        let c = if i == 0 || i == intervals {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        weights.push(c * third);
    }
    (nodes, weights)
}

/// Nodes (ascending) and weights on `[-1, 1]` by Newton iteration on the
/// Legendre polynomial from Chebyshev starting guesses.
fn gauss_legendre_reference(order: usize) -> (Vec<f64>, Vec<f64>) {
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut t = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, t);
            dp = d;
            let step = p / d;
            t -= step;
            if step.abs() <= 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, t);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - t * t) * dp * dp);
        nodes[i] = -t;
        nodes[n - 1 - i] = t;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// `(P_n(t), P_n'(t))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, t: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, t);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let prev = if n == 0 { 0.0 } else { p0 };
    (p, n as f64 * (t * p - prev) / (t * t - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_rule(rule: &QuadratureRule) {
        let (a, b) = rule.interval;
        let total = pairwise_sum(&rule.weights);
        assert!((total - (b - a)).abs() <= 1e-12 * (b - a));
        assert!(rule.weights.iter().all(|&w| w > 0.0));
        assert!(rule.nodes.windows(2).all(|p| p[0] < p[1]));
        assert!(rule.nodes.iter().all(|&s| a <= s && s <= b));
    }

    #[test]
    fn simpson_single_panel() {
        let r = build_quadrature(QuadratureKind::CompositeSimpson, (0.0, 1.0), 1).unwrap();
        assert_eq!(r.nodes, vec![0.0, 0.5, 1.0]);
        let expect = [1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0];
        for (w, e) in r.weights.iter().zip(expect) {
            assert!((w - e).abs() < 1e-16);
        }
        let sq = r.integrate(&r.sample(|s| s * s)).unwrap();
        assert!((sq - 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn gauss_two_point() {
        let r = build_quadrature(QuadratureKind::GaussLegendre, (-1.0, 1.0), 2).unwrap();
        let t = 1.0 / 3f64.sqrt();
        assert!((r.nodes[0] + t).abs() < 1e-15 && (r.nodes[1] - t).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15 && (r.weights[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn constant_integrates_to_length() {
        for kind in [QuadratureKind::CompositeSimpson, QuadratureKind::GaussLegendre] {
            for n in [1, 2, 5, 16, 33] {
                let r = build_quadrature(kind, (-0.5, 2.25), n).unwrap();
                check_rule(&r);
                let one = r.integrate(&vec![1.0; r.len()]).unwrap();
                assert!((one - 2.75).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn simpson_cubic_exactness() {
        for panels in [1, 3, 10, 100] {
            let r = build_quadrature(QuadratureKind::CompositeSimpson, (-1.0, 2.0), panels).unwrap();
            for deg in 0..=3 {
                let got = r.integrate(&r.sample(|s| s.powi(deg))).unwrap();
                let exact = (2f64.powi(deg + 1) - (-1f64).powi(deg + 1)) / (deg + 1) as f64;
                assert!((got - exact).abs() <= 1e-12 * exact.abs().max(1.0), "deg {deg}");
            }
        }
    }

    #[test]
    fn gauss_exactness_degree() {
        for q in 1..=12usize {
            let r = build_quadrature(QuadratureKind::GaussLegendre, (0.0, 1.0), q).unwrap();
            check_rule(&r);
            for deg in 0..=(2 * q - 1) as i32 {
                let got = r.integrate(&r.sample(|s| s.powi(deg))).unwrap();
                let exact = 1.0 / (deg + 1) as f64;
                assert!((got - exact).abs() <= 1e-12 * exact, "q {q} deg {deg}");
            }
            // Not exact one degree higher.
            let deg = 2 * q as i32;
            let got = r.integrate(&r.sample(|s| s.powi(deg))).unwrap();
            assert!((got - 1.0 / (deg + 1) as f64).abs() > 1e-15);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(build_quadrature(QuadratureKind::CompositeSimpson, (1.0, 1.0), 4).is_err());
        assert!(build_quadrature(QuadratureKind::GaussLegendre, (0.0, 1.0), 0).is_err());
        assert!(build_quadrature(QuadratureKind::CompositeSimpson, (0.0, f64::INFINITY), 4).is_err());
        let r = build_quadrature(QuadratureKind::CompositeSimpson, (0.0, 1.0), 2).unwrap();
        assert!(r.integrate(&[1.0]).is_err());
    }
}
