//! Minimal enclosing disk of points in the complex plane.
//!
//! Iterative move-to-front form of Welzl's algorithm over a seeded shuffle,
//! expected O(n).

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::Scalar;

/// Relative slack for the containment test inside the incremental loops.
const CONTAIN_EPS: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: Scalar,
    pub radius: f64,
}

impl Disk {
    fn from_point(p: Scalar) -> Self {
        Self {
            center: p,
            radius: 0.0,
        }
    }

    fn from_diameter(p: Scalar, q: Scalar) -> Self {
        let center = (p + q) * 0.5;
        Self {
            center,
            radius: (p - center).norm().max((q - center).norm()),
        }
    }

    /// Circumscribed disk; falls back to the widest pair for (near) collinear input.
    fn from_triangle(p: Scalar, q: Scalar, r: Scalar) -> Self {
        let b = q - p;
        let c = r - p;
        let d = 2.0 * (b.re * c.im - b.im * c.re);
        let scale = b.norm_sqr().max(c.norm_sqr());
        if d.abs() <= 1e-15 * scale {
            return [Self::from_diameter(p, q), Self::from_diameter(p, r), Self::from_diameter(q, r)]
                .into_iter()
                .max_by(|u, v| u.radius.total_cmp(&v.radius))
                .expect("three candidates");
        }
        let (b2, c2) = (b.norm_sqr(), c.norm_sqr());
        let u = Scalar::new((c.im * b2 - b.im * c2) / d, (b.re * c2 - c.re * b2) / d);
        let center = p + u;
        let radius = [p, q, r]
            .iter()
            .map(|z| (z - center).norm())
            .fold(0.0, f64::max);
        Self { center, radius }
    }

    pub fn contains(&self, p: Scalar) -> bool {
        (p - self.center).norm() <= self.radius * (1.0 + CONTAIN_EPS) + f64::MIN_POSITIVE
    }
}

/// Smallest disk containing every point. Returns `None` for an empty set.
///
/// The seed only fixes the processing order; the disk is unique, so the
/// result differs between seeds by rounding at most.
pub fn min_enclosing_disk(points: &[Scalar], seed: u64) -> Option<Disk> {
    if points.is_empty() {
        return None;
    }
    let mut pts = points.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pts.shuffle(&mut rng);

    let mut disk = Disk::from_point(pts[0]);
    for i in 1..pts.len() {
        if disk.contains(pts[i]) {
            continue;
        }
        disk = Disk::from_point(pts[i]);
        for j in 0..i {
            if disk.contains(pts[j]) {
                continue;
            }
            disk = Disk::from_diameter(pts[i], pts[j]);
            for k in 0..j {
                if !disk.contains(pts[k]) {
                    disk = Disk::from_triangle(pts[i], pts[j], pts[k]);
                }
            }
        }
    }

    // Make containment exact with respect to the final center.
    disk.radius = points
        .iter()
        .map(|p| (p - disk.center).norm())
        .fold(0.0, f64::max);
    Some(disk)
}
