//! Disc automorphisms `z ↦ (z - m) / (1 - m̄ z)` used to transport a point
//! of the Poincaré disc to the origin.

use num_complex::Complex64;

use crate::geometry::Point2;

pub(crate) fn to_complex(p: Point2) -> Complex64 {
    Complex64::new(p.x, p.y)
}

pub(crate) fn to_point(z: Complex64) -> Point2 {
    Point2::new(z.re, z.im)
}

/// The automorphism sending `center` to the origin.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Transport {
    m: Complex64,
}

impl Transport {
    pub(crate) fn new(center: Point2) -> Self {
        Self {
            m: to_complex(center),
        }
    }

    pub(crate) fn forward(&self, z: Complex64) -> Complex64 {
        (z - self.m) / (Complex64::new(1.0, 0.0) - self.m.conj() * z)
    }

    pub(crate) fn inverse(&self, w: Complex64) -> Complex64 {
        (w + self.m) / (Complex64::new(1.0, 0.0) + self.m.conj() * w)
    }

    /// `|d/dw inverse(w)|`, the local Euclidean scale of the inverse map.
    pub(crate) fn inverse_scale(&self, w: Complex64) -> f64 {
        let denom = Complex64::new(1.0, 0.0) + self.m.conj() * w;
        (1.0 - self.m.norm_sqr()) / denom.norm_sqr()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forward_and_inverse_are_inverse() {
        let t = Transport::new(Point2::new(0.3, -0.45));
        for k in 0..20 {
            let z = Complex64::from_polar(0.9 * (k as f64 / 20.0), k as f64);
            let back = t.inverse(t.forward(z));
            assert!((back - z).norm() < 1e-14);
        }
        assert!(t.forward(Complex64::new(0.3, -0.45)).norm() < 1e-16);
    }

    #[test]
    fn preserves_the_unit_circle() {
        let t = Transport::new(Point2::new(-0.7, 0.2));
        for k in 0..50 {
            let z = Complex64::from_polar(1.0, k as f64 * 0.13);
            assert!((t.forward(z).norm() - 1.0).abs() < 1e-14);
        }
    }
}
