use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geometry::BoundaryPoint;
use crate::polygon::{ConvexPolygon, EDGE_TIE_EPS};

/// Default geometric decay of the weights.
pub const DEFAULT_RATIO: f64 = 0.9;
pub const DEFAULT_FILLER: usize = 512;

/// Radical inverse of `index` in base 2, in `[0, 1)`.
pub fn van_der_corput(mut index: u64) -> f64 {
    let mut result = 0.0;
    let mut scale = 0.5;
    while index > 0 {
        if index & 1 == 1 {
            result += scale;
        }
        index >>= 1;
        scale *= 0.5;
    }
    result
}

/// `w_i = (1 - r) r^(i-1)` for `i = 1..=n`; the infinite series sums to 1.
pub fn geometric_weights(n: usize, ratio: f64) -> Vec<f64> {
    let mut w = 1.0 - ratio;
    (0..n)
        .map(|_| {
            let cur = w;
            w *= ratio;
            cur
        })
        .collect()
}

/// Pushes `count` points of the scaled van der Corput sequence onto `out`,
/// skipping any within `tol` of a point already present.
pub(crate) fn extend_with_filler(out: &mut Vec<f64>, count: usize, period: f64, tol: f64) {
    let target = out.len() + count;
    let mut index = 0u64;
    while out.len() < target {
        let a = van_der_corput(index) * period;
        index += 1;
        let clash = out.iter().any(|&b| {
            let d = (a - b).rem_euclid(period);
            d.min(period - d) <= tol
        });
        if !clash {
            out.push(a);
        }
    }
}

pub(crate) fn check_ratio(ratio: f64) -> Result<()> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::InvalidScheme(format!(
            "weight ratio must lie in (0, 1), got {ratio}"
        )));
    }
    Ok(())
}

/// Controls where the weighted series is cut off.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Truncation {
    pub max_terms: usize,
    pub tail_tol: f64,
}

impl Default for Truncation {
    fn default() -> Self {
        Self {
            max_terms: 4096,
            tail_tol: 1e-9,
        }
    }
}

impl Truncation {
    pub fn validate(&self) -> Result<()> {
        if self.max_terms == 0 {
            return Err(Error::InvalidScheme("max_terms must be positive".into()));
        }
        if !(self.tail_tol > 0.0 && self.tail_tol.is_finite()) {
            return Err(Error::InvalidScheme("tail_tol must be positive".into()));
        }
        Ok(())
    }
}

/// The ordered boundary points and weights defining the series metric.
///
/// The first `required_count` points are the ideal endpoints of the curves
/// extending the polygon's sides; the rest is a deterministic dense filler.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThetaScheme {
    thetas: Vec<BoundaryPoint>,
    weights: Vec<f64>,
    required_count: usize,
    ratio: f64,
}

impl ThetaScheme {
    pub fn new(required: Vec<BoundaryPoint>, filler_count: usize, ratio: f64) -> Result<Self> {
        check_ratio(ratio)?;
        for (i, p) in required.iter().enumerate() {
            if required[i + 1..]
                .iter()
                .any(|q| q.coincides(*p, EDGE_TIE_EPS))
            {
                return Err(Error::InvalidScheme(format!(
                    "required point {i} is duplicated"
                )));
            }
        }
        let required_count = required.len();
        let mut angles: Vec<f64> = required.iter().map(|p| p.angle()).collect();
        extend_with_filler(&mut angles, filler_count, TAU, EDGE_TIE_EPS);
        let thetas: Vec<BoundaryPoint> = angles.into_iter().map(BoundaryPoint::new).collect();
        let weights = geometric_weights(thetas.len(), ratio);
        Ok(Self {
            thetas,
            weights,
            required_count,
            ratio,
        })
    }

    pub fn for_polygon(polygon: &ConvexPolygon, filler_count: usize, ratio: f64) -> Result<Self> {
        Self::new(polygon.side_curve_endpoints(), filler_count, ratio)
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn thetas(&self) -> &[BoundaryPoint] {
        &self.thetas
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn required_count(&self) -> usize {
        self.required_count
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    /// Index of the scheme point coinciding with `p`, if any.
    pub fn index_of(&self, p: BoundaryPoint, tol: f64) -> Option<usize> {
        self.thetas.iter().position(|q| q.coincides(p, tol))
    }

    /// Total weight of the terms after the first `n`: `r^n`.
    pub fn tail(&self, n: usize) -> f64 {
        self.ratio.powi(n.min(i32::MAX as usize) as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::CurveFamily;

    #[test]
    fn van_der_corput_prefix() {
        let got: Vec<f64> = (0..8).map(van_der_corput).collect();
        assert_eq!(got, vec![0.0, 0.5, 0.25, 0.75, 0.125, 0.625, 0.375, 0.875]);
    }

    #[test]
    fn weights_sum_to_one_minus_tail() {
        let w = geometric_weights(200, 0.9);
        let s: f64 = w.iter().sum();
        assert!((s - (1.0 - 0.9f64.powi(200))).abs() < 1e-14);
        assert!(w.iter().all(|&x| x > 0.0));
    }

    #[test]
    fn required_prefix_and_distinct_filler() {
        let sq = ConvexPolygon::square(CurveFamily::Chords, 0.5).unwrap();
        let scheme = ThetaScheme::for_polygon(&sq, 64, 0.9).unwrap();
        assert_eq!(scheme.required_count(), 8);
        assert_eq!(scheme.len(), 72);
        assert_eq!(&scheme.thetas()[..8], &sq.side_curve_endpoints()[..]);
        let t = scheme.thetas();
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                assert!(!t[i].coincides(t[j], EDGE_TIE_EPS));
            }
        }
        assert!((scheme.tail(3) - 0.729).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_ratio_and_duplicates() {
        assert!(ThetaScheme::new(vec![], 4, 1.0).is_err());
        assert!(ThetaScheme::new(vec![], 4, 0.0).is_err());
        let p = BoundaryPoint::new(1.0);
        assert!(ThetaScheme::new(vec![p, p], 4, 0.5).is_err());
    }
}
