//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's projection or distance code.
#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use polymetric::{CurveFamily, DiskPoint, MetricContext};

pub fn wrap(a: f64) -> f64 {
    a.rem_euclid(TAU)
}

/// Clockwise angular offset from `from` to `to`, in `[0, 2π)`.
pub fn cw(from: f64, to: f64) -> f64 {
    wrap(from - to)
}

/// Smallest angular distance.
pub fn ang_dist(a: f64, b: f64) -> f64 {
    let d = wrap(a - b);
    d.min(TAU - d)
}

/// Far endpoint of the chord from `θ` through `x`: both roots of the
/// line–circle quadratic, keeping the one away from `θ`.
fn chord_other_endpoint(x: [f64; 2], theta: f64) -> f64 {
    let p = [theta.cos(), theta.sin()];
    let d = [x[0] - p[0], x[1] - p[1]];
    let a = d[0] * d[0] + d[1] * d[1];
    let b = 2.0 * (p[0] * d[0] + p[1] * d[1]);
    let c = p[0] * p[0] + p[1] * p[1] - 1.0;
    let disc = (b * b - 4.0 * a * c).max(0.0).sqrt();
    let t1 = (-b + disc) / (2.0 * a);
    let t2 = (-b - disc) / (2.0 * a);
    let t = if t1.abs() > t2.abs() { t1 } else { t2 };
    wrap((p[1] + t * d[1]).atan2(p[0] + t * d[0]))
}

/// Far endpoint of the hyperbolic geodesic from `θ` through `x`: the circle
/// through `θ`, `x` and the inverse point `x/|x|²` meets the unit circle
/// again at the mirror image of `θ` in the line through its centre.
fn poincare_other_endpoint(x: [f64; 2], theta: f64) -> f64 {
    let r2 = x[0] * x[0] + x[1] * x[1];
    let p = [theta.cos(), theta.sin()];
    // x on the diameter through θ (or at the origin): the diameter itself
    if r2 < 1e-300 || (p[0] * x[1] - p[1] * x[0]).abs() < 1e-15 {
        return wrap(theta + PI);
    }
    let q = [x[0] / r2, x[1] / r2];
    let (ax, ay, bx, by, cx, cy) = (p[0], p[1], x[0], x[1], q[0], q[1]);
    let dd = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    let a2 = ax * ax + ay * ay;
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / dd;
    let uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / dd;
    wrap(2.0 * uy.atan2(ux) - theta)
}

pub fn other_endpoint(family: CurveFamily, x: [f64; 2], theta: f64) -> f64 {
    match family {
        CurveFamily::Chords => chord_other_endpoint(x, theta),
        CurveFamily::Poincare => poincare_other_endpoint(x, theta),
    }
}

/// `d_θ` from the defining cross ratio of arc lengths. Supports are the
/// extreme vertex projections, which suffices for polygons whose sides are
/// family curves.
pub fn theta_distance(family: CurveFamily, vertices: &[[f64; 2]], theta: f64, x: [f64; 2], y: [f64; 2]) -> f64 {
    let offsets: Vec<f64> = vertices
        .iter()
        .map(|&v| cw(theta, other_endpoint(family, v, theta)))
        .collect();
    let xi = offsets.iter().copied().fold(f64::INFINITY, f64::min);
    let eta = offsets.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sx = cw(theta, other_endpoint(family, x, theta));
    let sy = cw(theta, other_endpoint(family, y, theta));
    if (sx - sy).abs() <= 1e-12 {
        return 0.0;
    }
    let eta_x = eta - sx;
    let xi_y = sy - xi;
    let eta_y = eta - sy;
    let xi_x = sx - xi;
    ((eta_x * xi_y) / (eta_y * xi_x)).ln().abs()
}

/// Direct sum of the first `n` terms of the series with the oracle `d_θ`.
pub fn long_sum(ctx: &MetricContext, vertices: &[[f64; 2]], x: [f64; 2], y: [f64; 2], n: usize) -> f64 {
    let scheme = ctx.scheme();
    assert!(scheme.len() >= n, "scheme has only {} points", scheme.len());
    let mut s = 0.0;
    for i in 0..n {
        s += scheme.weights()[i]
            * theta_distance(ctx.family(), vertices, scheme.thetas()[i].angle(), x, y);
    }
    s
}

/// Endpoint of the Poincaré geodesic leaving `x` in direction `phi`, by RK4
/// on the Euclidean-arclength equation `dφ/ds = 2⟨z, n⟩ / (1 − |z|²)` with
/// `n` the left normal.
pub fn shoot(x: [f64; 2], phi: f64) -> f64 {
    let rhs = |s: [f64; 3]| -> [f64; 3] {
        let (c, si) = (s[2].cos(), s[2].sin());
        let r2 = s[0] * s[0] + s[1] * s[1];
        [c, si, 2.0 * (-s[0] * si + s[1] * c) / (1.0 - r2)]
    };
    let mut s = [x[0], x[1], phi];
    loop {
        let gap = 1.0 - (s[0] * s[0] + s[1] * s[1]).sqrt();
        if gap < 1e-7 {
            break;
        }
        let h = (0.05 * gap).min(2e-3);
        let k1 = rhs(s);
        let k2 = rhs(std::array::from_fn(|i| s[i] + 0.5 * h * k1[i]));
        let k3 = rhs(std::array::from_fn(|i| s[i] + 0.5 * h * k2[i]));
        let k4 = rhs(std::array::from_fn(|i| s[i] + h * k3[i]));
        for i in 0..3 {
            s[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    // geodesics meet the circle orthogonally, so the radial projection of
    // the last point is accurate to second order in the gap
    wrap(s[1].atan2(s[0]))
}

/// `f(x, θ)` for the Poincaré family by shooting: bisect on the launch
/// direction until the geodesic lands on `θ`, then shoot the opposite way.
pub fn shooting_other_endpoint(x: [f64; 2], theta: f64) -> f64 {
    let aim = (theta.sin() - x[1]).atan2(theta.cos() - x[0]);
    let miss = |phi: f64| {
        let d = wrap(shoot(x, phi) - theta);
        if d > PI {
            d - TAU
        } else {
            d
        }
    };
    // landing angle is monotone in the launch angle; scan a full turn around
    // the straight-line aim for the sign change that is not the ±π wrap
    let probes: Vec<(f64, f64)> = (0..=96)
        .map(|k| {
            let phi = aim - PI + TAU * k as f64 / 96.0;
            (phi, miss(phi))
        })
        .collect();
    let (mut lo, mut hi) = probes
        .windows(2)
        .find(|w| w[0].1 < 0.0 && w[1].1 >= 0.0 && w[1].1 - w[0].1 < PI)
        .map(|w| (w[0].0, w[1].0))
        .unwrap_or_else(|| panic!("no bracket at x={x:?}, θ={theta}"));
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        if miss(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    shoot(x, 0.5 * (lo + hi) + PI)
}

pub fn square(h: f64) -> Vec<[f64; 2]> {
    vec![[h, -h], [h, h], [-h, h], [-h, -h]]
}

pub fn dp(x: f64, y: f64) -> DiskPoint {
    DiskPoint::new(x, y).unwrap()
}
