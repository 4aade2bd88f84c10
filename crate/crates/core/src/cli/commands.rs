use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::LN_10;
use std::str::FromStr;

use super::config::{RunConfig, Space};
use super::svg::Svg;
use super::{Artifact, CliError, Outcome, EXIT_PASS, EXIT_VERIFY_FAILED};
use crate::families::{check_family, Curve, CurveFamily};
use crate::geometry::{DiskPoint, PlanarPolygon, Point2};
use crate::hilbert::{
    hilbert_parallel_profile, nonuniqueness_witness, ConvexDomain, HilbertProfilePoint, Witness,
};
use crate::metric::{verify_metric_axioms, verify_topology, MetricContext, ProfilePoint};
use crate::plane;
use crate::polygon::{Containment, EDGE_TIE_EPS};

/// Segment additivity must hold to this level at a shared term count.
pub const ADDITIVITY_TOL: f64 = 1e-10;
/// Independently truncated distances must be additive to this level.
pub const REPORTED_ADDITIVITY_TOL: f64 = 1e-6;
/// Off-curve triples must have at least this defect.
pub const UNIQUENESS_FLOOR: f64 = 1e-6;
/// Window around a required Θ point in which `ξ_xy` is drawn.
pub const UNIQUENESS_WINDOW: f64 = 0.05;
/// Off-curve points keep at least this transverse distance from the curve.
pub const OFF_CURVE_GAP: f64 = 0.02;
/// Relative tolerance on the per-decade growth along a ray.
pub const DECADE_TOL: f64 = 0.2;
/// Late maxima of a parallel-ray profile may exceed early ones by this factor.
pub const BOUNDED_FACTOR: f64 = 1.05;
/// Minimal per-decade Hilbert growth, in units of `ln 10` (half-log).
pub const HILBERT_GROWTH: f64 = 0.4;

fn json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("report serializes");
    out.push(b'\n');
    out
}

fn dp(p: [f64; 2]) -> Result<DiskPoint, CliError> {
    DiskPoint::try_from(p).map_err(CliError::from)
}

/// Parses a JSON array of `[x, y]` pairs.
pub fn parse_points(text: &str) -> Result<Vec<[f64; 2]>, CliError> {
    let points: Vec<[f64; 2]> =
        serde_json::from_str(text).map_err(|e| CliError::data(format!("points: {e}")))?;
    if let Some(i) = points.iter().position(|p| !p[0].is_finite() || !p[1].is_finite()) {
        return Err(CliError::data(format!("point {i} has a non-finite coordinate")));
    }
    Ok(points)
}

// ---------------------------------------------------------------- dist

#[derive(Serialize)]
struct DistReport<'a> {
    command: &'static str,
    config_hash: String,
    space: Space,
    points: &'a [[f64; 2]],
    distances: Vec<Vec<f64>>,
    bounds: Vec<Vec<f64>>,
}

fn matrix_csv(points: &[[f64; 2]], values: &[Vec<f64>]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["point".to_string(), "x".into(), "y".into()];
    header.extend((0..points.len()).map(|j| format!("p{j}")));
    w.write_record(&header).expect("in-memory csv");
    for (i, row) in values.iter().enumerate() {
        let mut rec = vec![format!("p{i}"), points[i][0].to_string(), points[i][1].to_string()];
        rec.extend(row.iter().map(|v| v.to_string()));
        w.write_record(&rec).expect("in-memory csv");
    }
    w.into_inner().expect("in-memory csv")
}

/// Symmetric matrices of distances and truncation bounds between the
/// given points.
pub fn cmd_dist(config: &RunConfig, points: &[[f64; 2]]) -> Result<Outcome, CliError> {
    let n = points.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let entries: Vec<(f64, f64)> = match config.space {
        Space::Disc => {
            let ctx = config.disc_context()?;
            let pts = points
                .iter()
                .enumerate()
                .map(|(i, &p)| {
                    let q = DiskPoint::try_from(p).ok();
                    match q {
                        Some(q) if ctx.polygon().contains(q) == Containment::Inside => Ok(q),
                        _ => Err(CliError::data(format!(
                            "point {i} ({}, {}) is outside the polygon",
                            p[0], p[1]
                        ))),
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            pairs
                .par_iter()
                .map(|&(i, j)| ctx.dist(pts[i], pts[j]).map(|d| (d.value, d.bound)))
                .collect::<Result<_, _>>()?
        }
        Space::Plane => {
            let ctx = config.plane_context()?;
            let pts: Vec<Point2> = points.iter().map(|&p| Point2::from(p)).collect();
            for (i, p) in pts.iter().enumerate() {
                if ctx.polygon().signed_distance(*p) <= plane::INTERIOR_EPS {
                    return Err(CliError::data(format!(
                        "point {i} ({}, {}) is outside the polygon",
                        p.x, p.y
                    )));
                }
            }
            pairs
                .par_iter()
                .map(|&(i, j)| ctx.dist(pts[i], pts[j]).map(|d| (d.value, d.bound)))
                .collect::<Result<_, _>>()?
        }
    };
    let mut distances = vec![vec![0.0; n]; n];
    let mut bounds = vec![vec![0.0; n]; n];
    for (&(i, j), &(d, b)) in pairs.iter().zip(&entries) {
        distances[i][j] = d;
        distances[j][i] = d;
        bounds[i][j] = b;
        bounds[j][i] = b;
    }
    let report = DistReport {
        command: "dist",
        config_hash: config.hash(),
        space: config.space,
        points,
        distances,
        bounds,
    };
    Ok(Outcome {
        exit_code: EXIT_PASS,
        summary: format!("dist: {n}x{n} matrix, config {}", &report.config_hash[..12]),
        artifacts: vec![
            Artifact::new("dist.csv", matrix_csv(points, &report.distances)),
            Artifact::new("dist_bounds.csv", matrix_csv(points, &report.bounds)),
            Artifact::new("dist.json", json(&report)),
        ],
    })
}

// ---------------------------------------------------------------- verify

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Worst observed value.
    pub worst: f64,
    /// Limit the worst value is compared against.
    pub threshold: f64,
    pub detail: String,
}

impl Check {
    fn at_most(name: &str, worst: f64, threshold: f64, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: worst <= threshold,
            worst,
            threshold,
            detail: detail.into(),
        }
    }

    fn at_least(name: &str, worst: f64, threshold: f64, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: worst >= threshold,
            worst,
            threshold,
            detail: detail.into(),
        }
    }

    fn failed(name: &str, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: false,
            worst: f64::NAN,
            threshold: f64::NAN,
            detail: detail.into(),
        }
    }

    fn skipped(name: &str, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: true,
            worst: f64::NAN,
            threshold: f64::NAN,
            detail: format!("skipped: {}", detail.into()),
        }
    }

    fn from_result(name: &str, r: Result<Check, crate::Error>) -> Self {
        r.unwrap_or_else(|e| Self::failed(name, e.to_string()))
    }
}

#[derive(Serialize)]
struct VerifyReport {
    command: &'static str,
    config_hash: String,
    space: Space,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<CurveFamily>,
    passed: bool,
    checks: Vec<Check>,
}

/// Per-decade increments of a profile sampled at decreasing steps.
pub(crate) fn decade_increments(steps: &[f64], values: &[f64]) -> Vec<f64> {
    steps
        .windows(2)
        .zip(values.windows(2))
        .map(|(s, v)| (v[1] - v[0]) / (s[0] / s[1]).log10())
        .collect()
}

fn growth_check(name: &str, steps: &[f64], values: &[f64], expected: f64) -> Check {
    if steps.len() < 2 {
        return Check::skipped(name, "fewer than two steps");
    }
    let increasing = values.windows(2).all(|w| w[1] > w[0]);
    let rel = decade_increments(steps, values)
        .iter()
        .map(|inc| (inc / expected - 1.0).abs())
        .fold(0.0, f64::max);
    let mut c = Check::at_most(
        name,
        rel,
        DECADE_TOL,
        format!("relative deviation from {expected:.6} per decade; increasing: {increasing}"),
    );
    c.passed &= increasing;
    c
}

fn bounded_check(name: &str, values: &[f64]) -> Check {
    let k = values.len().min(4);
    if k == 0 {
        return Check::skipped(name, "no steps");
    }
    let early = values[..k].iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let late = values[values.len() - k..].iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ratio = if early > 0.0 { late / early } else if late > 0.0 { f64::INFINITY } else { 1.0 };
    Check::at_most(
        name,
        ratio,
        BOUNDED_FACTOR,
        format!("late max {late:.9} over early max {early:.9}"),
    )
}

fn disc_centroid(ctx: &MetricContext) -> Result<DiskPoint, CliError> {
    let v = ctx.polygon().vertices();
    let s = v.iter().fold(Point2::default(), |acc, p| acc + p.point());
    DiskPoint::from_point(s * (1.0 / v.len() as f64)).map_err(CliError::from)
}

fn plane_centroid(poly: &PlanarPolygon) -> Point2 {
    let v = poly.vertices();
    v.iter().fold(Point2::default(), |acc, p| acc + *p) * (1.0 / v.len() as f64)
}

struct Triple<P> {
    x: P,
    z: P,
    y: P,
}

fn disc_collinear_triples(ctx: &MetricContext, n: usize, rng: &mut ChaCha8Rng) -> Vec<Triple<DiskPoint>> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let x = ctx.polygon().sample_interior(rng);
        let y = ctx.polygon().sample_interior(rng);
        let t = rng.gen_range(0.05..0.95);
        if let Ok(z) = ctx.family().segment_point(x, y, t) {
            out.push(Triple { x, z, y });
        }
    }
    out
}

/// Triples with `z` off `c_xy` and an ideal endpoint of `c_xy` within
/// the uniqueness window of a required scheme point.
fn disc_offcurve_triples(ctx: &MetricContext, n: usize, rng: &mut ChaCha8Rng) -> Vec<Triple<DiskPoint>> {
    let family = ctx.family();
    let poly = ctx.polygon();
    let required = &ctx.scheme().thetas()[..ctx.scheme().required_count()];
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let k = rng.gen_range(0..required.len());
        let xi = required[k].rotated(rng.gen_range(-UNIQUENESS_WINDOW..UNIQUENESS_WINDOW));
        let x = poly.sample_interior(rng);
        let Ok(curve) = Curve::new(family, xi, family.other_endpoint(x, xi)) else {
            continue;
        };
        let y = (0..50).find_map(|_| {
            let y = curve.point_at(rng.gen_range(0.0..1.0)).ok()?;
            (poly.contains(y) == Containment::Inside && y.dist(x) > 0.05).then_some(y)
        });
        let Some(y) = y else { continue };
        let z = (0..50).find_map(|_| {
            let z = poly.sample_interior(rng);
            (curve.signed_distance(z.point()).abs() > OFF_CURVE_GAP).then_some(z)
        });
        if let Some(z) = z {
            out.push(Triple { x, z, y });
        }
    }
    out
}

fn labelled(label: &str, name: &str) -> String {
    if label.is_empty() {
        name.to_string()
    } else {
        format!("{label} {name}")
    }
}

fn additivity_checks<P: Copy + Send + Sync>(
    label: &str,
    triples: &[Triple<P>],
    shared: impl Fn(P, P, P) -> crate::Result<f64> + Sync,
    separate: impl Fn(P, P) -> crate::Result<f64> + Sync,
) -> Vec<Check> {
    let rows: Vec<crate::Result<(f64, f64)>> = triples
        .par_iter()
        .map(|t| {
            let d = shared(t.x, t.z, t.y)?;
            let indep = separate(t.x, t.z)? + separate(t.z, t.y)? - separate(t.x, t.y)?;
            Ok((d, indep))
        })
        .collect();
    let mut worst_shared = 0.0f64;
    let mut worst_indep = 0.0f64;
    let mut errors = 0usize;
    for r in rows {
        match r {
            Ok((d, i)) => {
                worst_shared = worst_shared.max(d.abs());
                worst_indep = worst_indep.max(i.abs());
            }
            Err(_) => errors += 1,
        }
    }
    let mut a = Check::at_most(
        &labelled(label, "additivity along segments (shared truncation)"),
        worst_shared,
        ADDITIVITY_TOL,
        format!("{} collinear triples, {errors} evaluation errors", triples.len()),
    );
    let mut b = Check::at_most(
        &labelled(label, "additivity of independently truncated distances"),
        worst_indep,
        REPORTED_ADDITIVITY_TOL,
        format!("{} collinear triples", triples.len()),
    );
    a.passed &= errors == 0;
    b.passed &= errors == 0;
    vec![a, b]
}

fn uniqueness_check<P: Copy + Send + Sync>(
    label: &str,
    triples: &[Triple<P>],
    shared: impl Fn(P, P, P) -> crate::Result<f64> + Sync,
) -> Check {
    let defects: Vec<crate::Result<f64>> =
        triples.par_iter().map(|t| shared(t.x, t.z, t.y)).collect();
    let errors = defects.iter().filter(|d| d.is_err()).count();
    let worst = defects
        .iter()
        .filter_map(|d| d.as_ref().ok().copied())
        .fold(f64::INFINITY, f64::min);
    let mut c = Check::at_least(
        &labelled(label, "strict defect off the geodesic"),
        worst,
        UNIQUENESS_FLOOR,
        format!("{} off-curve triples, {errors} evaluation errors", triples.len()),
    );
    c.passed = c.passed && errors == 0 && worst > UNIQUENESS_FLOOR;
    c
}

fn verify_disc(config: &RunConfig) -> Result<Vec<Check>, CliError> {
    let ctx = config.disc_context()?;
    let v = &config.verify;
    let seed = config.scheme.seed;
    let mut checks = Vec::new();

    for fc in check_family(ctx.family(), v.family_samples, seed) {
        checks.push(Check {
            name: format!("family {}", fc.name),
            passed: fc.passed,
            worst: fc.worst,
            threshold: fc.tolerance,
            detail: format!("{} samples", fc.samples),
        });
    }

    let axioms = verify_metric_axioms(&ctx, v.samples, seed);
    let detail = format!("{} random triples", axioms.samples);
    let mut pseudo_sym = Check::at_most("d_theta symmetry", axioms.pseudo_symmetry.value, 0.0, &detail);
    let mut pseudo_tri = Check::at_least("d_theta triangle inequality", axioms.pseudo_triangle.value, -1e-12, &detail);
    let mut sym = Check::at_most("symmetry", axioms.symmetry.value, 0.0, &detail);
    let mut tri = Check::at_least("triangle inequality", axioms.triangle.value, axioms.triangle_floor, &detail);
    let mut pos = Check::at_least("positivity", axioms.positivity.value, f64::MIN_POSITIVE, &detail);
    if !axioms.errors.is_empty() {
        for c in [&mut pseudo_sym, &mut pseudo_tri, &mut sym, &mut tri, &mut pos] {
            c.passed = false;
            c.detail = format!("{detail}; errors: {}", axioms.errors.join("; "));
        }
    }
    checks.extend([pseudo_sym, pseudo_tri, sym, tri, pos]);

    let center = match v.topology_center {
        Some(c) => dp(c)?,
        None => disc_centroid(&ctx)?,
    };
    checks.push(match verify_topology(&ctx, center, &v.topology_radii) {
        Ok(t) => {
            let last = t.levels.last().map_or(0.0, |l| l.max_dist);
            Check {
                name: "topology: metric balls shrink with Euclidean balls".into(),
                passed: t.passed,
                worst: last,
                threshold: t.levels.first().map_or(0.0, |l| l.max_dist),
                detail: format!("max distance at radii {:?}", t.levels.iter().map(|l| l.max_dist).collect::<Vec<_>>()),
            }
        }
        Err(e) => Check::failed("topology: metric balls shrink with Euclidean balls", e.to_string()),
    });

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let collinear = disc_collinear_triples(&ctx, v.samples, &mut rng);
    let shared = |x, z, y| ctx.additivity_defect(x, z, y).map(|d| d.defect);
    let separate = |x, y| ctx.dist(x, y).map(|d| d.value);
    checks.extend(additivity_checks("", &collinear, shared, separate));
    let offcurve = disc_offcurve_triples(&ctx, v.samples, &mut rng);
    checks.push(uniqueness_check("", &offcurve, shared));

    let origin = match v.ray_origin {
        Some(c) => dp(c)?,
        None => disc_centroid(&ctx)?,
    };
    let ray_name = "ray divergence towards a side";
    checks.push(Check::from_result(
        ray_name,
        (|| {
            let side = v.side;
            let target = ctx.polygon().side_point(side % ctx.polygon().len(), 0.5)?;
            let profile = ctx.ray_profile(origin, side, target, &v.ray_steps)?;
            let (a, b) = ctx.polygon().side_curve(side).endpoints;
            let w = |p| {
                ctx.scheme()
                    .index_of(p, EDGE_TIE_EPS)
                    .map_or(0.0, |i| ctx.scheme().weights()[i])
            };
            let expected = (w(a) + w(b)) * LN_10;
            let values: Vec<f64> = profile.iter().map(|p| p.value).collect();
            Ok(growth_check(ray_name, &v.ray_steps, &values, expected))
        })(),
    ));

    let par_name = "parallel rays stay bounded";
    if ctx.family() == CurveFamily::Chords {
        checks.push(Check::from_result(
            par_name,
            (|| {
                let [s, t] = v.parallel_targets;
                let side = v.side;
                let a = ctx.polygon().side_point(side % ctx.polygon().len(), s)?;
                let b = ctx.polygon().side_point(side % ctx.polygon().len(), t)?;
                let p = ctx.parallel_ray_profile(side, a, b, &v.parallel_steps)?;
                Ok(bounded_check(par_name, &p.iter().map(|q| q.value).collect::<Vec<_>>()))
            })(),
        ));
    } else {
        checks.push(Check::skipped(par_name, "defined for the chord family"));
    }
    Ok(checks)
}

fn verify_plane(config: &RunConfig) -> Result<Vec<Check>, CliError> {
    let ctx = config.plane_context()?;
    let poly = ctx.polygon();
    let v = &config.verify;
    let tail_tol = ctx.truncation().tail_tol;
    let mut rng = ChaCha8Rng::seed_from_u64(config.scheme.seed);
    let mut checks = Vec::new();

    let triples: Vec<[Point2; 3]> = (0..v.samples)
        .map(|_| std::array::from_fn(|_| plane::sample_interior(poly, &mut rng)))
        .collect();
    let rows: Vec<crate::Result<(f64, f64, Option<f64>)>> = triples
        .par_iter()
        .map(|&[x, y, z]| {
            let xy = ctx.dist(x, y)?.value;
            let yx = ctx.dist(y, x)?.value;
            let tri = ctx.dist(x, z)?.value + ctx.dist(z, y)?.value - xy;
            Ok(((xy - yx).abs(), tri, (x.dist(y) > 1e-6).then_some(xy)))
        })
        .collect();
    let errors = rows.iter().filter(|r| r.is_err()).count();
    let ok: Vec<_> = rows.into_iter().filter_map(|r| r.ok()).collect();
    let detail = format!("{} random triples, {errors} evaluation errors", triples.len());
    let mut axioms = vec![
        Check::at_most("symmetry", ok.iter().map(|r| r.0).fold(0.0, f64::max), 0.0, &detail),
        Check::at_least(
            "triangle inequality",
            ok.iter().map(|r| r.1).fold(f64::INFINITY, f64::min),
            -3.0 * tail_tol,
            &detail,
        ),
        Check::at_least(
            "positivity",
            ok.iter().filter_map(|r| r.2).fold(f64::INFINITY, f64::min),
            f64::MIN_POSITIVE,
            &detail,
        ),
    ];
    for c in &mut axioms {
        c.passed &= errors == 0;
    }
    checks.extend(axioms);

    let mut collinear = Vec::with_capacity(v.samples);
    while collinear.len() < v.samples {
        let x = plane::sample_interior(poly, &mut rng);
        let y = plane::sample_interior(poly, &mut rng);
        let z = x.lerp(y, rng.gen_range(0.05..0.95));
        collinear.push(Triple { x, z, y });
    }
    let shared = |x, z, y| ctx.additivity_defect(x, z, y).map(|d| d.defect);
    let separate = |x, y| ctx.dist(x, y).map(|d| d.value);
    checks.extend(additivity_checks("plane", &collinear, shared, separate));

    // segment direction within the window of a side direction, so that its
    // normal is close to a required direction
    let required = &ctx.scheme().directions()[..ctx.scheme().required_count()];
    let mut offline = Vec::with_capacity(v.samples);
    while offline.len() < v.samples {
        let k = rng.gen_range(0..required.len());
        let dir = required[k] + std::f64::consts::FRAC_PI_2
            + rng.gen_range(-UNIQUENESS_WINDOW..UNIQUENESS_WINDOW);
        let u = Point2::new(dir.cos(), dir.sin());
        let x = plane::sample_interior(poly, &mut rng);
        let y = x + u * rng.gen_range(0.05..1.0) * poly_diameter(poly);
        let z = plane::sample_interior(poly, &mut rng);
        if poly.signed_distance(y) > plane::INTERIOR_EPS && u.cross(z - x).abs() > OFF_CURVE_GAP {
            offline.push(Triple { x, z, y });
        }
    }
    checks.push(uniqueness_check("plane", &offline, shared));

    let ray_name = "plane ray divergence towards a side";
    checks.push(Check::from_result(
        ray_name,
        (|| {
            let side = v.side % poly.len();
            let (a, b) = poly.edge(side);
            let target = a.lerp(b, 0.5);
            let origin = v.ray_origin.map_or_else(|| plane_centroid(poly), Point2::from);
            let profile = ctx.ray_profile(origin, v.side, target, &v.ray_steps)?;
            let expected = ctx.expected_decade_increment(side).unwrap_or(0.0);
            let values: Vec<f64> = profile.iter().map(|p| p.value).collect();
            Ok(growth_check(ray_name, &v.ray_steps, &values, expected))
        })(),
    ));
    Ok(checks)
}

fn poly_diameter(poly: &PlanarPolygon) -> f64 {
    let (lo, hi) = poly.bounding_box();
    lo.dist(hi)
}

/// Runs the verification suite of the configured space; exit code 1 if any
/// check fails.
pub fn cmd_verify(config: &RunConfig) -> Result<Outcome, CliError> {
    let checks = match config.space {
        Space::Disc => verify_disc(config)?,
        Space::Plane => verify_plane(config)?,
    };
    let passed = checks.iter().all(|c| c.passed);
    let failed = checks.iter().filter(|c| !c.passed).count();
    let report = VerifyReport {
        command: "verify",
        config_hash: config.hash(),
        space: config.space,
        family: (config.space == Space::Disc).then(|| config.family()),
        passed,
        checks,
    };
    Ok(Outcome {
        exit_code: if passed { EXIT_PASS } else { EXIT_VERIFY_FAILED },
        summary: format!(
            "verify: {} checks, {failed} failed, config {}",
            report.checks.len(),
            &report.config_hash[..12]
        ),
        artifacts: vec![Artifact::new("verify.json", json(&report))],
    })
}

// ---------------------------------------------------------------- compare-hilbert

#[derive(Serialize)]
struct CompareReport {
    command: &'static str,
    config_hash: String,
    passed: bool,
    series_parallel_profile: Vec<ProfilePoint>,
    hilbert_parallel_profile: Vec<HilbertProfilePoint>,
    square_witness: Witness,
    disc_witness: Witness,
    checks: Vec<Check>,
}

fn profile_plot(series: &[(f64, f64)], hilbert: &[(f64, f64)]) -> String {
    let all = series.iter().chain(hilbert);
    let (mut x0, mut x1, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    if !(x1 > x0) {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if !(y1 > 0.0) {
        y1 = 1.0;
    }
    // normalise both axes to a unit box so the line widths stay readable
    let to = |(x, y): (f64, f64)| Point2::new((x - x0) / (x1 - x0), y / y1);
    let mut svg = Svg::new(Point2::new(-0.12, -0.12), Point2::new(1.08, 1.08));
    svg.line(Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), "axis");
    svg.line(Point2::new(0.0, 0.0), Point2::new(0.0, 1.0), "axis");
    svg.polyline(&series.iter().copied().map(to).collect::<Vec<_>>(), "profile-d");
    svg.polyline(&hilbert.iter().copied().map(to).collect::<Vec<_>>(), "profile-h");
    svg.text(Point2::new(0.0, -0.08), 0.04, &format!("-log10(step) from {x0:.2} to {x1:.2}"));
    svg.text(Point2::new(-0.1, 1.03), 0.04, &format!("distance, max {y1:.4}"));
    svg.finish()
}

/// Bounded parallel rays for the series metric, divergent ones for the
/// Hilbert metric of the disc, and a second Hilbert geodesic in a square.
pub fn cmd_compare_hilbert(config: &RunConfig) -> Result<Outcome, CliError> {
    let ctx = config.disc_context()?;
    let c = &config.compare;
    let len = ctx.polygon().len();
    let a = ctx.polygon().side_point(c.side % len, c.targets[0])?;
    let b = ctx.polygon().side_point(c.side % len, c.targets[1])?;
    let series = ctx.parallel_ray_profile(c.side, a, b, &c.steps)?;

    let [t0, t1] = c.disc_targets;
    let mut hilbert = hilbert_parallel_profile(
        &ConvexDomain::Disc,
        Point2::new(t0.cos(), t0.sin()),
        Point2::new(t1.cos(), t1.sin()),
        Point2::from(c.disc_direction),
        &c.steps,
    )?;
    let scale = if c.half_log { 1.0 } else { 2.0 };
    for p in &mut hilbert {
        p.value *= scale;
    }

    let [wx, wy] = c.witness_points.map(Point2::from);
    let square = ConvexDomain::square(c.square_half_width)?;
    let square_witness = nonuniqueness_witness(&square, wx, wy, c.grid)?;
    let disc_witness = nonuniqueness_witness(&ConvexDomain::Disc, wx, wy, c.grid)?;

    let mut checks = vec![bounded_check(
        "series metric: parallel rays stay bounded",
        &series.iter().map(|p| p.value).collect::<Vec<_>>(),
    )];
    let small: Vec<&HilbertProfilePoint> = hilbert.iter().filter(|p| p.step <= 1e-4).collect();
    let steps: Vec<f64> = small.iter().map(|p| p.step).collect();
    let values: Vec<f64> = small.iter().map(|p| p.value).collect();
    let growth = decade_increments(&steps, &values)
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    checks.push(if steps.len() < 2 {
        Check::skipped("Hilbert metric: parallel rays diverge", "fewer than two steps below 1e-4")
    } else {
        Check::at_least(
            "Hilbert metric: parallel rays diverge",
            growth,
            HILBERT_GROWTH * LN_10 * scale,
            "smallest per-decade increment for steps <= 1e-4",
        )
    });
    checks.push(Check {
        name: "Hilbert square: second geodesic found".into(),
        passed: square_witness.is_found(),
        worst: match square_witness {
            Witness::Found { defect, .. } => defect,
            Witness::NotFound { best_defect } => best_defect,
        },
        threshold: crate::hilbert::WITNESS_DEFECT,
        detail: format!("{0}x{0} grid", c.grid),
    });

    let passed = checks.iter().all(|c| c.passed);
    let plot = profile_plot(
        &series.iter().map(|p| (-p.step.log10(), p.value)).collect::<Vec<_>>(),
        &hilbert.iter().map(|p| (-p.step.log10(), p.value)).collect::<Vec<_>>(),
    );
    let report = CompareReport {
        command: "compare-hilbert",
        config_hash: config.hash(),
        passed,
        series_parallel_profile: series,
        hilbert_parallel_profile: hilbert,
        square_witness,
        disc_witness,
        checks,
    };
    Ok(Outcome {
        exit_code: if passed { EXIT_PASS } else { EXIT_VERIFY_FAILED },
        summary: format!(
            "compare-hilbert: {}, disc witness {}, config {}",
            if passed { "all checks pass" } else { "checks failed" },
            if disc_witness.is_found() { "found" } else { "not found" },
            &report.config_hash[..12]
        ),
        artifacts: vec![
            Artifact::new("compare.json", json(&report)),
            Artifact::new("compare.svg", plot),
        ],
    })
}

// ---------------------------------------------------------------- plot

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Geodesics,
    Supports,
    Profiles,
}

impl PlotKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Geodesics => "geodesics",
            Self::Supports => "supports",
            Self::Profiles => "profiles",
        }
    }
}

impl FromStr for PlotKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "geodesics" => Ok(Self::Geodesics),
            "supports" => Ok(Self::Supports),
            "profiles" => Ok(Self::Profiles),
            other => Err(CliError::config(format!(
                "unknown plot `{other}` (expected geodesics, supports or profiles)"
            ))),
        }
    }
}

fn sample_curve(curve: &Curve, resolution: usize) -> Vec<Point2> {
    let n = resolution.max(2);
    let mut pts = vec![curve.endpoints.0.to_point()];
    pts.extend((1..n).map(|k| curve.point_at_unchecked(k as f64 / n as f64)));
    pts.push(curve.endpoints.1.to_point());
    pts
}

fn sample_segment(family: CurveFamily, x: DiskPoint, y: DiskPoint, resolution: usize) -> crate::Result<Vec<Point2>> {
    if family == CurveFamily::Chords {
        return Ok(vec![x.point(), y.point()]);
    }
    let n = resolution.max(2);
    let mut pts = vec![x.point()];
    for k in 1..n {
        pts.push(family.segment_point(x, y, k as f64 / n as f64)?.point());
    }
    pts.push(y.point());
    Ok(pts)
}

fn plot_disc(config: &RunConfig, kind: PlotKind) -> Result<String, CliError> {
    let ctx = config.disc_context()?;
    let p = &config.plot;
    if kind == PlotKind::Profiles {
        return profiles_plot_disc(config, &ctx);
    }
    let poly = ctx.polygon();
    let family = ctx.family();
    let mut svg = Svg::new(Point2::new(-1.1, -1.1), Point2::new(1.1, 1.1));
    svg.circle(Point2::default(), 1.0, "boundary");
    let mut outline = Vec::new();
    for i in 0..poly.len() {
        let (a, b) = poly.side_vertices(i);
        let mut side = sample_segment(family, a, b, p.resolution)?;
        side.pop();
        outline.extend(side);
    }
    svg.polygon(&outline, "polygon");
    match kind {
        PlotKind::Supports => {
            for &t in &p.thetas {
                let theta = crate::geometry::BoundaryPoint::try_new(t)?;
                let s = poly.supports(theta);
                for end in [s.xi, s.eta] {
                    let curve = family.line(theta, end)?;
                    svg.polyline(&sample_curve(&curve, p.resolution), "support");
                }
            }
        }
        PlotKind::Geodesics => {
            for (k, &[a, b]) in p.geodesics.iter().enumerate() {
                let (x, y) = (dp(a)?, dp(b)?);
                for q in [x, y] {
                    if poly.contains(q) != Containment::Inside {
                        return Err(CliError::data(format!(
                            "geodesic {k}: point ({}, {}) is outside the polygon",
                            q.x(),
                            q.y()
                        )));
                    }
                }
                svg.polyline(&sample_segment(family, x, y, p.resolution)?, "geodesic");
            }
        }
        PlotKind::Profiles => unreachable!(),
    }
    Ok(svg.finish())
}

fn profiles_plot_disc(config: &RunConfig, ctx: &MetricContext) -> Result<String, CliError> {
    let v = &config.verify;
    let origin = match v.ray_origin {
        Some(c) => dp(c)?,
        None => disc_centroid(ctx)?,
    };
    let target = ctx.polygon().side_point(v.side % ctx.polygon().len(), 0.5)?;
    let ray = ctx.ray_profile(origin, v.side, target, &v.ray_steps)?;
    let ray: Vec<(f64, f64)> = ray.iter().map(|p| (-p.step.log10(), p.value)).collect();
    let parallel = if ctx.family() == CurveFamily::Chords {
        let [s, t] = v.parallel_targets;
        let n = ctx.polygon().len();
        let a = ctx.polygon().side_point(v.side % n, s)?;
        let b = ctx.polygon().side_point(v.side % n, t)?;
        ctx.parallel_ray_profile(v.side, a, b, &v.parallel_steps)?
            .iter()
            .map(|p| (-p.step.log10(), p.value))
            .collect()
    } else {
        Vec::new()
    };
    Ok(profile_plot(&parallel, &ray))
}

fn plot_plane(config: &RunConfig, kind: PlotKind) -> Result<String, CliError> {
    let ctx = config.plane_context()?;
    let poly = ctx.polygon();
    let p = &config.plot;
    if kind == PlotKind::Profiles {
        let v = &config.verify;
        let side = v.side % poly.len();
        let (a, b) = poly.edge(side);
        let origin = v.ray_origin.map_or_else(|| plane_centroid(poly), Point2::from);
        let ray = ctx.ray_profile(origin, v.side, a.lerp(b, 0.5), &v.ray_steps)?;
        let ray: Vec<(f64, f64)> = ray.iter().map(|p| (-p.step.log10(), p.value)).collect();
        return Ok(profile_plot(&[], &ray));
    }
    let (lo, hi) = poly.bounding_box();
    let pad = 0.1 * lo.dist(hi);
    let mut svg = Svg::new(lo - Point2::new(pad, pad), hi + Point2::new(pad, pad));
    svg.polygon(poly.vertices(), "polygon");
    match kind {
        PlotKind::Supports => {
            let mid = lo.lerp(hi, 0.5);
            let reach = lo.dist(hi);
            for &t in &p.thetas {
                let n = Point2::new(t.cos(), t.sin());
                let (xi, eta) = plane::strip_support(poly, t);
                for level in [xi, eta] {
                    // foot of the support line nearest the box centre
                    let foot = mid + n * (level - mid.dot(n));
                    svg.line(foot - n.perp() * reach, foot + n.perp() * reach, "support");
                }
            }
        }
        PlotKind::Geodesics => {
            for (k, &[a, b]) in p.geodesics.iter().enumerate() {
                let (x, y) = (Point2::from(a), Point2::from(b));
                for q in [x, y] {
                    if poly.signed_distance(q) <= plane::INTERIOR_EPS {
                        return Err(CliError::data(format!(
                            "geodesic {k}: point ({}, {}) is outside the polygon",
                            q.x, q.y
                        )));
                    }
                }
                svg.line(x, y, "geodesic");
            }
        }
        PlotKind::Profiles => unreachable!(),
    }
    Ok(svg.finish())
}

/// Renders one SVG plot; unknown plot names are config errors.
pub fn cmd_plot(config: &RunConfig, what: &str) -> Result<Outcome, CliError> {
    let kind: PlotKind = what.parse()?;
    let svg = match config.space {
        Space::Disc => plot_disc(config, kind)?,
        Space::Plane => plot_plane(config, kind)?,
    };
    let name = format!("plot-{}.svg", kind.name());
    Ok(Outcome {
        exit_code: EXIT_PASS,
        summary: format!("plot: wrote {name}, config {}", &config.hash()[..12]),
        artifacts: vec![Artifact::new(name, svg)],
    })
}
