use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use polymetric::cli::{cmd_plot, cmd_verify, RunConfig, EXIT_CONFIG, EXIT_DATA, EXIT_VERIFY_FAILED};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polymetric"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn dist_writes_matrices_and_is_reproducible() {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let config = fixture("square_chords.json");
    let points = fixture("square_points.json");
    for d in &dirs {
        let o = run(&["dist", "--config", config.to_str().unwrap(), "--points", points.to_str().unwrap()], d.path());
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    for name in ["dist.csv", "dist_bounds.csv", "dist.json"] {
        let a = std::fs::read(dirs[0].path().join(name)).unwrap();
        let b = std::fs::read(dirs[1].path().join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between runs");
    }
    let csv = std::fs::read_to_string(dirs[0].path().join("dist.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn plane_dist_runs() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "dist",
            "--config",
            fixture("plane_square.json").to_str().unwrap(),
            "--points",
            fixture("plane_points.json").to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn verify_passes_on_the_square() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["verify", "--config", fixture("square_chords.json").to_str().unwrap()], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let report: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("verify.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
}

#[test]
fn absurd_tail_tolerance_fails_verification() {
    let config = RunConfig::load(&fixture("absurd_tail.json")).unwrap();
    assert_eq!(cmd_verify(&config).unwrap().exit_code, EXIT_VERIFY_FAILED);
}

#[test]
fn bad_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"polygon": [[0.5, 0.0]], "unknown": 1}"#).unwrap();
    let o = run(&["verify", "--config", bad.to_str().unwrap()], dir.path());
    assert_eq!(code(&o), EXIT_CONFIG as i32);

    let plane_with_family = dir.path().join("pf.json");
    std::fs::write(
        &plane_with_family,
        r#"{"space": "plane", "family": "chords", "polygon": [[0,0],[1,0],[0,1]]}"#,
    )
    .unwrap();
    let o = run(&["verify", "--config", plane_with_family.to_str().unwrap()], dir.path());
    assert_eq!(code(&o), EXIT_CONFIG as i32);

    let o = run(&["plot", "--config", fixture("square_chords.json").to_str().unwrap(), "--what", "nothing"], dir.path());
    assert_eq!(code(&o), EXIT_CONFIG as i32);
}

#[test]
fn point_outside_polygon_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("pts.json");
    std::fs::write(&pts, "[[0.0, 0.0], [0.9, 0.0]]").unwrap();
    let o = run(
        &["dist", "--config", fixture("square_chords.json").to_str().unwrap(), "--points", pts.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(code(&o), EXIT_DATA as i32);
}

#[test]
fn compare_hilbert_writes_report_and_figure() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["compare-hilbert", "--config", fixture("square_chords.json").to_str().unwrap()], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert!(dir.path().join("compare.json").exists());
    let svg = std::fs::read_to_string(dir.path().join("compare.svg")).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
}

#[test]
fn plots_are_deterministic_svg() {
    let config = RunConfig::load(&fixture("square_poincare.json")).unwrap();
    for what in ["geodesics", "supports", "profiles"] {
        let a = cmd_plot(&config, what).unwrap();
        let b = cmd_plot(&config, what).unwrap();
        assert_eq!(a, b);
        let svg = a.artifact(&format!("plot-{what}.svg")).unwrap();
        assert!(String::from_utf8_lossy(svg).trim_end().ends_with("</svg>"));
    }
}

#[test]
fn config_hash_includes_defaults() {
    let explicit = RunConfig::from_json(
        r#"{"polygon": [[0.5,-0.5],[0.5,0.5],[-0.5,0.5],[-0.5,-0.5]], "scheme": {"r": 0.9}}"#,
    )
    .unwrap();
    let implicit =
        RunConfig::from_json(r#"{"polygon": [[0.5,-0.5],[0.5,0.5],[-0.5,0.5],[-0.5,-0.5]]}"#).unwrap();
    assert_eq!(explicit.hash(), implicit.hash());
    assert_eq!(implicit.hash().len(), 64);
}
