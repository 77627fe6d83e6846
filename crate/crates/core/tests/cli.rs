use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use acoustophoresis::geometry::parse_stl;

fn run(dir: &Path, config: &str, args: &[&str]) -> Output {
    let path = dir.join("scene.toml");
    fs::write(&path, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_acoustophoresis"))
        .args(args)
        .arg("--config")
        .arg(&path)
        .arg("--out-dir")
        .arg(dir)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

const ELLIPSOID_ARRAY: &str = r#"
[particle]
mapping_coefficients = [0.002, 0.0, 0.0004]
density = 15.0

[source.array]
radius = 0.005
positions = [[0.0, 0.0, 0.0], [0.01, 0.0, 0.0], [-0.01, 0.0, 0.0], [0.0, 0.01, 0.0], [0.0, -0.01, 0.0]]
v0 = 1.5
interdistance = 0.02

[pose]
initial_position = [0.002, 0.0, 0.0]
initial_orientation = [0.5235987755982988, 0.0, 0.0]
"#;

#[test]
fn particle_export_reports_extents() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), "[particle]\nmapping_coefficients = [0.002, 0.0, 0.0004]", &["particle"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("4.8000 mm (axis) x 3.2000 mm (equator)"), "{}", stdout(&out));
    let mesh = parse_stl(&fs::read_to_string(dir.path().join("particle_data.stl")).unwrap()).unwrap();
    assert!(mesh.is_closed());

    let out = run(dir.path(), "", &["particle"]);
    assert!(stdout(&out).contains("averaged radius   2.0000 mm"), "{}", stdout(&out));
}

#[test]
fn malformed_shape_exits_with_geometry_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), "[particle]\nmapping_coefficients = [0.002, 0.0, 0.0, 0.003]", &["particle"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("gamma in ["), "{}", stderr(&out));
}

#[test]
fn usage_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), "", &["force", "--sweep", "q=0:1:2"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), "", &[]).status.code(), Some(1));
    assert_eq!(run(dir.path(), "frequency = \"high\"", &["force"]).status.code(), Some(1));
    let out = run(dir.path(), "", &["simulate"]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
}

#[test]
fn single_piston_on_axis_pressure() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = "[source.array]\nradius = 0.005\npositions = [[0.0, 0.0, 0.0]]\nv0 = 1.5\ninterdistance = 0.02\n\
               [field]\nx_range = [-0.01, 0.01]\nz_range = [-0.02, 0.0]\nnx = 3\nnz = 3\n";
    let out = run(dir.path(), cfg, &["field"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("field_xoz.csv")).unwrap();
    let rows = csv_rows(&text);
    let on_axis = rows.iter().find(|r| r[0] == 0.0 && r[1] == 0.0).unwrap();
    assert!((on_axis[4] - 283.0).abs() < 0.5, "{}", on_axis[4]);
    assert_eq!(rows.len(), 8);
    assert!(text.contains("# skipped (coincides with a transducer center): 0e0,-2e-2"), "{text}");
}

#[test]
fn plane_wave_map_has_unit_modulus() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), "[field]\nnx = 11\nnz = 7", &["field", "--quiet"]);
    assert!(out.status.success() && out.stdout.is_empty());
    let rows = csv_rows(&fs::read_to_string(dir.path().join("field_xoz.csv")).unwrap());
    assert_eq!(rows.len(), 77);
    assert!(rows.iter().all(|r| (r[4] - 1.0).abs() < 1e-14));
}

#[test]
fn anti_phased_pair_cancels_on_the_symmetry_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = "[source.array]\nradius = 0.005\npositions = [[0.0, 0.0, 0.0], [0.01, 0.0, 0.0]]\nv0 = 1.5\n\
               phase_delay = [0.0, 3.141592653589793]\ninterdistance = 0.02\n\
               [field]\nx_range = [-0.005, 0.015]\nz_range = [-0.01, 0.02]\nnx = 5\nnz = 7\n";
    let out = run(dir.path(), cfg, &["field"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let rows = csv_rows(&fs::read_to_string(dir.path().join("field_xoz.csv")).unwrap());
    let max = rows.iter().map(|r| r[4]).fold(0.0, f64::max);
    let line: Vec<_> = rows.iter().filter(|r| r[0] == 0.005).collect();
    assert_eq!(line.len(), 7);
    assert!(line.iter().all(|r| r[4] < 1e-10 * max), "{line:?}");
}

#[test]
fn cone_force_nulls_and_sweep_consistency() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = "[particle]\nmapping_coefficients = [0.002, 0.0, 0.0, 0.00025]\n";
    let out = run(dir.path(), cfg, &["force"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).starts_with("F = ["), "{}", stdout(&out));
    let single = csv_rows(&fs::read_to_string(dir.path().join("force.csv")).unwrap());
    let r = &single[0];
    assert!(r[2] > 0.0);
    assert!(r[0].abs() < 1e-8 * r[2] && r[1].abs() < 1e-8 * r[2]);
    assert!(r[3..].iter().all(|t| t.abs() < 1e-8 * r[2]));

    let out = run(dir.path(), cfg, &["force", "--sweep", "x=0:1.5:1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let swept = csv_rows(&fs::read_to_string(dir.path().join("force.csv")).unwrap());
    assert_eq!(swept.len(), 1);
    assert_eq!(swept[0][1..], single[0][..]);

    let out = run(dir.path(), cfg, &["force", "--sweep", "x=0:1.5707963267948966:4", "--n-max", "12"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("force.csv")).unwrap();
    assert!(text.starts_with("theta_x,fx,fy,fz,tx,ty,tz\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 4);
    assert!(rows[1][4].abs() > 0.0, "tilted cone feels a torque");
}

#[test]
fn simulate_writes_a_reproducible_trajectory() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), ELLIPSOID_ARRAY, &["simulate"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("termination: converged_5pct"), "{}", stdout(&out));
    let path = dir.path().join("Myfilename.txt");
    let first = fs::read(&path).unwrap();
    let text = String::from_utf8(first.clone()).unwrap();
    assert!(text.contains("# t x y z theta_x theta_y theta_z\n"));
    assert!(text.contains("# v0 = 1.5"));
    let rows: Vec<Vec<f64>> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split_whitespace().map(|v| v.parse().unwrap()).collect())
        .collect();
    assert!(rows.len() > 10);
    assert!(rows.iter().all(|r| r.len() == 7));
    assert!(rows.last().unwrap()[0] < 0.1);
    assert!(rows.windows(2).all(|w| w[1][0] > w[0][0]));

    run(dir.path(), ELLIPSOID_ARRAY, &["simulate", "--quiet"]);
    assert_eq!(fs::read(&path).unwrap(), first);
}

#[test]
fn silent_array_converges_immediately() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ELLIPSOID_ARRAY.replace("v0 = 1.5", "v0 = 0.0") + "\n[dynamics]\ngravity = 0.0\n";
    let out = run(dir.path(), &cfg, &["simulate"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = fs::read_to_string(dir.path().join("Myfilename.txt")).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 2);
}

#[test]
fn simulate_refuses_to_start_inside_the_guard_band() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ELLIPSOID_ARRAY.replace("interdistance = 0.02", "interdistance = 0.01");
    let out = run(dir.path(), &cfg, &["simulate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("far-field guard"), "{}", stderr(&out));
}

#[test]
fn csv_outputs_are_byte_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ELLIPSOID_ARRAY.to_string() + "\n[field]\nnx = 9\nnz = 9\n";
    for (cmd, file) in [("field", "field_xoz.csv"), ("force", "force.csv")] {
        run(dir.path(), &cfg, &[cmd]);
        let a = fs::read(dir.path().join(file)).unwrap();
        run(dir.path(), &cfg, &[cmd]);
        assert_eq!(fs::read(dir.path().join(file)).unwrap(), a, "{cmd}");
    }
}
