use std::path::PathBuf;
use std::process::{Command, Output};

fn polyalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyalg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn nilpotence_of_triangle() {
    let o = polyalg(&["sf-nilpotence", "corpus:triangle"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("zero function: true"));
}

#[test]
fn euler_of_cube() {
    let o = polyalg(&["euler", "corpus:cube"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn augmentation_has_zero_grade_0() {
    let o = polyalg(&["phi", "corpus:square", "--element", "class-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "grade 0: [0, 0, 0, 0]"), "{}", stdout(&o));
}

#[test]
fn malformed_file_reports_position() {
    let path = scratch("bad.json", "{\"ambient_dim\": 2,\n \"vertices\": [[\"0\", \"0\"],]}");
    let o = polyalg(&["hull", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2, column"), "{}", stderr(&o));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(polyalg(&["hull", "corpus:dodecahedron"]).status.code(), Some(2));
    assert_eq!(polyalg(&["hull", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(polyalg(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(polyalg(&["summand-cone", "corpus:pyramid"]).status.code(), Some(2));
    assert_eq!(polyalg(&["phi", "corpus:square", "--element", "klass"]).status.code(), Some(2));
}

#[test]
fn failed_checks_exit_1() {
    let o = polyalg(&["sf-equal", "corpus:square", "corpus:triangle"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("equal: false"));

    let w = r#"{"reference":{"ambient_dim":2,"vertices":[["0","0"],["0","1"],["1","0"],["1","1"]]},
               "grade":1,"values":{"0,1":"1","0,2":"2","1,3":"1","2,3":"1"}}"#;
    let path = scratch("unbalanced.json", w);
    let o = polyalg(&["balance-check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("balanced: false"));
}

#[test]
fn dimension_limit_from_environment() {
    let path = scratch("tri.json", r#"{"ambient_dim":2,"vertices":[["0","0"],["1","0"],["0","1"]]}"#);
    let o = Command::new(env!("CARGO_BIN_EXE_polyalg"))
        .args(["volume", path.to_str().unwrap()])
        .env("POLYALG_MAX_DIM", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("exceeds configured maximum 1"));
}

#[test]
fn hyperplane_limit_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_polyalg"))
        .args(["sf-nilpotence", "corpus:cube"])
        .env("POLYALG_MAX_HYPERPLANES", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn weight_file_round_trip() {
    let o = polyalg(&["weight", "corpus:hexagon", "--summand", "corpus:triangle", "--grade", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let path = scratch("hex-weight.json", &stdout(&o));
    let o = polyalg(&["balance-check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = polyalg(&["reconstruct", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rebuilt = scratch("rebuilt.json", &stdout(&o));
    let a = polyalg(&["faces", rebuilt.to_str().unwrap()]);
    assert!(stdout(&a).starts_with("f-vector: [3, 3, 1]"), "{}", stdout(&a));
}

#[test]
fn corpus_entries_round_trip_through_files() {
    let list = stdout(&polyalg(&["corpus"]));
    for name in list.lines().map(|l| l.split_whitespace().next().unwrap()) {
        let first = stdout(&polyalg(&["corpus", name]));
        let path = scratch(&format!("{name}.json"), &first);
        let o = polyalg(&["--format", "json", "hull", path.to_str().unwrap()]);
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(format!("{}\n", v["polytope"]), first, "{name}");
    }
}

#[test]
fn json_output_parses() {
    let o = polyalg(&["--format", "json", "mixed-volume", "corpus:square", "corpus:triangle"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["polarization"], "1");
    assert_eq!(v["algebra"], "1");
    assert_eq!(v["agree"], true);
}

#[test]
fn euclidean_convention() {
    let o = polyalg(&["--convention", "euclidean", "volume", "corpus:diagonal-segment"]);
    let text = stdout(&o);
    let value: f64 = text.split_whitespace().next().unwrap().parse().unwrap();
    assert!((value - 2f64.sqrt()).abs() < 1e-12, "{text}");
    assert_eq!(stdout(&polyalg(&["volume", "corpus:diagonal-segment"])).trim(), "1");
}

/// Compares against `tests/golden/<name>.txt`; set `UPDATE_GOLDEN=1` to rewrite.
fn golden(name: &str, args: &[&str]) {
    let o = polyalg(args);
    assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, stdout(&o)).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {path:?}"));
    assert_eq!(stdout(&o), expected, "{name}");
}

#[test]
fn golden_outputs() {
    golden("hull-pentagon", &["hull", "corpus:pentagon"]);
    golden("faces-cube", &["faces", "corpus:cube"]);
    golden("frames-triangle", &["frames", "corpus:triangle"]);
    golden("phi-hexagon", &["phi", "corpus:hexagon"]);
    golden("summand-cone-hexagon", &["summand-cone", "corpus:hexagon"]);
    golden("class-divide-triangle", &["class-divide", "corpus:triangle", "--m", "4"]);
    golden("class-log-square", &["class-log", "corpus:square"]);
    golden("class-grade-square", &["class-grade", "corpus:square"]);
    golden("ehrhart-tetrahedron", &["ehrhart", "corpus:tetrahedron"]);
    golden("vol-poly-parallelograms", &["vol-poly", "corpus:parallelogram-a", "corpus:parallelogram-b"]);
    golden("sf-inverse-segment", &["sf-inverse", "corpus:segment"]);
    golden("figure-division", &["verify-figure", "division-by-4"]);
}
