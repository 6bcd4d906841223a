use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn peelkit(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_peelkit"))
        .args(args)
        .current_dir(dir)
        .env_remove("PEELKIT_TOLERANCE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn tmp() -> TempDir {
    tempfile::tempdir().unwrap()
}

#[test]
fn list_counts() {
    let dir = tmp();
    let rows = |args: &[&str]| stdout(&peelkit(args, dir.path())).lines().count() - 1;
    assert_eq!(rows(&["list"]), 31);
    assert_eq!(rows(&["list", "--family", "catalan"]), 13);
    assert_eq!(rows(&["list", "--family", "Platonic"]), 5);
}

#[test]
fn list_faces_gives_gons_by_index() {
    let dir = tmp();
    let out = stdout(&peelkit(&["list", "--faces", "{5,6,6}"], dir.path()));
    let lines: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(lines.len(), 32);
    let pentagons = lines
        .iter()
        .filter(|l| l.split(',').nth(1) == Some("5"))
        .count();
    assert_eq!(pentagons, 12);
}

#[test]
fn truncated_icosahedron_net() {
    let dir = tmp();
    let out = peelkit(
        &[
            "peel", "{5,6,6}", "--f1", "0", "--f2", "1", "--net", "out.svg",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"outcome\":\"complete\""));
    let svg = fs::read_to_string(dir.path().join("out.svg")).unwrap();
    assert_eq!(svg.matches("<polygon").count(), 32);
}

#[test]
fn cuboctahedron_incomplete_exit() {
    let dir = tmp();
    let out = peelkit(&["peel", "{3,4,3,4}", "--f1", "0", "--f2", "1"], dir.path());
    assert_eq!(out.status.code(), Some(10));
    assert!(!stdout(&out).contains("\"outcome\":\"complete\""));
}

#[test]
fn bad_start_pair_exit() {
    let dir = tmp();
    let out = peelkit(&["peel", "cube", "--f1", "0", "--f2", "7"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    // the face opposite face 0 is the one missing from its neighbor list
    let faces = stdout(&peelkit(&["list", "--faces", "cube"], dir.path()));
    let neighbors: Vec<String> = faces
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(2)
        .unwrap()
        .split(' ')
        .map(str::to_owned)
        .collect();
    let far = (1..6)
        .find(|f| !neighbors.contains(&f.to_string()))
        .unwrap();
    let out = peelkit(
        &["peel", "cube", "--f1", "0", "--f2", &far.to_string()],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not adjacent"));
}

#[test]
fn unknown_solid_exit() {
    let dir = tmp();
    let out = peelkit(&["peel", "nonagon", "--f1", "0", "--f2", "1"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(
        peelkit(&["graph", "nonagon"], dir.path()).status.code(),
        Some(3)
    );
    assert_eq!(
        peelkit(&["classify", "nonagon"], dir.path()).status.code(),
        Some(3)
    );
}

#[test]
fn all_outputs_and_byte_determinism() {
    let dir = tmp();
    let args = [
        "peel",
        "dodecahedron",
        "--f1",
        "0",
        "--f2",
        "1",
        "--json",
        "run.json",
        "--net",
        "net.svg",
        "--graph",
        "graph.svg",
        "--obj",
        "mid.obj",
        "--step",
        "5",
        "--manifest",
        "run.manifest.json",
    ];
    assert!(peelkit(&args, dir.path()).status.success());
    let read = |name: &str| fs::read(dir.path().join(name)).unwrap();
    let first: Vec<Vec<u8>> = ["run.json", "net.svg", "graph.svg", "mid.obj"]
        .iter()
        .map(|n| read(n))
        .collect();
    let obj = String::from_utf8(first[3].clone()).unwrap();
    assert!(obj.contains("unfolded"));
    assert!(obj.contains("not-unfolded"));

    for name in ["run.json", "net.svg", "graph.svg", "mid.obj"] {
        fs::remove_file(dir.path().join(name)).unwrap();
    }
    let out = peelkit(&["replay", "run.manifest.json"], dir.path());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let again: Vec<Vec<u8>> = ["run.json", "net.svg", "graph.svg", "mid.obj"]
        .iter()
        .map(|n| read(n))
        .collect();
    assert_eq!(first, again);
}

#[test]
fn mesh_file_input() {
    let dir = tmp();
    let off = "OFF\n4 4 6\n1 1 1\n1 -1 -1\n-1 1 -1\n-1 -1 1\n3 0 1 2\n3 0 3 1\n3 0 2 3\n3 1 3 2\n";
    fs::write(dir.path().join("tet.off"), off).unwrap();
    let out = peelkit(&["peel", "tet.off", "--f1", "0", "--f2", "1"], dir.path());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).contains("\"solid\":\"tet\""));
    let out = peelkit(&["classify", "tet.off"], dir.path());
    assert!(stdout(&out).contains("Perfect,12,12"));

    fs::write(dir.path().join("bad.off"), "OFF\n4 4 6\n1 1 1\n").unwrap();
    let out = peelkit(&["peel", "bad.off", "--f1", "0", "--f2", "1"], dir.path());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn handedness_and_mirror_agree() {
    let dir = tmp();
    let run = |extra: &[&str]| {
        let mut args = vec!["peel", "snub cube", "--f1", "0", "--f2", "1"];
        args.extend_from_slice(extra);
        let out = stdout(&peelkit(&args, dir.path()));
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        v["order"].clone()
    };
    assert_eq!(run(&["--handedness", "left"]), run(&["--mirror"]));
}

#[test]
fn tolerance_from_environment() {
    let dir = tmp();
    let out = Command::new(env!("CARGO_BIN_EXE_peelkit"))
        .args(["peel", "cube", "--f1", "0", "--f2", "1"])
        .current_dir(dir.path())
        .env("PEELKIT_TOLERANCE", "-1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("tolerance"));
}

#[test]
fn classify_cube_and_outputs() {
    let dir = tmp();
    let out = peelkit(
        &[
            "classify", "cube", "--expect", "table1", "--csv", "t.csv", "--json", "t.json",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.path().join("t.csv")).unwrap();
    assert_eq!(
        csv.lines().nth(1),
        Some("Cube,\"{4,4,4}\",Platonic,Perfect,24,24")
    );
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("t.json")).unwrap()).unwrap();
    assert_eq!(json[0]["verdict"], "PerfectlyPeelable");
}

#[test]
fn archimedean_table_matches() {
    let dir = tmp();
    let out = peelkit(
        &["classify", "archimedean", "--expect", "table1"],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn snub_cube_patterns_by_start_face() {
    let dir = tmp();
    let out = stdout(&peelkit(
        &["classify", "{3,3,3,3,4}", "--patterns"],
        dir.path(),
    ));
    assert!(out.contains("start 3-gon"));
    assert!(out.contains("start 4-gon: 24 runs, 24 complete"));
}

#[test]
fn graph_families() {
    let dir = tmp();
    let out = peelkit(
        &[
            "graph",
            "archimedean",
            "--expect",
            "table1",
            "--json",
            "g.json",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let reports: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("g.json")).unwrap()).unwrap();
    let found = reports
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["hamiltonian"] == "found")
        .count();
    assert_eq!(found, 13);

    let out = peelkit(&["graph", "catalan", "--expect", "table1"], dir.path());
    assert!(out.status.success());
    let found = stdout(&out).matches("\"hamiltonian\":\"found\"").count();
    assert_eq!(found, 7);
}

#[test]
fn graph_timeout_is_distinct() {
    let dir = tmp();
    let out = peelkit(&["graph", "snub dodecahedron", "--budget", "1"], dir.path());
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).contains("\"hamiltonian\":\"timeout\""));
}
