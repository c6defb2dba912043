use std::process::{Command, Output};

fn facelat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_facelat")).args(args).env_remove("FACELAT_FIXTURES").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn square_face_lattice_listing() {
    let o = facelat(&["lattice", "square", "--kind", "faces"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("10 elements"));
    assert_eq!(out.lines().filter(|l| l.trim_start().starts_with("dim")).count(), 10);
}

#[test]
fn cube_normal_dot() {
    let dir = std::env::temp_dir().join(format!("facelat-cube-{}.dot", std::process::id()));
    let o = facelat(&["lattice", "cube", "--kind", "normal", "--dot", dir.to_str().unwrap()]);
    assert!(o.status.success());
    let dot = std::fs::read_to_string(&dir).unwrap();
    std::fs::remove_file(&dir).ok();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.lines().filter(|l| l.contains("label=")).count(), 28);
}

#[test]
fn quarter_disk_touching_roles() {
    let out = stdout(&facelat(&["lattice", "quarter_disk", "--kind", "touching"]));
    assert!(out.starts_with("note:"));
    assert_eq!(out.matches("touching but not normal").count(), 2);
    assert_eq!(out.matches("arc's family").count(), 1);
    assert_eq!(out.matches("sector[").count(), 3);
}

#[test]
fn check_exit_codes() {
    let o = facelat(&["check", "square", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["fixture"], "square");

    let o = facelat(&["check", "fig5_right", "--suite", "coatoms"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let notes: Vec<String> = v["verdicts"].as_array().unwrap().iter().map(|d| d["detail"].to_string()).collect();
    assert!(notes.iter().any(|n| n.contains("not an intersection of coatoms")), "{notes:?}");

    assert_eq!(facelat(&["check", "no_such_body"]).status.code(), Some(2));
    assert_eq!(facelat(&["check", "square", "--suite", "bogus"]).status.code(), Some(2));
}

#[test]
fn malformed_file_is_an_input_error() {
    let p = std::env::temp_dir().join(format!("facelat-bad-{}.json", std::process::id()));
    std::fs::write(&p, "{\"type\": \"polytope\", \"vertices\": [[\"1/0\"]]}").unwrap();
    let o = facelat(&["check", p.to_str().unwrap()]);
    std::fs::remove_file(&p).ok();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn polar_roundtrip_of_square() {
    let p = std::env::temp_dir().join(format!("facelat-polar-{}.json", std::process::id()));
    let o = facelat(&["polar", "square", "--out", p.to_str().unwrap()]);
    assert!(o.status.success());
    let o = facelat(&["lattice", p.to_str().unwrap()]);
    std::fs::remove_file(&p).ok();
    assert!(stdout(&o).starts_with("10 elements"));
}

#[test]
fn statespace_commands() {
    let o = facelat(&["statespace", "cone", "--phi", "12", "--resolution", "240"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("hyperbolic"));

    let o = facelat(&["statespace", "bloch", "--samples", "40", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["counts"]["qubit_violations"], 0);
    assert_eq!(v["counts"]["qubit_plus_c_violations"], 0);

    assert_eq!(facelat(&["statespace", "cone", "--phi", "95"]).status.code(), Some(2));
}

#[test]
fn fixtures_directory_override() {
    let dir = std::env::temp_dir().join(format!("facelat-fx-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("seg.json"), "{\"type\": \"polytope\", \"name\": \"seg\", \"vertices\": [[\"0\"], [\"1\"]]}").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_facelat")).args(["lattice", "seg"]).env("FACELAT_FIXTURES", &dir).output().unwrap();
    std::fs::remove_dir_all(&dir).ok();
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("4 elements"));
}

#[test]
fn polar_examples() {
    let v = json(&facelat(&["polar", "square"]));
    let mut verts: Vec<String> = v["vertices"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
    verts.sort();
    assert_eq!(verts, ["[\"-1\",\"0\"]", "[\"0\",\"-1\"]", "[\"0\",\"1\"]", "[\"1\",\"0\"]"]);

    let disk = json(&facelat(&["polar", "unit_disk"]));
    for f in disk["features"].as_array().unwrap() {
        assert_eq!(f["kind"], "arc");
        assert_eq!(f["radius_sq"], "1");
    }

    let mouse = json(&facelat(&["polar", "truncated_disk_closed"]));
    assert!(mouse["features"].as_array().unwrap().iter().any(|f| f["from"] == serde_json::json!(["2", "0"])));

    assert_eq!(facelat(&["polar", "truncated_disk_open"]).status.code(), Some(2));
}
