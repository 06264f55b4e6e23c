use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn corpus(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(rel)
}

fn cotstruct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cotstruct"))
        .args(args)
        .env_remove("COTSTRUCT_FIELD")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

const ALGEBRA_INLINE: &str = r#"format-version = 1

[algebra]
format-version = 1
field = "5"

[algebra.quiver]
vertices = ["1"]
"#;

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn hom_dimensions() {
    let k = corpus("trivial/generators/k.toml");
    let split = corpus("trivial/examples/split-pair.toml");
    let out = cotstruct(&["hom", p(&k), p(&split), "--shift", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["dimensions"]["dimension"], 1);
    assert_eq!(r["field"], "5");

    let out = cotstruct(&["hom", p(&k), p(&split), "--shift", "-1"]);
    assert_eq!(report(&out)["dimensions"]["dimension"], 0);

    let c = corpus("trivial/examples/contractible.toml");
    let out = cotstruct(&["hom", p(&c), p(&c), "--show-reps"]);
    let r = report(&out);
    assert_eq!(r["dimensions"]["dimension"], 0);
    assert_eq!(r["dimensions"]["representatives"], Value::Array(vec![]));
}

#[test]
fn malformed_input_exits_1() {
    let k = corpus("trivial/generators/k.toml");
    let bad = corpus("trivial/examples/malformed.toml");
    let out = cotstruct(&["hom", p(&k), p(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["status"], "input_error");
    assert!(r["error"].as_str().unwrap().contains("nonzero"));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn file_format_is_strict() {
    let dir = TempDir::new().unwrap();
    let k = corpus("trivial/generators/k.toml");
    let unknown = write(
        &dir,
        "unknown.toml",
        &format!("{ALGEBRA_INLINE}colour = \"red\"\n"),
    );
    let out = cotstruct(&["hom", p(&k), p(&unknown)]);
    assert_eq!(out.status.code(), Some(1));

    let unversioned = write(
        &dir,
        "unversioned.toml",
        "[algebra]\nformat-version = 1\n[algebra.quiver]\nvertices = [\"1\"]\n",
    );
    let out = cotstruct(&["hom", p(&k), p(&unversioned)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(report(&out)["error"]
        .as_str()
        .unwrap()
        .contains("format-version"));

    let bad_path = write(
        &dir,
        "bad-path.toml",
        &format!("{ALGEBRA_INLINE}\n[[degree]]\ndegree = 0\nsummands = [\"1\"]\ndifferential = [[\"b7\"]]\n\n[[degree]]\ndegree = 1\nsummands = [\"1\"]\n"),
    );
    let out = cotstruct(&["hom", p(&k), p(&bad_path)]);
    assert_eq!(out.status.code(), Some(1));
    let msg = report(&out)["error"].as_str().unwrap().to_string();
    assert!(
        msg.contains("bad-path.toml") && msg.contains("degree 0"),
        "{msg}"
    );

    let empty = write(&dir, "empty.toml", ALGEBRA_INLINE);
    let out = cotstruct(&["hom", p(&k), p(&empty)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["dimensions"]["dimension"], 0);
}

#[test]
fn field_resolution() {
    let dir = TempDir::new().unwrap();
    let body = "format-version = 1\n\n[algebra]\nformat-version = 1\n\n[algebra.quiver]\nvertices = [\"1\"]\n\n[[degree]]\ndegree = 0\nsummands = [\"1\"]\n";
    let x = write(&dir, "x.toml", body);
    let out = cotstruct(&["hom", p(&x), p(&x)]);
    assert_eq!(report(&out)["field"], "5");
    let out = cotstruct(&["hom", p(&x), p(&x), "--field", "rational"]);
    assert_eq!(report(&out)["field"], "rational");
    let out = Command::new(env!("CARGO_BIN_EXE_cotstruct"))
        .args(["hom", p(&x), p(&x)])
        .env("COTSTRUCT_FIELD", "7")
        .output()
        .unwrap();
    assert_eq!(report(&out)["field"], "7");
    let out = cotstruct(&["hom", p(&x), p(&x), "--field", "4"]);
    assert_eq!(out.status.code(), Some(1));

    let k = corpus("trivial/generators/k.toml");
    let out = cotstruct(&["hom", p(&k), p(&k), "--field", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(report(&out)["error"]
        .as_str()
        .unwrap()
        .contains("contradicts"));
}

#[test]
fn decompose_writes_both_parts() {
    let dir = TempDir::new().unwrap();
    let x = corpus("trivial/examples/split-pair.toml");
    let k = corpus("trivial/generators/k.toml");
    let out = cotstruct(&[
        "decompose",
        p(&x),
        "--gen",
        p(&k),
        "--generating",
        "--out-dir",
        p(dir.path()),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let r = report(&out);
    assert_eq!(r["status"], "pass");
    assert_eq!(r["summary"]["violations"], 0);
    assert_eq!(r["dimensions"]["a_part_cohomology"]["1"], 1);
    assert_eq!(r["dimensions"]["b_part_cohomology"]["0"], 1);
    let a = dir.path().join("split-pair.a.toml");
    let b = dir.path().join("split-pair.b.toml");
    assert!(a.exists() && b.exists());
    // The written parts parse and carry the same homotopy type.
    let out = cotstruct(&["hom", p(&k), p(&b)]);
    assert_eq!(report(&out)["dimensions"]["dimension"], 1);
    let out = cotstruct(&["hom", p(&k), p(&a), "--shift", "1"]);
    assert_eq!(report(&out)["dimensions"]["dimension"], 1);
}

#[test]
fn non_terminating_tower_exits_2() {
    let dir = TempDir::new().unwrap();
    let gen = write(
        &dir,
        "k-plus-sk.toml",
        &format!("{ALGEBRA_INLINE}\n[[degree]]\ndegree = -1\nsummands = [\"1\"]\n\n[[degree]]\ndegree = 0\nsummands = [\"1\"]\n"),
    );
    let k = corpus("trivial/generators/k.toml");
    let out = cotstruct(&[
        "decompose",
        p(&k),
        "--gen",
        p(&gen),
        "--max-iter",
        "4",
        "--out-dir",
        p(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["status"], "non_terminating");
    assert!(r["tower"].is_object());
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let k = corpus("trivial/generators/k.toml");
    let out = cotstruct(&["verify", "--gen", p(&k), "--corpus", p(dir.path())]);
    assert_eq!(out.status.code(), Some(1));
    assert!(report(&out)["error"]
        .as_str()
        .unwrap()
        .contains("empty corpus"));

    let out = cotstruct(&[
        "verify",
        "--gen",
        p(&k),
        "--corpus",
        p(&corpus("trivial/objects")),
        "--generating",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["summary"]["inconclusive"], 0);
    assert_eq!(r["summary"]["witnesses_verified"], true);
}

#[test]
fn random_is_deterministic() {
    let one = TempDir::new().unwrap();
    let two = TempDir::new().unwrap();
    let alg = corpus("a2/algebra.toml");
    for d in [&one, &two] {
        let out = cotstruct(&[
            "random",
            "--algebra",
            p(&alg),
            "--seed",
            "9",
            "--count",
            "4",
            "--out-dir",
            p(d.path()),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    for i in 0..4 {
        let name = format!("random-{i:04}.toml");
        let a = std::fs::read(one.path().join(&name)).unwrap();
        let b = std::fs::read(two.path().join(&name)).unwrap();
        assert_eq!(a, b);
        let f = one.path().join(&name);
        let out = cotstruct(&["hom", p(&f), p(&f)]);
        assert_eq!(out.status.code(), Some(0));
    }

    let out = cotstruct(&[
        "random",
        "--algebra",
        p(&alg),
        "--degree-span",
        "1",
        "--count",
        "3",
        "--prefix",
        "stalk",
        "--out-dir",
        p(one.path()),
    ]);
    assert_eq!(out.status.code(), Some(0));
    for i in 0..3 {
        let text = std::fs::read_to_string(one.path().join(format!("stalk-{i:04}.toml"))).unwrap();
        assert_eq!(text.matches("[[degree]]").count(), 1, "{text}");
    }

    let out = cotstruct(&[
        "random",
        "--algebra",
        p(&alg),
        "--count",
        "0",
        "--out-dir",
        p(one.path()),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reports_can_go_to_a_file() {
    let dir = TempDir::new().unwrap();
    let k = corpus("trivial/generators/k.toml");
    let path = dir.path().join("r.json");
    let out = cotstruct(&["hom", p(&k), p(&k), "--report", p(&path)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["dimensions"]["dimension"], 1);
    assert!(r.get("timing_ms").is_none());
}
