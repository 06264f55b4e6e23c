use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn cotstruct(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_cotstruct"))
        .args(args)
        .env_remove("COTSTRUCT_FIELD")
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        serde_json::from_slice(&out.stdout).unwrap(),
    )
}

/// `(file name, body)` for every example in the format guide.
fn examples() -> Vec<(String, String)> {
    let text = std::fs::read_to_string(root().join("docs/formats.md")).unwrap();
    let mut out = Vec::new();
    let mut name = None;
    let mut body: Option<String> = None;
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("### ") {
            name = rest.split('`').nth(1).map(str::to_string);
        } else if line == "```toml" {
            body = Some(String::new());
        } else if line == "```" && body.is_some() {
            out.push((
                name.take().expect("example has a file name"),
                body.take().unwrap(),
            ));
        } else if let Some(b) = &mut body {
            b.push_str(line);
            b.push('\n');
        }
    }
    out
}

#[test]
fn format_examples_load() {
    let examples = examples();
    assert_eq!(examples.len(), 10);
    let dir = TempDir::new().unwrap();
    for (name, body) in &examples {
        std::fs::write(dir.path().join(name), body).unwrap();
    }
    let expected = [
        ("stalk.toml", 1),
        ("split-pair.toml", 2),
        ("arrow.toml", 1),
        ("half.toml", 0),
        ("a3-three-term.toml", 1),
        ("zero.toml", 0),
    ];
    for (name, dim) in expected {
        let p = dir.path().join(name);
        let p = p.to_str().unwrap();
        let (code, r) = cotstruct(&["hom", p, p]);
        assert_eq!(code, 0, "{name}: {}", r["error"]);
        assert_eq!(r["dimensions"]["dimension"], dim, "{name}");
    }
    let bad = dir.path().join("not-a-complex.toml");
    let (code, r) = cotstruct(&["hom", bad.to_str().unwrap(), bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(r["error"].as_str().unwrap().contains("d^1 ∘ d^0"));
}

#[test]
fn reports_match_the_schema() {
    let schema: Value = serde_json::from_str(
        &std::fs::read_to_string(root().join("docs/report.schema.json")).unwrap(),
    )
    .unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let c = |rel: &str| {
        root()
            .join("corpus")
            .join(rel)
            .to_str()
            .unwrap()
            .to_string()
    };
    let out = TempDir::new().unwrap();
    let out = out.path().to_str().unwrap();
    let gen = TempDir::new().unwrap();
    let wide = gen.path().join("k-plus-sk.toml");
    std::fs::write(
        &wide,
        format!(
            "format-version = 1\nalgebra = \"{}\"\n\n[[degree]]\ndegree = -1\nsummands = [\"1\"]\n\n[[degree]]\ndegree = 0\nsummands = [\"1\"]\n",
            c("trivial/algebra.toml")
        ),
    )
    .unwrap();
    let runs: Vec<(Vec<String>, i32)> = vec![
        (
            vec![
                "hom".into(),
                c("trivial/generators/k.toml"),
                c("trivial/examples/split-pair.toml"),
                "--show-reps".into(),
                "--timing".into(),
            ],
            0,
        ),
        (
            vec![
                "hom".into(),
                c("trivial/generators/k.toml"),
                c("trivial/examples/malformed.toml"),
            ],
            1,
        ),
        (
            vec![
                "decompose".into(),
                c("a2/examples/arrow.toml"),
                "--gen".into(),
                c("a2/generators/projectives.toml"),
                "--out-dir".into(),
                out.into(),
            ],
            0,
        ),
        (
            vec![
                "decompose".into(),
                c("trivial/generators/k.toml"),
                "--gen".into(),
                wide.to_str().unwrap().into(),
                "--max-iter".into(),
                "3".into(),
                "--out-dir".into(),
                out.into(),
            ],
            2,
        ),
        (
            vec![
                "verify".into(),
                "--generating".into(),
                "--gen".into(),
                c("trivial/generators/k.toml"),
                "--gen".into(),
                c("trivial/generators/k-suspended.toml"),
                "--corpus".into(),
                c("trivial/objects"),
            ],
            0,
        ),
        (
            vec![
                "verify".into(),
                "--gen".into(),
                c("a2/generators/p2.toml"),
                "--corpus".into(),
                c("a2/probes"),
                "--generating".into(),
            ],
            3,
        ),
        (
            vec![
                "random".into(),
                "--algebra".into(),
                c("a2/algebra.toml"),
                "--count".into(),
                "2".into(),
                "--out-dir".into(),
                out.into(),
            ],
            0,
        ),
    ];
    for (args, code) in runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (got, report) = cotstruct(&args);
        assert_eq!(got, code, "{args:?}: {}", report["error"]);
        let errors: Vec<String> = validator
            .iter_errors(&report)
            .map(|e| format!("{} at {}", e, e.instance_path()))
            .collect();
        assert!(errors.is_empty(), "{args:?}: {errors:#?}");
    }
}
