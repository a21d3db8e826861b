use std::path::{Path, PathBuf};
use std::process::Command;

use gpdkit_cli::format::{parse, serialize, Document, FsResolver};

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    files
}

fn gpdkit(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gpdkit"))
        .args(args)
        .current_dir(corpus())
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn parse_text(text: &str) -> Result<Document, gpdkit_cli::ParseError> {
    parse(text, &FsResolver { base: corpus() })
}

#[test]
fn every_corpus_document_round_trips() {
    let files = corpus_files();
    assert!(files.len() >= 30);
    for path in files {
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = parse_text(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let again = serialize(&doc);
        let back = parse_text(&again).unwrap_or_else(|e| panic!("{}: reparse: {e}\n{again}", path.display()));
        assert_eq!(doc, back, "{}", path.display());
        assert_eq!(serialize(&back), again, "{}", path.display());
    }
}

#[test]
fn exit_code_table() {
    let cases: &[(&[&str], i32)] = &[
        (&["pi1", "circle.gpd", "--base", "0,1", "--vertex", "0"], 0),
        (&["vkt", "circle-cover.gpd", "--base", "0,1"], 0),
        (&["vkt", "circle-cover.gpd", "--base", "0"], 1),
        (&["xmod", "check", "a3-in-s3.xm"], 0),
        (&["xmod", "check", "bad.xm"], 1),
        (&["xmod", "normal", "s3.grp", "--gen", "(1 2)"], 1),
        (&["dgpd", "array", "c2-mismatch.sq"], 1),
        (&["cube", "check", "c7-perturbed.cube"], 1),
        (&["cube", "compose", "--dir", "y", "c7.cube", "A", "C"], 1),
        (&["eh", "check", "s3.eh"], 1),
        (&["pi1", "missing.gpd", "--base", "0"], 2),
        (&["pi1", "circle.gpd", "--base", "7"], 2),
        (&["xmod", "check", "circle.gpd"], 2),
        (&["pi1", "circle.gpd"], 2),
        (&["--max-candidates", "10", "xmod", "aut", "s3.grp"], 3),
    ];
    for (args, code) in cases {
        let (got, out) = gpdkit(args);
        assert_eq!(got, *code, "{args:?}\n{out}");
    }
}

#[test]
fn pi1_of_circle_is_free_on_one_generator() {
    let (code, out) = gpdkit(&["--json", "pi1", "circle.gpd", "--base", "0,1", "--vertex", "0"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let vg = &v["data"]["vertex_group"];
    assert_eq!(vg["generators"], 1);
    assert_eq!(vg["relations"], 0);
    let counts: Vec<String> = (0..=6).map(|k| (2 * k + 1).to_string()).collect();
    assert_eq!(vg["reduced_loop_counts"], serde_json::json!(counts));
}

#[test]
fn failures_name_their_witnesses() {
    let (_, out) = gpdkit(&["vkt", "circle-cover.gpd", "--base", "0"]);
    assert!(out.contains("component {1} of W has no base point"), "{out}");
    let (_, out) = gpdkit(&["xmod", "check", "bad.xm"]);
    assert!(out.contains("CM2 fails"), "{out}");
    let (_, out) = gpdkit(&["eh", "check", "s3.eh"]);
    assert!(out.contains("interchange fails"), "{out}");
}

#[test]
fn emitted_crossed_modules_reload() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("aut-c3.xm");
    let (code, _) = gpdkit(&["xmod", "aut", "c3.grp", "--emit", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, text) = gpdkit(&["xmod", "check", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
}

#[test]
fn boundary_violation_shows_both_sides() {
    let text = "kind square\nxmod c2-identity.xm\nsquare a label=0 top=1 left=0 right=0 bottom=0\n";
    let err = parse_text(text).unwrap_err();
    assert_eq!(err.line, 3);
    assert!(err.message.contains("μ(n) = 0"), "{}", err.message);
    assert!(err.message.contains("k⁻¹h⁻¹ga = 1"), "{}", err.message);
}

#[test]
fn parse_errors_point_at_the_token() {
    let cases = [
        ("kind complex\nvertices 0 1\nedge a 0 1\nface D a\n", 1, "not a closed word"),
        ("kind group\nelements e a\nrow e a\nrow a x\n", 4, "unknown element `x`"),
        ("kind cover\n[complex]\nvertices 0 1\nedge a 0 1\n[U]\ncells 0 a\n[V]\ncells 1\n", 5, "needs `1`"),
        ("kind xmod\n[P]\ncyclic 2\n[M]\ncyclic 2\n[mu]\n0 -> 0\n[action]\ntrivial\n", 6, "every element"),
        ("kind cube\ncube A\nx00 1\n[G]\ncyclic 2\n", 2, "twelve edges"),
        ("kind square\nxmod nowhere.xm\n", 2, "nowhere.xm"),
    ];
    for (text, line, needle) in cases {
        let err = parse_text(text).unwrap_err();
        assert_eq!(err.line, line, "{text}: {err}");
        assert!(err.message.contains(needle), "{text}: {err}");
    }
}
