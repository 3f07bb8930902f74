//! End-to-end tests against the compiled binary: exit codes and the
//! deterministic text outputs.

use std::path::Path;
use std::process::{Command, Output};

fn c2x(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_c2x"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

const TETRA: &str = "\
complex2
vertex p
vertex q
vertex r
vertex s
edge pq p q
edge pr p r
edge ps p s
edge qr q r
edge qs q s
edge rs r s
face top = pq+ qr+ pr-
face left = ps+ qs- pq-
face right = qs+ rs- qr-
face back = pr+ rs+ ps-
";

#[test]
fn euler_prints_chi() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "tetra.c2x", TETRA);
    let out = c2x(&["euler", &file]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "chi = 2\n");
}

#[test]
fn validate_rejects_malformed_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "ok.c2x", "complex2\nvertex v\n");
    let out = c2x(&["validate", &good]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok:"));

    let bad = write(dir.path(), "bad.c2x", "complex2\nvertex v\nedge e v w\n");
    let out = c2x(&["validate", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn usage_errors_exit_two() {
    let out = c2x(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.c2x");
    let out = c2x(&["euler", &missing.to_string_lossy()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn recognize_flags() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "tetra.c2x", TETRA);
    let out = c2x(&["recognize", &file]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("circle = false"));
    assert!(text.contains("surface = true"));
    assert!(text.contains("closed_surface = true"));
    assert!(text.contains("sphere = true"));
    assert!(text.contains("disc = false"));

    let circle = write(dir.path(), "circle.c2x", "complex1\nvertex v\nedge e v v\n");
    let out = c2x(&["recognize", &circle]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("circle = true"));
}

#[test]
fn orient_emits_flags_or_fails() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "tetra.c2x", TETRA);
    let out = c2x(&["orient", &file]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "orientation top +\norientation left +\norientation right +\norientation back +\n"
    );

    let pp = write(
        dir.path(),
        "pp.c2x",
        "complex2\nvertex v\nedge e v v\nface f = e+ e+\n",
    );
    let out = c2x(&["orient", &pp]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("non-orientable"));
}

#[test]
fn contiguity_text_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "tetra.c2x", TETRA);
    let out = c2x(&["contiguity", &file]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("# bound: 6 < 3 * 4: ok"));
    assert!(text.contains("vertex top"));

    let out = c2x(&["contiguity", &file, "--dot"]);
    let dot = String::from_utf8_lossy(&out.stdout);
    assert_eq!(dot.matches(" -- ").count(), 6);

    let out = c2x(&["contiguity", &file, "--faces", "top,left"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("vertex top") && text.contains("vertex left"));
    assert!(!text.contains("vertex back"));

    let out = c2x(&["contiguity", &file, "--faces", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn estimate_matches_the_hand_example() {
    let dir = tempfile::tempdir().unwrap();
    let sphere = write(dir.path(), "tetra.c2x", TETRA);
    let arcs = write(dir.path(), "arcs.txt", "arc = pq+\n");
    let out = c2x(&["estimate", &sphere, &arcs]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("complex2"));
    assert_eq!(text.matches("\nvertex ").count(), 1);
    assert_eq!(text.matches("\nedge ").count(), 1);
    assert_eq!(text.matches("\nface ").count(), 2);
    assert!(text.contains("# alpha1: pq+ <- pq+"));
    // deterministic output
    let again = c2x(&["estimate", &sphere, &arcs]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn closure_and_cutout() {
    let dir = tempfile::tempdir().unwrap();
    let map_text = "\
complex2
vertex p
vertex q
vertex r
vertex s
edge pq p q
edge pr p r
edge ps p s
edge qr q r
edge qs q s
edge rs r s
face top = pq+ qr+ pr-
face left = ps+ qs- pq-
face right = qs+ rs- qr-
orientation top +
orientation left +
orientation right +
contour = pr+ rs+ ps-
";
    let map = write(dir.path(), "disc.c2x", map_text);
    let out = c2x(&["closure", &map]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("face f3 = pr+ rs+ ps-"));
    assert!(text.contains("# improper: f3"));

    let out = c2x(&["cutout", &map, "pr+ rs+ ps-"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("face top"));
    assert!(text.contains("contour = pr+ rs+ ps-"));

    let out = c2x(&["cutout", &map, "ps+ rs- pr-"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("counterclockwise"));
}

#[test]
fn gen_is_deterministic_and_replayable() {
    let first = c2x(&["gen", "--seed", "11", "--ops", "40"]);
    let second = c2x(&["gen", "--seed", "11", "--ops", "40"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let log = c2x(&["gen", "--seed", "11", "--ops", "40", "--log"]);
    let log_text = String::from_utf8_lossy(&log.stdout);
    assert!(log_text.starts_with("init "));
    assert_eq!(log_text.lines().count(), 41);

    // the generated sphere passes its own validation and recognizers
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gen.c2x");
    std::fs::write(&path, &first.stdout).unwrap();
    let out = c2x(&["recognize", &path.to_string_lossy()]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("sphere = true"));
}
