//! Black-box tests of the `igband` binary: exit codes, report shapes, golden
//! stability, and `.cay` round trips.

use std::io::Write;
use std::process::{Command, Output};

fn igband(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_igband"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn verify_builtin_reports_band() {
    let out = igband(&["verify", "--builtin", "prop2-fb3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "n=20\nband=true\nidempotents=20\n");
}

#[test]
fn builtin_emission_round_trips_through_files() {
    let out = igband(&["builtin", "prop2-frb4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 41, "count line, 20 rows, 20 labels");

    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(text.as_bytes()).unwrap();
    let path = file.path().to_str().unwrap().to_string();

    let verify = igband(&["verify", "--input", &path]);
    assert!(verify.status.success());
    assert_eq!(stdout(&verify), "n=20\nband=true\nidempotents=20\n");

    let greens = igband(&["greens", "--input", &path]);
    assert!(greens.status.success());
    assert!(stdout(&greens).contains("D0: size=16 R=4 L=4"));
    assert!(stdout(&greens).contains("D1: size=4 R=2 L=2"));
}

#[test]
fn builtin_vfree_semilattice_golden() {
    let out = igband(&["builtin", "vfree:SL:2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "3\n0 2 2\n2 1 2\n2 2 2\n# a\n# b\n# ab\n");
}

#[test]
fn present_flagship_examples() {
    // the 20-element band: free abelian of rank 2, via either realization
    for builtin in ["prop2-fb3", "prop2-frb4"] {
        let out = igband(&[
            "present", "--builtin", builtin, "--dclass", "D0", "--base", "abcdba",
            "--simplify", "--abelian",
        ]);
        assert!(out.status.success(), "{builtin}");
        assert!(
            stdout(&out).ends_with("free_rank=2 torsion=[]\n"),
            "{builtin}: {}",
            stdout(&out)
        );
    }
    // trivial group over the one-element band
    let out = igband(&["present", "--builtin", "fb:1"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "dclass=D0 base=a rows=1 cols=1\ngens: f_1_1\nrel: f_1_1\n"
    );
}

#[test]
fn squares_proper_lists_eight() {
    let out = igband(&["squares", "--builtin", "prop2-fb3", "--dclass", "D0", "--proper"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("dclass=D0 base=abcba singular_rectangles=8\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("rows=")).count(), 8);
}

#[test]
fn squares_diagram_marks_corners() {
    let out = igband(&[
        "squares", "--builtin", "prop2-fb3", "--proper", "--diagram",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# # . .\n  # # . .\n  . . . .\n  . . . ."));
}

#[test]
fn present_fast_path_reports_rank() {
    let out = igband(&["present", "--builtin", "vfree:NB:3", "--fast-path"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("theta: m="), "{}", stdout(&out));
    // the fast path refuses bands outside the right seminormal variety
    let bad = igband(&["present", "--builtin", "prop2-fb3", "--fast-path"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr(&bad).contains("PresentationError::NotSeminormal"));
}

#[test]
fn simplify_and_abelian_on_presentation_files() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(b"gens: f_1_1 f_1_2\nrel: f_1_1 f_1_2^-1\n").unwrap();
    let path = file.path().to_str().unwrap().to_string();

    let simp = igband(&["simplify", "--input", &path]);
    assert!(simp.status.success());
    let text = stdout(&simp);
    assert!(text.contains("# status=FREE_CERTIFIED"));
    assert!(text.contains("gens: f_1_1\n"));

    // simplified text output is itself a valid presentation file
    let mut again = tempfile::NamedTempFile::new().unwrap();
    again.write_all(text.as_bytes()).unwrap();
    let path2 = again.path().to_str().unwrap().to_string();
    let ab = igband(&["abelian", "--input", &path2]);
    assert!(ab.status.success());
    assert_eq!(stdout(&ab), "free_rank=1 torsion=[]\n");
}

#[test]
fn json_reports_parse_and_round_trip() {
    let out = igband(&[
        "present", "--builtin", "prop2-fb3", "--simplify", "--abelian", "--format", "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["abelian"]["free_rank"], 2);
    assert_eq!(doc["simplified"]["status"], "REDUCED");

    // a JSON presentation report feeds back into the abelian subcommand
    let simp = igband(&["simplify", "--input", "/dev/null", "--format", "json"]);
    assert_eq!(simp.status.code(), Some(1), "empty file is a parse error");

    let mut file = tempfile::NamedTempFile::new().unwrap();
    let pres = doc["presentation"].to_string();
    file.write_all(pres.as_bytes()).unwrap();
    let path = file.path().to_str().unwrap().to_string();
    let ab = igband(&["abelian", "--input", &path]);
    assert!(ab.status.success());
    assert_eq!(stdout(&ab), "free_rank=2 torsion=[]\n");
}

#[test]
fn golden_stability_byte_identical_reruns() {
    for args in [
        vec!["greens", "--builtin", "vfree:RB:3", "--dclass", "D0"],
        vec!["squares", "--builtin", "prop2-frb4", "--proper", "--diagram"],
        vec!["present", "--builtin", "prop2-fb3", "--simplify", "--abelian"],
        vec!["variety", "--builtin", "prop2-fb3", "--format", "json"],
    ] {
        let a = igband(&args);
        let b = igband(&args);
        assert!(a.status.success());
        assert_eq!(stdout(&a), stdout(&b), "{args:?}");
    }
}

#[test]
fn exit_codes() {
    // domain errors: exit 1 with the module error name on stderr
    let unknown = igband(&["verify", "--builtin", "nope"]);
    assert_eq!(unknown.status.code(), Some(1));
    assert!(stderr(&unknown).contains("BuiltinError::UnknownBuiltin"));

    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(b"2\n0 0\n1 0\n").unwrap(); // not associative
    let path = file.path().to_str().unwrap().to_string();
    let bad = igband(&["verify", "--input", &path]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr(&bad).contains("SemigroupError::NotAssociative"));

    let missing = igband(&["squares", "--builtin", "prop2-fb3", "--base", "zzz"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(stderr(&missing).contains("SelectorError::Unresolved"));

    // usage errors: exit 2
    assert_eq!(igband(&["verify"]).status.code(), Some(2));
    assert_eq!(igband(&["verify", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        igband(&["verify", "--builtin", "fb:1", "--input", "x.cay"]).status.code(),
        Some(2),
        "input sources are mutually exclusive"
    );
}

#[test]
fn variety_table_file_flag() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(b"LZ = [\"xy=x\"]\nRZ = [\"xy=y\"]\norder = []\n").unwrap();
    let path = file.path().to_str().unwrap().to_string();
    let out = igband(&["variety", "--builtin", "vfree:LZ:2", "--varieties", &path]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).starts_with("satisfied: LZ\n"), "{}", stdout(&out));
}
