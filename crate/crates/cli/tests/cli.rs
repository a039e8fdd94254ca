//! End-to-end tests of the `nkirby` binary: every verb, the frozen output
//! contracts, and the exit-code conventions (0 ok, 1 domain error with a
//! single stderr line, 2 usage error).

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn nkirby(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nkirby"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

fn assert_ok(out: &Output) {
    assert!(
        out.status.success(),
        "expected success, got {:?}\nstderr: {}",
        out.status.code(),
        stderr(out)
    );
}

fn example_file(dir: &Path, name: &str) -> PathBuf {
    let out = nkirby(&["examples", name]);
    assert_ok(&out);
    let path = dir.join(format!("{name}.nk"));
    std::fs::write(&path, stdout(&out)).unwrap();
    path
}

#[test]
fn validate_reports_diagram_shape() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = example_file(dir.path(), "K3");
    let out = nkirby(&["validate", k3.to_str().unwrap()]);
    assert_ok(&out);
    assert_eq!(stdout(&out), "valid: (n,k)=(5,2) dotted=2 framed=1\n");
}

#[test]
fn missing_file_is_io_error_with_exit_1() {
    let out = nkirby(&["validate", "/definitely/not/here.nk"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).is_empty());
    let err = stderr(&out);
    assert!(err.starts_with("IoError:"), "stderr was: {err}");
    assert_eq!(err.lines().count(), 1, "exactly one diagnostic line");
}

#[test]
fn syntax_error_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.nk");
    std::fs::write(&path, "dim 5 2\ndotted x1\nframed f1 framing zero\n").unwrap();
    let out = nkirby(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.starts_with("SyntaxError: line 3:"), "stderr was: {err}");
}

#[test]
fn usage_error_has_exit_2() {
    let out = nkirby(&["reduce"]);
    assert_eq!(out.status.code(), Some(2));
    let out = nkirby(&["no-such-verb"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn examples_lists_the_catalogue() {
    let out = nkirby(&["examples"]);
    assert_ok(&out);
    let listing = stdout(&out);
    let names: Vec<&str> = listing.lines().collect();
    for needed in ["K1", "K6", "Kt", "Kpab", "A6-lens", "A6-sum11"] {
        assert!(names.contains(&needed), "missing {needed} in {names:?}");
    }
}

#[test]
fn examples_accept_parameters_and_reject_unknown_ones() {
    let dir = tempfile::tempdir().unwrap();
    let out = nkirby(&["examples", "Kpab", "p=5", "n=11", "k=5"]);
    assert_ok(&out);
    let path = dir.path().join("kpab5.nk");
    std::fs::write(&path, stdout(&out)).unwrap();
    let inv = nkirby(&[
        "invariants",
        path.to_str().unwrap(),
        "--format",
        "records",
    ]);
    assert_ok(&inv);
    assert!(stdout(&inv).contains("h.k-1.torsion=5\n"), "{}", stdout(&inv));

    let bad = nkirby(&["examples", "Kpab", "q=3"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr(&bad).starts_with("SemanticError:"));

    let unknown = nkirby(&["examples", "K99"]);
    assert_eq!(unknown.status.code(), Some(1));
    assert!(stderr(&unknown).starts_with("UnknownExample:"));
}

#[test]
fn reduce_emits_cert_that_replays_to_the_same_diagram() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = example_file(dir.path(), "K5");
    let cert = dir.path().join("k5.cert");
    let reduced = nkirby(&[
        "reduce",
        k5.to_str().unwrap(),
        "--emit-cert",
        cert.to_str().unwrap(),
    ]);
    assert_ok(&reduced);
    let text = stdout(&reduced);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("# normal form: general(dotted=2,framed=1)")
    );
    let body: String = lines.map(|l| format!("{l}\n")).collect();
    assert!(cert.exists(), "certificate file written");

    let replayed = nkirby(&["replay", k5.to_str().unwrap(), "--cert", cert.to_str().unwrap()]);
    assert_ok(&replayed);
    assert_eq!(stdout(&replayed), body, "replay lands on the printed normal diagram");
}

#[test]
fn invariants_records_are_frozen_and_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let lens = example_file(dir.path(), "A6-lens");
    let args = ["invariants", lens.to_str().unwrap(), "--format", "records"];
    let first = nkirby(&args);
    assert_ok(&first);
    assert_eq!(
        stdout(&first),
        "h.0=Z\nh.k-1.rank=0\nh.k-1.torsion=4\nh.k.rank=0\nh.k.torsion=\npi.k-1=Z/4\n"
    );
    let second = nkirby(&args);
    assert_ok(&second);
    assert_eq!(first.stdout, second.stdout, "records are byte-stable");
}

#[test]
fn invariants_text_shows_presentation_at_k2() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = example_file(dir.path(), "K4");
    let out = nkirby(&["invariants", k4.to_str().unwrap()]);
    assert_ok(&out);
    let text = stdout(&out);
    assert!(text.contains("pi_1 = <x1, x2 | x1 x2^-1>"), "{text}");
}

#[test]
fn equiv_reports_diffeomorphic_with_name() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = example_file(dir.path(), "K5");
    let k6 = example_file(dir.path(), "K6");
    let out = nkirby(&["equiv", k5.to_str().unwrap(), k6.to_str().unwrap()]);
    assert_ok(&out);
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("verdict=diffeomorphic"));
    assert!(text.contains("normal_form=general(dotted=2,framed=1)\n"), "{text}");
    assert!(
        text.contains("name=♮^2(S^2 × B^5) ♮ (S^3 × B^4)\n"),
        "{text}"
    );
}

#[test]
fn equiv_distinguishes_by_homology() {
    let dir = tempfile::tempdir().unwrap();
    let free = example_file(dir.path(), "A6-s2xb");
    let lens = example_file(dir.path(), "A6-lens");
    let out = nkirby(&["equiv", free.to_str().unwrap(), lens.to_str().unwrap()]);
    assert_ok(&out);
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("verdict=distinguished"));
    assert!(text.contains("invariant=H_1\n"), "{text}");
}

#[test]
fn induce_maps_source_framings_mod_2() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("src.nk");
    std::fs::write(
        &src,
        "dim 4 2 source\ndotted x1\nframed f1 framing -1 word x1\nframed f2 framing 2025\n",
    )
    .unwrap();
    let out = nkirby(&["induce", src.to_str().unwrap(), "--n", "6", "--k", "2"]);
    assert_ok(&out);
    assert_eq!(
        stdout(&out),
        "dim 6 2\ndotted x1\nframed f1 framing 1 word x1\nframed f2 framing 1\n"
    );

    // Everything except validate/induce refuses raw source data.
    let inv = nkirby(&["invariants", src.to_str().unwrap()]);
    assert_eq!(inv.status.code(), Some(1));
    assert!(stderr(&inv).starts_with("SemanticError:"));

    // And induce refuses an already-induced diagram.
    let k5 = example_file(dir.path(), "K5");
    let back = nkirby(&["induce", k5.to_str().unwrap(), "--n", "6", "--k", "2"]);
    assert_eq!(back.status.code(), Some(1));
    assert!(stderr(&back).starts_with("SemanticError:"));
}

#[test]
fn recognize_names_diagrams_as_presented() {
    let dir = tempfile::tempdir().unwrap();
    for (name, want) in [
        ("A6-sum11", "♮^2(S^2 ×~ B^4)\n"),
        ("A6-sum01", "(S^2 × B^4) ♮ (S^2 ×~ B^4)\n"),
        ("A6-bn", "B^6\n"),
    ] {
        let file = example_file(dir.path(), name);
        let out = nkirby(&["recognize", file.to_str().unwrap()]);
        assert_ok(&out);
        assert_eq!(stdout(&out), want, "name of {name}");
    }
}

#[test]
fn reduce_output_is_itself_a_valid_diagram_file() {
    let dir = tempfile::tempdir().unwrap();
    let kt = example_file(dir.path(), "Kt");
    let out = nkirby(&["reduce", kt.to_str().unwrap()]);
    assert_ok(&out);
    let path = dir.path().join("kt.reduced.nk");
    std::fs::write(&path, stdout(&out)).unwrap();
    let check = nkirby(&["validate", path.to_str().unwrap()]);
    assert_ok(&check);
}

#[test]
fn replay_rejects_a_cert_that_does_not_fit() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = example_file(dir.path(), "K3");
    let cert = dir.path().join("bogus.cert");
    std::fs::write(&cert, "cancel nope f1\n").unwrap();
    let out = nkirby(&["replay", k3.to_str().unwrap(), "--cert", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("ReplayError: move 0 failed:"), "{}", stderr(&out));
}
