use std::io::Write;
use std::process::Command;

fn superlie(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_superlie"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn temp_file(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("superlie-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::File::create(&path).unwrap().write_all(body.as_bytes()).unwrap();
    path
}

const SL3_SERRE: &str = "\
letter e1 0 1
letter e2 0 2
rel [e2 [e2 e1]]
rel [[e2 e1] e1]
";

#[test]
fn verify_sl21() {
    let (code, out, _) = superlie(&["verify", "--family", "sl", "--m", "2", "--n", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "CLOSED\nCLOSED\nBASIS 8\nDIM 8\nMATRIX ok\n");
}

#[test]
fn verify_c2_gates_matrices() {
    let (code, out, _) = superlie(&["verify", "--family", "c", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("MATRIX skipped\n"), "{out}");
}

#[test]
fn verify_rejects_out_of_range() {
    let (code, _, err) = superlie(&["verify", "--family", "d", "--m", "1", "--n", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("m >= 2"), "{err}");
    assert_eq!(superlie(&["verify", "--family", "e8", "--n", "1"]).0, 2);
    assert_eq!(superlie(&["frobnicate"]).0, 2);
}

#[test]
fn complete_sl3_serre() {
    let p = temp_file("sl3.pres", SL3_SERRE);
    let (code, out, _) = superlie(&["complete", "--presentation", p.to_str().unwrap(), "--max-degree", "6"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("FIXPOINT true\n"), "{out}");
    let (code, out, _) = superlie(&[
        "complete",
        "--presentation",
        p.to_str().unwrap(),
        "--max-degree",
        "6",
        "--mode",
        "assoc",
    ]);
    assert_eq!(code, 0);
    assert!(out.ends_with("FIXPOINT true\n"), "{out}");
}

#[test]
fn complete_empty_file() {
    let p = temp_file("empty.pres", "letter x 0 1\n");
    let (code, out, _) = superlie(&["complete", "--presentation", p.to_str().unwrap(), "--max-degree", "3"]);
    assert_eq!((code, out.as_str()), (0, "FIXPOINT true\n"));
}

#[test]
fn malformed_relation_reports_position() {
    let p = temp_file("bad.pres", "letter e1 0 1\nrel [e1 e1\n");
    let (code, _, err) = superlie(&["check", "--presentation", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn check_reports_nonzero_with_status_1() {
    // Serre relations of sl(4) alone are not closed.
    let p = temp_file(
        "sl4.pres",
        "letter e1 0 1\nletter e2 0 2\nletter e3 0 3\n\
         rel [e2 [e2 e1]]\nrel [[e2 e1] e1]\nrel [e3 [e3 e2]]\nrel [[e3 e2] e2]\nrel [e3 e1]\n",
    );
    let (code, out, _) = superlie(&["check", "--presentation", p.to_str().unwrap(), "--mode", "assoc"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("NONZERO "), "{out}");
    let s = temp_file("sl3b.pres", SL3_SERRE);
    let (code, out, _) = superlie(&["check", "--presentation", s.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, "CLOSED\n"));
}

#[test]
fn normal_forms() {
    let c = temp_file("sl3.cartan", "rank 2\ntau\n2 -1\n-1 2\n");
    let c = c.to_str().unwrap();
    assert_eq!(superlie(&["nf", "--cartan", c, "--element", "[e2 [e2 e1]]"]).1, "0\n");
    assert_eq!(superlie(&["nf", "--cartan", c, "--element", "e1"]).1, "e1\n");
    assert_eq!(superlie(&["nf", "--cartan", c, "--element", "e9"]).0, 2);
    let (code, out, _) = superlie(&["nf", "--family", "sl", "--m", "2", "--n", "1", "--lie", "--element", "[e2 e2]"]);
    assert_eq!((code, out.as_str()), (0, "0\n"));
}

#[test]
fn basis_and_enveloping_counts() {
    let (code, out, _) = superlie(&["basis", "--family", "sl", "--m", "2", "--n", "1", "--max-degree", "4"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("BASIS 8\n"), "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("MONO ")).count(), 8);
    let (_, out, _) = superlie(&[
        "basis",
        "--family",
        "sl",
        "--m",
        "2",
        "--n",
        "1",
        "--max-degree",
        "2",
        "--enveloping",
    ]);
    assert_eq!(out, "DEG 0 1\nDEG 1 6\nDEG 2 21\n");
}

#[test]
fn output_is_independent_of_thread_count() {
    let p = temp_file(
        "open.pres",
        "letter x 0 1\nletter y 1 2\nletter z 0 3\nrel [[x y] y] - [x z]\nrel [y [y z]]\n",
    );
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_superlie"))
            .args(["complete", "--presentation", p.to_str().unwrap(), "--max-degree", "7", "--mode", "assoc"])
            .env("SUPERLIE_THREADS", threads)
            .output()
            .unwrap();
        String::from_utf8(out.stdout).unwrap()
    };
    let one = run("1");
    assert_eq!(one.lines().filter(|l| l.starts_with("REL ")).count(), 11, "{one}");
    assert_eq!(one, run("4"));
    let bad = Command::new(env!("CARGO_BIN_EXE_superlie"))
        .args(["verify", "--family", "sl", "--m", "2", "--n", "1"])
        .env("SUPERLIE_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
