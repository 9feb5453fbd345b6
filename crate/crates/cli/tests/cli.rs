use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const K1: &str = "B\n\n3\n4\n\nx1\nx2\nx3\na1\na2\na3\na4\nXX..\nX.X.\n.XXX\n";

fn lincbo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lincbo"))
        .args(args)
        .env_remove("LINCBO_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, content: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, content).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn basis_of_k1() {
    let dir = TempDir::new().unwrap();
    let k1 = write(&dir, "k1.cxt", K1);
    let out = lincbo(&["basis", s(&k1)]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rules: Vec<_> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rules, ["a4 -> a2 a3 a4", "a2 a3 -> a2 a3 a4"]);
    assert!(text.contains("intents: 8"));
    assert!(text.contains("pseudo-intents: 2"));

    let reduced = stdout(&lincbo(&["basis", s(&k1), "--reduced-rhs", "-a", "nc+2"]));
    assert!(reduced.starts_with("a4 -> a2 a3\na2 a3 -> a4\n"));
}

#[test]
fn basis_json_output() {
    let dir = TempDir::new().unwrap();
    let k1 = write(&dir, "k1.cxt", K1);
    let out = lincbo(&[
        "basis",
        s(&k1),
        "--format",
        "json",
        "--algorithm",
        "lincbo1",
    ]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["algorithm"], "lincbo1");
    assert_eq!(doc["intents"], 8);
    assert_eq!(doc["pseudo_intents"], 2);
    assert_eq!(doc["implications"][0]["premise"], serde_json::json!([4]));
    assert_eq!(
        doc["implications"][0]["conclusion"],
        serde_json::json!([2, 3, 4])
    );
}

#[test]
fn empty_context_has_empty_basis() {
    let dir = TempDir::new().unwrap();
    let empty = write(&dir, "empty.cxt", "B\n\n0\n0\n\n");
    let out = lincbo(&["basis", s(&empty)]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 0);
    assert!(text.contains("intents: 1"));
    assert_eq!(
        stdout(&lincbo(&["intents", "--count", s(&empty)])).trim(),
        "1"
    );
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let k1 = write(&dir, "k1.cxt", K1);
    assert_eq!(
        lincbo(&["basis", s(&k1), "-a", "quick"]).status.code(),
        Some(3)
    );
    assert_eq!(lincbo(&["basis"]).status.code(), Some(3));
    assert_eq!(lincbo(&["frobnicate"]).status.code(), Some(3));
    let missing = dir.path().join("missing.cxt");
    assert_eq!(lincbo(&["basis", s(&missing)]).status.code(), Some(1));
    let bad = write(&dir, "bad.cxt", "B\n\n2\n2\n\nx1\nx2\na1\na2\nX.\nX\n");
    let out = lincbo(&["basis", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 11"));
    assert!(lincbo(&["--help"]).status.success());
}

#[test]
fn gen_then_intents() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("c18.cxt");
    assert!(lincbo(&["gen", "--contranominal", "18", "-o", s(&path)])
        .status
        .success());
    let out = lincbo(&["intents", "--count", s(&path)]);
    assert_eq!(stdout(&out).trim(), "262144");

    let k1 = write(&dir, "k1.cxt", K1);
    let listed = stdout(&lincbo(&["intents", s(&k1)]));
    assert_eq!(listed.lines().count(), 8);
    assert_eq!(listed.lines().nth(3), Some("a2 a3 a4"));
}

#[test]
fn random_generation_is_seeded() {
    let a = lincbo(&[
        "gen",
        "--random",
        "--objects",
        "30",
        "--attributes",
        "10",
        "--density",
        "3",
        "--seed",
        "7",
    ]);
    let b = lincbo(&[
        "gen",
        "--random",
        "--objects",
        "30",
        "--attributes",
        "10",
        "--density",
        "3",
        "--seed",
        "7",
    ]);
    let c = lincbo(&[
        "gen",
        "--random",
        "--objects",
        "30",
        "--attributes",
        "10",
        "--density",
        "3",
        "--seed",
        "8",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert!(stdout(&a).starts_with("B\n30x10-3\n30\n10\n"));
    assert_eq!(
        lincbo(&["gen", "--random", "--objects", "3"]).status.code(),
        Some(3)
    );
    let too_dense = lincbo(&[
        "gen",
        "--random",
        "--objects",
        "3",
        "--attributes",
        "2",
        "--density",
        "5",
    ]);
    assert_eq!(too_dense.status.code(), Some(3));
}

#[test]
fn fimi_input() {
    let dir = TempDir::new().unwrap();
    let fimi = write(&dir, "k1.dat", "1 2\n1 3\n2 3 4\n");
    let out = lincbo(&["basis", s(&fimi)]);
    assert!(stdout(&out).contains("intents: 8"));
    let forced = write(&dir, "k1.input", "1 2\n1 3\n2 3 4\n");
    let out = lincbo(&["intents", "--count", "--input-format", "fimi", s(&forced)]);
    assert_eq!(stdout(&out).trim(), "8");
}

#[test]
fn bench_records() {
    let dir = TempDir::new().unwrap();
    let k1 = write(&dir, "k1.cxt", K1);
    let c5 = dir.path().join("c5.cxt");
    lincbo(&["gen", "--contranominal", "5", "-o", s(&c5)]);
    let out = lincbo(&[
        "bench",
        s(&k1),
        s(&c5),
        "-a",
        "lincbo,nc2,ncp3",
        "--repeat",
        "10",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(
        lines[0],
        "dataset,algorithm,repeat,mean_ms,intents,pseudo_intents,closure_calls"
    );
    assert_eq!(lines.len(), 7);
    assert!(lines[1].starts_with("k1,lincbo,10,"));
    assert!(lines[1].ends_with(",8,2,15"));
    assert!(lines[6].starts_with("5x5-4,ncp3,10,"));
    assert!(lines[6].contains(",32,0,"));

    let single = stdout(&lincbo(&["bench", s(&k1), "--repeat", "1", "-f", "json"]));
    let records: serde_json::Value = serde_json::from_str(&single).unwrap();
    assert_eq!(records.as_array().unwrap().len(), 3);
    assert_eq!(records[0]["repeat"], 1);
    assert_eq!(records[2]["algorithm"], "ncp2");
}

#[test]
fn bench_output_is_deterministic_apart_from_timing() {
    let dir = TempDir::new().unwrap();
    let k1 = write(&dir, "k1.cxt", K1);
    let strip = |o: Output| -> Vec<String> {
        stdout(&o)
            .lines()
            .map(|l| {
                let mut f: Vec<_> = l.split(',').collect();
                f.remove(3);
                f.join(",")
            })
            .collect()
    };
    let serial = strip(lincbo(&[
        "bench",
        s(&k1),
        "-r",
        "2",
        "-a",
        "nc1,nc3,lincbo",
    ]));
    let parallel = Command::new(env!("CARGO_BIN_EXE_lincbo"))
        .args(["bench", s(&k1), "-r", "2", "-a", "nc1,nc3,lincbo"])
        .env("LINCBO_JOBS", "3")
        .output()
        .unwrap();
    assert_eq!(serial, strip(parallel));
}

#[test]
fn bench_fault_trips_agreement_check() {
    let dir = TempDir::new().unwrap();
    let k1 = write(&dir, "k1.cxt", K1);
    let out = lincbo(&[
        "bench",
        s(&k1),
        "-r",
        "1",
        "-a",
        "lincbo,nc1",
        "--inject-fault",
        "nc1",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("disagreement"));
    assert_eq!(
        lincbo(&["bench", s(&k1), "--repeat", "0"]).status.code(),
        Some(3)
    );
}

#[test]
fn scale_three_rows() {
    let dir = TempDir::new().unwrap();
    let csv = write(&dir, "v.csv", "v\n0\n5\n10\n");
    let rows = |method: &str| -> Vec<String> {
        let out = lincbo(&["scale", s(&csv), "--method", method, "--k", "2"]);
        assert!(out.status.success());
        let text = stdout(&out);
        let n: usize = text.lines().nth(2).unwrap().parse().unwrap();
        let m: usize = text.lines().nth(3).unwrap().parse().unwrap();
        text.lines().skip(5 + n + m).map(str::to_string).collect()
    };
    assert_eq!(rows("nom"), ["X.", ".X", ".X"]);
    assert_eq!(rows("ord"), [".", "X", "X"]);
    assert_eq!(rows("inter"), ["X.", "XX", ".X"]);

    let cuts = dir.path().join("cuts.json");
    let out = dir.path().join("v.cxt");
    let status = lincbo(&[
        "scale",
        s(&csv),
        "-m",
        "inter",
        "-k",
        "2",
        "-o",
        s(&out),
        "--cutpoints",
        s(&cuts),
    ]);
    assert!(status.status.success());
    let report: serde_json::Value = serde_json::from_slice(&fs::read(&cuts).unwrap()).unwrap();
    assert_eq!(report["features"][0]["cutpoints"], serde_json::json!([5.0]));
    assert!(fs::read_to_string(&out)
        .unwrap()
        .starts_with("B\ninter2v\n3\n2\n"));
    assert_eq!(
        lincbo(&["scale", s(&csv), "-m", "nom", "-k", "1"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn scale_missing_values_and_full_columns() {
    let dir = TempDir::new().unwrap();
    let csv = write(&dir, "t.csv", "x,y\n1,a\n?,a\n3,a\n");
    let kept = stdout(&lincbo(&["scale", s(&csv), "-m", "ord", "-k", "2"]));
    assert_eq!(kept.lines().nth(2), Some("3"));
    let dropped = stdout(&lincbo(&[
        "scale",
        s(&csv),
        "-m",
        "ord",
        "-k",
        "2",
        "--drop-missing",
        "--remove-full-columns",
    ]));
    assert_eq!(dropped.lines().nth(2), Some("2"));
    assert_eq!(dropped.lines().nth(3), Some("1"));
    let declared = lincbo(&["scale", s(&csv), "-m", "ord", "-k", "2", "--kinds", "n,n"]);
    assert_eq!(declared.status.code(), Some(2));
}

#[test]
fn verify_basis_files() {
    let dir = TempDir::new().unwrap();
    let k1 = write(&dir, "k1.cxt", K1);
    let text = dir.path().join("basis.txt");
    fs::write(&text, lincbo(&["basis", s(&k1)]).stdout).unwrap();
    let out = lincbo(&["verify", s(&k1), s(&text)]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert_eq!(
        stdout(&out)
            .lines()
            .filter(|l| l.starts_with("PASS"))
            .count(),
        4
    );

    let json = dir.path().join("basis.json");
    fs::write(
        &json,
        lincbo(&["basis", s(&k1), "-f", "json", "--reduced-rhs"]).stdout,
    )
    .unwrap();
    assert!(lincbo(&["verify", s(&k1), s(&json)]).status.success());

    let partial = write(&dir, "partial.txt", "a4 -> a2 a3\n");
    let out = lincbo(&["verify", s(&k1), s(&partial)]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).contains("FAIL completeness"));

    let unknown = write(&dir, "unknown.txt", "a9 -> a1\n");
    assert_eq!(
        lincbo(&["verify", s(&k1), s(&unknown)]).status.code(),
        Some(2)
    );
}
