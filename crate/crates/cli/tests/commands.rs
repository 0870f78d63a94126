use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn alpp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alpp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const SINGLE_EDGE: &str = "p alpp 2 1 1 2\ne 1 2\na 1 2\n";

#[test]
fn trivial_yes_with_certificate() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "t.alpp", SINGLE_EDGE);
    let out = alpp(&["solve", s(&f)]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "YES\npath 1 2\n");
}

#[test]
fn json_report_fields() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "t.alpp", SINGLE_EDGE);
    for strategy in ["oracle", "colorcode", "cvd-ell", "cvd-a", "auto"] {
        let out = alpp(&[
            "solve",
            s(&f),
            "--strategy",
            strategy,
            "--format",
            "json",
            "--seed",
            "5",
        ]);
        assert!(out.status.success());
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["answer"], "YES");
        assert_eq!(v["certificate"], serde_json::json!([[1, 2]]));
        assert_eq!(v["seed"], 5);
        assert!(v["elapsed_ms"].is_number());
        assert!(v["trace_len"].is_number());
        assert!(v["strategy"].is_string());
    }
}

#[test]
fn zero_demand_is_yes_everywhere() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "k0.alpp", "p alpp 3 1 0 3\ne 1 2\na 1\n");
    for strategy in ["oracle", "colorcode", "cvd-ell", "cvd-a", "auto"] {
        let out = alpp(&["solve", s(&f), "--strategy", strategy]);
        assert_eq!(stdout(&out), "YES\n", "{strategy}");
    }
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.alpp", "p alpp 2 1 1 2\ne 1 3\n");
    assert_eq!(alpp(&["solve", s(&bad)]).status.code(), Some(2));
    let good = write(dir.path(), "t.alpp", SINGLE_EDGE);
    assert_eq!(
        alpp(&["solve", s(&good), "--strategy", "greedy"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(alpp(&["solve"]).status.code(), Some(2));
    assert_eq!(
        alpp(&["kernelize", s(&good), "--param", "tw"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn kernel_bound_for_cover_of_four() {
    // Cover {1,2,3,4}; vertices 5..12 each see two cover vertices.
    let mut text = String::from("p alpp 12 16 1 5\n");
    for v in 5..=12 {
        let a = (v - 5) % 4 + 1;
        let b = (v - 4) % 4 + 1;
        text.push_str(&format!("e {a} {v}\ne {b} {v}\n"));
    }
    text.push_str("a 5 6 7 8 9\n");
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "m4.alpp", &text);
    let out = alpp(&["kernelize", s(&f), "--exact-cover"]);
    assert!(out.status.success());
    let body = stdout(&out);
    assert!(
        body.contains("≤ |M| + 2|M| + 2·C(|M|,2) = 24 (ok)"),
        "{body}"
    );
}

fn strip_comments(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with("c "))
        .map(|l| format!("{l}\n"))
        .collect()
}

#[test]
fn short_paths_pass_through() {
    let text = "p alpp 4 3 1 3\ne 1 2\ne 2 3\ne 3 4\na 1 3\n";
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "l3.alpp", text);
    let body = stdout(&alpp(&["kernelize", s(&f)]));
    assert!(body.contains("c trace: note: fallback: ℓ ≤ 4"));
    assert_eq!(strip_comments(&body), text);
}

#[test]
fn small_instance_passes_through() {
    let text = "c hand written\np alpp 5 4 1 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\na 5 1\n";
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "p5.alpp", text);
    let body = stdout(&alpp(&["kernelize", s(&f)]));
    assert_eq!(strip_comments(&body), strip_comments(text));
}

#[test]
fn kernel_output_parses_and_keeps_answer() {
    let dir = TempDir::new().unwrap();
    let src = dir.path().join("v.alpp");
    let out = alpp(&[
        "gen",
        "vc",
        "--n",
        "14",
        "--cover",
        "3",
        "--k",
        "2",
        "--ell",
        "5",
        "--seed",
        "4",
        "-o",
        s(&src),
    ]);
    assert!(out.status.success());
    let kern = dir.path().join("k.alpp");
    assert!(alpp(&["kernelize", s(&src), "-o", s(&kern)])
        .status
        .success());
    let a = stdout(&alpp(&["solve", s(&src), "--strategy", "oracle"]));
    let b = stdout(&alpp(&["solve", s(&kern), "--strategy", "oracle"]));
    assert_eq!(a.lines().next(), b.lines().next());
}

#[test]
fn generators_are_reproducible() {
    let args = [
        "gen",
        "random",
        "--n",
        "9",
        "--edge-prob",
        "0.4",
        "--terminals",
        "4",
        "--k",
        "2",
        "--ell",
        "3",
        "--seed",
        "8",
    ];
    assert_eq!(stdout(&alpp(&args)), stdout(&alpp(&args)));
    let empty = stdout(&alpp(&[
        "gen",
        "random",
        "--n",
        "6",
        "--edge-prob",
        "0",
        "--terminals",
        "3",
        "--k",
        "1",
        "--ell",
        "2",
    ]));
    assert!(empty.contains("p alpp 6 0 1 2"));
    for kind in [
        vec![
            "gen",
            "cluster",
            "--cliques",
            "4",
            "--max-clique",
            "5",
            "--k",
            "1",
            "--ell",
            "5",
        ],
        vec![
            "gen",
            "cvda",
            "--terminals",
            "4",
            "--cliques",
            "3",
            "--max-clique",
            "4",
            "--k",
            "2",
            "--ell",
            "4",
        ],
    ] {
        assert!(alpp(&kind).status.success());
    }
}

#[test]
fn planted_certificate_verifies() {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("p.alpp");
    let cert = dir.path().join("p.cert");
    let out = alpp(&[
        "plant",
        "--n",
        "15",
        "--k",
        "2",
        "--ell",
        "5",
        "--noise",
        "0.3",
        "--seed",
        "2",
        "-o",
        s(&inst),
        "--cert",
        s(&cert),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&alpp(&["verify", s(&inst), s(&cert)])), "VALID\n");
    let solved = stdout(&alpp(&["solve", s(&inst)]));
    assert!(solved.starts_with("YES"));

    let broken = write(dir.path(), "bad.cert", "path 1 2\n");
    let out = alpp(&["verify", s(&inst), s(&broken), "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["valid"], false);
}

#[test]
fn reduce_single_item() {
    let dir = TempDir::new().unwrap();
    let fam = write(dir.path(), "f.ti", "ti 1/10 2/10 3/10 4/10\n");
    let cert = dir.path().join("r.cert");
    let inst = dir.path().join("r.alpp");
    let out = alpp(&[
        "reduce",
        s(&fam),
        "--k",
        "1",
        "--scale",
        "4",
        "--plant",
        "1",
        "--cert",
        s(&cert),
        "-o",
        s(&inst),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let body = fs::read_to_string(&inst).unwrap();
    let header = body.lines().find(|l| l.starts_with("p ")).unwrap();
    assert!(header.ends_with(" 1 36"), "{header}");
    assert!(body
        .lines()
        .any(|l| l.starts_with("c audit: separator-blocks ok")));
    assert!(!body.contains("FAIL"));
    assert_eq!(stdout(&alpp(&["verify", s(&inst), s(&cert)])), "VALID\n");
}

#[test]
fn reduce_rejects_intersecting_plant() {
    let dir = TempDir::new().unwrap();
    let fam = write(
        dir.path(),
        "f.ti",
        "ti 1/18 3/18 5/18 7/18\nti 2/18 4/18 9/18 11/18\n",
    );
    let out = alpp(&[
        "reduce",
        s(&fam),
        "--k",
        "2",
        "--scale",
        "1",
        "--plant",
        "1,2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("intersect"));
    let out = alpp(&[
        "reduce",
        s(&fam),
        "--k",
        "1",
        "--scale",
        "1",
        "--plant",
        "2",
    ]);
    assert!(out.status.success());
}

#[test]
fn bench_tables() {
    let dir = TempDir::new().unwrap();
    let empty = dir.path().join("empty");
    fs::create_dir(&empty).unwrap();
    let out = alpp(&["bench", s(&empty)]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 1);

    let corpus = dir.path().join("corpus");
    fs::create_dir(&corpus).unwrap();
    for i in 0..10 {
        write(&corpus, &format!("t{i:02}.alpp"), SINGLE_EDGE);
    }
    let table = stdout(&alpp(&["bench", s(&corpus)]));
    for s in ["oracle", "colorcode", "cvd-ell", "cvd-a"] {
        assert!(
            table.contains(&format!("agreement {s}: 10/10 (100%)")),
            "{table}"
        );
    }
    let csv = |seed: &str| -> Vec<String> {
        stdout(&alpp(&["bench", s(&corpus), "--csv", "--seed", seed]))
            .lines()
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                format!("{},{},{}", f[0], f[1], f[2])
            })
            .collect()
    };
    assert_eq!(csv("3"), csv("3"));
}
