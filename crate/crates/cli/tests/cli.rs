use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn griesmer(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_griesmer"))
        .args(args)
        .env_remove("GRIESMER_SEARCH_BUDGET")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let input = stdin.unwrap_or("").to_owned();
    let mut pipe = child.stdin.take().unwrap();
    let writer = std::thread::spawn(move || {
        let _ = pipe.write_all(input.as_bytes());
    });
    let out = child.wait_with_output().unwrap();
    writer.join().unwrap();
    out
}

fn ok(args: &[&str], stdin: Option<&str>) -> String {
    let out = griesmer(args, stdin);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn bounds_reports() {
    let out = ok(
        &[
            "bounds",
            "--q",
            "2",
            "--k",
            "4",
            "--d",
            "18",
            "--setting",
            "systematic",
        ],
        None,
    );
    let griesmer_line = out.lines().find(|l| l.contains(" G Griesmer")).unwrap();
    assert!(
        griesmer_line.contains("35")
            && griesmer_line.contains("does NOT apply (disproven by example)")
    );
    assert!(out.contains("best applicable: 34 (BoundC)"));
    assert!(out
        .lines()
        .any(|l| l.contains("29  I SingletonImprovedSystematic  applies")));

    let out = ok(&["bounds", "--q", "2", "--k", "4", "--d", "8"], None);
    assert!(out.contains("best applicable: 15 (Griesmer)"));
    assert!(out.contains("griesmer bound: proven (proven via d = q^l with l=3"));

    let out = ok(&["bounds", "--q", "2", "--k", "1", "--d", "7"], None);
    assert!(out.contains("best applicable: 7"));

    let out = ok(
        &[
            "bounds",
            "--q",
            "2",
            "--M",
            "17",
            "--d",
            "8",
            "--setting",
            "nonlinear",
        ],
        None,
    );
    assert!(out.contains("best applicable: 16 (Plotkin)"));

    let json: serde_json::Value =
        serde_json::from_str(&ok(&["bounds", "--k", "4", "--d", "18", "--json"], None)).unwrap();
    assert_eq!(json["bounds"][0]["value"], 34);
    assert_eq!(json["family"]["holds"], "disproven-by-example");
}

#[test]
fn bounds_usage_errors() {
    assert_eq!(
        code(&griesmer(
            &["bounds", "--q", "1", "--k", "2", "--d", "3"],
            None
        )),
        2
    );
    assert_eq!(
        code(&griesmer(&["bounds", "--k", "0", "--d", "3"], None)),
        2
    );
    assert_eq!(code(&griesmer(&["bounds", "--d", "3"], None)), 2);
    assert_eq!(
        code(&griesmer(&["bounds", "--M", "5", "--d", "3"], None)),
        2
    );
}

#[test]
fn family_verdicts() {
    let out = ok(
        &["family", "--k", "4", "--d", "10", "--setting", "nonlinear"],
        None,
    );
    assert!(out.starts_with("disproven-by-example\n"));
    let out = ok(&["family", "--k", "3", "--d", "10"], None);
    assert!(out.starts_with("unknown\n"), "{out}");
    let out = ok(&["family", "--k", "2", "--d", "3", "--json"], None);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["holds"], "proven");
}

#[test]
fn construct_and_verify_pipeline() {
    let c34 = ok(&["construct", "counterexample-34"], None);
    let out = ok(
        &[
            "verify",
            "-",
            "--k",
            "4",
            "--expect-systematic",
            "--expect-violation",
            "--expect-d",
            "18",
        ],
        Some(&c34),
    );
    assert!(
        out.contains("systematic, d=18, n=34 < g=35: VIOLATES Griesmer"),
        "{out}"
    );

    let lev = ok(&["construct", "levenshtein-19-16-10"], None);
    let out = ok(
        &["verify", "-", "--k", "4", "--expect-not-systematic"],
        Some(&lev),
    );
    assert!(out.contains("NOT systematic"));
    assert!(out.contains("n=19 < g=20: VIOLATES Griesmer"));

    // auto-detected k from M = 2^4
    let simplex = ok(&["construct", "simplex15"], None);
    let out = ok(&["verify", "-"], Some(&simplex));
    assert!(out.contains("systematic, d=8, n=15 = g=15: meets Griesmer"));
    let gray = ok(&["construct", "simplex15", "--gray"], None);
    assert_ne!(gray, simplex);
    assert!(c34
        .lines()
        .skip(1)
        .zip(gray.lines().skip(1))
        .all(|(a, b)| a.starts_with(b)));
}

#[test]
fn verify_failures() {
    let out = griesmer(&["verify", "-"], Some("2 3\n010\n"));
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("distance undefined"));

    let out = griesmer(&["verify", "-"], Some("# header next\n2 3\n000\n0a0\n"));
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("<stdin>:4:"));

    let rep = "2 5\n00000\n11111\n";
    assert_eq!(
        code(&griesmer(&["verify", "-", "--expect-d", "4"], Some(rep))),
        1
    );
    assert_eq!(
        code(&griesmer(&["verify", "-", "--expect-violation"], Some(rep))),
        1
    );
    assert_eq!(
        code(&griesmer(
            &[
                "verify",
                "-",
                "--k",
                "1",
                "--expect-systematic",
                "--expect-n",
                "5"
            ],
            Some(rep)
        )),
        0
    );
    assert_eq!(code(&griesmer(&["verify", "/nonexistent/file"], None)), 2);
}

#[test]
fn verify_json_input_and_output() {
    let json = ok(&["construct", "counterexample-34", "--json"], None);
    assert!(json.trim_start().starts_with('{'));
    let report: serde_json::Value =
        serde_json::from_str(&ok(&["verify", "-", "--k", "4", "--json"], Some(&json))).unwrap();
    assert_eq!(report["d"], 18);
    assert_eq!(report["griesmer"], 35);
    assert_eq!(report["comparison"], "violates");
    assert_eq!(report["systematic"]["verdict"], "systematic");
}

#[test]
fn tables() {
    let csv = ok(
        &[
            "table",
            "--q",
            "2",
            "--k",
            "1..4",
            "--d",
            "1..20",
            "--setting",
            "systematic",
            "--format",
            "csv",
        ],
        None,
    );
    let rows: Vec<Vec<&str>> = csv
        .lines()
        .skip(1)
        .take_while(|l| !l.is_empty())
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(rows.len(), 20);
    assert_eq!(rows.iter().map(|r| r.len() - 1).sum::<usize>(), 80);
    assert_eq!(rows[7], ["8", "8G", "12G", "14G", "15G"]);
    assert_eq!(rows[17][4], "34C");
    assert!(csv.contains("# C: Bound C"));
    // deterministic output
    assert_eq!(csv, ok(&["table", "--k", "1..4", "--d", "1..20"], None));

    let md = ok(
        &[
            "table", "--k", "1..2", "--d", "1..3", "--format", "markdown",
        ],
        None,
    );
    assert!(md.contains("| d \\ k | 1 | 2 |"));
    assert!(md.contains("| 3 | 3G | 5G |"));

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.json");
    ok(
        &[
            "table",
            "--M",
            "2..20",
            "--d",
            "1..10",
            "--setting",
            "nonlinear",
            "--format",
            "json",
            "-o",
            path(&file),
        ],
        None,
    );
    let text = std::fs::read_to_string(&file).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["axis"], "m");
    assert_eq!(v["rows"].as_array().unwrap().len(), 10);
    assert_eq!(v["rows"][9]["d"], 10);
    assert_eq!(
        v["rows"][9]["cells"][14],
        serde_json::json!({"value": 19, "source": "C"})
    );

    assert_eq!(
        code(&griesmer(&["table", "--k", "3..1", "--d", "1..3"], None)),
        2
    );
    assert_eq!(
        code(&griesmer(&["table", "--k", "1..17", "--d", "1..3"], None)),
        2
    );
    assert_eq!(
        code(&griesmer(&["table", "--k", "1..2", "--d", "1..2000"], None)),
        2
    );
    assert_eq!(
        code(&griesmer(&["table", "--k", "x", "--d", "1..2"], None)),
        2
    );
}

#[test]
fn cyclic_construction() {
    let set = "0,1,2,3,4,5,6,8,9,10,12";
    let out = ok(&["construct", "cyclic", "--n", "15", "--defset", set], None);
    assert!(out.starts_with("2 15\n"));
    assert_eq!(out.lines().count(), 17);
    let sys = ok(
        &[
            "construct",
            "cyclic",
            "--n",
            "15",
            "--defset",
            set,
            "--systematic",
        ],
        None,
    );
    let v = ok(
        &[
            "verify",
            "-",
            "--k",
            "4",
            "--expect-systematic",
            "--expect-d",
            "8",
        ],
        Some(&sys),
    );
    assert!(v.contains("meets Griesmer"));

    let hamming = ok(
        &["construct", "cyclic", "--n", "7", "--defset", "1,2,4"],
        None,
    );
    assert!(ok(&["verify", "-"], Some(&hamming)).contains("(7, 16, 3)_2"));
    assert_eq!(
        code(&griesmer(
            &["construct", "cyclic", "--n", "7", "--defset", "1,2"],
            None
        )),
        2
    );
    assert_eq!(
        code(&griesmer(
            &["construct", "cyclic", "--n", "8", "--defset", "1"],
            None
        )),
        2
    );
}

#[test]
fn transforms() {
    let rep5 = "2 5\n00000\n11111\n";
    let out = ok(&["transform", "repeat", "--t", "2"], Some(rep5));
    assert_eq!(out, "2 10\n0000000000\n1111111111\n");

    let out = ok(&["transform", "puncture", "--i", "1"], Some(rep5));
    assert_eq!(out, "2 4\n0000\n1111\n");
    let out = ok(&["transform", "extend-parity"], Some(rep5));
    assert_eq!(out, "2 6\n000000\n111111\n");
    let out = ok(&["transform", "translate", "--word", "11111"], Some(rep5));
    assert_eq!(out, "2 5\n11111\n00000\n");

    let c34 = ok(&["construct", "counterexample-34"], None);
    let short = ok(&["transform", "shorten", "--i", "1"], Some(&c34));
    assert!(ok(
        &[
            "verify",
            "-",
            "--k",
            "3",
            "--expect-systematic",
            "--expect-n",
            "33"
        ],
        Some(&short)
    )
    .contains("d=18"));
    let reduced = ok(
        &["transform", "reduce-distance", "--target", "10", "--k", "4"],
        Some(&c34),
    );
    let v = ok(
        &[
            "verify",
            "-",
            "--k",
            "4",
            "--expect-d",
            "10",
            "--expect-systematic",
        ],
        Some(&reduced),
    );
    assert!(v.contains("n=25"), "{v}");

    let dir = tempfile::tempdir().unwrap();
    let simplex = dir.path().join("s.txt");
    let lev = dir.path().join("l.txt");
    ok(
        &["construct", "simplex15", "--gray", "-o", path(&simplex)],
        None,
    );
    ok(
        &["construct", "levenshtein-19-16-10", "-o", path(&lev)],
        None,
    );
    let cat = ok(
        &[
            "transform",
            "-i",
            path(&simplex),
            "concat",
            "--other",
            path(&lev),
            "--pairing",
            "listed",
        ],
        None,
    );
    assert_eq!(cat, c34);
    let sorted = ok(
        &[
            "transform",
            "concat",
            "-i",
            path(&simplex),
            "--other",
            path(&lev),
        ],
        None,
    );
    assert!(ok(&["verify", "-", "--k", "4"], Some(&sorted)).contains("d=18"));
    let explicit = ok(
        &[
            "transform",
            "concat",
            "-i",
            path(&simplex),
            "--other",
            path(&lev),
            "--pairing",
            "1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16",
        ],
        None,
    );
    assert_eq!(explicit, c34);

    assert_eq!(
        code(&griesmer(
            &["transform", "puncture", "--i", "9"],
            Some(rep5)
        )),
        2
    );
    assert_eq!(
        code(&griesmer(&["transform", "repeat", "--t", "0"], Some(rep5))),
        2
    );
    assert_eq!(
        code(&griesmer(
            &["transform", "reduce-distance", "--target", "6", "--k", "1"],
            Some(rep5)
        )),
        2
    );
    assert_eq!(
        code(&griesmer(
            &[
                "transform",
                "concat",
                "--other",
                path(&lev),
                "--pairing",
                "1,1"
            ],
            Some(&c34)
        )),
        2
    );
    assert_eq!(
        code(&griesmer(
            &["transform", "extend-parity"],
            Some("3 1\n0\n2\n")
        )),
        2
    );
}

#[test]
fn search_command() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.txt");
    let out = ok(
        &[
            "search",
            "--q",
            "2",
            "--k",
            "2",
            "--d",
            "3",
            "--witness",
            path(&w),
        ],
        None,
    );
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "exact");
    assert_eq!(v["value"], 5);
    let witness = std::fs::read_to_string(&w).unwrap();
    assert!(ok(
        &[
            "verify",
            "-",
            "--k",
            "2",
            "--expect-systematic",
            "--expect-d",
            "3"
        ],
        Some(&witness)
    )
    .contains("n=5"));

    let par = ok(&["search", "--k", "3", "--d", "4", "--parallel"], None);
    let v: serde_json::Value = serde_json::from_str(&par).unwrap();
    assert_eq!(v["value"], 7);

    let capped = ok(&["search", "--k", "2", "--d", "3", "--max-n", "4"], None);
    let v: serde_json::Value = serde_json::from_str(&capped).unwrap();
    assert_eq!(v["status"], "lower-bound-only");

    let out = Command::new(env!("CARGO_BIN_EXE_griesmer"))
        .args(["search", "--k", "2", "--d", "3"])
        .env("GRIESMER_SEARCH_BUDGET", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn family_search_and_targets() {
    let out = ok(&["verify-family", "--d", "4", "--k-max", "2"], None);
    assert!(out.ends_with("confirmed for k=1..=2\n"));
    let out = ok(&["verify-family", "--d", "3", "--k-max", "2"], None);
    assert!(out.contains("k=2 g=5 S=5 (exact) S >= g"));
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["conjecture", "--r", "4"], None)).unwrap();
    assert_eq!(v["d"], 18);
    assert_eq!(v["k_max"], 5);
    assert_eq!(code(&griesmer(&["conjecture", "--r", "2"], None)), 2);
}
