use std::process::{Command, Output};

use serde_json::Value;

fn qdiscord(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdiscord"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn field(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("{key} missing in {v}"))
}

fn csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn compute_examples() {
    let h = json(&qdiscord(&["compute", "--family", "horodecki", "--p", "0.5"]));
    assert!((field(&h, "Q_discord") - 0.412154).abs() < 1e-6);
    assert_eq!(h["rank"], 2);
    assert_eq!(h["family"]["family"], "horodecki");

    let e = json(&qdiscord(&["compute", "--family", "example1", "--x", "2"]));
    assert!((field(&e, "Q_discord") - (5.0 / 3.0 - 3f64.log2())).abs() < 1e-11);

    // (I + σx⊗σx)/4 mixes |++> and |-->; it is classical
    let c = json(&qdiscord(&["compute", "--family", "bell_diagonal", "--c", "1,0,0"]));
    assert!((field(&c, "I_cc") - 1.0).abs() < 1e-11);
    assert!(field(&c, "Q_discord").abs() < 1e-11);

    let bell = json(&qdiscord(&["compute", "--family", "bell_diagonal", "--c", "1,-1,1"]));
    assert!((field(&bell, "Q_discord") - 1.0).abs() < 1e-11);
}

#[test]
fn compute_has_fixed_keys_and_twelve_digits() {
    let v = json(&qdiscord(&["compute", "--family", "horodecki", "--p", "0.5"]));
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(
        keys,
        [
            "I2_cc", "I_cc", "I_mutual", "Q_discord", "S2_A", "S2_B", "S_A", "S_AB", "S_B", "family", "rank",
            "unavailable"
        ]
    );
    assert_eq!(field(&v, "Q_discord"), 0.412154161152);
}

#[test]
fn json_input_matches_flags_exactly() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["--family", "horodecki", "--p", "0.37"],
        vec!["--family", "example1", "--x", "1.3"],
        vec!["--family", "rho2", "--x", "0.3", "--theta", "0.4", "--eta", "1.1"],
        vec!["--family", "random_rank2", "--seed", "11"],
    ] {
        let shown = qdiscord(&[&["state", "show"], &args[..]].concat());
        assert!(shown.status.success());
        let path = dir.path().join("state.json");
        std::fs::write(&path, &shown.stdout).unwrap();

        let mut from_flags = json(&qdiscord(&[&["compute"], &args[..]].concat()));
        let mut from_file = json(&qdiscord(&["compute", "--input", path.to_str().unwrap()]));
        from_flags.as_object_mut().unwrap().remove("family");
        from_file.as_object_mut().unwrap().remove("family");
        assert_eq!(from_flags, from_file, "{args:?}");
    }
}

#[test]
fn stdin_input() {
    let shown = qdiscord(&["state", "show", "--family", "horodecki", "--p", "0.5"]);
    let mut child = Command::new(env!("CARGO_BIN_EXE_qdiscord"))
        .args(["compute", "--input", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(&shown.stdout).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!((field(&json(&out), "Q_discord") - 0.412154161152).abs() < 1e-15);
}

#[test]
fn rank_three_state_reports_reason() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("werner.json");
    // 0.6 |ψ-><ψ-| + 0.4 I/4 has full rank
    let (a, b) = (0.1, 0.4);
    let s = format!(
        r#"{{"dims":[2,2],"matrix":[[[{a},0],[0,0],[0,0],[0,0]],[[0,0],[{b},0],[-0.3,0],[0,0]],[[0,0],[-0.3,0],[{b},0],[0,0]],[[0,0],[0,0],[0,0],[{a},0]]]}}"#
    );
    std::fs::write(&path, s).unwrap();
    let v = json(&qdiscord(&["compute", "--input", path.to_str().unwrap()]));
    assert!(v["I_cc"].is_null() && v["Q_discord"].is_null());
    assert!(v["unavailable"].as_str().unwrap().contains("rank"));
    assert!(field(&v, "I2_cc") > 0.0);
}

#[test]
fn example1_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1.csv");
    let out = qdiscord(&[
        "sweep", "--family", "example1", "--from", "0", "--to", "2", "--steps", "201", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(!text.contains('\r') && !text.starts_with('\u{feff}'));
    let (header, rows) = csv(&text);
    assert_eq!(header, ["x", "I2_cc", "I2_cc_closed"]);
    assert_eq!(rows.len(), 201);
    assert_eq!((rows[0][0], rows[200][0]), (0.0, 2.0));
    for r in &rows {
        let want = (1.0f64 / 9.0).max((1.0 - 2.0 * r[0]).powi(2) / 9.0);
        assert!((r[1] - want).abs() <= 1e-10, "{r:?}");
    }
}

#[test]
fn horodecki_and_rho2_sweeps_agree() {
    let h = qdiscord(&["sweep", "--family", "horodecki", "--from", "0", "--to", "1", "--steps", "101"]);
    let (header, hr) = csv(std::str::from_utf8(&h.stdout).unwrap());
    assert_eq!(header, ["p", "S_A", "S_B", "S_AB", "I_mutual", "I_cc", "Q_discord", "Q_closed_form"]);
    for r in &hr {
        assert!((r[6] - r[7]).abs() <= 1e-9, "{r:?}");
    }
    assert!(hr[0][6].abs() <= 1e-12);
    assert!((hr[100][6] - 1.0).abs() <= 1e-12);

    let theta = std::f64::consts::FRAC_PI_2.to_string();
    let eta = std::f64::consts::FRAC_PI_4.to_string();
    let r = qdiscord(&[
        "sweep", "--family", "rho2", "--param", "x", "--theta", &theta, "--eta", &eta, "--from", "0", "--to", "1",
        "--steps", "101",
    ]);
    let (header, rr) = csv(std::str::from_utf8(&r.stdout).unwrap());
    assert_eq!(header[0], "x");
    for (k, row) in rr.iter().enumerate() {
        let mirror = &hr[100 - k];
        for c in 1..8 {
            assert!((row[c] - mirror[c]).abs() <= 1e-9, "x={} column {c}", row[0]);
        }
    }
}

#[test]
fn sweep_rejects_bad_specs() {
    for args in [
        vec!["sweep", "--family", "horodecki", "--from", "0", "--to", "1", "--steps", "1"],
        vec!["sweep", "--family", "horodecki", "--from", "1", "--to", "0", "--steps", "5"],
        vec!["sweep", "--family", "horodecki", "--param", "x", "--from", "0", "--to", "1", "--steps", "5"],
        vec!["sweep", "--family", "bell_diagonal", "--from", "0", "--to", "1", "--steps", "5"],
        vec!["sweep", "--family", "horodecki", "--from", "0", "--to", "1", "--steps", "5", "--out", "/nonexistent/dir/x.csv"],
    ] {
        let out = qdiscord(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn validate_passes_and_is_deterministic() {
    let a = qdiscord(&["validate", "--trials", "100", "--seed", "42"]);
    let b = qdiscord(&["validate", "--trials", "100", "--seed", "42"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["trials"], 100);
}

#[test]
fn validate_failure_path() {
    let out = qdiscord(&["validate", "--trials", "10", "--seed", "7", "--tol", "kw=1e-15"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).expect("summary still emitted");
    assert_eq!(v["pass"], false);
    let kw = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "kw").unwrap();
    assert_eq!(kw["pass"], false);
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"dims":[2,1],"matrix":[[[0.5,0],[0.1,0]],[[0,0],[0.5,0]]]}"#).unwrap();
    for args in [
        vec!["compute", "--family", "horodecki"],
        vec!["compute", "--family", "horodecki", "--p", "1.5"],
        vec!["compute", "--family", "bell_diagonal", "--c", "1,0"],
        vec!["compute", "--input", bad.to_str().unwrap()],
        vec!["compute", "--input", "/nonexistent.json"],
        vec!["validate", "--trials", "0", "--seed", "1"],
        vec!["validate", "--trials", "3", "--seed", "1", "--tol", "bogus=1"],
        vec!["frobnicate"],
    ] {
        let out = qdiscord(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}
