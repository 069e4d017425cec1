use std::process::{Command, Output};

fn hsframes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hsframes"))
        .args(args)
        .env_remove("HSFRAMES_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_lp_basis_passes() {
    let o = hsframes(&["verify", "lp_basis", "--p", "1.5", "--dim", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["defining_defect"].as_f64(), Some(0.0));
    assert_eq!(v["N"], 8);
}

#[test]
fn verify_haar_passes() {
    let o = hsframes(&["verify", "--construction", "haar", "--p", "1.5", "--level", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn out_of_scope_and_unknown_exit_2() {
    assert_eq!(hsframes(&["verify", "lp_basis", "--p", "3"]).status.code(), Some(2));
    assert_eq!(hsframes(&["verify", "haar", "--p", "1"]).status.code(), Some(2));
    assert_eq!(hsframes(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(hsframes(&["demo", "lq_demo", "--p", "1.5"]).status.code(), Some(2));
    assert_eq!(hsframes(&["demo", "haar"]).status.code(), Some(2));
}

#[test]
fn counterexample_candidate_fails_named_field() {
    let o = hsframes(&["verify", "l1_counterexample", "--dim", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("defining_defect"));
}

#[test]
fn out_directory_holds_report_and_curve() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run");
    let o = hsframes(&["verify", "mercedes_benz", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let report = std::fs::read_to_string(path.join("report.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["construction"], "mercedes_benz");
    let csv = std::fs::read_to_string(path.join("local_duality.csv")).unwrap();
    assert!(csv.starts_with("m,defect\n"));
    assert!(!csv.contains('\r'));
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn seed_env_overrides_flag() {
    let run = |env: Option<&str>, seed: &str| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_hsframes"));
        c.args(["verify", "hilbert_frame", "--dim", "4", "--seed", seed]);
        match env {
            Some(s) => c.env("HSFRAMES_SEED", s),
            None => c.env_remove("HSFRAMES_SEED"),
        };
        stdout(&c.output().unwrap())
    };
    assert_eq!(run(Some("5"), "1"), run(None, "5"));
    assert_ne!(run(None, "1"), run(None, "5"));
}

#[test]
fn counterexample_demo_has_unit_defect_at_even_n() {
    let o = hsframes(&["demo", "l1_counterexample", "--dim", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("n,one_defect,e1_defect"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 20);
    for r in &rows {
        let n = r[0] as usize;
        if n.is_multiple_of(2) {
            assert_eq!(r[1], 1.0);
            for k in 1..=n / 2 {
                assert_eq!(r[1 + k], 0.0, "e{k} at n={n}");
            }
        }
    }
}

#[test]
fn lq_demo_row() {
    let o = hsframes(&["demo", "lq_demo", "--p", "4", "--dim", "16"]);
    let text = stdout(&o);
    let last: Vec<f64> = text.lines().last().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(last[1], 16.0);
    assert_eq!(last[2], 4.0);
    assert!((last[3] - 4.0).abs() < 1e-3);
}

#[test]
fn embedding_demo_p2_is_flat() {
    let o = hsframes(&["demo", "embedding", "--p", "2", "--dim", "16"]);
    let text = stdout(&o);
    for line in text.lines().skip(1) {
        let v: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(v, 1.0);
    }
}
