use std::process::Command;

use phasereflect::cli::*;

fn cfg(pairs: &[&str]) -> RunConfig {
    RunConfig::assemble(None, std::iter::empty(), pairs).unwrap()
}

#[test]
fn file_then_environment_then_overrides() {
    let path = std::env::temp_dir().join(format!("phasereflect-cli-{}.cfg", std::process::id()));
    std::fs::write(&path, "# scan\nhbar = 0.5\nomega = 2\nseed = 4\n").unwrap();
    let env = vec![
        ("PHASEREFLECT_OMEGA".to_string(), "3".to_string()),
        ("PHASEREFLECT_SEED".to_string(), "5".to_string()),
        ("UNRELATED".to_string(), "x".to_string()),
    ];
    let c = RunConfig::assemble(Some(&path), env, &["seed=6"]).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(c.f64_or("hbar", 1.0).unwrap(), 0.5);
    assert_eq!(c.f64_or("omega", 1.0).unwrap(), 3.0);
    assert_eq!(c.u64_or("seed", 1).unwrap(), 6);
    assert!(c.get("unrelated").is_none());
    assert!(RunConfig::assemble(None, std::iter::empty(), &["novalue"]).is_err());
}

#[test]
fn transition_scan_matches_closed_form_and_vanishes_past_caustic() {
    let t = cmd_transition(&cfg(&["q_tilde=0.5,1.0,1.5,1.8,1.9,2.5", "samples=2000"])).unwrap();
    let qt = t.column("q_tilde").unwrap();
    let closed = t.column("p_closed").unwrap();
    let mc = t.column("p_mc").unwrap();
    let ym = t.column("y_m_sq").unwrap();
    for i in 0..qt.len() {
        if ym[i] > 0.0 {
            // two freedoms: P = Y_M / (2πħ² ω² Q̃)
            let expect = ym[i].sqrt() / (2.0 * std::f64::consts::PI * qt[i]);
            assert!((closed[i] / expect - 1.0).abs() < 1e-12);
            assert!((mc[i] / closed[i] - 1.0).abs() < 1e-8);
        } else {
            assert_eq!(closed[i], 0.0);
            assert_eq!(mc[i], 0.0);
        }
    }
    assert!(t.rows().iter().all(|(_, s)| s == OK));
}

#[test]
fn caustic_scan_is_evanescent_outside() {
    let t = cmd_caustic(&cfg(&["s=-12,0,12,16"])).unwrap();
    let s = t.column("s").unwrap();
    let quad = t.column("p_quadrature").unwrap();
    let classical = t.column("p_classical").unwrap();
    for i in 0..s.len() {
        if s[i] >= 12.0 {
            assert!(quad[i] < 1e-8, "P({}) = {}", s[i], quad[i]);
            assert_eq!(classical[i], 0.0);
        }
        if s[i] == 0.0 {
            assert!(classical[i].is_infinite());
            assert!(t.rows()[i].1.contains("diverges"));
        }
    }
}

#[test]
fn csv_keeps_schema_and_rejects_unflagged_nan() {
    let mut t = ScanResult::new(&["x[1]", "y[action]"]);
    t.push(vec![1.0, 2.0], OK).unwrap();
    assert!(t.push(vec![f64::NAN, 0.0], OK).is_err());
    t.push(vec![f64::NAN, 0.0], "failed").unwrap();
    assert!(t.push(vec![1.0], OK).is_err());
    let csv = t.to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "x[1],y[action],status");
    assert_eq!(lines.len(), 3);
    assert!(lines[2].ends_with(",failed"));
}

#[test]
fn binary_writes_identical_csv_on_repeat() {
    let exe = env!("CARGO_BIN_EXE_phasereflect");
    let run = || {
        let out = Command::new(exe)
            .args(["polygon", "--set", "count=12", "--set", "seed=9"])
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    let first = run();
    assert_eq!(first, run());
    let text = String::from_utf8(first).unwrap();
    assert_eq!(text.lines().count(), 13);
    assert!(text.starts_with("index[1],sides[1],area[action]"));
}

#[test]
fn binary_reports_bad_input() {
    let exe = env!("CARGO_BIN_EXE_phasereflect");
    let out = Command::new(exe)
        .args(["transition", "--set", "hbar=-1"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("hbar"));
}
