//! End-to-end runs of the `cfsl2` binary.

use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str], cfg: &str) -> Output {
    let path = dir.join("run.cfg");
    std::fs::write(&path, cfg).unwrap();
    Command::new(env!("CARGO_BIN_EXE_cfsl2"))
        .args(args)
        .arg("--config")
        .arg(&path)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[derive(serde::Deserialize)]
struct Row {
    n: usize,
    a: [String; 2],
    p: [String; 2],
    q: [String; 2],
    det: [String; 2],
    abs_eps: String,
    terminated: bool,
}

#[test]
fn sqrt_two_expansion_matches_pell_recurrence() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["expand"], "d = 1\nz = sqrt(2)\nterms = 20\n");
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<Row> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 20);
    // p_n = a_n p_{n−1} + p_{n−2} from p_{−1} = 1, p_{−2} = 0 (q: 0, 1)
    let (mut p, mut p1, mut q, mut q1) = (1i128, 0i128, 0i128, 1i128);
    for (n, r) in rows.iter().enumerate() {
        let a = if n == 0 { 1 } else { 2 };
        (p, p1) = (a * p + p1, p);
        (q, q1) = (a * q + q1, q);
        assert_eq!(r.n, n);
        assert_eq!(r.a, [a.to_string(), "0".into()]);
        assert_eq!(r.p, [p.to_string(), "0".into()]);
        assert_eq!(r.q, [q.to_string(), "0".into()]);
        assert_eq!(r.det, [if n % 2 == 0 { "1" } else { "-1" }.to_string(), "0".into()]);
        // |q√2 − p| = (√2 − 1)^(n+1)
        let want = (2f64.sqrt() - 1.0).powi(n as i32 + 1);
        let got: f64 = r.abs_eps.parse().unwrap();
        assert!((got / want - 1.0).abs() < 1e-10, "n={n} {got} {want}");
        assert!(!r.terminated);
    }
}

#[test]
fn output_is_reproducible_and_hash_tracks_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = "d = 1\nz1 = sqrt(2)\nz2 = sqrt(3)*i\ndepth = 10\n";
    let a = stdout(&run(dir.path(), &["orbit"], cfg));
    let b = stdout(&run(dir.path(), &["orbit"], &format!("# same keys\n{cfg}")));
    assert_eq!(a, b);
    let c = stdout(&run(dir.path(), &["orbit"], &cfg.replace("depth = 10", "depth = 11")));
    let hash = |s: &str| s.lines().find(|l| l.starts_with("# config_sha256")).unwrap().to_string();
    assert_ne!(hash(&a), hash(&c));
    assert!(a.contains("class,d,k,j,height,err,predicted_bound,measured_constant"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str], cfg: &str| run(dir.path(), args, cfg).status.code();
    assert_eq!(code(&["expand"], "d = 5\nz = sqrt(2)\n"), Some(2));
    assert_eq!(code(&["expand"], "d = 1\nz = sqrt(2)\nunknown = 1\n"), Some(2));
    assert_eq!(code(&["expand"], "d = 1\nz = sqrt(\n"), Some(2));
    assert_eq!(code(&["expand"], "d = 1\nz = sqrt(2)\n"), Some(0));
    assert_eq!(
        code(
            &["floor-check"],
            "d = 1\nz1 = sqrt(2)\nz2 = sqrt(3)*i\na = 1\nb = 1+i\nh = 1000000\nbudget = 10\n"
        ),
        Some(4)
    );
    let missing = Command::new(env!("CARGO_BIN_EXE_cfsl2"))
        .args(["expand", "--config", "/nonexistent/cfsl2.cfg"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn out_flag_writes_extras_beside_main_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("exp.txt");
    let o = run(
        dir.path(),
        &["exponent", "--out", out.to_str().unwrap()],
        "d = 1\nz1 = sqrt(2)\nz2 = sqrt(3)*i\ndepth = 30\n",
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let main = std::fs::read_to_string(&out).unwrap();
    assert!(main.contains("# command: exponent"));
    assert!(dir.path().join("exp.txt.points.csv").exists());
    assert!(dir.path().join("exp.txt.table.csv").exists());
}
