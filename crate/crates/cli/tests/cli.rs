use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn f2flow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_f2flow")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn gen(dir: &Path, dist: &str, n: &str, seed: &str, count: &str) {
    let o = f2flow(&["gen", "--dist", dist, "--n", n, "--pmax", "50", "--seed", seed, "--count", count, "--out", dir.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn version_mentions_format() {
    let o = f2flow(&["--version"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("format 1"));
}

#[test]
fn gen_is_reproducible_and_manifest_hashes_match() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    gen(a.path(), "uniform", "30", "9", "3");
    gen(b.path(), "uniform", "30", "9", "3");
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(a.path().join("manifest.json")).unwrap()).unwrap();
    let files = manifest["files"].as_array().unwrap();
    assert_eq!(files.len(), 3);
    for f in files {
        let name = f["file"].as_str().unwrap();
        let bytes = fs::read(a.path().join(name)).unwrap();
        assert_eq!(bytes, fs::read(b.path().join(name)).unwrap());
        use sha2::Digest;
        assert_eq!(hex::encode(sha2::Sha256::digest(&bytes)), f["sha256"].as_str().unwrap());
    }
    assert_eq!(manifest["spec"]["seed"], 9);
}

#[test]
fn histogram_written() {
    let d = tempfile::tempdir().unwrap();
    let h = d.path().join("h.csv");
    let o = f2flow(&[
        "gen", "--dist", "poisson", "--n", "5", "--pmax", "20", "--out", d.path().to_str().unwrap(),
        "--histogram", h.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(h).unwrap();
    let total: u64 = text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 100_000);
}

#[test]
fn solve_figure1_summary() {
    let d = tempfile::tempdir().unwrap();
    let o = f2flow(&["gen", "--dist", "figure1", "--out", d.path().to_str().unwrap()]);
    assert!(o.status.success());
    let file = d.path().join("figure1_000.txt");
    let o = f2flow(&["solve", file.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next().unwrap(), "Cmax=122 path=Prop2and3 kA=2 kA'=2 kB=17 kB'=17");

    let o = f2flow(&["solve", file.to_str().unwrap(), "--json", "--selection", "quick"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["makespan"], 122);

    let o = f2flow(&["solve", file.to_str().unwrap(), "--mode", "full"]);
    assert!(stdout(&o).starts_with("Cmax=122 mode=full"));
}

#[test]
fn worstcase_solves_by_full_sort() {
    let d = tempfile::tempdir().unwrap();
    let file = d.path().join("w.txt");
    assert!(f2flow(&["worstcase", "--n", "12", "--out", file.to_str().unwrap()]).status.success());
    let o = f2flow(&["solve", file.to_str().unwrap()]);
    assert!(stdout(&o).contains("path=FullSortFallback"));
}

#[test]
fn input_errors_exit_2() {
    let d = tempfile::tempdir().unwrap();
    let bad = d.path().join("bad.txt");
    fs::write(&bad, "2\n1 2\n0 4\n").unwrap();
    let o = f2flow(&["solve", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    fs::write(&bad, "2\n1 2\n3 x\n").unwrap();
    let o = f2flow(&["solve", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(f2flow(&["solve", d.path().join("missing").to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn overflow_exits_3() {
    let d = tempfile::tempdir().unwrap();
    let big = d.path().join("big.txt");
    let p = u64::MAX / 2;
    fs::write(&big, format!("3\n{p} {p}\n{p} {p}\n{p} {p}\n")).unwrap();
    assert_eq!(f2flow(&["solve", big.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn alpha_outside_unit_interval_is_usage_error() {
    for a in ["0", "1", "1.5", "-0.2"] {
        assert_eq!(f2flow(&["prob", "--n", "20", &format!("--alpha={a}")]).status.code(), Some(2), "alpha {a}");
    }
}

#[test]
fn prob_csv_columns() {
    let d = tempfile::tempdir().unwrap();
    let csv = d.path().join("p.csv");
    let o = f2flow(&["prob", "--from", "20", "--to", "60", "--csv", csv.to_str().unwrap(), "--exact"]);
    assert!(o.status.success());
    let text = fs::read_to_string(csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,kA,alpha,P1star,P2star,Pstar,Qstar");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3);
    for r in rows {
        let f: Vec<f64> = r.split(',').map(|x| x.parse().unwrap()).collect();
        assert!((f[5] + f[6] - 1.0).abs() < 1e-12);
    }
}

#[test]
fn prob_audit_lists_every_row() {
    let o = f2flow(&["prob", "--audit"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 11);
}

#[test]
fn bench_writes_csv() {
    let d = tempfile::tempdir().unwrap();
    let csv = d.path().join("b.csv");
    let o = f2flow(&["bench", "--sizes", "50,100", "--pmax-factors", "1", "--reps", "5", "--no-timing", "--csv", csv.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(csv).unwrap();
    assert!(text.starts_with("n,pmax,dist,kA_prime,kA,kBbar_prime,kBbar,prop56,t_avg,tau\n"));
    assert_eq!(text.lines().count(), 3);
}
