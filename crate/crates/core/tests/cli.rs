use std::fs;
use std::path::Path;
use std::process::Command;

use idcode::cli::{exit, run};
use idcode::constructor::Certificate;
use idcode::enumerate::connected_triangle_free;
use idcode::families::{in_f_delta, random_triangle_free};
use idcode::{parse_edge_list, write_edge_list};
use tempfile::TempDir;

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let status = run(std::iter::once("idcode").chain(args.iter().copied()), &mut out, &mut err);
    (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn exact_on_a_path_of_five() {
    let dir = TempDir::new().unwrap();
    let p5 = write(dir.path(), "p5.edges", "5 4\n0 1\n1 2\n2 3\n3 4\n");
    let (status, out, _) = call(&["exact", &p5]);
    assert_eq!(status, exit::OK);
    assert!(out.starts_with("size = 3\n"), "{out}");
}

#[test]
fn construct_on_a_six_cycle() {
    let dir = TempDir::new().unwrap();
    let c6 = write(dir.path(), "c6.edges", "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n");
    let cert_path = dir.path().join("c6.toml");
    let (status, out, _) = call(&["construct", &c6, "--out", cert_path.to_str().unwrap()]);
    assert_eq!((status, out.as_str()), (exit::OK, ""));
    let cert = Certificate::from_toml(&fs::read_to_string(cert_path).unwrap()).unwrap();
    assert_eq!(cert.code.len(), 3);
    assert!(cert.verified);
}

#[test]
fn verify_reports_violations() {
    let dir = TempDir::new().unwrap();
    let k2 = write(dir.path(), "k2.edges", "2 1\n0 1\n");
    let code = write(dir.path(), "k2.code", "0 1\n");
    let (status, out, _) = call(&["verify", &k2, "--code", &code]);
    assert_eq!(status, exit::NOT_IDENTIFYING);
    assert_eq!(out, "unseparated 0 1\n");

    let k33 = write(dir.path(), "k33.edges", "6 9\n0 3\n0 4\n0 5\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n");
    let code = write(dir.path(), "k33.code", "0 1 3 4\n");
    let (status, out, _) = call(&["verify", &k33, "--code", &code]);
    assert_eq!(status, exit::OK);
    assert_eq!(out, "identifying, size 4; delta 3: 12 vs 12 (slack 0)\n");
    let (_, out, _) = call(&["verify", &k33, "--code", &code, "--delta", "4"]);
    assert!(out.ends_with("delta 4: 16 vs 18 (slack -2)\n"), "{out}");
    let bad = write(dir.path(), "bad.code", "0 9\n");
    assert_eq!(call(&["verify", &k33, "--code", &bad]).0, exit::USAGE);
}

#[test]
fn exit_codes_by_outcome() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let triangle = write(d, "k3.edges", "3 3\n0 1\n1 2\n0 2\n");
    let split = write(d, "split.edges", "6 4\n0 1\n1 2\n3 4\n4 5\n");
    let k2 = write(d, "k2.edges", "2 1\n0 1\n");
    let broken = write(d, "broken.edges", "3 2\n0 1\n2 1\n");
    let path = write(d, "p3.edges", "3 2\n0 1\n1 2\n");
    assert_eq!(call(&["construct", &triangle]).0, exit::NOT_TRIANGLE_FREE);
    assert_eq!(call(&["construct", &split]).0, exit::NOT_CONNECTED);
    assert_eq!(call(&["construct", &k2]).0, exit::NOT_IDENTIFIABLE);
    assert_eq!(call(&["exact", &k2]).0, exit::NOT_IDENTIFIABLE);
    let (status, _, err) = call(&["exact", &broken]);
    assert_eq!(status, exit::PARSE);
    assert!(err.contains("line 3"), "{err}");
    assert_eq!(call(&["near-construct", &path]).0, exit::USAGE);
    assert_eq!(call(&["random", "0"]).0, exit::USAGE);
    assert_eq!(call(&["construct", &path, "--seed", "1"]).0, exit::USAGE);
}

#[test]
fn near_construct_writes_deletion_data() {
    let dir = TempDir::new().unwrap();
    let net = write(dir.path(), "net.edges", "6 6\n0 1\n0 2\n0 3\n1 2\n1 4\n2 5\n");
    let (status, out, _) = call(&["near-construct", &net]);
    assert_eq!(status, exit::OK);
    let cert = Certificate::from_toml(&out).unwrap();
    assert_eq!(cert.triangle_deletion.unwrap().t, 1);
}

#[test]
fn random_round_trips_and_is_deterministic() {
    let (status, out, _) = call(&["random", "25", "--seed", "11", "--edges", "34"]);
    assert_eq!(status, exit::OK);
    assert_eq!(parse_edge_list(&out).unwrap(), random_triangle_free(25, 34, 11));
    assert_eq!(call(&["random", "25", "--seed", "11", "--edges", "34"]).1, out);
    assert_ne!(call(&["random", "25", "--seed", "12", "--edges", "34"]).1, out);
}

#[test]
fn family_all_writes_the_catalog() {
    let dir = TempDir::new().unwrap();
    let (status, out, _) = call(&["family", "all", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(status, exit::OK);
    assert_eq!(out.lines().count(), 15);
    assert!(out.contains("T11\tn=22\tm=21\tdelta=3\tgamma=15\n"));
    let t3 = fs::read_to_string(dir.path().join("T3.code")).unwrap();
    assert_eq!(t3.split_whitespace().count(), 7);
}

#[test]
fn report_slack_is_never_positive_on_small_graphs() {
    let dir = TempDir::new().unwrap();
    let mut outside = 0;
    for n in 4..=7 {
        for (i, g) in connected_triangle_free(n).into_iter().enumerate() {
            if g.max_degree() >= 3 && in_f_delta(&g, g.max_degree()).is_none() {
                fs::write(dir.path().join(format!("n{n}_{i:03}.edges")), write_edge_list(&g)).unwrap();
                outside += 1;
            }
        }
    }
    let csv_path = dir.path().join("out.csv");
    let (status, table, _) = call(&["report", dir.path().to_str().unwrap(), "--out", csv_path.to_str().unwrap()]);
    assert_eq!(status, exit::OK);
    assert_eq!(table.lines().count(), outside + 1);
    let mut reader = csv::Reader::from_path(&csv_path).unwrap();
    let headers = reader.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        [
            "file",
            "n",
            "m",
            "delta",
            "family",
            "t",
            "code_size",
            "bound_num",
            "bound_den",
            "slack",
            "gamma_exact",
            "status"
        ]
    );
    let mut files = Vec::new();
    for rec in reader.records() {
        let rec = rec.unwrap();
        let slack: i64 = rec[9].parse().unwrap();
        let gamma: usize = rec[10].parse().unwrap();
        let size: usize = rec[6].parse().unwrap();
        assert!(slack <= 0, "{rec:?}");
        assert!(gamma <= size);
        files.push(rec[0].to_string());
    }
    let mut sorted = files.clone();
    sorted.sort();
    assert_eq!(files, sorted);
}

#[test]
fn report_status_is_the_first_failure() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "a.edges", "4 3\n0 1\n1 2\n2 3\n");
    write(dir.path(), "b.edges", "2 1\n0 1\n");
    write(dir.path(), "c.edges", "3 x\n");
    let csv_path = dir.path().join("r.csv");
    let args = ["report", dir.path().to_str().unwrap(), "--out", csv_path.to_str().unwrap()];
    let (status, table, _) = call(&args);
    assert_eq!(status, exit::NOT_IDENTIFIABLE);
    assert!(table.contains("c.edges"));
    for _ in 0..3 {
        assert_eq!(call(&args), (status, table.clone(), String::new()));
    }
}

#[test]
fn binary_exit_status_matches_run() {
    let dir = TempDir::new().unwrap();
    let k3 = write(dir.path(), "k3.edges", "3 3\n0 1\n1 2\n0 2\n");
    let status = Command::new(env!("CARGO_BIN_EXE_idcode")).args(["construct", &k3]).status().unwrap();
    assert_eq!(status.code(), Some(exit::NOT_TRIANGLE_FREE));
    let out = Command::new(env!("CARGO_BIN_EXE_idcode")).args(["family", "P4"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("# P4 n=4 m=3 delta=3 gamma=3\n"));
}
