use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use actw_core::{redundancy_curve, synthetic};

fn actw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_actw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn round_trip_with_preset() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.txt");
    let packed = dir.path().join("in.actw");
    let restored = dir.path().join("out.txt");
    let data = synthetic::text_like(30_000, 3);
    fs::write(&input, &data).unwrap();

    let out = actw(&["compress", "-i", path(&input), "-o", path(&packed), "--preset", "actw1", "--depth", "12"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = actw(&["decompress", "-i", path(&packed), "-o", path(&restored)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    assert_eq!(fs::read(&restored).unwrap(), data);
    assert!(fs::metadata(&packed).unwrap().len() < data.len() as u64);
}

#[test]
fn raw_flags_override_preset() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.bin");
    fs::write(&input, synthetic::repetitive(5_000, 1)).unwrap();
    let a = dir.path().join("a.actw");
    let b = dir.path().join("b.actw");
    assert!(actw(&["compress", "-i", path(&input), "-o", path(&a), "--preset", "actw2", "--alpha", "0.5"]).status.success());
    assert!(actw(&["compress", "-i", path(&input), "-o", path(&b), "--preset", "actw3"]).status.success());
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
}

#[test]
fn out_of_range_gamma_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.txt");
    let output = dir.path().join("out.actw");
    fs::write(&input, b"hello").unwrap();

    let out = actw(&["compress", "-i", path(&input), "-o", path(&output), "--variant", "fixed-rate", "--gamma", "1.5"]);
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(stderr.lines().count(), 1, "{stderr}");
    assert!(!output.exists());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1, "no stray temp files");
}

#[test]
fn error_classes_have_distinct_codes() {
    let dir = tempfile::tempdir().unwrap();
    let garbage = dir.path().join("garbage");
    fs::write(&garbage, b"not a container at all, just text").unwrap();
    let output = dir.path().join("out");

    assert_eq!(actw(&["compress", "--no-such-flag"]).status.code(), Some(2));
    let missing = dir.path().join("missing");
    assert_eq!(actw(&["compress", "-i", path(&missing), "-o", path(&output)]).status.code(), Some(4));
    assert_eq!(actw(&["decompress", "-i", path(&garbage), "-o", path(&output)]).status.code(), Some(5));
    assert!(!output.exists());
}

#[test]
fn help_lists_presets() {
    let out = actw(&["--help"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for line in ["actw1: fixed-rate(gamma=0.01)", "actw2: partial-visit(c=0.1,alpha=0.33)", "actw5: leaf-visit(c=0.1,alpha=0.33)"] {
        assert!(text.contains(line), "missing {line}");
    }
}

#[test]
fn redundancy_csv_matches_library() {
    let out = actw(&["analyze", "--redundancy", "--theta", "0.2", "--kmax", "50"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,theta,R"));
    let expected = redundancy_curve(0.2, 50).unwrap();
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), expected.len());
    for (row, (k, r)) in rows.iter().zip(expected) {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[0].parse::<u64>().unwrap(), k);
        let parsed: f64 = fields[2].parse().unwrap();
        assert!((parsed - r).abs() <= 1e-11 * r.abs().max(1e-300), "k={k}");
    }
}

#[test]
fn bench_is_reproducible_without_timings() {
    let corpus = tempfile::tempdir().unwrap();
    fs::write(corpus.path().join("a.txt"), synthetic::text_like(4_000, 1)).unwrap();
    fs::write(corpus.path().join("b.bin"), synthetic::random(2_000, 2)).unwrap();
    let manifest = corpus.path().join("sets.manifest");
    fs::write(&manifest, "[ab]\na.txt\nb.bin\n").unwrap();
    let args = [
        "bench", "-i", path(corpus.path()), "--manifest", path(&manifest),
        "--preset", "ctw,actw2", "--depth", "8", "--no-timings", "--jobs", "2",
    ];
    let first = actw(&args);
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    let second = actw(&args);
    assert_eq!(first.stdout, second.stdout);
    let csv = String::from_utf8(first.stdout).unwrap();
    // The manifest itself is a regular file of the corpus directory.
    assert_eq!(csv.lines().count(), 1 + 4 * 2);
    assert!(csv.contains("merge:ab,actw2,6000,"));
}
