use std::fs;

use actw_bench::{render, run_inputs, run_suite, synthetic, Format, Input, Manifest};
use actw_core::{compress, Preset};

#[test]
fn single_file_single_variant() {
    let corpus = tempfile::tempdir().unwrap();
    fs::write(corpus.path().join("only.txt"), synthetic::text_like(3_000, 5)).unwrap();
    let report = run_suite(corpus.path(), &Manifest::default(), &[Preset::Ctw.config(8)]).unwrap();
    assert_eq!(report.rows.len(), 1);
    let row = &report.rows[0];
    assert_eq!(row.name, "only.txt");
    assert_eq!(row.original_bytes, Some(3_000));
    assert!(row.cells[0].is_ok());
}

#[test]
fn missing_merge_file_fails_only_its_row() {
    let corpus = tempfile::tempdir().unwrap();
    fs::write(corpus.path().join("a"), b"abcabcabc").unwrap();
    let manifest = Manifest::parse("[broken]\na\nnot-there\n[fine]\na\na\n").unwrap();
    let variants = [Preset::Ctw.config(4), Preset::Actw1.config(4)];
    let report = run_suite(corpus.path(), &manifest, &variants).unwrap();

    assert_eq!(report.rows.len(), 3);
    let broken = report.row("broken").unwrap();
    assert!(broken.merge);
    assert_eq!(broken.original_bytes, None);
    for cell in &broken.cells {
        assert!(cell.as_ref().unwrap_err().contains("not-there"));
    }
    assert!(report.row("fine").unwrap().cells.iter().all(Result::is_ok));
    assert!(render(&report, Format::Csv).contains("failed: not-there"));
}

#[test]
fn merge_row_is_the_concatenation() {
    let corpus = tempfile::tempdir().unwrap();
    let first = synthetic::text_like(2_000, 1);
    let second = synthetic::repetitive(2_000, 2);
    fs::write(corpus.path().join("first"), &first).unwrap();
    fs::write(corpus.path().join("second"), &second).unwrap();
    let manifest = Manifest::parse("[both]\nsecond\nfirst\n").unwrap();
    let config = Preset::Actw2.config(10);
    let report = run_suite(corpus.path(), &manifest, &[config]).unwrap();

    let expected = compress(&[second, first].concat(), &config).unwrap().len() as u64;
    let cell = report.row("both").unwrap().cells[0].as_ref().unwrap();
    assert_eq!(cell.compressed_bytes, expected);
}

#[test]
fn csv_is_stable_across_runs() {
    let corpus = tempfile::tempdir().unwrap();
    fs::write(corpus.path().join("x"), synthetic::text_like(2_500, 9)).unwrap();
    fs::write(corpus.path().join("y"), synthetic::random(700, 9)).unwrap();
    let manifest = Manifest::parse("[xy]\nx\ny\n").unwrap();
    let variants: Vec<_> = Preset::ALL.iter().map(|p| p.config(6)).collect();
    let run = || {
        let report = run_suite(corpus.path(), &manifest, &variants).unwrap();
        render(&report.without_timings(), Format::Csv)
    };
    assert_eq!(run(), run());
}

// Three unrelated sources back to back: the adaptive estimators forget the
// earlier statistics, the stationary ones do not.
#[test]
fn adaptive_variant_wins_on_heterogeneous_merge() {
    let text = synthetic::text_like(16_000, 11);
    let noise = synthetic::random(4_000, 12);
    let log = synthetic::repetitive(16_000, 13);
    let inputs = [Input::merge("mixed", &[&text, &noise, &log])];
    let report = run_inputs(&inputs, &[Preset::Ctw.config(12), Preset::Actw2.config(12)]);
    let ctw = report.saving("mixed", 0).unwrap();
    let actw2 = report.saving("mixed", 1).unwrap();
    assert!(actw2 > ctw, "actw2 {actw2:.2}% vs ctw {ctw:.2}%");
}
