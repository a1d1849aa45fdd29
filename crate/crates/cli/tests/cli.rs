use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use cantor_core::{generate_corpus, Alphabet, CorpusSpec};

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn cantor(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cantor"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn cantor");
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

fn check_golden(args: &[&str], input: Option<&str>, expected: &str) {
    let stdin = input
        .map(|f| fs::read(golden(f)).unwrap())
        .unwrap_or_default();
    let out = cantor(args, &stdin);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        fs::read_to_string(golden(expected)).unwrap()
    );
}

#[test]
fn sort_golden() {
    check_golden(&["sort"], Some("sort_basic.in"), "sort_basic.out");
    check_golden(
        &["sort", "--verify"],
        Some("sort_empty.in"),
        "sort_empty.out",
    );
    let path = golden("sort_basic.in");
    check_golden(&["sort", path.to_str().unwrap()], None, "sort_basic.out");
}

#[test]
fn suffix_golden() {
    check_golden(&["suffix"], Some("suffix_banana.in"), "suffix_banana.out");
    check_golden(
        &["suffix", "--verify"],
        Some("suffix_single.in"),
        "suffix_single.out",
    );
}

#[test]
fn analyze_golden() {
    check_golden(&["analyze"], None, "analyze_default.out");
}

#[test]
fn analyze_epsilon() {
    let out = cantor(&["analyze", "--epsilon", "2"], b"");
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("radix x             28\n"));
    let out = cantor(&["analyze", "--epsilon", "1"], b"");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("x > zeta + 1"));
}

#[test]
fn analyze_json() {
    let out = cantor(&["analyze", "--format", "json"], b"");
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["x"], 30);
    assert_eq!(doc["max_chunk_len"], 8);
    assert_eq!(doc["min_gap"].as_array().unwrap().len(), 8);
}

#[test]
fn sort_large_word_list_verifies() {
    let words = generate_corpus(
        &CorpusSpec::random(10_000, 1, 20, 2024),
        &Alphabet::lowercase(),
    )
    .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("words.txt");
    fs::write(&path, words.join("\n") + "\n").unwrap();
    let out = cantor(&["sort", "--verify", path.to_str().unwrap()], b"");
    assert!(out.status.success());
    let mut expected = words.clone();
    expected.sort();
    let got: Vec<String> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    assert_eq!(got, expected);
}

#[test]
fn sort_bad_line_reports_line_number() {
    let out = cantor(&["sort"], b"ok\nfine\nNope\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 3"));
    let out = cantor(&["sort", "/definitely/missing/file"], b"");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sort_custom_alphabet_and_chunk_len() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("alpha.txt");
    fs::write(&path, "# reversed\nc\nb\na\n").unwrap();
    let out = cantor(
        &[
            "sort",
            "--verify",
            "--alphabet",
            path.to_str().unwrap(),
            "--chunk-len",
            "2",
        ],
        b"abc\ncab\nbca\nc\n",
    );
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "c\ncab\nbca\nabc\n");
    let out = cantor(&["sort", "--chunk-len", "99"], b"a\n");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sort_json_output() {
    let out = cantor(&["sort", "--format", "json"], b"b\nab\naa\n");
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["permutation"], serde_json::json!([2, 1, 0]));
    assert_eq!(doc["preprocess_symbols"], 5);
}

#[test]
fn suffix_run_of_one_symbol_verifies() {
    let out = cantor(
        &["suffix", "--verify", "--format", "json"],
        b"aaaaaaaaaaaaaaaa\n",
    );
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["fallback_count"].as_u64().unwrap() > 0);
    assert_eq!(doc["order"][0], 15);
}

fn strip_timings(json: &[u8]) -> String {
    let mut doc: serde_json::Value = serde_json::from_slice(json).unwrap();
    for record in doc["records"].as_array_mut().unwrap() {
        record["wall_time_ns"] = 0.into();
    }
    doc.to_string()
}

#[test]
fn bench_reproducible_and_complete() {
    let args = ["bench", "--n", "3000", "--seed", "17", "--format", "json"];
    let first = cantor(&args, b"");
    let second = cantor(&args, b"");
    assert!(first.status.success());
    assert_eq!(strip_timings(&first.stdout), strip_timings(&second.stdout));
    let doc: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    let names: Vec<&str> = doc["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["algorithm"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["cantor", "baseline"]);
}

#[test]
fn bench_empty_corpus_and_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("report.json");
    let out = cantor(
        &[
            "bench",
            "--n",
            "0",
            "--format",
            "json",
            "--output",
            json_path.to_str().unwrap(),
        ],
        b"",
    );
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(doc["strings"], 0);

    let out = cantor(
        &[
            "bench",
            "--n",
            "50",
            "--kind",
            "near-tie-adversarial",
            "--len-max",
            "8",
            "--algorithms",
            "cantor,splitwise:1,splitwise:4,baseline",
            "--format",
            "csv",
        ],
        b"",
    );
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 5);
    assert!(csv.lines().nth(2).unwrap().contains("splitwise:1"));

    let out = cantor(&["bench", "--algorithms", "quick"], b"");
    assert_eq!(out.status.code(), Some(2));
    let out = cantor(&["sort", "--format", "csv"], b"a\n");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_dictionary_kind() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dict.txt");
    fs::write(&path, "pear\napple\nfig\n").unwrap();
    let out = cantor(
        &[
            "bench",
            "--kind",
            "dictionary-file",
            "--dictionary",
            path.to_str().unwrap(),
            "--n",
            "0",
            "--format",
            "json",
        ],
        b"",
    );
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["strings"], 3);
    assert_eq!(doc["corpus"]["kind"], "dictionary-file");
}
