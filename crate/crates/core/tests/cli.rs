use std::process::Command;

use hairpin::cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["hairpin"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = call(args);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}")))
}

#[test]
fn decide_exit_codes() {
    let (code, v) = json(&["decide", "abacaād̄ā", "--primer", "a"]);
    assert_eq!(code, 2);
    assert_eq!(v["outcome"], "non_regular");
    assert_eq!(v["conditions"], serde_json::json!([false, false, false]));
    assert!(v["witness"]["samples"][0].is_string());

    let (code, v) = json(&["decide", "abaā", "--primer", "a"]);
    assert_eq!(code, 0);
    assert_eq!(v["class"]["m"], 2);
    assert!(v["automaton_ref"]["transitions"].is_array());

    let (code, v) = json(&["decide", "abacadaād̄ā", "--primer", "a"]);
    assert_eq!(code, 3);
    assert_eq!(v["outcome"], "unknown");
}

#[test]
fn verify_and_closure() {
    let (code, v) = json(&["verify", "abaā", "--primer", "a", "--bound", "18"]);
    assert_eq!(code, 0);
    assert_eq!(v["equal"], true);
    assert_eq!(v["closure_count"], 29);

    let (code, out, _) = call(&["closure", "aā", "--primer", "a"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().collect::<Vec<_>>(), ["aā"]);

    let (_, out, _) = call(&["closure", "abaā", "--primer", "a", "--bound", "10"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "abaā");
    let latin = hairpin::InvolutionAlphabet::latin();
    let words: Vec<hairpin::Word> = lines.iter().map(|l| hairpin::Word::parse(&latin, l).unwrap()).collect();
    assert!(words.windows(2).all(|p| p[0] < p[1]));
    assert_eq!(lines.len(), 7);

    let (_, out, _) = call(&["closure", "abaā", "--primer", "a", "--bound", "10", "--trace", "ababaāb̄ā"]);
    let dirs: Vec<&str> = out.lines().map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(dirs, ["right", "left"]);
}

#[test]
fn analyze_step_and_build() {
    let (code, v) = json(&["analyze", "abacaād̄ā", "--primer", "a"]);
    assert_eq!(code, 0);
    assert_eq!(v["u"], serde_json::json!(["λ", "ab", "abac"]));
    assert_eq!(v["v"], serde_json::json!(["λ", "ad"]));
    assert_eq!(v["non_crossing"], true);

    let (_, v) = json(&["step", "abaā", "--primer", "a", "--format", "json"]);
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["child"], "abaāb̄ā");

    let (code, out, _) = call(&["build", "abaāc̄ā", "--primer", "a"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph"));

    let (code, out, _) = call(&["build", "abacaād̄ā", "--primer", "a"]);
    assert_eq!(code, 2);
    assert!(out.contains("no automaton"));

    let (code, v) = json(&["build", "abaā", "--primer", "a", "--side", "right", "--format", "json"]);
    assert_eq!(code, 0);
    assert!(v["states"].as_array().unwrap().len() >= 2);
}

#[test]
fn witness_report() {
    let (code, v) = json(&["witness", "abacaād̄ā", "--primer", "a", "--i-max", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["exact"], true);
    assert_eq!(v["family"].as_array().unwrap().len(), 2);

    let (code, _, err) = call(&["witness", "abadaād̄ā", "--primer", "a"]);
    assert_eq!(code, 1);
    assert!(err.contains("condition 3"));
}

#[test]
fn alphabets_and_errors() {
    let dir = std::env::temp_dir().join(format!("hairpin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("ascii.txt");
    std::fs::write(&file, "a\ta'\nb\tb'\n").unwrap();
    let path = file.to_str().unwrap();
    let (code, out, _) = call(&["closure", "abaa'", "--alphabet", path, "--primer", "a", "--bound", "8"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().collect::<Vec<_>>(), ["abaa'", "abaa'b'a'", "abaa'b'a'b'a'", "ababaa'b'a'"]);

    let (code, out, _) = call(&["step", "ACGT", "--dna", "--primer", "A"]);
    assert_eq!(code, 0);
    assert!(out.is_empty() || out == "\n");

    // combining-macron spelling of ā
    let (code, _) = json(&["decide", "aba\u{304}", "--primer", "a"]);
    assert_eq!(code, 0);

    assert_eq!(call(&["decide", "abaā"]).0, 64);
    assert_eq!(call(&["frobnicate"]).0, 64);
    assert_eq!(call(&["decide", "abzq", "--dna", "--primer", "A"]).0, 1);
    assert_eq!(call(&["closure", "abaā", "--primer", "a", "--bound", "2"]).0, 1);
    assert_eq!(call(&["--help"]).0, 0);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn binary_reports_exit_status() {
    let status = Command::new(env!("CARGO_BIN_EXE_hairpin"))
        .args(["decide", "abacaād̄ā", "--primer", "a", "--format", "text"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&status.stdout).contains("non_regular"));
}
