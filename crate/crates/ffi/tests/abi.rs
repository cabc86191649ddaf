use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use hairpin_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    hp_string_free(s);
    out
}

#[test]
fn decide_through_handles() {
    unsafe {
        let alpha = hp_alphabet_latin();
        let mut verdict = ptr::null_mut();
        let status = hp_decide(alpha, c("abacaād̄ā").as_ptr(), c("a").as_ptr(), 0, &mut verdict);
        assert_eq!(status, HpStatus::Ok);
        assert_eq!(hp_verdict_outcome(verdict), HpOutcome::NonRegular);
        let (mut m, mut n) = (0usize, 0usize);
        assert_eq!(hp_verdict_class(verdict, &mut m, &mut n), HpStatus::Ok);
        assert_eq!((m, n), (3, 2));
        let json: serde_json::Value = serde_json::from_str(&take(hp_verdict_json(verdict))).unwrap();
        assert_eq!(json["outcome"], "non_regular");
        hp_verdict_free(verdict);

        let mut verdict = ptr::null_mut();
        assert_eq!(hp_decide(alpha, c("abaā").as_ptr(), c("a").as_ptr(), 18, &mut verdict), HpStatus::Ok);
        assert_eq!(hp_verdict_outcome(verdict), HpOutcome::Regular);
        hp_verdict_free(verdict);
        hp_alphabet_free(alpha);
    }
}

#[test]
fn closure_and_analysis_json() {
    unsafe {
        let mut alpha = ptr::null_mut();
        assert_eq!(hp_alphabet_parse(c("a\ta'\nb\tb'\n").as_ptr(), &mut alpha), HpStatus::Ok);
        let mut out = ptr::null_mut();
        let mut count = 0usize;
        let status = hp_closure_json(alpha, c("abaa'").as_ptr(), c("a").as_ptr(), 8, HpSides::Right, &mut out, &mut count);
        assert_eq!(status, HpStatus::Ok);
        assert_eq!(count, 3);
        let members: Vec<String> = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(members, ["abaa'", "abaa'b'a'", "abaa'b'a'b'a'"]);

        let mut out = ptr::null_mut();
        assert_eq!(hp_analyze_json(alpha, c("abaa'").as_ptr(), c("a").as_ptr(), &mut out), HpStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(report["m"], 2);
        hp_alphabet_free(alpha);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let alpha = hp_alphabet_dna();
        let mut verdict = ptr::null_mut();
        let status = hp_decide(alpha, c("ACXT").as_ptr(), c("A").as_ptr(), 0, &mut verdict);
        assert_eq!(status, HpStatus::Parse);
        assert!(verdict.is_null());
        let msg = CStr::from_ptr(hp_last_error()).to_str().unwrap();
        assert!(msg.contains("X"), "{msg}");

        let mut out = ptr::null_mut();
        let status = hp_closure_json(alpha, c("ACGT").as_ptr(), c("A").as_ptr(), 2, HpSides::Both, &mut out, ptr::null_mut());
        assert_eq!(status, HpStatus::BoundTooSmall);

        assert_eq!(hp_decide(ptr::null(), c("A").as_ptr(), c("A").as_ptr(), 0, &mut verdict), HpStatus::NullPointer);
        let mut bad = ptr::null_mut();
        assert_eq!(hp_alphabet_parse(c("a\tb\na\tc\n").as_ptr(), &mut bad), HpStatus::Alphabet);
        assert_eq!(hp_verdict_outcome(ptr::null()), HpOutcome::Unknown);
        hp_alphabet_free(alpha);
        hp_alphabet_free(ptr::null_mut());
    }
}

#[test]
fn generated_header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/hairpin.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["hp_decide", "hp_verdict_free", "hp_string_free", "HP_STATUS_OK", "typedef struct HpAlphabet"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(probe) = Command::new("cc").arg("--version").output() else { return };
    if !probe.status.success() {
        return;
    }
    let dir = std::env::temp_dir().join(format!("hairpin-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("use_header.c");
    std::fs::write(
        &src,
        "#include \"hairpin.h\"\nint main(void) {\n  HpAlphabet *a = hp_alphabet_dna();\n  HpVerdict *v = 0;\n  HpStatus s = hp_decide(a, \"ACGT\", \"A\", 0, &v);\n  hp_verdict_free(v);\n  hp_alphabet_free(a);\n  return s == HP_STATUS_OK ? 0 : 1;\n}\n",
    )
    .unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(header.parent().unwrap())
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
    std::fs::remove_dir_all(dir).ok();
}
