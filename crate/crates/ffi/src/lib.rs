//! C ABI over `hairpin-core`.
//!
//! Alphabets and verdicts are opaque handles owned by the caller and
//! released with their `_free` function. Strings returned by the library are
//! NUL-terminated UTF-8 owned by the caller and released with
//! `hp_string_free`. Every fallible call returns an [`HpStatus`]; on failure
//! `hp_last_error` describes the most recent error on the calling thread.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use hairpin::alphabet::compose_macrons;
use hairpin::{analyze, closure, decide, DecideOptions, Error, InvolutionAlphabet, Outcome, Primer, Sides, Verdict, Word};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Alphabet = 3,
    Parse = 4,
    BoundTooSmall = 5,
    Precondition = 6,
    VerificationFailed = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HpOutcome {
    Regular = 0,
    NonRegular = 2,
    Unknown = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HpSides {
    Left = 0,
    Right = 1,
    Both = 2,
}

/// Opaque involution alphabet.
pub struct HpAlphabet {
    inner: Arc<InvolutionAlphabet>,
    macrons: bool,
}

/// Opaque regularity verdict.
pub struct HpVerdict {
    inner: Verdict,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &Error) -> HpStatus {
    match e {
        Error::MalformedAlphabet { .. }
        | Error::DuplicateLetter(_)
        | Error::ConflictingComplement { .. }
        | Error::NotAnInvolution(_)
        | Error::EmptyAlphabet
        | Error::AlphabetMismatch => HpStatus::Alphabet,
        Error::UnknownLetter { .. } | Error::EmptyWord => HpStatus::Parse,
        Error::BoundTooSmall { .. } => HpStatus::BoundTooSmall,
        Error::VerificationFailed { .. } => HpStatus::VerificationFailed,
        _ => HpStatus::Precondition,
    }
}

fn fail(e: Error) -> HpStatus {
    set_error(e.to_string());
    status_of(&e)
}

// Runs `f`, converting panics into `HpStatus::Panic`.
fn guard(f: impl FnOnce() -> HpStatus) -> HpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            HpStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, HpStatus> {
    if p.is_null() {
        set_error("null pointer argument");
        return Err(HpStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        HpStatus::InvalidUtf8
    })
}

unsafe fn alphabet_ref<'a>(a: *const HpAlphabet) -> Result<&'a HpAlphabet, HpStatus> {
    a.as_ref().ok_or_else(|| {
        set_error("null alphabet handle");
        HpStatus::NullPointer
    })
}

fn parse_word(a: &HpAlphabet, text: &str) -> Result<Word, HpStatus> {
    let text = if a.macrons { compose_macrons(text) } else { text.to_owned() };
    Word::parse(&a.inner, &text).map_err(fail)
}

fn parse_primer(a: &HpAlphabet, text: &str) -> Result<Primer, HpStatus> {
    let text = if a.macrons { compose_macrons(text) } else { text.to_owned() };
    Primer::parse(&a.inner, &text).map_err(fail)
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> HpStatus {
    if out.is_null() {
        set_error("null output pointer");
        return HpStatus::NullPointer;
    }
    out.write(value);
    HpStatus::Ok
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

/// Message for the last failed call on this thread, or NULL. Owned by the
/// library and valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// The DNA alphabet A<->T, C<->G.
#[no_mangle]
pub extern "C" fn hp_alphabet_dna() -> *mut HpAlphabet {
    Box::into_raw(Box::new(HpAlphabet {
        inner: InvolutionAlphabet::dna(),
        macrons: false,
    }))
}

/// Letters a..z paired with their macron forms.
#[no_mangle]
pub extern "C" fn hp_alphabet_latin() -> *mut HpAlphabet {
    Box::into_raw(Box::new(HpAlphabet {
        inner: InvolutionAlphabet::latin(),
        macrons: true,
    }))
}

/// Parses an alphabet file (`letter<TAB>complement` per line).
#[no_mangle]
pub unsafe extern "C" fn hp_alphabet_parse(text: *const c_char, out: *mut *mut HpAlphabet) -> HpStatus {
    guard(|| {
        let text = tri!(read_str(text));
        let inner = tri!(InvolutionAlphabet::parse(text).map_err(fail));
        write_out(out, Box::into_raw(Box::new(HpAlphabet { inner, macrons: false })))
    })
}

#[no_mangle]
pub unsafe extern "C" fn hp_alphabet_free(alphabet: *mut HpAlphabet) {
    if !alphabet.is_null() {
        drop(Box::from_raw(alphabet));
    }
}

/// Decides regularity of the iterated completion of `word`. A regular
/// verdict is checked against the closure up to `verify_bound`, or up to
/// |word| + 6k + 16 when `verify_bound` is 0.
#[no_mangle]
pub unsafe extern "C" fn hp_decide(
    alphabet: *const HpAlphabet,
    word: *const c_char,
    primer: *const c_char,
    verify_bound: usize,
    out: *mut *mut HpVerdict,
) -> HpStatus {
    guard(|| {
        let a = tri!(alphabet_ref(alphabet));
        let w = tri!(parse_word(a, tri!(read_str(word))));
        let p = tri!(parse_primer(a, tri!(read_str(primer))));
        let options = DecideOptions {
            verify_bound: (verify_bound > 0).then_some(verify_bound),
            skip_verification: false,
        };
        let inner = tri!(decide(&w, &p, options).map_err(fail));
        write_out(out, Box::into_raw(Box::new(HpVerdict { inner })))
    })
}

/// Outcome of a verdict; `HP_OUTCOME_UNKNOWN` for a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn hp_verdict_outcome(verdict: *const HpVerdict) -> HpOutcome {
    match verdict.as_ref().map(|v| v.inner.outcome) {
        Some(Outcome::Regular) => HpOutcome::Regular,
        Some(Outcome::NonRegular) => HpOutcome::NonRegular,
        _ => HpOutcome::Unknown,
    }
}

/// Writes the (m, n) class of the decided word.
#[no_mangle]
pub unsafe extern "C" fn hp_verdict_class(verdict: *const HpVerdict, m: *mut usize, n: *mut usize) -> HpStatus {
    let Some(v) = verdict.as_ref() else {
        set_error("null verdict handle");
        return HpStatus::NullPointer;
    };
    tri!(match write_out(m, v.inner.class.m) {
        HpStatus::Ok => Ok(()),
        s => Err(s),
    });
    write_out(n, v.inner.class.n)
}

/// The verdict as JSON, including the automaton or witness. Free with
/// `hp_string_free`. NULL for a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn hp_verdict_json(verdict: *const HpVerdict) -> *mut c_char {
    verdict.as_ref().map_or(ptr::null_mut(), |v| into_c_string(v.inner.to_json().to_string()))
}

#[no_mangle]
pub unsafe extern "C" fn hp_verdict_free(verdict: *mut HpVerdict) {
    if !verdict.is_null() {
        drop(Box::from_raw(verdict));
    }
}

/// α-prefixes, ᾱ-suffixes and class of `word` as JSON.
#[no_mangle]
pub unsafe extern "C" fn hp_analyze_json(
    alphabet: *const HpAlphabet,
    word: *const c_char,
    primer: *const c_char,
    out: *mut *mut c_char,
) -> HpStatus {
    guard(|| {
        let a = tri!(alphabet_ref(alphabet));
        let w = tri!(parse_word(a, tri!(read_str(word))));
        let p = tri!(parse_primer(a, tri!(read_str(primer))));
        let analysis = tri!(analyze(&w, &p).map_err(fail));
        write_out(out, into_c_string(hairpin::cli::analysis_json(&analysis).to_string()))
    })
}

/// The closure members up to `bound`, sorted, as a JSON array of strings.
/// `count` (may be NULL) receives the number of members.
#[no_mangle]
pub unsafe extern "C" fn hp_closure_json(
    alphabet: *const HpAlphabet,
    word: *const c_char,
    primer: *const c_char,
    bound: usize,
    sides: HpSides,
    out: *mut *mut c_char,
    count: *mut usize,
) -> HpStatus {
    guard(|| {
        let a = tri!(alphabet_ref(alphabet));
        let w = tri!(parse_word(a, tri!(read_str(word))));
        let p = tri!(parse_primer(a, tri!(read_str(primer))));
        let sides = match sides {
            HpSides::Left => Sides::Left,
            HpSides::Right => Sides::Right,
            HpSides::Both => Sides::Both,
        };
        let result = tri!(closure(&w, &p, bound, sides).map_err(fail));
        let members: Vec<String> = result.sorted_members().iter().map(Word::to_string).collect();
        if !count.is_null() {
            count.write(members.len());
        }
        let json = serde_json::to_string(&members).expect("strings serialize");
        write_out(out, into_c_string(json))
    })
}

/// Releases a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn hp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
