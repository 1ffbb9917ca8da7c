//! C interface to treegram.
//!
//! Grammars live behind an opaque [`TgGrammar`] handle. Every fallible call
//! returns a [`TgStatus`]; on failure [`tg_last_error_message`] describes
//! the problem. Strings handed out by the library are owned by the caller
//! and released with [`tg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use treegram::derive::show_word;
use treegram::{
    bounded_string_language_with, check_weak_equiv_with, convert, parse_grammar, print_grammar,
    FormatError, Grammar, GrammarKind, StringOptions,
};

/// Opaque grammar handle.
pub struct TgGrammar(Grammar);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TgStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Input text was not UTF-8.
    InvalidUtf8 = 2,
    /// Grammar text is malformed.
    ParseError = 3,
    /// Grammar text is well formed but violates a grammar constraint.
    InvalidGrammar = 4,
    /// The grammar lies outside the class a conversion accepts.
    ConversionFailed = 5,
    /// A bound argument was zero where a positive value is needed.
    InvalidBound = 6,
    /// The library panicked; this is a bug.
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TgKind {
    Cfg = 0,
    Cftg = 1,
    Rtg = 2,
    Tag = 3,
}

impl From<GrammarKind> for TgKind {
    fn from(k: GrammarKind) -> Self {
        match k {
            GrammarKind::Cfg => TgKind::Cfg,
            GrammarKind::Cftg => TgKind::Cftg,
            GrammarKind::Rtg => TgKind::Rtg,
            GrammarKind::Tag => TgKind::Tag,
        }
    }
}

impl From<TgKind> for GrammarKind {
    fn from(k: TgKind) -> Self {
        match k {
            TgKind::Cfg => GrammarKind::Cfg,
            TgKind::Cftg => GrammarKind::Cftg,
            TgKind::Rtg => GrammarKind::Rtg,
            TgKind::Tag => GrammarKind::Tag,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<Vec<u8>>) {
    let mut bytes = msg.into();
    bytes.retain(|b| *b != 0);
    let msg = CString::new(bytes).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

struct Failure(TgStatus, String);

type Outcome = Result<(), Failure>;

/// Runs `f`, recording its error message and turning panics into
/// [`TgStatus::Internal`].
fn guard(f: impl FnOnce() -> Outcome) -> TgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            TgStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            TgStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(TgStatus::NullArgument, format!("{what} is null"))
}

unsafe fn grammar<'a>(g: *const TgGrammar, what: &str) -> Result<&'a Grammar, Failure> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| null(what))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

fn positive(n: usize, what: &str) -> Result<usize, Failure> {
    if n == 0 {
        Err(Failure(
            TgStatus::InvalidBound,
            format!("{what} must be positive"),
        ))
    } else {
        Ok(n)
    }
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s)
        .expect("grammar text has no nul bytes")
        .into_raw()
}

/// Parses and validates grammar text. On success `*out` owns a new handle.
///
/// # Safety
/// `src` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_grammar_parse(
    src: *const c_char,
    out: *mut *mut TgGrammar,
) -> TgStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        if src.is_null() {
            return Err(null("src"));
        }
        let text = CStr::from_ptr(src)
            .to_str()
            .map_err(|e| Failure(TgStatus::InvalidUtf8, e.to_string()))?;
        let g = parse_grammar(text).map_err(|e| match e {
            FormatError::Syntax(_) => Failure(TgStatus::ParseError, e.to_string()),
            FormatError::Invalid(_) => Failure(TgStatus::InvalidGrammar, e.to_string()),
        })?;
        *out = Box::into_raw(Box::new(TgGrammar(g)));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tg_grammar_free(g: *mut TgGrammar) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_grammar_kind(g: *const TgGrammar, out: *mut TgKind) -> TgStatus {
    guard(|| {
        let kind = grammar(g, "grammar")?.kind();
        *out_ptr(out, "out")? = kind.into();
        Ok(())
    })
}

/// Checks the grammar constraints again. Parsed grammars always pass.
///
/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tg_grammar_validate(g: *const TgGrammar) -> TgStatus {
    guard(|| {
        grammar(g, "grammar")?
            .validate()
            .map_err(|e| Failure(TgStatus::InvalidGrammar, e.to_string()))
    })
}

/// Converts `g` into the formalism `to`, chaining translations as needed.
/// On success `*out` owns a new handle.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_grammar_convert(
    g: *const TgGrammar,
    to: TgKind,
    out: *mut *mut TgGrammar,
) -> TgStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let t = convert(grammar(g, "grammar")?, to.into(), false)
            .map_err(|e| Failure(TgStatus::ConversionFailed, e.to_string()))?;
        *out = Box::into_raw(Box::new(TgGrammar(t.grammar)));
        Ok(())
    })
}

/// Grammar text in the file format. Free the result with [`tg_string_free`].
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_grammar_to_string(
    g: *const TgGrammar,
    out: *mut *mut c_char,
) -> TgStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        *out = c_string(print_grammar(grammar(g, "grammar")?));
        Ok(())
    })
}

/// Strings of length at most `max_len`, one per line in canonical order, the
/// empty string shown as `<eps>`. `*complete` tells whether no bound cut the
/// enumeration short. Free the result with [`tg_string_free`].
///
/// # Safety
/// `g` must be a live handle; `out` and `complete` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn tg_enumerate_strings(
    g: *const TgGrammar,
    max_len: usize,
    out: *mut *mut c_char,
    complete: *mut bool,
) -> TgStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let complete = out_ptr(complete, "complete")?;
        let lang =
            bounded_string_language_with(grammar(g, "grammar")?, &StringOptions::new(max_len));
        *complete = lang.is_complete();
        *out = c_string(lang.iter().map(|w| show_word(w) + "\n").collect());
        Ok(())
    })
}

/// Compares the string languages of two grammars up to `max_len`. Both
/// flags are written on success; `*complete` is false when either side was
/// cut short by a bound.
///
/// # Safety
/// `left` and `right` must be live handles; `equal` and `complete` valid
/// pointers.
#[no_mangle]
pub unsafe extern "C" fn tg_check_weak_equiv(
    left: *const TgGrammar,
    right: *const TgGrammar,
    max_len: usize,
    equal: *mut bool,
    complete: *mut bool,
) -> TgStatus {
    guard(|| {
        let (l, r) = (grammar(left, "left")?, grammar(right, "right")?);
        let equal = out_ptr(equal, "equal")?;
        let complete = out_ptr(complete, "complete")?;
        let max_len = positive(max_len, "max_len")?;
        let report = check_weak_equiv_with(l, r, &StringOptions::new(max_len));
        *equal = report.equal;
        *complete = report.left_complete && report.right_complete;
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, empty after a success.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn tg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
