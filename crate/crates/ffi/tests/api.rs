use std::ffi::{c_char, CStr, CString};
use std::ptr;

use treegram_ffi::*;

const ANBN_CFG: &str = "%kind cfg
%terminals a b
%nonterminals S
%start S
S -> a S b
S ->
";

const ANBN_CFTG: &str = "%kind cftg
%terminals a:1 b:1
%nonterminals S:0 F:1
%start S
S -> F(eps)
S -> eps
F(x1) -> a(F(b(x1)))
F(x1) -> a(b(x1))
";

fn parse(src: &str) -> *mut TgGrammar {
    let src = CString::new(src).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { tg_grammar_parse(src.as_ptr(), &mut g) },
        TgStatus::Ok
    );
    assert!(!g.is_null());
    g
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(tg_last_error_message()) }
        .to_str()
        .unwrap()
        .to_owned()
}

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { tg_string_free(s) };
    out
}

#[test]
fn parse_inspect_and_free() {
    let g = parse(ANBN_CFG);
    let mut kind = TgKind::Tag;
    assert_eq!(unsafe { tg_grammar_kind(g, &mut kind) }, TgStatus::Ok);
    assert_eq!(kind, TgKind::Cfg);
    assert_eq!(unsafe { tg_grammar_validate(g) }, TgStatus::Ok);
    assert_eq!(last_error(), "");
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { tg_grammar_to_string(g, &mut text) }, TgStatus::Ok);
    let text = take(text);
    assert!(text.starts_with("%kind cfg\n"), "{text}");
    // The printed form parses back to the same grammar text.
    let again = parse(&text);
    let mut text2 = ptr::null_mut();
    assert_eq!(
        unsafe { tg_grammar_to_string(again, &mut text2) },
        TgStatus::Ok
    );
    assert_eq!(take(text2), text);
    unsafe {
        tg_grammar_free(again);
        tg_grammar_free(g);
        tg_grammar_free(ptr::null_mut());
        tg_string_free(ptr::null_mut());
    }
}

#[test]
fn errors_have_codes_and_messages() {
    let mut g = ptr::null_mut();
    let bad =
        CString::new("%kind cftg\n%terminals a:0\n%nonterminals S\n%start S\nS -> a(\n").unwrap();
    assert_eq!(
        unsafe { tg_grammar_parse(bad.as_ptr(), &mut g) },
        TgStatus::ParseError
    );
    assert!(g.is_null());
    assert!(last_error().contains("5:"), "{}", last_error());

    let invalid =
        CString::new("%kind cftg\n%terminals a:0\n%nonterminals S F:1\n%start S\nF(x1) -> x2\n")
            .unwrap();
    assert_eq!(
        unsafe { tg_grammar_parse(invalid.as_ptr(), &mut g) },
        TgStatus::InvalidGrammar
    );
    assert!(last_error().contains("x2"), "{}", last_error());

    let not_utf8 = [b'%', 0xff, 0];
    assert_eq!(
        unsafe { tg_grammar_parse(not_utf8.as_ptr().cast(), &mut g) },
        TgStatus::InvalidUtf8
    );
    assert_eq!(
        unsafe { tg_grammar_parse(ptr::null(), &mut g) },
        TgStatus::NullArgument
    );
    assert_eq!(
        unsafe { tg_grammar_parse(bad.as_ptr(), ptr::null_mut()) },
        TgStatus::NullArgument
    );
    let mut kind = TgKind::Cfg;
    assert_eq!(
        unsafe { tg_grammar_kind(ptr::null(), &mut kind) },
        TgStatus::NullArgument
    );
    assert_eq!(last_error(), "grammar is null");
}

#[test]
fn enumerate_and_compare() {
    let cfg = parse(ANBN_CFG);
    let cftg = parse(ANBN_CFTG);
    let mut out = ptr::null_mut();
    let mut complete = false;
    assert_eq!(
        unsafe { tg_enumerate_strings(cftg, 6, &mut out, &mut complete) },
        TgStatus::Ok
    );
    assert_eq!(take(out), "<eps>\nab\naabb\naaabbb\n");
    assert!(complete);

    let (mut equal, mut complete) = (false, false);
    assert_eq!(
        unsafe { tg_check_weak_equiv(cfg, cftg, 10, &mut equal, &mut complete) },
        TgStatus::Ok
    );
    assert!(equal && complete);
    assert_eq!(
        unsafe { tg_check_weak_equiv(cfg, cftg, 0, &mut equal, &mut complete) },
        TgStatus::InvalidBound
    );
    unsafe {
        tg_grammar_free(cfg);
        tg_grammar_free(cftg);
    }
}

#[test]
fn convert_between_formalisms() {
    let cfg = parse(ANBN_CFG);
    let mut tag = ptr::null_mut();
    assert_eq!(
        unsafe { tg_grammar_convert(cfg, TgKind::Tag, &mut tag) },
        TgStatus::Ok
    );
    let mut kind = TgKind::Cfg;
    assert_eq!(unsafe { tg_grammar_kind(tag, &mut kind) }, TgStatus::Ok);
    assert_eq!(kind, TgKind::Tag);
    let (mut equal, mut complete) = (false, false);
    assert_eq!(
        unsafe { tg_check_weak_equiv(cfg, tag, 8, &mut equal, &mut complete) },
        TgStatus::Ok
    );
    assert!(equal && complete);

    // Counting four letters is beyond a context-free grammar.
    let tag_src = "%kind tag
%terminals a b c d
%nonterminals S
%start S
%initial S!(eps)
%auxiliary S(S*)
%auxiliary S(a, S!(b, S*, c), d)
";
    let counting = parse(tag_src);
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { tg_grammar_convert(counting, TgKind::Cfg, &mut out) },
        TgStatus::ConversionFailed
    );
    assert!(out.is_null());
    assert!(!last_error().is_empty());
    unsafe {
        tg_grammar_free(cfg);
        tg_grammar_free(tag);
        tg_grammar_free(counting);
    }
}
