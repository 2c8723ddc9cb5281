use std::ffi::{CStr, CString};
use std::ptr;

use fibquasi_ffi::*;

fn parse(s: &str) -> *mut FqWord {
    let c = CString::new(s).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { fq_word_parse(c.as_ptr(), &mut out) }, FqStatus::Ok);
    out
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { fq_string_free(p) };
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(fq_last_error_message()) }
        .to_str()
        .unwrap()
        .to_owned()
}

fn set_words(set: *mut FqWordSet) -> Vec<String> {
    let n = unsafe { fq_wordset_len(set) };
    (0..n)
        .map(|i| {
            let mut w = ptr::null_mut();
            assert_eq!(unsafe { fq_wordset_get(set, i, &mut w) }, FqStatus::Ok);
            let s = take_string(unsafe { fq_word_to_string(w) });
            unsafe { fq_word_free(w) };
            s
        })
        .collect()
}

#[test]
fn words_round_trip() {
    let w = parse("abaab");
    assert_eq!(unsafe { fq_word_len(w) }, 5);
    assert_eq!(take_string(unsafe { fq_word_to_string(w) }), "abaab");
    let mut p = 0;
    assert_eq!(unsafe { fq_period(w, &mut p) }, FqStatus::Ok);
    assert_eq!(p, 3);
    unsafe { fq_word_free(w) };
}

#[test]
fn errors_carry_status_and_message() {
    let c = CString::new("abcab").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { fq_word_parse(c.as_ptr(), &mut out) },
        FqStatus::InvalidLetter
    );
    assert!(out.is_null());
    assert!(last_error().contains("'c'"));

    assert_eq!(
        unsafe { fq_word_parse(ptr::null(), &mut out) },
        FqStatus::NullPointer
    );
    assert_eq!(
        unsafe { fq_fib_word(31, &mut out) },
        FqStatus::MaterializationGuard
    );
    assert!(last_error().contains("N_max = 30"));

    let mut len = 0;
    assert_eq!(unsafe { fq_fib_len(91, &mut len) }, FqStatus::Domain);
    assert_eq!(unsafe { fq_fib_len(90, &mut len) }, FqStatus::Ok);
    assert_eq!(len, 4_660_046_610_375_530_309);
    assert!(last_error().is_empty());

    let mut set = ptr::null_mut();
    assert_eq!(unsafe { fq_enumerate(5, 17, &mut set) }, FqStatus::Domain);
}

#[test]
fn fibonacci_sets() {
    let mut f4 = ptr::null_mut();
    assert_eq!(unsafe { fq_fib_word(4, &mut f4) }, FqStatus::Ok);

    let mut seeds = ptr::null_mut();
    let cat = FqCategory::Seeds as u32;
    assert_eq!(
        unsafe { fq_analyze(f4, cat, false, &mut seeds) },
        FqStatus::Ok
    );
    assert!(set_words(seeds).contains(&"baa".to_owned()));

    let mut closed = ptr::null_mut();
    assert_eq!(unsafe { fq_enumerate(4, cat, &mut closed) }, FqStatus::Ok);
    assert_eq!(set_words(seeds), set_words(closed));

    let mut w = ptr::null_mut();
    let n = unsafe { fq_wordset_len(closed) };
    assert_eq!(
        unsafe { fq_wordset_get(closed, n, &mut w) },
        FqStatus::IndexOutOfRange
    );

    let mut circ = ptr::null_mut();
    assert_eq!(
        unsafe { fq_enumerate(4, FqCategory::CircularCovers as u32, &mut circ) },
        FqStatus::Ok
    );
    assert_eq!(
        take_string(unsafe { fq_wordset_to_json(circ) }),
        r#"["aba","abaab"]"#
    );

    unsafe {
        fq_wordset_free(seeds);
        fq_wordset_free(closed);
        fq_wordset_free(circ);
        fq_word_free(f4);
    }
}

#[test]
fn predicates() {
    let (u, y) = (parse("aba"), parse("abaababa"));
    let mut b = false;
    assert_eq!(unsafe { fq_is_cover(u, y, &mut b) }, FqStatus::Ok);
    assert!(b);
    let (baa, f4) = (parse("baa"), parse("abaab"));
    assert_eq!(unsafe { fq_is_seed(baa, f4, &mut b) }, FqStatus::Ok);
    assert!(b);
    let empty = parse("");
    assert_eq!(
        unsafe { fq_is_cover(empty, y, &mut b) },
        FqStatus::EmptyInput
    );

    let long = parse(&"ab".repeat(1100));
    let mut set = ptr::null_mut();
    let cat = FqCategory::Seeds as u32;
    assert_eq!(
        unsafe { fq_analyze(long, cat, false, &mut set) },
        FqStatus::SizeRefused
    );
    unsafe {
        fq_word_free(u);
        fq_word_free(y);
        fq_word_free(baa);
        fq_word_free(f4);
        fq_word_free(empty);
        fq_word_free(long);
    }
}

#[test]
fn occurrences_two_call_pattern() {
    let mut count = 0;
    assert_eq!(
        unsafe { fq_fib_occurrences(8, 4, ptr::null_mut(), 0, &mut count) },
        FqStatus::Ok
    );
    let mut buf = vec![0usize; count];
    assert_eq!(
        unsafe { fq_fib_occurrences(8, 4, buf.as_mut_ptr(), buf.len(), &mut count) },
        FqStatus::Ok
    );
    assert_eq!(buf.len(), count);
    assert_eq!(buf[0], 1);
    assert!(buf.windows(2).all(|p| p[0] < p[1]));
}

#[test]
fn category_report() {
    let mut passed = false;
    let mut json = ptr::null_mut();
    let cat = FqCategory::Covers as u32;
    assert_eq!(
        unsafe { fq_check_category(6, cat, &mut passed, &mut json) },
        FqStatus::Ok
    );
    assert!(passed);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(v["oracle_count"], 2);

    let cat = FqCategory::Seeds as u32;
    assert_eq!(
        unsafe { fq_check_category(11, cat, &mut passed, &mut json) },
        FqStatus::CapExceeded
    );
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(fq_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
