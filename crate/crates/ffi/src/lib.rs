//! C ABI for `fibquasi`.
//!
//! Words and word sets cross the boundary as opaque handles. Every fallible
//! function returns an [`FqStatus`]; on failure a message is available from
//! [`fq_last_error_message`] on the same thread. Strings returned to the
//! caller are freed with [`fq_string_free`], handles with their own `_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fibquasi::closed_form::{enumerate, Category};
use fibquasi::fib::{fib_len, fib_occurrences_any, fib_word, Limits};
use fibquasi::quasi::{
    circular_covers_of, covers_of, is_seed_fast, left_seeds_of, right_seeds_of, seeds_of,
    CircularUniverse, EngineOptions,
};
use fibquasi::verify::check_category;
use fibquasi::word::{borders, is_cover, period_of};
use fibquasi::{Error, Word, WordSet};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidLetter = 3,
    EmptyInput = 4,
    Domain = 5,
    MaterializationGuard = 6,
    SizeRefused = 7,
    CapExceeded = 8,
    Budget = 9,
    IndexOutOfRange = 10,
    Internal = 11,
    Panic = 12,
}

/// Values accepted wherever a `category` argument is taken.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FqCategory {
    Borders = 0,
    Covers = 1,
    LeftSeeds = 2,
    RightSeeds = 3,
    Seeds = 4,
    CircularCovers = 5,
}

/// A word over `{a, b}`.
pub struct FqWord(Word);

/// A set of words in canonical (length, then lexicographic) order.
pub struct FqWordSet(Vec<Word>);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> FqStatus {
    match e {
        Error::InvalidLetter { .. } => FqStatus::InvalidLetter,
        Error::EmptyPattern | Error::EmptyInput => FqStatus::EmptyInput,
        Error::MaterializationGuard { .. } => FqStatus::MaterializationGuard,
        Error::SizeRefused { .. } => FqStatus::SizeRefused,
        Error::CapExceeded { .. } => FqStatus::CapExceeded,
        Error::Budget { .. } => FqStatus::Budget,
        Error::Internal(_) => FqStatus::Internal,
        Error::OverlapRange { .. }
        | Error::OverlapMismatch { .. }
        | Error::LengthOverflow(_)
        | Error::Domain(_)
        | Error::NotAFactor(_)
        | Error::Config(_) => FqStatus::Domain,
    }
}

struct Failure(FqStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(FqStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status and a message.
fn guarded(f: impl FnOnce() -> Result<(), Failure>) -> FqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            FqStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside fibquasi");
            FqStatus::Panic
        }
    }
}

unsafe fn word_ref<'a>(p: *const FqWord, what: &str) -> Result<&'a Word, Failure> {
    p.as_ref().map(|w| &w.0).ok_or_else(|| null(what))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

fn category(raw: u32) -> Result<Category, Failure> {
    Category::ALL
        .get(raw as usize)
        .copied()
        .ok_or_else(|| Failure(FqStatus::Domain, format!("unknown category {raw}")))
}

fn limits() -> Result<Limits, Failure> {
    Ok(Limits::from_env()?)
}

fn to_c_string(s: &str) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next `fq_` call on this thread.
#[no_mangle]
pub extern "C" fn fq_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn fq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library. Accepts null.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a NUL-terminated string over `{a, b}`. The empty string gives the
/// empty word.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fq_word_parse(text: *const c_char, out: *mut *mut FqWord) -> FqStatus {
    guarded(|| {
        let out = out_ref(out, "out")?;
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Failure(FqStatus::InvalidUtf8, e.to_string()))?;
        *out = Box::into_raw(Box::new(FqWord(Word::parse(s)?)));
        Ok(())
    })
}

/// `F_n`, subject to the materialization limit (`FIBQUASI_NMAX`, default 30).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fq_fib_word(n: u32, out: *mut *mut FqWord) -> FqStatus {
    guarded(|| {
        let out = out_ref(out, "out")?;
        let w = fib_word(n, &limits()?)?.into_word();
        *out = Box::into_raw(Box::new(FqWord(w)));
        Ok(())
    })
}

/// `|F_n|` for `n <= 90`, without building the word.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fq_fib_len(n: u32, out: *mut u64) -> FqStatus {
    guarded(|| {
        *out_ref(out, "out")? = fib_len(n)?;
        Ok(())
    })
}

/// # Safety
/// `w` must be null or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fq_word_free(w: *mut FqWord) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Length of `w`; 0 for null.
///
/// # Safety
/// `w` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fq_word_len(w: *const FqWord) -> usize {
    w.as_ref().map_or(0, |w| w.0.len())
}

/// The word as a newly allocated C string, or null if `w` is null.
///
/// # Safety
/// `w` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fq_word_to_string(w: *const FqWord) -> *mut c_char {
    w.as_ref()
        .map_or(ptr::null_mut(), |w| to_c_string(w.0.as_str()))
}

/// Smallest period of `y`.
///
/// # Safety
/// `y` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fq_period(y: *const FqWord, out: *mut usize) -> FqStatus {
    guarded(|| {
        let y = word_ref(y, "y")?;
        *out_ref(out, "out")? = period_of(y)?;
        Ok(())
    })
}

/// Whether `u` covers `y`.
///
/// # Safety
/// `u`, `y` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fq_is_cover(
    u: *const FqWord,
    y: *const FqWord,
    out: *mut bool,
) -> FqStatus {
    guarded(|| {
        let (u, y) = (word_ref(u, "u")?, word_ref(y, "y")?);
        *out_ref(out, "out")? = is_cover(u, y)?;
        Ok(())
    })
}

/// Whether the factor `u` of `y` is a seed of `y`.
///
/// # Safety
/// `u`, `y` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fq_is_seed(
    u: *const FqWord,
    y: *const FqWord,
    out: *mut bool,
) -> FqStatus {
    guarded(|| {
        let (u, y) = (word_ref(u, "u")?, word_ref(y, "y")?);
        *out_ref(out, "out")? = is_seed_fast(u, y)?;
        Ok(())
    })
}

/// The set of `category` (an [`FqCategory`] value) computed directly on `y`.
/// Seeds and circular covers refuse words over 2000 letters unless `force`.
///
/// # Safety
/// `y` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fq_analyze(
    y: *const FqWord,
    category: u32,
    force: bool,
    out: *mut *mut FqWordSet,
) -> FqStatus {
    guarded(|| {
        let y = word_ref(y, "y")?;
        let out = out_ref(out, "out")?;
        let opts = EngineOptions { force };
        let set: WordSet = match self::category(category)? {
            Category::Borders => borders(y)?,
            Category::Covers => covers_of(y)?,
            Category::LeftSeeds => left_seeds_of(y)?,
            Category::RightSeeds => right_seeds_of(y)?,
            Category::Seeds => seeds_of(y, opts)?,
            Category::CircularCovers => circular_covers_of(y, CircularUniverse::Linear, opts)?,
        };
        *out = Box::into_raw(Box::new(FqWordSet(set.into_iter().collect())));
        Ok(())
    })
}

/// The closed-form set of `category` for `F_n`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fq_enumerate(n: u32, category: u32, out: *mut *mut FqWordSet) -> FqStatus {
    guarded(|| {
        let out = out_ref(out, "out")?;
        let r = enumerate(self::category(category)?, n, &limits()?)?;
        *out = Box::into_raw(Box::new(FqWordSet(r.materialized.into_iter().collect())));
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fq_wordset_free(s: *mut FqWordSet) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of words in `s`; 0 for null.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fq_wordset_len(s: *const FqWordSet) -> usize {
    s.as_ref().map_or(0, |s| s.0.len())
}

/// A copy of the `index`-th word of `s` in canonical order.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fq_wordset_get(
    s: *const FqWordSet,
    index: usize,
    out: *mut *mut FqWord,
) -> FqStatus {
    guarded(|| {
        let s = s.as_ref().ok_or_else(|| null("set"))?;
        let out = out_ref(out, "out")?;
        let w = s.0.get(index).ok_or_else(|| {
            Failure(
                FqStatus::IndexOutOfRange,
                format!("index {index} out of range for a set of {}", s.0.len()),
            )
        })?;
        *out = Box::into_raw(Box::new(FqWord(w.clone())));
        Ok(())
    })
}

/// The set as a JSON array of strings, or null if `s` is null.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fq_wordset_to_json(s: *const FqWordSet) -> *mut c_char {
    s.as_ref().map_or(ptr::null_mut(), |s| {
        to_c_string(&serde_json::to_string(&s.0).expect("words serialize"))
    })
}

/// Start positions (1-based) of `F_m` in `F_n`. Writes at most `capacity`
/// positions to `buf` and the total number to `count`; call with
/// `capacity = 0` to size the buffer.
///
/// # Safety
/// `buf` must hold `capacity` elements (it may be null when `capacity` is 0)
/// and `count` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fq_fib_occurrences(
    n: u32,
    m: u32,
    buf: *mut usize,
    capacity: usize,
    count: *mut usize,
) -> FqStatus {
    guarded(|| {
        let count = out_ref(count, "count")?;
        let positions = fib_occurrences_any(n, m, &limits()?)?;
        *count = positions.len();
        if capacity > 0 {
            if buf.is_null() {
                return Err(null("buf"));
            }
            let dst = std::slice::from_raw_parts_mut(buf, capacity);
            for (d, p) in dst.iter_mut().zip(positions.iter()) {
                *d = p;
            }
        }
        Ok(())
    })
}

/// Compares the closed form with the oracle at `(n, category)` and returns
/// the report as a JSON string in `out_json`; `passed` receives the verdict.
///
/// # Safety
/// `out_json` and `passed` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn fq_check_category(
    n: u32,
    category: u32,
    passed: *mut bool,
    out_json: *mut *mut c_char,
) -> FqStatus {
    guarded(|| {
        let passed = out_ref(passed, "passed")?;
        let out_json = out_ref(out_json, "out_json")?;
        let report = check_category(n, self::category(category)?)?;
        *passed = report.passed;
        *out_json = to_c_string(&serde_json::to_string(&report).expect("report serializes"));
        Ok(())
    })
}
