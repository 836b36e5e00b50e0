//! C ABI over `fglab`.
//!
//! Objects cross the boundary as opaque heap handles (`FglabAlphabet`,
//! `FglabWord`, `FglabSubgroup`) released by their `_free` function.
//! Every fallible call returns an [`FglabStatus`] and writes results through
//! out-pointers; on failure the message is available from
//! [`fglab_last_error`] on the same thread. Strings returned to the caller
//! are owned by the caller and released with [`fglab_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use fglab::cli::OMEGA_N_LIMIT;
use fglab::{lcs_weight, omega, witness, Alphabet, Error, Index, LoadedSubgroup, SchreierSystem};
use fglab::{SubgroupDescription, Weight, Word};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FglabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    AlphabetMismatch = 5,
    NotInSubgroup = 6,
    InfiniteIndex = 7,
    Verification = 8,
    Io = 9,
    Panic = 10,
}

pub struct FglabAlphabet(Arc<Alphabet>);

pub struct FglabWord(Word);

pub struct FglabSubgroup {
    loaded: LoadedSubgroup,
    system: Option<SchreierSystem>,
}

/// Index value reported for subgroups of infinite index.
pub const FGLAB_INFINITE_INDEX: u64 = u64::MAX;

/// Weight value reported for the identity word.
pub const FGLAB_WEIGHT_IDENTITY: u64 = u64::MAX;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FglabStatus {
    match e {
        Error::Parse(_) | Error::UnknownGenerator(_) | Error::Json(_) => FglabStatus::Parse,
        Error::AlphabetMismatch => FglabStatus::AlphabetMismatch,
        Error::NotInSubgroup(_) => FglabStatus::NotInSubgroup,
        Error::InfiniteIndex => FglabStatus::InfiniteIndex,
        Error::Verification(_) => FglabStatus::Verification,
        Error::Io(_) => FglabStatus::Io,
        _ => FglabStatus::InvalidArgument,
    }
}

struct Fail(FglabStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> FglabStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            FglabStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            FglabStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(FglabStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(FglabStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn obj<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(FglabStatus::NullPointer, format!("{what} is null")))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(FglabStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Fail(FglabStatus::InvalidArgument, "string contains a nul byte".into()))
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library on this thread; do not free.
#[no_mangle]
pub extern "C" fn fglab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn fglab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version string (static; do not free).
#[no_mangle]
pub extern "C" fn fglab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds an alphabet from a comma-separated list such as `"x,y"`.
///
/// # Safety
/// `names` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fglab_alphabet_new(names: *const c_char, out: *mut *mut FglabAlphabet) -> FglabStatus {
    guard(|| {
        let a = Alphabet::from_list(str_arg(names, "names")?)?;
        put(out, Box::into_raw(Box::new(FglabAlphabet(a))))
    })
}

/// Number of generators.
///
/// # Safety
/// `alphabet` must be a live handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn fglab_alphabet_len(alphabet: *const FglabAlphabet) -> usize {
    alphabet.as_ref().map_or(0, |a| a.0.len())
}

/// # Safety
/// `alphabet` must come from [`fglab_alphabet_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn fglab_alphabet_free(alphabet: *mut FglabAlphabet) {
    if !alphabet.is_null() {
        drop(Box::from_raw(alphabet));
    }
}

/// Parses and freely reduces `text` over `alphabet`.
///
/// # Safety
/// Pointers must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fglab_word_parse(
    alphabet: *const FglabAlphabet,
    text: *const c_char,
    out: *mut *mut FglabWord,
) -> FglabStatus {
    guard(|| {
        let a = obj(alphabet, "alphabet")?;
        let w = Word::parse(str_arg(text, "text")?, &a.0)?;
        put(out, Box::into_raw(Box::new(FglabWord(w))))
    })
}

/// The left-normed commutator `[x, y, x, …, x]` with `n` trailing `x`,
/// over the alphabet `x, y`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fglab_word_omega(n: usize, out: *mut *mut FglabWord) -> FglabStatus {
    guard(|| {
        if n as u64 > OMEGA_N_LIMIT {
            return Err(Fail(
                FglabStatus::InvalidArgument,
                format!("n = {n} exceeds {OMEGA_N_LIMIT}"),
            ));
        }
        put(out, Box::into_raw(Box::new(FglabWord(omega(n)))))
    })
}

/// Canonical text of `word`; free with [`fglab_string_free`].
///
/// # Safety
/// `word` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fglab_word_to_string(word: *const FglabWord, out: *mut *mut c_char) -> FglabStatus {
    guard(|| {
        let w = obj(word, "word")?;
        put(out, owned_string(w.0.to_string())?)
    })
}

/// Reduced length, or 0 for null.
///
/// # Safety
/// `word` must be live or null.
#[no_mangle]
pub unsafe extern "C" fn fglab_word_len(word: *const FglabWord) -> usize {
    word.as_ref().map_or(0, |w| w.0.len())
}

/// Reduced product `a b`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fglab_word_multiply(
    a: *const FglabWord,
    b: *const FglabWord,
    out: *mut *mut FglabWord,
) -> FglabStatus {
    guard(|| {
        let w = obj(a, "a")?.0.multiply(&obj(b, "b")?.0)?;
        put(out, Box::into_raw(Box::new(FglabWord(w))))
    })
}

/// # Safety
/// `word` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fglab_word_inverse(word: *const FglabWord, out: *mut *mut FglabWord) -> FglabStatus {
    guard(|| {
        let w = obj(word, "word")?.0.inverse();
        put(out, Box::into_raw(Box::new(FglabWord(w))))
    })
}

/// `a b a⁻¹ b⁻¹`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fglab_word_commutator(
    a: *const FglabWord,
    b: *const FglabWord,
    out: *mut *mut FglabWord,
) -> FglabStatus {
    guard(|| {
        let w = obj(a, "a")?.0.commutator(&obj(b, "b")?.0)?;
        put(out, Box::into_raw(Box::new(FglabWord(w))))
    })
}

/// # Safety
/// `word` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn fglab_word_free(word: *mut FglabWord) {
    if !word.is_null() {
        drop(Box::from_raw(word));
    }
}

/// Lower central series weight of `word` with the expansion truncated at
/// `cap`. Writes the exact weight and `exact = true`, or `cap + 1` and
/// `exact = false` when the expansion vanished through `cap`; the identity
/// gives [`FGLAB_WEIGHT_IDENTITY`].
///
/// # Safety
/// `word` must be live; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn fglab_lcs_weight(
    word: *const FglabWord,
    cap: usize,
    weight: *mut u64,
    exact: *mut bool,
) -> FglabStatus {
    guard(|| {
        let (value, is_exact) = match lcs_weight(&obj(word, "word")?.0, cap)? {
            Weight::Identity => (FGLAB_WEIGHT_IDENTITY, true),
            Weight::Exact(k) => (k as u64, true),
            Weight::AtLeast(k) => (k as u64, false),
        };
        put(weight, value)?;
        put(exact, is_exact)
    })
}

/// Loads a subgroup from its JSON description (`generators` or `kernel`).
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fglab_subgroup_from_json(json: *const c_char, out: *mut *mut FglabSubgroup) -> FglabStatus {
    guard(|| {
        let loaded = SubgroupDescription::from_json(str_arg(json, "json")?)?.build()?;
        let system = match loaded.graph.index() {
            Index::Finite(_) => Some(loaded.system()?),
            Index::Infinite => None,
        };
        put(out, Box::into_raw(Box::new(FglabSubgroup { loaded, system })))
    })
}

/// Index in the ambient free group, or [`FGLAB_INFINITE_INDEX`].
///
/// # Safety
/// `subgroup` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fglab_subgroup_index(subgroup: *const FglabSubgroup, out: *mut u64) -> FglabStatus {
    guard(|| {
        let value = match obj(subgroup, "subgroup")?.loaded.graph.index() {
            Index::Finite(n) => n,
            Index::Infinite => FGLAB_INFINITE_INDEX,
        };
        put(out, value)
    })
}

/// Normality test; finite index only.
///
/// # Safety
/// `subgroup` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fglab_subgroup_is_normal(subgroup: *const FglabSubgroup, out: *mut bool) -> FglabStatus {
    guard(|| put(out, obj(subgroup, "subgroup")?.loaded.graph.is_normal()?))
}

/// Parses `word` over the subgroup's alphabet and tests membership.
///
/// # Safety
/// Pointers must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fglab_subgroup_contains(
    subgroup: *const FglabSubgroup,
    word: *const c_char,
    out: *mut bool,
) -> FglabStatus {
    guard(|| {
        let s = obj(subgroup, "subgroup")?;
        let w = s.loaded.parse_word(str_arg(word, "word")?)?;
        put(out, s.loaded.graph.contains(&w)?)
    })
}

fn system(s: &FglabSubgroup) -> Result<&SchreierSystem, Fail> {
    s.system.as_ref().ok_or_else(|| Error::InfiniteIndex.into())
}

/// Rewrites a member in the Schreier basis; the text is written to `out` and
/// must be freed with [`fglab_string_free`].
///
/// # Safety
/// Pointers must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fglab_subgroup_rewrite(
    subgroup: *const FglabSubgroup,
    word: *const c_char,
    out: *mut *mut c_char,
) -> FglabStatus {
    guard(|| {
        let s = obj(subgroup, "subgroup")?;
        let w = s.loaded.parse_word(str_arg(word, "word")?)?;
        put(out, owned_string(system(s)?.rewrite(&w)?.to_string())?)
    })
}

/// Whether a member lies in the commutator subgroup of the subgroup.
///
/// # Safety
/// Pointers must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fglab_subgroup_in_derived(
    subgroup: *const FglabSubgroup,
    word: *const c_char,
    out: *mut bool,
) -> FglabStatus {
    guard(|| {
        let s = obj(subgroup, "subgroup")?;
        let w = s.loaded.parse_word(str_arg(word, "word")?)?;
        put(out, system(s)?.in_derived_subgroup(&w)?)
    })
}

/// # Safety
/// `subgroup` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn fglab_subgroup_free(subgroup: *mut FglabSubgroup) {
    if !subgroup.is_null() {
        drop(Box::from_raw(subgroup));
    }
}

/// Issues and self-verifies the witness certificate for the index-`d`
/// kernel and depth `m`, written to `out` as JSON. `cap = 0` selects the
/// default truncation `m`.
///
/// # Safety
/// `out` must be writable; free the result with [`fglab_string_free`].
#[no_mangle]
pub unsafe extern "C" fn fglab_witness_json(d: u64, m: usize, cap: usize, out: *mut *mut c_char) -> FglabStatus {
    guard(|| {
        let cert = witness(d, m, (cap != 0).then_some(cap))?;
        cert.verify()?;
        put(out, owned_string(cert.to_json())?)
    })
}

/// Re-checks a certificate produced by [`fglab_witness_json`] (or any
/// other source). `Ok` means every claim was re-derived.
///
/// # Safety
/// `json` must be a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn fglab_certificate_verify(json: *const c_char) -> FglabStatus {
    guard(|| Ok(fglab::WitnessCertificate::from_json(str_arg(json, "json")?)?.verify()?))
}
