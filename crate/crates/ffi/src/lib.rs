//! C interface to `freenil`.
//!
//! Maps and decompositions cross the boundary as opaque handles; everything
//! else travels as NUL-terminated UTF-8 JSON in the same wire forms the CLI
//! uses. Every entry point returns an [`NmStatus`]; on failure a message is
//! kept per thread and read back with [`nm_last_error_message`]. Strings
//! returned through `char **` out-parameters are owned by the caller and
//! released with [`nm_string_free`]; handles with their `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use freenil::decompose::{decompose, verify, Decomposition};
use freenil::endo::{random_automorphism, GeneratorMap, GeneratorMapRepr, RandomParams};
use freenil::{Error, GenSet, GroupContext};

/// Result code of every call. Codes after `NM_STATUS_MALFORMED_INPUT` mirror
/// the library's error variants one to one.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    MalformedInput = 3,
    Panic = 4,
    InvalidContext = 10,
    IndexOutOfRange = 11,
    MalformedWord = 12,
    ContextMismatch = 13,
    BadClass = 14,
    NotCentral = 15,
    NotLieElement = 16,
    NotAutomorphism = 17,
    NotABijection = 18,
    PartitionInvalid = 19,
    BlockConstraintViolated = 20,
    NotInGamma2 = 21,
    CertificateInvalid = 22,
    NotUnimodular = 23,
    DoesNotFixD = 24,
    RankTooSmall = 25,
    NotCentralIa = 26,
}

impl From<&Error> for NmStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidContext(_) => NmStatus::InvalidContext,
            Error::IndexOutOfRange { .. } => NmStatus::IndexOutOfRange,
            Error::MalformedWord(_) => NmStatus::MalformedWord,
            Error::ContextMismatch => NmStatus::ContextMismatch,
            Error::BadClass { .. } => NmStatus::BadClass,
            Error::NotCentral => NmStatus::NotCentral,
            Error::NotLieElement => NmStatus::NotLieElement,
            Error::NotAutomorphism => NmStatus::NotAutomorphism,
            Error::NotABijection => NmStatus::NotABijection,
            Error::PartitionInvalid(_) => NmStatus::PartitionInvalid,
            Error::BlockConstraintViolated(_) => NmStatus::BlockConstraintViolated,
            Error::NotInGamma2 => NmStatus::NotInGamma2,
            Error::CertificateInvalid(_) => NmStatus::CertificateInvalid,
            Error::NotUnimodular => NmStatus::NotUnimodular,
            Error::DoesNotFixD => NmStatus::DoesNotFixD,
            Error::RankTooSmall(_) => NmStatus::RankTooSmall,
            Error::NotCentralIA => NmStatus::NotCentralIa,
        }
    }
}

/// An endomorphism of a free nilpotent group, given by generator images.
pub struct NmMap(GeneratorMap);

/// A certified factorization of an automorphism.
pub struct NmDecomposition(Decomposition);

struct Failure(NmStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(NmStatus::from(&e), format!("{}: {e}", e.name()))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure(NmStatus::MalformedInput, e.to_string())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

/// Runs `body`, turning failures and panics into a status and a message.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> NmStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => NmStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            NmStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(NmStatus::NullPointer, "null pointer argument".into())
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(NmStatus::InvalidUtf8, e.to_string()))
}

unsafe fn read_set(p: *const usize, len: usize) -> Result<GenSet, Failure> {
    if len == 0 {
        return Ok(GenSet::new());
    }
    if p.is_null() {
        return Err(null());
    }
    Ok(std::slice::from_raw_parts(p, len).iter().copied().collect())
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let s = CString::new(s).expect("JSON has no interior NUL");
    write(out, s.into_raw())
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    write(out, Box::into_raw(Box::new(value)))
}

fn parse_map(json: &str) -> Result<GeneratorMap, Failure> {
    let repr: GeneratorMapRepr = serde_json::from_str(json)?;
    Ok(GeneratorMap::try_from(repr)?)
}

/// Message of the last failed call on this thread, or NULL after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn nm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string obtained from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn nm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a map from `{"rank": n, "class": c, "images": [...]}`.
///
/// # Safety
/// `json` must be NULL or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nm_map_from_json(json: *const c_char, out: *mut *mut NmMap) -> NmStatus {
    guard(|| write_handle(out, NmMap(parse_map(read_str(json)?)?)))
}

/// Serializes a map to its JSON wire form.
///
/// # Safety
/// `map` must be a live handle or NULL; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nm_map_to_json(map: *const NmMap, out: *mut *mut c_char) -> NmStatus {
    guard(|| write_string(out, serde_json::to_string(&deref(map)?.0)?))
}

/// Releases a map handle. NULL is ignored.
///
/// # Safety
/// `map` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn nm_map_free(map: *mut NmMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// `left ∘ right`, applying `right` first.
///
/// # Safety
/// Both handles must be live or NULL; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nm_map_compose(left: *const NmMap, right: *const NmMap, out: *mut *mut NmMap) -> NmStatus {
    guard(|| {
        let composed = deref(left)?.0.compose(&deref(right)?.0)?;
        write_handle(out, NmMap(composed))
    })
}

/// Two-sided inverse of an automorphism.
///
/// # Safety
/// `map` must be live or NULL; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nm_map_invert(map: *const NmMap, out: *mut *mut NmMap) -> NmStatus {
    guard(|| write_handle(out, NmMap(deref(map)?.0.invert()?)))
}

/// Whether the map is an automorphism (abelianization determinant ±1).
///
/// # Safety
/// `map` must be live or NULL; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nm_map_is_automorphism(map: *const NmMap, out: *mut bool) -> NmStatus {
    guard(|| write(out, deref(map)?.0.is_automorphism()))
}

/// Seeded random automorphism fixing the `fix_len` generators at `fix`.
/// Output matches `freenil random-aut` for the same arguments.
///
/// # Safety
/// `fix` must point to `fix_len` readable values (may be NULL when
/// `fix_len` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nm_random_automorphism(
    rank: usize,
    class: usize,
    seed: u64,
    length: usize,
    fix: *const usize,
    fix_len: usize,
    out: *mut *mut NmMap,
) -> NmStatus {
    guard(|| {
        let ctx = GroupContext::new(rank, class)?;
        let fix = read_set(fix, fix_len)?;
        if let Some(&g) = fix.iter().find(|&&g| g == 0 || g > rank) {
            return Err(Error::IndexOutOfRange { index: g, rank }.into());
        }
        write_handle(out, NmMap(random_automorphism(seed, ctx, &RandomParams { length, fix })))
    })
}

/// Factors an automorphism fixing the `fix_len` generators at `fix`.
///
/// # Safety
/// As for [`nm_random_automorphism`]; `map` must be live or NULL.
#[no_mangle]
pub unsafe extern "C" fn nm_decompose(
    map: *const NmMap,
    fix: *const usize,
    fix_len: usize,
    out: *mut *mut NmDecomposition,
) -> NmStatus {
    guard(|| {
        let dec = decompose(&deref(map)?.0, &read_set(fix, fix_len)?)?;
        write_handle(out, NmDecomposition(dec))
    })
}

/// Parses a decomposition from `{"input", "fixed", "factors"}`.
///
/// # Safety
/// `json` must be NULL or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nm_decomposition_from_json(json: *const c_char, out: *mut *mut NmDecomposition) -> NmStatus {
    guard(|| write_handle(out, NmDecomposition(serde_json::from_str(read_str(json)?)?)))
}

/// Serializes a decomposition.
///
/// # Safety
/// `dec` must be live or NULL; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nm_decomposition_to_json(dec: *const NmDecomposition, out: *mut *mut c_char) -> NmStatus {
    guard(|| write_string(out, serde_json::to_string(&deref(dec)?.0)?))
}

/// Number of factors.
///
/// # Safety
/// `dec` must be live or NULL; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nm_decomposition_factor_count(dec: *const NmDecomposition, out: *mut usize) -> NmStatus {
    guard(|| write(out, deref(dec)?.0.factors.len()))
}

/// The factor at `index` as a new map handle.
///
/// # Safety
/// `dec` must be live or NULL; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nm_decomposition_factor(
    dec: *const NmDecomposition,
    index: usize,
    out: *mut *mut NmMap,
) -> NmStatus {
    guard(|| {
        let factors = &deref(dec)?.0.factors;
        let f = factors.get(index).ok_or_else(|| {
            Failure(NmStatus::IndexOutOfRange, format!("factor {index} of {}", factors.len()))
        })?;
        write_handle(out, NmMap(f.map.clone()))
    })
}

/// Re-checks a decomposition. `ok` receives the verdict; `report`, when not
/// NULL, receives the full JSON report. A failed check is still `NM_STATUS_OK`.
///
/// # Safety
/// `dec` must be live or NULL; `ok` must be writable; `report` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn nm_decomposition_verify(
    dec: *const NmDecomposition,
    ok: *mut bool,
    report: *mut *mut c_char,
) -> NmStatus {
    guard(|| {
        let r = verify(&deref(dec)?.0);
        write(ok, r.ok)?;
        if !report.is_null() {
            write_string(report, serde_json::to_string(&r)?)?;
        }
        Ok(())
    })
}

/// Releases a decomposition handle. NULL is ignored.
///
/// # Safety
/// `dec` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn nm_decomposition_free(dec: *mut NmDecomposition) {
    if !dec.is_null() {
        drop(Box::from_raw(dec));
    }
}
