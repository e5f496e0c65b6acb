//! C ABI over `hychroma`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call
//! returns an [`HcStatus`]; on failure, `hc_last_error` describes it.
//! Strings returned to C must be released with [`hc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use hychroma::bounds::{self, KTable};
use hychroma::forbidden::{code_from_parity, forbidden_coset_partition, greedy_forbidden_matrix};
use hychroma::partition::{self, ColoringCertificate, ColoringMode};
use hychroma::verify::{verify_coloring, Counterexample, Strategy};
use hychroma::{z4, Error, Guard, Z4Vector};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcStatus {
    Ok = 0,
    /// Verification ran and found a violation.
    Violation = 1,
    InvalidArgument = 2,
    ParseError = 3,
    GuardExceeded = 4,
    ConstructionError = 5,
    NullPointer = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcMode {
    AtMost = 0,
    Exact = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcStrategy {
    Auto = 0,
    Neighbor = 1,
    Pairwise = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcViolationKind {
    None = 0,
    /// `u` and `v` share a color at an illegal `distance`.
    Pair = 1,
    /// `u` has color `v`, at or above the declared count.
    ColorOutOfRange = 2,
    /// Color `u` is declared but unused.
    UnusedColor = 3,
}

/// First violation found by [`hc_verify`].
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct HcCounterexample {
    pub kind: HcViolationKind,
    pub u: u64,
    pub v: u64,
    pub distance: u32,
}

/// Opaque coloring certificate.
pub struct HcCertificate {
    inner: ColoringCertificate,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("nul bytes removed"));
}

fn status_of(e: &Error) -> HcStatus {
    match e {
        Error::Parse { .. } => HcStatus::ParseError,
        Error::ExhaustiveLimit { .. } => HcStatus::GuardExceeded,
        Error::Construction(_) | Error::Integrity(_) => HcStatus::ConstructionError,
        Error::Io(_) => HcStatus::Internal,
        _ => HcStatus::InvalidArgument,
    }
}

/// Runs `f`, recording any error or panic.
fn guarded(f: impl FnOnce() -> Result<HcStatus, Error>) -> HcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(e)) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            HcStatus::Internal
        }
    }
}

fn null_error(what: &str) -> HcStatus {
    set_error(format!("null pointer: {what}"));
    HcStatus::NullPointer
}

unsafe fn store_certificate(out: *mut *mut HcCertificate, c: ColoringCertificate) -> HcStatus {
    *out = Box::into_raw(Box::new(HcCertificate { inner: c }));
    HcStatus::Ok
}

/// Message for the last failed call on this thread. Valid until the next
/// call into this library on the same thread; never null.
#[no_mangle]
pub extern "C" fn hc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Preparata coloring for odd `r >= 3`: the coset construction on
/// `V_(2^(r+1))`, or the punctured one on `V_(2^(r+1) - 1)`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn hc_construct_preparata(
    r: u32,
    punctured: bool,
    out: *mut *mut HcCertificate,
) -> HcStatus {
    if out.is_null() {
        return null_error("out");
    }
    guarded(|| {
        let code = z4::preparata_code(r)?;
        let (p, tag) = if punctured {
            (partition::z4_punctured_partition(&code, Guard::Enforce)?, "punctured")
        } else {
            (partition::z4_coset_partition(&code, Guard::Enforce)?, "coset")
        };
        let c = partition::partition_to_coloring(&p)?.with_provenance(format!("preparata r={r} {tag}"));
        Ok(store_certificate(out, c))
    })
}

/// Two-color parity certificate for odd `d <= n`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn hc_construct_parity(n: u32, d: u32, out: *mut *mut HcCertificate) -> HcStatus {
    if out.is_null() {
        return null_error("out");
    }
    guarded(|| Ok(store_certificate(out, partition::parity_coloring(n as usize, d)?)))
}

/// Exactly-`d` certificate from the cosets of the greedy forbidden-weight
/// code.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn hc_construct_forbidden_greedy(
    n: u32,
    d: u32,
    out: *mut *mut HcCertificate,
) -> HcStatus {
    if out.is_null() {
        return null_error("out");
    }
    guarded(|| {
        let h = greedy_forbidden_matrix(n as usize, d, Guard::Enforce)?;
        let code = code_from_parity(&h, d, Guard::Enforce)?;
        let p = forbidden_coset_partition(&code, Guard::Enforce)?;
        Ok(store_certificate(out, partition::partition_to_coloring(&p)?))
    })
}

/// Parses the certificate text format from a NUL-terminated UTF-8 string.
///
/// # Safety
/// `text` must be a valid C string and `out` valid writable storage.
#[no_mangle]
pub unsafe extern "C" fn hc_certificate_parse(text: *const c_char, out: *mut *mut HcCertificate) -> HcStatus {
    if text.is_null() {
        return null_error("text");
    }
    if out.is_null() {
        return null_error("out");
    }
    guarded(|| {
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Error::Parse { line: 0, message: "certificate is not UTF-8".into() })?;
        Ok(store_certificate(out, ColoringCertificate::from_text(s)?))
    })
}

/// Serializes to the text format. Free the result with [`hc_string_free`].
///
/// # Safety
/// `cert` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_certificate_to_string(cert: *const HcCertificate, out: *mut *mut c_char) -> HcStatus {
    if cert.is_null() {
        return null_error("cert");
    }
    if out.is_null() {
        return null_error("out");
    }
    guarded(|| {
        let text = (*cert).inner.to_text();
        *out = CString::new(text).expect("certificate text has no NUL").into_raw();
        Ok(HcStatus::Ok)
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn hc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `cert` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn hc_certificate_free(cert: *mut HcCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// # Safety
/// `cert` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hc_certificate_n(cert: *const HcCertificate) -> u32 {
    cert.as_ref().map_or(0, |c| c.inner.n() as u32)
}

/// # Safety
/// `cert` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hc_certificate_d(cert: *const HcCertificate) -> u32 {
    cert.as_ref().map_or(0, |c| c.inner.d())
}

/// # Safety
/// `cert` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hc_certificate_colors(cert: *const HcCertificate) -> u32 {
    cert.as_ref().map_or(0, |c| c.inner.color_count())
}

/// # Safety
/// `cert` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hc_certificate_mode(cert: *const HcCertificate) -> HcMode {
    match cert.as_ref().map(|c| c.inner.mode()) {
        Some(ColoringMode::ExactD) => HcMode::Exact,
        _ => HcMode::AtMost,
    }
}

/// # Safety
/// `cert` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_certificate_get_color(
    cert: *const HcCertificate,
    vertex: u64,
    out: *mut u32,
) -> HcStatus {
    let (Some(c), false) = (cert.as_ref(), out.is_null()) else {
        return null_error("cert or out");
    };
    if vertex >= c.inner.assignment().len() as u64 {
        set_error(format!("vertex {vertex} outside V_{}", c.inner.n()));
        return HcStatus::InvalidArgument;
    }
    *out = c.inner.color(vertex);
    HcStatus::Ok
}

/// Recolors one vertex. Any color id is accepted; [`hc_verify`] reports
/// ids beyond the declared count.
///
/// # Safety
/// `cert` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn hc_certificate_set_color(cert: *mut HcCertificate, vertex: u64, color: u32) -> HcStatus {
    let Some(c) = cert.as_mut() else {
        return null_error("cert");
    };
    if vertex >= c.inner.assignment().len() as u64 {
        set_error(format!("vertex {vertex} outside V_{}", c.inner.n()));
        return HcStatus::InvalidArgument;
    }
    c.inner = c.inner.with_color(vertex, color);
    HcStatus::Ok
}

/// Exhaustively verifies the certificate. Returns `Ok` on pass and
/// `Violation` on failure, filling `counterexample` when it is non-null.
///
/// # Safety
/// `cert` must be a live handle; `counterexample` null or writable.
#[no_mangle]
pub unsafe extern "C" fn hc_verify(
    cert: *const HcCertificate,
    strategy: HcStrategy,
    force: bool,
    counterexample: *mut HcCounterexample,
) -> HcStatus {
    let Some(c) = cert.as_ref() else {
        return null_error("cert");
    };
    guarded(|| {
        let strategy = match strategy {
            HcStrategy::Auto => Strategy::Auto,
            HcStrategy::Neighbor => Strategy::Neighbor,
            HcStrategy::Pairwise => Strategy::Pairwise,
        };
        let report = verify_coloring(&c.inner, strategy, Guard::from_force(force))?;
        let ce = match report.counterexample {
            Some(Counterexample::Pair { u, v, distance }) => HcCounterexample {
                kind: HcViolationKind::Pair,
                u,
                v,
                distance,
            },
            Some(Counterexample::ColorOutOfRange { vertex, color }) => HcCounterexample {
                kind: HcViolationKind::ColorOutOfRange,
                u: vertex,
                v: color as u64,
                distance: 0,
            },
            Some(Counterexample::UnusedColor { color }) => HcCounterexample {
                kind: HcViolationKind::UnusedColor,
                u: color as u64,
                v: 0,
                distance: 0,
            },
            _ => HcCounterexample {
                kind: HcViolationKind::None,
                u: 0,
                v: 0,
                distance: 0,
            },
        };
        if !counterexample.is_null() {
            *counterexample = ce;
        }
        if report.passed {
            Ok(HcStatus::Ok)
        } else {
            set_error(report.summary());
            Ok(HcStatus::Violation)
        }
    })
}

/// Exponent `e` of the greedy forbidden-weight bound `chi_d(n) <= 2^e`
/// (even `d`).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_greedy_upper_log2(n: u32, d: u32, out: *mut u32) -> HcStatus {
    if out.is_null() {
        return null_error("out");
    }
    guarded(|| {
        let v = bounds::greedy_upper(n, d)?;
        *out = bounds::log2_exact(&v).expect("power of two") as u32;
        Ok(HcStatus::Ok)
    })
}

/// Exponent of the direct-sum bound using the builtin `k(n, d)` entries;
/// `InvalidArgument` with a message naming the entry when it is missing.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_direct_sum_upper_log2(n: u32, d: u32, out: *mut u32) -> HcStatus {
    if out.is_null() {
        return null_error("out");
    }
    guarded(|| {
        let v = bounds::direct_sum_upper(n, d, &KTable::builtin())?;
        *out = bounds::log2_exact(&v).expect("power of two") as u32;
        Ok(HcStatus::Ok)
    })
}

/// Kim-Du-Pardalos bound as a decimal string (it overflows 64 bits
/// quickly). Free with [`hc_string_free`].
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hc_kdp_upper(n: u32, d: u32, out: *mut *mut c_char) -> HcStatus {
    if out.is_null() {
        return null_error("out");
    }
    guarded(|| {
        let v = bounds::kdp_upper(n, d)?;
        *out = CString::new(v.to_string()).expect("digits").into_raw();
        Ok(HcStatus::Ok)
    })
}

unsafe fn z4_from_raw(entries: *const u8, len: usize) -> Result<Z4Vector, Error> {
    let slice = if len == 0 { &[][..] } else { std::slice::from_raw_parts(entries, len) };
    Z4Vector::new(slice)
}

/// Gray image of a Z4 vector (entries 0..=3, at most 32); bit `2i` and
/// `2i+1` of `out` hold the image of entry `i`.
///
/// # Safety
/// `entries` must point to `len` readable bytes; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_gray_map(entries: *const u8, len: usize, out: *mut u64) -> HcStatus {
    if (entries.is_null() && len > 0) || out.is_null() {
        return null_error("entries or out");
    }
    guarded(|| {
        *out = z4::gray_map(&z4_from_raw(entries, len)?).bits();
        Ok(HcStatus::Ok)
    })
}

/// # Safety
/// `entries` must point to `len` readable bytes; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hc_lee_weight(entries: *const u8, len: usize, out: *mut u32) -> HcStatus {
    if (entries.is_null() && len > 0) || out.is_null() {
        return null_error("entries or out");
    }
    guarded(|| {
        *out = z4_from_raw(entries, len)?.lee_weight();
        Ok(HcStatus::Ok)
    })
}
