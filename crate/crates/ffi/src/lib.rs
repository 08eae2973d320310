//! C ABI over `diophlab`.
//!
//! Objects are opaque handles released with their `_free` function. Every
//! fallible call returns a [`DlStatus`]; on failure the message is available
//! from [`dl_last_error`] on the same thread. Strings returned to the caller
//! are owned by the caller and released with [`dl_string_free`].

use diophlab::bounds::{bound_constants, BoundSet};
use diophlab::cli::{parse_matrix_spec, run_command, RunReport};
use diophlab::exact::{irrationality_profile, plucker_coordinates, rational_dimension, SubspaceBasis};
use diophlab::Error;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Precondition = 3,
    Parse = 4,
    MixedFields = 5,
    PrecisionExhausted = 6,
    ResourceCap = 7,
    OpponentForfeit = 8,
    GameAborted = 9,
    Io = 10,
    Panic = 11,
}

impl From<&Error> for DlStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Precondition(_) => DlStatus::Precondition,
            Error::Parse { .. } => DlStatus::Parse,
            Error::MixedFields(_) => DlStatus::MixedFields,
            Error::PrecisionExhausted(_) => DlStatus::PrecisionExhausted,
            Error::ResourceCap(_) => DlStatus::ResourceCap,
            Error::OpponentForfeit(_) => DlStatus::OpponentForfeit,
            Error::GameAborted(_) => DlStatus::GameAborted,
            Error::Io(_) => DlStatus::Io,
        }
    }
}

/// A linear subspace of R^d with an exact basis.
pub struct DlSubspace {
    inner: SubspaceBasis,
}

/// A finished command run.
pub struct DlReport {
    inner: RunReport,
}

/// Bound constants; `big_w` and `frak_w` are midpoints of certified enclosures.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct DlBounds {
    pub w: f64,
    pub big_w: f64,
    pub frak_w: f64,
    pub big_w_degenerate: bool,
    pub frak_w_degenerate: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guard(f: impl FnOnce() -> Result<(), DlStatus>) -> DlStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DlStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            DlStatus::Panic
        }
    }
}

fn fail(e: Error) -> DlStatus {
    set_error(&e.to_string());
    DlStatus::from(&e)
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, DlStatus> {
    if p.is_null() {
        set_error("null pointer argument");
        return Err(DlStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        DlStatus::InvalidUtf8
    })
}

fn check_out<T>(p: *mut T) -> Result<(), DlStatus> {
    if p.is_null() {
        set_error("null output pointer");
        Err(DlStatus::NullPointer)
    } else {
        Ok(())
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn dl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn dl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn dl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a subspace from basis rows in matrix text form ("1, 0+1*sqrt(2); 0, 1").
///
/// # Safety
/// `basis` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_subspace_from_basis(basis: *const c_char, out: *mut *mut DlSubspace) -> DlStatus {
    guard(|| {
        check_out(out)?;
        let t = text(basis)?;
        let spec = parse_matrix_spec(t, false).map_err(fail)?;
        let inner = SubspaceBasis::new(spec.values()).map_err(fail)?;
        *out = Box::into_raw(Box::new(DlSubspace { inner }));
        Ok(())
    })
}

/// Builds the graph subspace {(x, Theta x)} from `Theta` in matrix text form.
///
/// # Safety
/// As for [`dl_subspace_from_basis`].
#[no_mangle]
pub unsafe extern "C" fn dl_subspace_from_theta(theta: *const c_char, out: *mut *mut DlSubspace) -> DlStatus {
    guard(|| {
        check_out(out)?;
        let t = text(theta)?;
        let spec = parse_matrix_spec(t, false).map_err(fail)?;
        let inner = SubspaceBasis::graph_xy(&spec.values()).map_err(fail)?;
        *out = Box::into_raw(Box::new(DlSubspace { inner }));
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn dl_subspace_free(h: *mut DlSubspace) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle; `d` and `n` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_subspace_dims(h: *const DlSubspace, d: *mut usize, n: *mut usize) -> DlStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| fail(Error::precondition("null subspace handle")))?;
        check_out(d)?;
        check_out(n)?;
        *d = h.inner.d();
        *n = h.inner.n();
        Ok(())
    })
}

/// Dimension over Q of the span of the Plücker coordinates.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_subspace_rational_dimension(h: *const DlSubspace, out: *mut usize) -> DlStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| fail(Error::precondition("null subspace handle")))?;
        check_out(out)?;
        let p = plucker_coordinates(&h.inner).map_err(fail)?;
        *out = rational_dimension(&p.entries).map_err(fail)?;
        Ok(())
    })
}

/// Irrationality profile as a JSON string (free with [`dl_string_free`]).
///
/// # Safety
/// `h` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_subspace_profile_json(
    h: *const DlSubspace,
    height: u64,
    cap: u64,
    out_json: *mut *mut c_char,
) -> DlStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| fail(Error::precondition("null subspace handle")))?;
        check_out(out_json)?;
        let prof = irrationality_profile(&h.inner, height, cap).map_err(fail)?;
        let s = serde_json::to_string(&prof).expect("profile serializes");
        *out_json = into_c_string(s);
        Ok(())
    })
}

fn bounds_f64(b: &BoundSet) -> DlBounds {
    DlBounds {
        w: diophlab::interval::rational_to_f64(&b.w),
        big_w: b.big_w.value().unwrap_or(f64::NAN),
        frak_w: b.frak_w.value().unwrap_or(f64::NAN),
        big_w_degenerate: b.big_w.degenerate,
        frak_w_degenerate: b.frak_w.degenerate,
    }
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_bound_constants(n: usize, d: usize, out: *mut DlBounds) -> DlStatus {
    guard(|| {
        check_out(out)?;
        let b = bound_constants(n, d).map_err(fail)?;
        *out = bounds_f64(&b);
        Ok(())
    })
}

/// Runs a command line (without the program name), e.g.
/// `{"bounds", "--n", "2", "--d", "4"}`.
///
/// # Safety
/// `argv` must point to `argc` nul-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_run(argc: usize, argv: *const *const c_char, out: *mut *mut DlReport) -> DlStatus {
    guard(|| {
        check_out(out)?;
        if argc > 0 && argv.is_null() {
            set_error("null argv");
            return Err(DlStatus::NullPointer);
        }
        let mut args = vec!["diophlab".to_string()];
        for i in 0..argc {
            args.push(text(*argv.add(i))?.to_string());
        }
        let inner = run_command(args).map_err(fail)?;
        *out = Box::into_raw(Box::new(DlReport { inner }));
        Ok(())
    })
}

/// The report as pretty JSON (free with [`dl_string_free`]).
///
/// # Safety
/// `h` must be a live report handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_report_json(h: *const DlReport, out_json: *mut *mut c_char) -> DlStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| fail(Error::precondition("null report handle")))?;
        check_out(out_json)?;
        *out_json = into_c_string(h.inner.to_json());
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn dl_report_free(h: *mut DlReport) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}
