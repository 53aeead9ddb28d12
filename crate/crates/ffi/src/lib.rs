//! C ABI for the ahoch library: opaque algebra handles, integer status
//! codes, and JSON report strings (the same line-delimited machine format
//! the CLI emits). Strings returned through out-parameters are allocated
//! by this library and must be released with [`ahoch_string_free`].
//!
//! Thread safety: handles are immutable after creation and can be shared
//! across threads; the last-error message is thread local.

use ahoch::cli::{run, Cli, CliError, Command, Format};
use libc::c_char;
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AhochStatus {
    /// Success; out-parameters are set.
    Ok = 0,
    /// A verification suite or bracket comparison found failures; the
    /// report string is still set and contains the counterexamples.
    VerifyFailed = 1,
    /// Malformed input (expression syntax, bad characteristic, ...).
    ParseError = 2,
    /// Mathematically invalid request (e.g. bracket against trivial HH^2).
    DomainError = 3,
    /// A required pointer argument was null.
    NullArgument = 4,
    /// Internal panic; a bug in the library.
    InternalError = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// The algebra A_h together with the field and optional factored input;
/// opaque to C callers.
pub struct AhochAlgebra {
    characteristic: u64,
    h_text: Option<String>,
    h_factored_text: Option<String>,
}

impl AhochAlgebra {
    fn cli(&self, command: Command, seed: u64) -> Cli {
        Cli {
            characteristic: self.characteristic,
            h: self.h_text.clone(),
            h_factored: self.h_factored_text.clone(),
            seed,
            max_x_deg: 6,
            max_yh_deg: 4,
            format: Format::Machine,
            command,
        }
    }
}

fn status_of(err: &CliError) -> AhochStatus {
    match err.exit_code() {
        1 => AhochStatus::VerifyFailed,
        2 => AhochStatus::ParseError,
        _ => AhochStatus::DomainError,
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, AhochStatus> {
    if ptr.is_null() {
        set_last_error("null string argument");
        return Err(AhochStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_last_error("string argument is not valid UTF-8");
        AhochStatus::ParseError
    })
}

fn write_string(out: *mut *mut c_char, s: String) -> AhochStatus {
    let c = match CString::new(s) {
        Ok(c) => c,
        Err(_) => {
            set_last_error("report contained an interior NUL byte");
            return AhochStatus::InternalError;
        }
    };
    unsafe { *out = c.into_raw() };
    AhochStatus::Ok
}

fn run_to_out(cli: &Cli, out: *mut *mut c_char) -> AhochStatus {
    if out.is_null() {
        set_last_error("null output pointer");
        return AhochStatus::NullArgument;
    }
    let result = catch_unwind(AssertUnwindSafe(|| run(cli)));
    match result {
        Ok(Ok(outcome)) => {
            let status = if outcome.exit_code == 0 {
                AhochStatus::Ok
            } else {
                set_last_error("verification reported failures; see the report");
                AhochStatus::VerifyFailed
            };
            let wrote = write_string(out, outcome.lines.join("\n"));
            if wrote != AhochStatus::Ok {
                return wrote;
            }
            status
        }
        Ok(Err(e)) => {
            set_last_error(e.message());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("internal panic");
            AhochStatus::InternalError
        }
    }
}

/// Create an algebra handle for A_h over Q (characteristic 0) or F_p.
/// `h_expr` uses the expression grammar (integers, rationals a/b, x,
/// + - * ^, parentheses). On success writes the handle to `out`.
///
/// # Safety
/// `h_expr` must be a valid NUL-terminated string and `out` a valid
/// pointer; the returned handle must be released with
/// [`ahoch_algebra_free`].
#[no_mangle]
pub unsafe extern "C" fn ahoch_algebra_new(
    characteristic: u64,
    h_expr: *const c_char,
    out: *mut *mut AhochAlgebra,
) -> AhochStatus {
    new_algebra(characteristic, h_expr, false, out)
}

/// Like [`ahoch_algebra_new`], but `h_expr` is a factored polynomial:
/// comma-separated `factor^multiplicity` terms, e.g. `x^3,(x-1)^2`.
///
/// # Safety
/// Same contract as [`ahoch_algebra_new`].
#[no_mangle]
pub unsafe extern "C" fn ahoch_algebra_new_factored(
    characteristic: u64,
    h_expr: *const c_char,
    out: *mut *mut AhochAlgebra,
) -> AhochStatus {
    new_algebra(characteristic, h_expr, true, out)
}

unsafe fn new_algebra(
    characteristic: u64,
    h_expr: *const c_char,
    factored: bool,
    out: *mut *mut AhochAlgebra,
) -> AhochStatus {
    if out.is_null() {
        set_last_error("null output pointer");
        return AhochStatus::NullArgument;
    }
    let text = match read_str(h_expr) {
        Ok(s) => s.to_string(),
        Err(status) => return status,
    };
    let handle = AhochAlgebra {
        characteristic,
        h_text: (!factored).then(|| text.clone()),
        h_factored_text: factored.then_some(text),
    };
    // validate eagerly so creation reports bad input
    let probe = handle.cli(Command::Report, 0);
    match catch_unwind(AssertUnwindSafe(|| ahoch::cli::Instance::from_cli(&probe))) {
        Ok(Ok(_)) => {}
        Ok(Err(e)) => {
            set_last_error(e.message());
            return status_of(&e);
        }
        Err(_) => {
            set_last_error("internal panic");
            return AhochStatus::InternalError;
        }
    }
    *out = Box::into_raw(Box::new(handle));
    AhochStatus::Ok
}

/// Release a handle created by the constructors. Null is a no-op.
///
/// # Safety
/// `alg` must be null or a pointer previously returned by a constructor,
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ahoch_algebra_free(alg: *mut AhochAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

unsafe fn with_handle<'a>(alg: *const AhochAlgebra) -> Result<&'a AhochAlgebra, AhochStatus> {
    if alg.is_null() {
        set_last_error("null algebra handle");
        return Err(AhochStatus::NullArgument);
    }
    Ok(&*alg)
}

/// HH^0/HH^1/HH^2 summary (characteristic 0) as one JSON record.
///
/// # Safety
/// `alg` must be a live handle; `out` a valid pointer. The string written
/// to `out` must be freed with [`ahoch_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ahoch_report_json(
    alg: *const AhochAlgebra,
    out: *mut *mut c_char,
) -> AhochStatus {
    let handle = match with_handle(alg) {
        Ok(h) => h,
        Err(s) => return s,
    };
    run_to_out(&handle.cli(Command::Report, 0), out)
}

/// Composition series of HH^2 as a Lie module over HH^1 (characteristic 0),
/// as one JSON record.
///
/// # Safety
/// Same contract as [`ahoch_report_json`].
#[no_mangle]
pub unsafe extern "C" fn ahoch_series_json(
    alg: *const AhochAlgebra,
    out: *mut *mut c_char,
) -> AhochStatus {
    let handle = match with_handle(alg) {
        Ok(h) => h,
        Err(s) => return s,
    };
    run_to_out(&handle.cli(Command::Series, 0), out)
}

/// HH^2 structure over the center in characteristic p, as one JSON record.
///
/// # Safety
/// Same contract as [`ahoch_report_json`].
#[no_mangle]
pub unsafe extern "C" fn ahoch_charp_json(
    alg: *const AhochAlgebra,
    out: *mut *mut c_char,
) -> AhochStatus {
    let handle = match with_handle(alg) {
        Ok(h) => h,
        Err(s) => return s,
    };
    run_to_out(&handle.cli(Command::Charp, 0), out)
}

/// Gerstenhaber bracket of a derivation against an HH^2 class, evaluated
/// through both routes. `derivation` uses the spec mini-language
/// (`dg:g=...`, `ad:g=...,n=...`, `general:dx=...,dyhat=...`); `class` is
/// an element expression in x and yh.
///
/// # Safety
/// Same contract as [`ahoch_report_json`]; the two extra strings must be
/// valid NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn ahoch_bracket_json(
    alg: *const AhochAlgebra,
    derivation: *const c_char,
    class: *const c_char,
    out: *mut *mut c_char,
) -> AhochStatus {
    let handle = match with_handle(alg) {
        Ok(h) => h,
        Err(s) => return s,
    };
    let derivation = match read_str(derivation) {
        Ok(s) => s.to_string(),
        Err(s) => return s,
    };
    let class = match read_str(class) {
        Ok(s) => s.to_string(),
        Err(s) => return s,
    };
    run_to_out(&handle.cli(Command::Bracket { derivation, class }, 0), out)
}

/// Run a named verification suite (`homotopy`, `chain`,
/// `bracket-agreement`, `lie-module`, `witt-rep`) with the given seed,
/// trials per identity, and sampling degree bounds. The report is
/// line-delimited JSON; returns `VerifyFailed` when any identity failed.
///
/// # Safety
/// `suite` must be a valid NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ahoch_verify_json(
    suite: *const c_char,
    seed: u64,
    trials: usize,
    max_x_deg: usize,
    max_yh_deg: usize,
    out: *mut *mut c_char,
) -> AhochStatus {
    let suite = match read_str(suite) {
        Ok(s) => s.to_string(),
        Err(s) => return s,
    };
    let cli = Cli {
        characteristic: 0,
        h: None,
        h_factored: None,
        seed,
        max_x_deg,
        max_yh_deg,
        format: Format::Machine,
        command: Command::Verify {
            suite,
            trials: Some(trials),
        },
    };
    run_to_out(&cli, out)
}

/// Release a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a pointer previously written by one of the
/// `_json` functions or [`ahoch_last_error_message`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ahoch_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The last error message recorded on this thread, or null if none.
/// The caller owns the returned string and frees it with
/// [`ahoch_string_free`].
#[no_mangle]
pub extern "C" fn ahoch_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => ptr::null_mut(),
    })
}
