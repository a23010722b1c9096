//! C interface to the enclosure library.
//!
//! Configurations and results are opaque handles created and released by
//! the library. Every fallible call returns an [`EncloseStatus`]; on failure
//! the message is available from [`enclose_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use enclose::cli::{emit_results, preset, run, Format, Overrides, RunConfig, Status};
use enclose::ival::{verified_sym_eig, Interval, IntervalMatrix};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EncloseStatus {
    Ok = 0,
    /// The run stopped early; the result holds the enclosures certified so far.
    Halted = 1,
    NullPointer = 2,
    InvalidArgument = 3,
    ParseError = 4,
    SolveError = 5,
    Panic = 6,
}

/// Output format of [`enclose_result_render`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EncloseFormat {
    Table = 0,
    Csv = 1,
}

/// A parsed run configuration.
pub struct EncloseConfig {
    inner: RunConfig,
}

/// The report of a finished or halted run.
pub struct EncloseResult {
    report: enclose::cli::RunReport,
    labels: Vec<CString>,
    halted: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: EncloseStatus, msg: impl Into<String>) -> EncloseStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> EncloseStatus) -> EncloseStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(EncloseStatus::Panic, "internal panic"),
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, EncloseStatus> {
    if s.is_null() {
        return Err(fail(EncloseStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(EncloseStatus::InvalidArgument, "string is not UTF-8"))
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn enclose_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn enclose_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a TOML configuration.
///
/// # Safety
/// `toml` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enclose_config_from_toml(toml: *const c_char, out: *mut *mut EncloseConfig) -> EncloseStatus {
    guard(|| {
        if out.is_null() {
            return fail(EncloseStatus::NullPointer, "null output pointer");
        }
        let t = match text(toml) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match RunConfig::parse(t).and_then(|c| c.problem().map(|_| c)) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(EncloseConfig { inner }));
                EncloseStatus::Ok
            }
            Err(e) => fail(EncloseStatus::ParseError, e.to_string()),
        }
    })
}

/// Loads a bundled preset by name.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enclose_config_from_preset(name: *const c_char, out: *mut *mut EncloseConfig) -> EncloseStatus {
    guard(|| {
        if out.is_null() {
            return fail(EncloseStatus::NullPointer, "null output pointer");
        }
        let n = match text(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match preset(n) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(EncloseConfig { inner }));
                EncloseStatus::Ok
            }
            Err(e) => fail(EncloseStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// # Safety
/// `cfg` must come from this library and not be used afterwards. NULL is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn enclose_config_free(cfg: *mut EncloseConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Runs a configuration. On `Ok` and on `Halted` a result is stored in `out`.
///
/// # Safety
/// `cfg` must be a live configuration and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enclose_run(cfg: *const EncloseConfig, out: *mut *mut EncloseResult) -> EncloseStatus {
    guard(|| {
        if cfg.is_null() || out.is_null() {
            return fail(EncloseStatus::NullPointer, "null argument");
        }
        match run(&(&*cfg).inner, &Overrides::default()) {
            Ok(o) => {
                let labels = o.report.rows.iter().map(|r| CString::new(r.label.replace('\0', " ")).expect("no NUL")).collect();
                let halted = o.status == Status::Halted;
                *out = Box::into_raw(Box::new(EncloseResult { report: o.report, labels, halted }));
                if halted {
                    EncloseStatus::Halted
                } else {
                    EncloseStatus::Ok
                }
            }
            Err(e) => fail(EncloseStatus::SolveError, e.to_string()),
        }
    })
}

/// # Safety
/// `res` must come from this library and not be used afterwards. NULL is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn enclose_result_free(res: *mut EncloseResult) {
    if !res.is_null() {
        drop(Box::from_raw(res));
    }
}

/// Whether the run stopped before certifying everything.
///
/// # Safety
/// `res` must be a live result.
#[no_mangle]
pub unsafe extern "C" fn enclose_result_halted(res: *const EncloseResult) -> bool {
    !res.is_null() && (&*res).halted
}

/// Number of rows (stages or operators) in the result.
///
/// # Safety
/// `res` must be a live result or NULL.
#[no_mangle]
pub unsafe extern "C" fn enclose_result_rows(res: *const EncloseResult) -> usize {
    if res.is_null() {
        0
    } else {
        (&*res).report.rows.len()
    }
}

/// Number of entries in row `row`, 0 when out of range.
///
/// # Safety
/// `res` must be a live result or NULL.
#[no_mangle]
pub unsafe extern "C" fn enclose_result_row_len(res: *const EncloseResult, row: usize) -> usize {
    if res.is_null() {
        return 0;
    }
    (&*res).report.rows.get(row).map_or(0, |r| r.entries.len())
}

/// Label of row `row`, owned by the result; NULL when out of range.
///
/// # Safety
/// `res` must be a live result or NULL.
#[no_mangle]
pub unsafe extern "C" fn enclose_result_row_label(res: *const EncloseResult, row: usize) -> *const c_char {
    if res.is_null() {
        return ptr::null();
    }
    (&*res).labels.get(row).map_or(ptr::null(), |c| c.as_ptr())
}

/// Enclosure `[lo, hi]` of entry `index` in row `row`.
///
/// # Safety
/// `res` must be a live result; `lo` and `hi` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn enclose_result_entry(
    res: *const EncloseResult,
    row: usize,
    index: usize,
    lo: *mut f64,
    hi: *mut f64,
) -> EncloseStatus {
    guard(|| {
        if res.is_null() || lo.is_null() || hi.is_null() {
            return fail(EncloseStatus::NullPointer, "null argument");
        }
        match (&*res).report.rows.get(row).and_then(|r| r.entries.get(index)).copied().flatten() {
            Some(v) => {
                *lo = v.lo();
                *hi = v.hi();
                EncloseStatus::Ok
            }
            None => fail(EncloseStatus::InvalidArgument, format!("no entry {index} in row {row}")),
        }
    })
}

/// Renders the report; the string must be released with
/// [`enclose_string_free`].
///
/// # Safety
/// `res` must be a live result and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn enclose_result_render(
    res: *const EncloseResult,
    format: EncloseFormat,
    out: *mut *mut c_char,
) -> EncloseStatus {
    guard(|| {
        if res.is_null() || out.is_null() {
            return fail(EncloseStatus::NullPointer, "null argument");
        }
        let f = match format {
            EncloseFormat::Table => Format::Table,
            EncloseFormat::Csv => Format::Csv,
        };
        let s = emit_results(&(&*res).report, f, true);
        *out = CString::new(s.replace('\0', " ")).expect("no NUL").into_raw();
        EncloseStatus::Ok
    })
}

/// # Safety
/// `s` must come from [`enclose_result_render`] and not be used afterwards.
/// NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn enclose_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Verified enclosures of the eigenvalues of the symmetric `n × n` matrix
/// stored row-major in `a`, written in increasing order to `lo` and `hi`
/// (each of length `n`).
///
/// # Safety
/// `a` must point to `n·n` doubles, `lo` and `hi` to `n` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn enclose_sym_eig(n: usize, a: *const f64, lo: *mut f64, hi: *mut f64) -> EncloseStatus {
    guard(|| {
        if a.is_null() || lo.is_null() || hi.is_null() {
            return fail(EncloseStatus::NullPointer, "null argument");
        }
        if n == 0 {
            return fail(EncloseStatus::InvalidArgument, "empty matrix");
        }
        let vals = std::slice::from_raw_parts(a, n * n);
        let mut m = IntervalMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, Interval::point(vals[i * n + j]));
            }
        }
        match verified_sym_eig(&m) {
            Ok(e) => {
                for (k, v) in e.values.iter().enumerate() {
                    *lo.add(k) = v.lo();
                    *hi.add(k) = v.hi();
                }
                EncloseStatus::Ok
            }
            Err(e) => fail(EncloseStatus::SolveError, e.to_string()),
        }
    })
}
