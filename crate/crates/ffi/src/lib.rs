//! C ABI over `plocal`.
//!
//! Groups and reports are opaque handles owned by the caller and released
//! with the matching `_free` function. Every fallible call returns a
//! [`PlocalStatus`]; the message of the most recent failure on the calling
//! thread is available from [`plocal_last_error`]. Strings returned to the
//! caller are released with [`plocal_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use plocal::input::{parse_cycles_auto, GroupSpec};
use plocal::pipeline::{analyze, AnalysisReport, Options};
use plocal::report::{to_json, to_text};
use plocal::verdict::Status;
use plocal::{Error, Prime};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlocalStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    OutOfRangePoint = 4,
    NotPrime = 5,
    OrderBoundExceeded = 6,
    BudgetExceeded = 7,
    NotAFunctor = 8,
    Invalid = 9,
    IndexOutOfRange = 10,
    Panic = 11,
}

/// Tri-state outcome of a check, plus "does not apply".
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlocalVerdict {
    Pass = 0,
    Fail = 1,
    NotCertified = 2,
    NotApplicable = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlocalFormat {
    Json = 0,
    Text = 1,
}

/// Analysis settings; start from [`plocal_options_default`].
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct PlocalOptions {
    pub max_degree: usize,
    pub max_limit_degree: usize,
    pub cohomology_index_max: usize,
    pub budget: usize,
    pub skeletal: bool,
    pub timings: bool,
}

/// A finite permutation group.
pub struct PlocalGroup {
    spec: String,
    group: plocal::PermutationGroup,
}

/// The result of an analysis.
pub struct PlocalReport {
    report: AnalysisReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &Error) -> PlocalStatus {
    match e {
        Error::Parse { .. } => PlocalStatus::Parse,
        Error::OutOfRangePoint { .. } => PlocalStatus::OutOfRangePoint,
        Error::NotPrime(_) => PlocalStatus::NotPrime,
        Error::OrderBoundExceeded { .. } => PlocalStatus::OrderBoundExceeded,
        Error::BudgetExceeded { .. } => PlocalStatus::BudgetExceeded,
        Error::NotAFunctor(_) => PlocalStatus::NotAFunctor,
        _ => PlocalStatus::Invalid,
    }
}

fn fail(e: Error) -> PlocalStatus {
    set_error(e.to_string());
    status_of(&e)
}

/// Runs `body`, turning panics into [`PlocalStatus::Panic`].
fn guard(body: impl FnOnce() -> PlocalStatus) -> PlocalStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            PlocalStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, PlocalStatus> {
    if text.is_null() {
        set_error("null argument");
        return Err(PlocalStatus::NullArgument);
    }
    CStr::from_ptr(text).to_str().map_err(|_| {
        set_error("argument is not UTF-8");
        PlocalStatus::InvalidUtf8
    })
}

fn give_string(text: String) -> *mut c_char {
    CString::new(text.replace('\0', " ")).expect("no interior nul").into_raw()
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            set_error("null argument");
            return PlocalStatus::NullArgument;
        })+
    };
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn plocal_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `text` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn plocal_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

#[no_mangle]
pub extern "C" fn plocal_options_default() -> PlocalOptions {
    let o = Options::default();
    PlocalOptions {
        max_degree: o.max_degree,
        max_limit_degree: o.max_limit_degree,
        cohomology_index_max: o.cohomology_index_max,
        budget: o.budget,
        skeletal: o.skeletal,
        timings: true,
    }
}

/// Builds a group from a description such as `"sym:4"` or
/// `"perm:4:(1 2 3 4);(1 3)"`.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn plocal_group_new(spec: *const c_char, out: *mut *mut PlocalGroup) -> PlocalStatus {
    non_null!(out);
    guard(|| {
        let text = match read_str(spec) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let parsed = match GroupSpec::parse(text) {
            Ok(s) => s,
            Err(e) => return fail(e),
        };
        match parsed.build() {
            Ok(group) => {
                *out = Box::into_raw(Box::new(PlocalGroup {
                    spec: parsed.to_string(),
                    group,
                }));
                PlocalStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `group` must come from [`plocal_group_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn plocal_group_free(group: *mut PlocalGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// # Safety
/// `group` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn plocal_group_order(group: *const PlocalGroup, out: *mut usize) -> PlocalStatus {
    non_null!(group, out);
    *out = (*group).group.order();
    PlocalStatus::Ok
}

/// # Safety
/// `group` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn plocal_group_degree(group: *const PlocalGroup, out: *mut usize) -> PlocalStatus {
    non_null!(group, out);
    *out = (*group).group.degree();
    PlocalStatus::Ok
}

/// Order of a Sylow `prime`-subgroup.
///
/// # Safety
/// `group` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn plocal_group_sylow_order(
    group: *const PlocalGroup,
    prime: u32,
    out: *mut usize,
) -> PlocalStatus {
    non_null!(group, out);
    guard(|| match Prime::new(prime) {
        Ok(p) => {
            *out = (*group).group.sylow_subgroup(p).order();
            PlocalStatus::Ok
        }
        Err(e) => fail(e),
    })
}

/// Normalizes a product of cycles, e.g. `"(1 2)(2 3)"` to `"(1 3 2)"`.
///
/// # Safety
/// `cycles` must be a nul-terminated string and `out` writable. The result
/// is released with [`plocal_string_free`].
#[no_mangle]
pub unsafe extern "C" fn plocal_parse_cycles(cycles: *const c_char, out: *mut *mut c_char) -> PlocalStatus {
    non_null!(out);
    guard(|| {
        let text = match read_str(cycles) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_cycles_auto(text) {
            Ok(p) => {
                *out = give_string(p.to_string());
                PlocalStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Runs the full analysis. `options` may be null for the defaults and
/// `checks` null for every check, or a comma-separated list of names.
/// A budget failure inside the run still yields a report, with
/// [`plocal_report_exit_code`] equal to 2.
///
/// # Safety
/// `group` must be a live handle, `options` null or valid, `checks` null or
/// a nul-terminated string, and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn plocal_analyze(
    group: *const PlocalGroup,
    prime: u32,
    options: *const PlocalOptions,
    checks: *const c_char,
    out: *mut *mut PlocalReport,
) -> PlocalStatus {
    non_null!(group, out);
    guard(|| {
        let p = match Prime::new(prime) {
            Ok(p) => p,
            Err(e) => return fail(e),
        };
        let o = if options.is_null() {
            plocal_options_default()
        } else {
            *options
        };
        let checks = if checks.is_null() {
            None
        } else {
            match read_str(checks) {
                Ok(t) => Some(
                    t.split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(String::from)
                        .collect(),
                ),
                Err(s) => return s,
            }
        };
        let opts = Options {
            max_degree: o.max_degree,
            max_limit_degree: o.max_limit_degree,
            cohomology_index_max: o.cohomology_index_max,
            budget: o.budget,
            skeletal: o.skeletal,
            checks,
        };
        if let Err(e) = opts.validate() {
            return fail(e);
        }
        let g = &*group;
        let mut report = analyze(&g.group, &g.spec, p, &opts);
        if !o.timings {
            report = report.without_timings();
        }
        *out = Box::into_raw(Box::new(PlocalReport { report }));
        PlocalStatus::Ok
    })
}

/// # Safety
/// `report` must come from [`plocal_analyze`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn plocal_report_free(report: *mut PlocalReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

fn verdict_of(s: Status) -> PlocalVerdict {
    match s {
        Status::Pass => PlocalVerdict::Pass,
        Status::Fail => PlocalVerdict::Fail,
        Status::NotCertified => PlocalVerdict::NotCertified,
        Status::NotApplicable => PlocalVerdict::NotApplicable,
    }
}

/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn plocal_report_overall(report: *const PlocalReport, out: *mut PlocalVerdict) -> PlocalStatus {
    non_null!(report, out);
    *out = verdict_of((*report).report.overall);
    PlocalStatus::Ok
}

/// 0 for pass or not certified, 1 on a failed check, 2 if the run aborted.
///
/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn plocal_report_exit_code(report: *const PlocalReport, out: *mut i32) -> PlocalStatus {
    non_null!(report, out);
    *out = (*report).report.exit_code();
    PlocalStatus::Ok
}

/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn plocal_report_verdict_count(report: *const PlocalReport, out: *mut usize) -> PlocalStatus {
    non_null!(report, out);
    *out = (*report).report.verdicts.len();
    PlocalStatus::Ok
}

/// Name and outcome of the `index`-th verdict. `name` receives a string to
/// release with [`plocal_string_free`]; it may be null if not wanted.
///
/// # Safety
/// `report` must be a live handle, `status` writable and `name` null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn plocal_report_verdict(
    report: *const PlocalReport,
    index: usize,
    status: *mut PlocalVerdict,
    name: *mut *mut c_char,
) -> PlocalStatus {
    non_null!(report, status);
    let verdicts = &(*report).report.verdicts;
    let Some(v) = verdicts.get(index) else {
        set_error(format!("no verdict {index}"));
        return PlocalStatus::IndexOutOfRange;
    };
    *status = verdict_of(v.status);
    if !name.is_null() {
        *name = give_string(v.name.to_string());
    }
    PlocalStatus::Ok
}

/// The report rendered as JSON or text, released with
/// [`plocal_string_free`].
///
/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn plocal_report_render(
    report: *const PlocalReport,
    format: PlocalFormat,
    out: *mut *mut c_char,
) -> PlocalStatus {
    non_null!(report, out);
    let r = &(*report).report;
    *out = give_string(match format {
        PlocalFormat::Json => to_json(r),
        PlocalFormat::Text => to_text(r),
    });
    PlocalStatus::Ok
}
