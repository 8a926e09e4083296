//! C interface to `finmod`.
//!
//! Instances and analyses are opaque heap handles released with their
//! `_free` functions. Every fallible call returns a [`FinmodStatus`]; on
//! failure the message is available from [`finmod_last_error`] until the
//! next failing call on the same thread. Strings returned through out
//! pointers are owned by the caller and released with
//! [`finmod_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use finmod::corpus::{builtin_corpus, load_instance, CorpusEntry};
use finmod::predicates::Analysis;
use finmod::report::analyze_module;
use finmod::suite::{run_suite, SuiteConfig};
use finmod::{Bounds, Error, ModuleRep};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinmodStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    AxiomViolation = 4,
    BoundExceeded = 5,
    UnknownModule = 6,
    Precondition = 7,
    Internal = 8,
    Io = 9,
    Panic = 10,
}

/// A validated instance: one ring and its modules.
pub struct FinmodInstance {
    entry: CorpusEntry,
}

/// One module of an instance with its submodule lattice.
pub struct FinmodAnalysis {
    module: Arc<ModuleRep>,
    analysis: Analysis,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FinmodClassification {
    pub local: bool,
    pub delta_local: bool,
    pub semilocal: bool,
    pub semisimple: bool,
    pub singular: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FinmodStatus {
    match e {
        Error::Parse { .. } => FinmodStatus::Parse,
        Error::AxiomViolation { .. } | Error::RingMismatch { .. } | Error::InvalidSubmodule(_) => {
            FinmodStatus::AxiomViolation
        }
        Error::SizeBoundExceeded { .. } | Error::NodeBoundExceeded { .. } | Error::SearchBoundExceeded { .. } => {
            FinmodStatus::BoundExceeded
        }
        Error::UnknownModule(_) => FinmodStatus::UnknownModule,
        Error::PreconditionViolation(_) | Error::NotDeltaSupplemented(_) | Error::ParentMismatch => {
            FinmodStatus::Precondition
        }
        Error::InternalInconsistency(_) => FinmodStatus::Internal,
        Error::Io(_) => FinmodStatus::Io,
    }
}

struct Fail(FinmodStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> FinmodStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FinmodStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside finmod".into());
            FinmodStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(FinmodStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(FinmodStatus::InvalidUtf8, format!("{what}: {e}")))
}

fn null(what: &str) -> Fail {
    Fail(FinmodStatus::NullArgument, format!("{what} is null"))
}

fn out_string(s: String, out: *mut *mut c_char) {
    let c = CString::new(s).expect("JSON has no interior nul");
    // SAFETY: caller checked `out` is non-null
    unsafe { *out = c.into_raw() };
}

/// Message of the last failing call on this thread, or null. Borrowed;
/// valid until the next failing call.
#[no_mangle]
pub extern "C" fn finmod_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses and validates an instance file given as JSON text.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn finmod_instance_load(json: *const c_char, out: *mut *mut FinmodInstance) -> FinmodStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = str_arg(json, "json")?;
        let entry = load_instance(text, &Bounds::default())?;
        *out = Box::into_raw(Box::new(FinmodInstance { entry }));
        Ok(())
    })
}

/// Instance number `index` of the built-in corpus.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn finmod_instance_builtin(index: usize, out: *mut *mut FinmodInstance) -> FinmodStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let entry = builtin_corpus()
            .into_iter()
            .nth(index)
            .ok_or_else(|| Fail(FinmodStatus::UnknownModule, format!("no built-in instance {index}")))?;
        *out = Box::into_raw(Box::new(FinmodInstance { entry }));
        Ok(())
    })
}

/// # Safety
/// `inst` must come from a `finmod_instance_*` constructor or be null.
#[no_mangle]
pub unsafe extern "C" fn finmod_instance_free(inst: *mut FinmodInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of modules in the instance; 0 for null.
///
/// # Safety
/// `inst` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn finmod_instance_module_count(inst: *const FinmodInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.entry.modules.len())
}

/// The instance re-serialized as JSON.
///
/// # Safety
/// `inst` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn finmod_instance_to_json(inst: *const FinmodInstance, out: *mut *mut c_char) -> FinmodStatus {
    guard(|| {
        let inst = inst.as_ref().ok_or_else(|| null("inst"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        out_string(inst.entry.to_json(), out);
        Ok(())
    })
}

/// Builds the submodule lattice of the named module.
///
/// # Safety
/// `inst` must be a live handle, `module` a nul-terminated string and `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn finmod_analysis_new(
    inst: *const FinmodInstance,
    module: *const c_char,
    out: *mut *mut FinmodAnalysis,
) -> FinmodStatus {
    guard(|| {
        let inst = inst.as_ref().ok_or_else(|| null("inst"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let name = str_arg(module, "module")?;
        let module = inst.entry.module(name)?.clone();
        let analysis = Analysis::from_arc(module.clone(), &Bounds::default())?;
        *out = Box::into_raw(Box::new(FinmodAnalysis { module, analysis }));
        Ok(())
    })
}

/// # Safety
/// `a` must come from [`finmod_analysis_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn finmod_analysis_free(a: *mut FinmodAnalysis) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Number of submodules; 0 for null.
///
/// # Safety
/// `a` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn finmod_analysis_lattice_size(a: *const FinmodAnalysis) -> usize {
    a.as_ref().map_or(0, |a| a.analysis.lattice().len())
}

/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn finmod_analysis_classify(
    a: *const FinmodAnalysis,
    out: *mut FinmodClassification,
) -> FinmodStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| null("analysis"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let c = a.analysis.classify();
        *out = FinmodClassification {
            local: c.local,
            delta_local: c.delta_local,
            semilocal: c.semilocal,
            semisimple: c.semisimple,
            singular: c.singular,
        };
        Ok(())
    })
}

/// Full analysis document (fundamental submodules, classification,
/// predicate matrix, decomposition) as JSON.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn finmod_analysis_report_json(a: *const FinmodAnalysis, out: *mut *mut c_char) -> FinmodStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| null("analysis"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let doc = analyze_module(&a.module, &Bounds::default())?;
        out_string(serde_json::to_string(&doc).expect("serializable"), out);
        Ok(())
    })
}

/// Runs the theorem suite on the built-in corpus; writes the JSON report
/// and the number of failed instances.
///
/// # Safety
/// `out` must be a valid pointer; `failures` may be null.
#[no_mangle]
pub unsafe extern "C" fn finmod_suite_builtin_json(out: *mut *mut c_char, failures: *mut usize) -> FinmodStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let report = run_suite(&builtin_corpus(), &SuiteConfig::default());
        if let Some(f) = failures.as_mut() {
            *f = report.failures();
        }
        out_string(serde_json::to_string(&report).expect("serializable"), out);
        Ok(())
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn finmod_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
