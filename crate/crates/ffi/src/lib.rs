//! C interface to `cgt-core`.
//!
//! Groups and component-group results are opaque handles released with
//! their `_free` function. Every fallible call returns a status code; on
//! failure `cgt_last_error` describes the error for the calling thread.
//! Strings returned through out-parameters are released with
//! `cgt_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cgt_core::catalog::{make_group, CatalogGroup, GroupSpec, InvolutionLabel};
use cgt_core::components::{
    class_graph, delta_infinity, transport, ClassRegistry, ClassSet, Completeness, TransportMode,
    TransportOptions,
};
use cgt_core::binary::{ti_binary_criterion, TiVerdict};
use cgt_core::{Error, Result};

pub const CGT_OK: i32 = 0;
pub const CGT_ERR_USAGE: i32 = 2;
pub const CGT_ERR_BUDGET: i32 = 3;
pub const CGT_ERR_INTERNAL: i32 = 4;
pub const CGT_ERR_NULL_POINTER: i32 = 5;
pub const CGT_ERR_PANIC: i32 = 6;
/// A value does not fit the output type; use the string variant.
pub const CGT_ERR_OVERFLOW: i32 = 7;

pub const CGT_MODE_DETERMINISTIC: i32 = 0;
pub const CGT_MODE_RANDOMIZED: i32 = 1;

pub const CGT_COMPLETENESS_EXACT: i32 = 0;
pub const CGT_COMPLETENESS_EXACT_G: i32 = 1;
pub const CGT_COMPLETENESS_LOWER_BOUND: i32 = 2;

/// A catalog group.
pub struct CgtGroup {
    inner: CatalogGroup,
}

/// A computed component group.
pub struct CgtDelta {
    order: u128,
    elementary_abelian: bool,
    completeness: Completeness,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Failure {
    Core(Error),
    Code(i32, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn code_of(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } => CGT_ERR_BUDGET,
        Error::Construction(_) | Error::Internal(_) | Error::Io(_) | Error::Json(_) => CGT_ERR_INTERNAL,
        _ => CGT_ERR_USAGE,
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> std::result::Result<(), Failure>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            CGT_OK
        }
        Ok(Err(Failure::Core(e))) => {
            set_error(&e.to_string());
            code_of(&e)
        }
        Ok(Err(Failure::Code(c, msg))) => {
            set_error(&msg);
            c
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("panic: {msg}"));
            CGT_ERR_PANIC
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::Code(CGT_ERR_NULL_POINTER, format!("{what} is null"))
}

/// # Safety
/// `s` is null or a valid NUL-terminated string.
unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> std::result::Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure::Code(CGT_ERR_USAGE, format!("{what} is not UTF-8")))
}

unsafe fn group_arg<'a>(g: *const CgtGroup) -> std::result::Result<&'a CatalogGroup, Failure> {
    g.as_ref().map(|g| &g.inner).ok_or_else(|| null("group"))
}

fn put<T>(out: *mut T, v: T) -> std::result::Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    // SAFETY: checked non-null; the caller provides a writable location.
    unsafe { out.write(v) };
    Ok(())
}

fn put_u64(out: *mut u64, v: u128) -> std::result::Result<(), Failure> {
    let v = u64::try_from(v).map_err(|_| Failure::Code(CGT_ERR_OVERFLOW, format!("{v} does not fit in 64 bits")))?;
    put(out, v)
}

fn put_string(out: *mut *mut c_char, s: String) -> std::result::Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure::Code(CGT_ERR_INTERNAL, "string contains NUL".into()))?;
    put(out, c.into_raw())
}

fn options(mode: i32, samples: u64, seed: u64) -> std::result::Result<TransportOptions, Failure> {
    let mode = match mode {
        CGT_MODE_DETERMINISTIC => TransportMode::Deterministic,
        CGT_MODE_RANDOMIZED => TransportMode::Randomized { samples: samples as usize },
        m => return Err(Failure::Code(CGT_ERR_USAGE, format!("unknown mode {m}"))),
    };
    Ok(TransportOptions { mode, seed, time_limit: None })
}

fn setup<'a>(
    cat: &'a CatalogGroup,
    label: &str,
    seed: u64,
) -> Result<(ClassRegistry<'a>, ClassSet, cgt_core::algebra::Perm)> {
    let label = InvolutionLabel::parse(label, cat.spec())?;
    let s = cat.involution_rep(&label)?;
    let mut reg = ClassRegistry::for_catalog(cat);
    reg.set_seed(seed);
    let d = ClassSet::from_reps(&mut reg, std::slice::from_ref(&s))?;
    Ok((reg, d, s))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn cgt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread; empty after success.
/// Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn cgt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cgt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a group from a spec such as `"Sp(6,2)"`.
///
/// # Safety
/// `spec` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cgt_group_new(spec: *const c_char, out: *mut *mut CgtGroup) -> i32 {
    guard(|| {
        let spec: GroupSpec = str_arg(spec, "spec")?.parse()?;
        let g = Box::new(CgtGroup { inner: make_group(&spec)? });
        put(out, Box::into_raw(g))
    })
}

/// # Safety
/// `g` is null or a handle from `cgt_group_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cgt_group_free(g: *mut CgtGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` is a live group handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cgt_group_order(g: *const CgtGroup, out: *mut u64) -> i32 {
    guard(|| put_u64(out, group_arg(g)?.group().order()))
}

/// The order in decimal, for orders beyond 64 bits.
///
/// # Safety
/// `g` is a live group handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cgt_group_order_string(g: *const CgtGroup, out: *mut *mut c_char) -> i32 {
    guard(|| put_string(out, group_arg(g)?.group().order().to_string()))
}

/// Number of points acted on.
///
/// # Safety
/// `g` is a live group handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cgt_group_degree(g: *const CgtGroup, out: *mut u64) -> i32 {
    guard(|| put(out, group_arg(g)?.degree() as u64))
}

/// Component group of the involution class `label`. `samples` is used in
/// randomized mode only.
///
/// # Safety
/// `g` is a live group handle; `label` is a NUL-terminated string; `out`
/// is writable.
#[no_mangle]
pub unsafe extern "C" fn cgt_delta_compute(
    g: *const CgtGroup,
    label: *const c_char,
    mode: i32,
    samples: u64,
    seed: u64,
    out: *mut *mut CgtDelta,
) -> i32 {
    guard(|| {
        let cat = group_arg(g)?;
        let label = str_arg(label, "label")?;
        let opts = options(mode, samples, seed)?;
        let (mut reg, d, s) = setup(cat, label, seed)?;
        let r = transport(&mut reg, &d, &s, &opts)?;
        let delta = CgtDelta {
            order: r.delta.order(),
            elementary_abelian: r.delta.is_elementary_abelian(cat.characteristic()),
            completeness: r.completeness,
        };
        put(out, Box::into_raw(Box::new(delta)))
    })
}

/// # Safety
/// `d` is a live result handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cgt_delta_order(d: *const CgtDelta, out: *mut u64) -> i32 {
    guard(|| put_u64(out, d.as_ref().ok_or_else(|| null("delta"))?.order))
}

/// Writes 1 if the component group is elementary abelian, else 0.
///
/// # Safety
/// `d` is a live result handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cgt_delta_is_elementary_abelian(d: *const CgtDelta, out: *mut i32) -> i32 {
    guard(|| put(out, d.as_ref().ok_or_else(|| null("delta"))?.elementary_abelian as i32))
}

/// Writes one of the `CGT_COMPLETENESS_*` values.
///
/// # Safety
/// `d` is a live result handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cgt_delta_completeness(d: *const CgtDelta, out: *mut i32) -> i32 {
    guard(|| {
        let c = match d.as_ref().ok_or_else(|| null("delta"))?.completeness {
            Completeness::Exact => CGT_COMPLETENESS_EXACT,
            Completeness::ExactG => CGT_COMPLETENESS_EXACT_G,
            Completeness::RandomizedLowerBound => CGT_COMPLETENESS_LOWER_BOUND,
        };
        put(out, c)
    })
}

/// # Safety
/// `d` is null or a handle from `cgt_delta_compute` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cgt_delta_free(d: *mut CgtDelta) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Order of the terminal component group of the class `label`.
///
/// # Safety
/// `g` is a live group handle; `label` is a NUL-terminated string; `out`
/// is writable.
#[no_mangle]
pub unsafe extern "C" fn cgt_delta_infinity_order(
    g: *const CgtGroup,
    label: *const c_char,
    mode: i32,
    samples: u64,
    seed: u64,
    out: *mut u64,
) -> i32 {
    guard(|| {
        let cat = group_arg(g)?;
        let label = str_arg(label, "label")?;
        let opts = options(mode, samples, seed)?;
        let (mut reg, d, s) = setup(cat, label, seed)?;
        let chain = delta_infinity(&mut reg, &s, &d, &opts)?;
        if let Some(e) = chain.error {
            return Err(Failure::Code(CGT_ERR_BUDGET, e));
        }
        put_u64(out, chain.terminal.order())
    })
}

/// The class graph in DOT format.
///
/// # Safety
/// `g` is a live group handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cgt_class_graph_dot(
    g: *const CgtGroup,
    mode: i32,
    samples: u64,
    seed: u64,
    out: *mut *mut c_char,
) -> i32 {
    guard(|| {
        let cat = group_arg(g)?;
        let opts = options(mode, samples, seed)?;
        let mut reg = ClassRegistry::for_catalog(cat);
        reg.set_seed(seed);
        put_string(out, class_graph(&mut reg, &opts)?.to_dot())
    })
}

/// Decides binarity of the action on cosets of a TI-subgroup named as in
/// the command line (`root:long`, `sylow:2`, ...). Writes 1 for binary and
/// 0 otherwise; a subgroup that is not TI is a usage error.
///
/// # Safety
/// `g` is a live group handle; `subgroup` is a NUL-terminated string;
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cgt_binary_ti(g: *const CgtGroup, subgroup: *const c_char, out: *mut i32) -> i32 {
    guard(|| {
        let cat = group_arg(g)?;
        let (h, name) = cgt_core::cli::subgroup(cat, str_arg(subgroup, "subgroup")?)?;
        match ti_binary_criterion(cat.group(), &h)? {
            TiVerdict::NotTi => Err(Failure::Code(CGT_ERR_USAGE, format!("{name} is not a TI-subgroup"))),
            TiVerdict::Binary { .. } => put(out, 1),
            TiVerdict::NotBinary { .. } => put(out, 0),
        }
    })
}
