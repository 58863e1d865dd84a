//! C ABI over `cfsl2`.
//!
//! Every fallible call returns a [`Cfsl2Status`]; on failure the message is
//! kept per thread and read back with [`cfsl2_last_error`]. Handles are
//! opaque and owned by the caller until passed to their `_free` function.
//!
//! Ring elements are reported as `(a, b)` coefficients on the basis `1, ω`
//! of the ring (`ω = i` for `d = 1`).

use cfsl2::cf::{expand_expr, CFExpansion, PrecisionPolicy};
use cfsl2::cli::{self, Command, Config};
use cfsl2::field::{Expr, OKInt, Ring};
use cfsl2::matrix::{run_orbit, OrbitRun};
use cfsl2::Error;
use num_traits::ToPrimitive;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cfsl2Status {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Config = 4,
    Precision = 5,
    UnsupportedRing = 6,
    OutOfRange = 7,
    Budget = 8,
    InsufficientData = 9,
    Domain = 10,
    Io = 11,
    Panic = 12,
}

impl From<&Error> for Cfsl2Status {
    fn from(e: &Error) -> Self {
        match e {
            Error::PrecisionInsufficient { .. } | Error::DivisionNearZero { .. } => Cfsl2Status::Precision,
            Error::IndexOutOfRange { .. } => Cfsl2Status::OutOfRange,
            Error::NotCoprime { .. } | Error::Domain(_) => Cfsl2Status::Domain,
            Error::UnsupportedRing(_) => Cfsl2Status::UnsupportedRing,
            Error::InsufficientData(_) => Cfsl2Status::InsufficientData,
            Error::EnumerationBudgetExceeded { .. } => Cfsl2Status::Budget,
            Error::Parse(_) => Cfsl2Status::Parse,
            Error::Config(_) => Cfsl2Status::Config,
            Error::Io(_) => Cfsl2Status::Io,
        }
    }
}

/// A continued fraction expansion.
pub struct Cfsl2Expansion {
    inner: CFExpansion,
}

/// The matrices produced by an orbit run, sorted by `(k, j)`.
pub struct Cfsl2Orbit {
    inner: OrbitRun,
}

/// One orbit matrix. `j` is `-1` for targets without a second expansion.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct Cfsl2OrbitRecord {
    pub k: u64,
    pub j: i64,
    pub height: f64,
    pub err: f64,
    pub predicted_bound: f64,
    pub measured_constant: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("no interior nul"));
}

struct Fail(Cfsl2Status, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail((&e).into(), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> Cfsl2Status {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => Cfsl2Status::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            Cfsl2Status::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(Cfsl2Status::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(Cfsl2Status::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null("handle"))
}

fn ring(d: u32) -> Result<Ring, Fail> {
    Ring::from_d(d).map_err(Fail::from)
}

fn coeffs(v: &OKInt, a: &mut i64, b: &mut i64) -> Result<(), Fail> {
    match (v.a().to_i64(), v.b().to_i64()) {
        (Some(x), Some(y)) => {
            *a = x;
            *b = y;
            Ok(())
        }
        _ => Err(Fail(Cfsl2Status::OutOfRange, "coefficient does not fit in 64 bits".into())),
    }
}

/// Library version, a static nul-terminated string.
#[no_mangle]
pub extern "C" fn cfsl2_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, empty after a success.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn cfsl2_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Expands the expression `expr` (e.g. `"sqrt(2) + i/3"`) over the ring of
/// discriminant `d` for at most `terms` partial quotients.
///
/// # Safety
/// `expr` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cfsl2_expand(
    d: u32,
    expr: *const c_char,
    terms: usize,
    out: *mut *mut Cfsl2Expansion,
) -> Cfsl2Status {
    guard(|| {
        let out = out_arg(out, "out")?;
        let src = str_arg(expr, "expr")?;
        if terms == 0 {
            return Err(Fail(Cfsl2Status::InvalidArgument, "terms must be positive".into()));
        }
        let e = Expr::parse(src)?;
        let inner = expand_expr(&e, ring(d)?, terms, PrecisionPolicy::default())?;
        *out = Box::into_raw(Box::new(Cfsl2Expansion { inner }));
        Ok(())
    })
}

/// # Safety
/// `h` must come from [`cfsl2_expand`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cfsl2_expansion_free(h: *mut Cfsl2Expansion) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of partial quotients, 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live expansion handle.
#[no_mangle]
pub unsafe extern "C" fn cfsl2_expansion_len(h: *const Cfsl2Expansion) -> usize {
    h.as_ref().map_or(0, |h| h.inner.len())
}

/// Whether the expansion stopped because the value is in the field.
///
/// # Safety
/// `h` must be null or a live expansion handle.
#[no_mangle]
pub unsafe extern "C" fn cfsl2_expansion_terminated(h: *const Cfsl2Expansion) -> bool {
    h.as_ref().is_some_and(|h| h.inner.terminated())
}

/// Partial quotient `a_n`.
///
/// # Safety
/// `h` must be a live expansion handle, `a` and `b` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cfsl2_expansion_quotient(
    h: *const Cfsl2Expansion,
    n: usize,
    a: *mut i64,
    b: *mut i64,
) -> Cfsl2Status {
    guard(|| {
        let h = handle(h)?;
        let (a, b) = (out_arg(a, "a")?, out_arg(b, "b")?);
        if n >= h.inner.len() {
            return Err(Error::IndexOutOfRange {
                index: n as i64,
                available: format!("0..{}", h.inner.len()),
            }
            .into());
        }
        coeffs(h.inner.a(n), a, b)
    })
}

/// Convergent `p_n / q_n`; `n` may be `-1` or `-2`.
///
/// # Safety
/// `h` must be a live expansion handle and the four outputs valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cfsl2_expansion_convergent(
    h: *const Cfsl2Expansion,
    n: i64,
    p_a: *mut i64,
    p_b: *mut i64,
    q_a: *mut i64,
    q_b: *mut i64,
) -> Cfsl2Status {
    guard(|| {
        let h = handle(h)?;
        let (pa, pb) = (out_arg(p_a, "p_a")?, out_arg(p_b, "p_b")?);
        let (qa, qb) = (out_arg(q_a, "q_a")?, out_arg(q_b, "q_b")?);
        let (p, q) = (h.inner.p(n)?, h.inner.q(n)?);
        coeffs(p, pa, pb)?;
        coeffs(q, qa, qb)
    })
}

/// `|q_n z − p_n|` to double precision.
///
/// # Safety
/// `h` must be a live expansion handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cfsl2_expansion_error(h: *const Cfsl2Expansion, n: i64, out: *mut f64) -> Cfsl2Status {
    guard(|| {
        let h = handle(h)?;
        let out = out_arg(out, "out")?;
        let e = h.inner.eps(n)?;
        *out = e.re_f64().hypot(e.im_f64());
        Ok(())
    })
}

/// Runs the orbit experiment described by `config`, written in the same
/// `key = value` form as the `orbit` command's config file (no `include`).
///
/// # Safety
/// `config` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cfsl2_orbit_run(config: *const c_char, out: *mut *mut Cfsl2Orbit) -> Cfsl2Status {
    guard(|| {
        let out = out_arg(out, "out")?;
        let cfg = Config::parse(str_arg(config, "config")?, None)?;
        let (spec, policy) = cli::orbit_from_config(&cfg)?;
        let inner = run_orbit(&spec, policy)?;
        *out = Box::into_raw(Box::new(Cfsl2Orbit { inner }));
        Ok(())
    })
}

/// # Safety
/// `h` must come from [`cfsl2_orbit_run`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cfsl2_orbit_free(h: *mut Cfsl2Orbit) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of records, 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live orbit handle.
#[no_mangle]
pub unsafe extern "C" fn cfsl2_orbit_len(h: *const Cfsl2Orbit) -> usize {
    h.as_ref().map_or(0, |h| h.inner.records.len())
}

/// Record `i` of the run.
///
/// # Safety
/// `h` must be a live orbit handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cfsl2_orbit_record(h: *const Cfsl2Orbit, i: usize, out: *mut Cfsl2OrbitRecord) -> Cfsl2Status {
    guard(|| {
        let h = handle(h)?;
        let out = out_arg(out, "out")?;
        let r = h.inner.records.get(i).ok_or_else(|| {
            Fail::from(Error::IndexOutOfRange {
                index: i as i64,
                available: format!("0..{}", h.inner.records.len()),
            })
        })?;
        *out = Cfsl2OrbitRecord {
            k: r.k as u64,
            j: r.j.map_or(-1, |j| j as i64),
            height: r.height_f64(),
            err: r.err_f64(),
            predicted_bound: r.predicted,
            measured_constant: r.measured_constant,
        };
        Ok(())
    })
}

/// Matrix of record `i` as four ring elements `v1, u1, v2, u2` (row major),
/// each written as two coefficients: `out[2m]`, `out[2m + 1]`.
///
/// # Safety
/// `h` must be a live orbit handle and `out` point to 8 writable `int64_t`.
#[no_mangle]
pub unsafe extern "C" fn cfsl2_orbit_matrix(h: *const Cfsl2Orbit, i: usize, out: *mut i64) -> Cfsl2Status {
    guard(|| {
        let h = handle(h)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let r = h.inner.records.get(i).ok_or_else(|| {
            Fail::from(Error::IndexOutOfRange {
                index: i as i64,
                available: format!("0..{}", h.inner.records.len()),
            })
        })?;
        let mut buf = [0i64; 8];
        for (m, v) in r.gamma.entries().iter().enumerate() {
            let (mut a, mut b) = (0, 0);
            coeffs(v, &mut a, &mut b)?;
            buf[2 * m] = a;
            buf[2 * m + 1] = b;
        }
        std::ptr::copy_nonoverlapping(buf.as_ptr(), out, 8);
        Ok(())
    })
}

/// Runs a CLI command (`"expand"`, `"orbit"`, `"exponent"`, `"dirichlet"`,
/// `"embed-check"`, `"floor-check"`) on config text and returns its main
/// output. Release the string with [`cfsl2_string_free`].
///
/// # Safety
/// `command` and `config` must be valid C strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cfsl2_run_command(
    command: *const c_char,
    config: *const c_char,
    out: *mut *mut c_char,
) -> Cfsl2Status {
    guard(|| {
        let out = out_arg(out, "out")?;
        let name = str_arg(command, "command")?;
        let cmd = Command::from_name(name)
            .ok_or_else(|| Fail(Cfsl2Status::InvalidArgument, format!("unknown command {name:?}")))?;
        let cfg = Config::parse(str_arg(config, "config")?, None)?;
        let o = cli::execute(cmd, &cfg)?;
        let s = CString::new(o.main).map_err(|_| Fail(Cfsl2Status::Domain, "output contains nul".into()))?;
        *out = s.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cfsl2_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
