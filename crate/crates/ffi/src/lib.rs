//! C interface to `sp1-kepler`.
//!
//! A model is an opaque `Sp1Model*` created by [`sp1_model_new`] and
//! released by [`sp1_model_free`]. Every fallible call returns an
//! [`Sp1Status`]; results are written through out-pointers only on
//! `SP1_STATUS_OK`. The message of the most recent failure on the calling
//! thread is available from [`sp1_last_error_message`]. Panics never cross
//! the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_traits::ToPrimitive;
use sp1_kepler::radial::{self, RadialState};
use sp1_kepler::spectral::{self, QuantumNumbers};
use sp1_kepler::{Error, ModelParams};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sp1Status {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NonPositiveCoordinate = 3,
    InsufficientGrid = 4,
    TMaxTooSmall = 5,
    BufferTooSmall = 6,
    Overflow = 7,
    Internal = 8,
}

/// Opaque model handle.
pub struct Sp1Model {
    params: ModelParams,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn fail(status: Sp1Status, message: impl Into<String>) -> Sp1Status {
    LAST_ERROR.with(|e| *e.borrow_mut() = message.into());
    status
}

fn from_error(e: Error) -> Sp1Status {
    let status = match e {
        Error::NonPositiveCoordinate(_) => Sp1Status::NonPositiveCoordinate,
        Error::InsufficientGrid { .. } => Sp1Status::InsufficientGrid,
        Error::TMaxTooSmall { .. } => Sp1Status::TMaxTooSmall,
        _ => Sp1Status::InvalidArgument,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> Sp1Status) -> Sp1Status {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(Sp1Status::Internal, "internal panic"))
}

unsafe fn model<'a>(m: *const Sp1Model) -> Result<&'a Sp1Model, Sp1Status> {
    m.as_ref()
        .ok_or_else(|| fail(Sp1Status::NullPointer, "null model handle"))
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

fn check_out<T>(p: *mut T) -> Result<(), Sp1Status> {
    if p.is_null() {
        Err(fail(Sp1Status::NullPointer, "null output pointer"))
    } else {
        Ok(())
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn sp1_status_string(status: Sp1Status) -> *const c_char {
    let s: &'static CStr = match status {
        Sp1Status::Ok => c"ok",
        Sp1Status::NullPointer => c"null pointer",
        Sp1Status::InvalidArgument => c"invalid argument",
        Sp1Status::NonPositiveCoordinate => c"coordinate must be positive",
        Sp1Status::InsufficientGrid => c"grid too coarse",
        Sp1Status::TMaxTooSmall => c"t_max too small",
        Sp1Status::BufferTooSmall => c"output buffer too small",
        Sp1Status::Overflow => c"result does not fit the output type",
        Sp1Status::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Copies the last error message of this thread, NUL-terminated and
/// truncated to `len − 1` bytes, into `buf`. Returns the full message
/// length excluding the terminator; pass `buf = NULL` to query it.
///
/// # Safety
/// `buf` must be NULL or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn sp1_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn sp1_model_new(n: u32, sigma_bar: u32, out: *mut *mut Sp1Model) -> Sp1Status {
    guard(|| {
        try_status!(check_out(out));
        let params = try_status!(ModelParams::new(n, sigma_bar).map_err(from_error));
        *out = Box::into_raw(Box::new(Sp1Model { params }));
        Sp1Status::Ok
    })
}

/// Releases a handle from [`sp1_model_new`]; NULL is ignored.
///
/// # Safety
/// `m` must be NULL or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sp1_model_free(m: *mut Sp1Model) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// `E_I` as a double.
///
/// # Safety
/// `m` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn sp1_energy(m: *const Sp1Model, level: u32, out: *mut f64) -> Sp1Status {
    guard(|| {
        let m = try_status!(model(m));
        try_status!(check_out(out));
        *out = spectral::energy(&m.params, level).value;
        Sp1Status::Ok
    })
}

/// `E_I = numerator / denominator` in lowest terms.
///
/// # Safety
/// `m` must be a live handle; `numerator` and `denominator` valid for one
/// write each.
#[no_mangle]
pub unsafe extern "C" fn sp1_energy_exact(
    m: *const Sp1Model,
    level: u32,
    numerator: *mut i64,
    denominator: *mut u64,
) -> Sp1Status {
    guard(|| {
        let m = try_status!(model(m));
        try_status!(check_out(numerator));
        try_status!(check_out(denominator));
        let e = spectral::energy(&m.params, level).exact;
        match (e.numer().to_i64(), e.denom().to_u64()) {
            (Some(p), Some(q)) => {
                *numerator = p;
                *denominator = q;
                Sp1Status::Ok
            }
            _ => fail(Sp1Status::Overflow, format!("{e} does not fit 64 bits")),
        }
    })
}

/// Degeneracy of level `I`.
///
/// # Safety
/// `m` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn sp1_degeneracy(m: *const Sp1Model, level: u32, out: *mut u64) -> Sp1Status {
    guard(|| {
        let m = try_status!(model(m));
        try_status!(check_out(out));
        let d = spectral::degeneracy(&m.params, level);
        match d.to_u64() {
            Some(v) => {
                *out = v;
                Sp1Status::Ok
            }
            None => fail(
                Sp1Status::Overflow,
                format!("degeneracy {d} does not fit 64 bits"),
            ),
        }
    })
}

/// The `t`-form radial function of state `(k, l)` at `t`; `normalized`
/// selects unit norm in `L²(t^{2n} dt)`.
///
/// # Safety
/// `m` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn sp1_radial_t(
    m: *const Sp1Model,
    k: u32,
    l: u32,
    t: f64,
    normalized: bool,
    out: *mut f64,
) -> Sp1Status {
    guard(|| {
        let m = try_status!(model(m));
        try_status!(check_out(out));
        let q = try_status!(QuantumNumbers::new(k, l).map_err(from_error));
        let s = RadialState::new(m.params, q);
        *out = try_status!(radial::radial_t(&s, t, normalized).map_err(from_error));
        Sp1Status::Ok
    })
}

/// Lowest `count` finite-difference eigenvalues of channel `l`, written to
/// `out[0..count]`. A non-positive `t_max` selects a box from the requested
/// states.
///
/// # Safety
/// `m` must be a live handle and `out` valid for `out_len` writes.
#[no_mangle]
pub unsafe extern "C" fn sp1_eigensolve(
    m: *const Sp1Model,
    l: u32,
    grid_size: usize,
    t_max: f64,
    count: usize,
    out: *mut f64,
    out_len: usize,
) -> Sp1Status {
    guard(|| {
        let m = try_status!(model(m));
        try_status!(check_out(out));
        if out_len < count {
            return fail(
                Sp1Status::BufferTooSmall,
                format!("buffer holds {out_len} values, {count} requested"),
            );
        }
        let t_max = if t_max > 0.0 {
            t_max
        } else {
            radial::suggested_t_max(&m.params, l, count)
        };
        let values =
            try_status!(radial::eigensolve(&m.params, l, grid_size, t_max, count).map_err(from_error));
        std::ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
        Sp1Status::Ok
    })
}
