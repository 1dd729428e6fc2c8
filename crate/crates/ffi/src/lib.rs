//! C ABI over the domino-towers engine.
//!
//! Every function returns a [`DtStatus`]; on failure a message is available
//! from [`dt_last_error`] on the same thread. Strings are written into
//! caller buffers as NUL-terminated UTF-8. Passing a null buffer with length
//! 0 queries the size needed, reported through `required`.
//!
//! Handles are opaque and must be released with their `_free` function.
//! A handle may be moved between threads but not used from two at once.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use domino_towers::asymptotics::{theta_exact, to_decimal};
use domino_towers::enumerate::{enumerate, BaseSelector, EnumerationRequest};
use domino_towers::{BlockCounts, Counts, Error, Family, TowerClass, TowerShape};

pub const DT_FAMILY_G: u32 = 0;
pub const DT_FAMILY_H: u32 = 1;
pub const DT_FAMILY_R: u32 = 2;
pub const DT_FAMILY_C: u32 = 3;

pub const DT_CLASS_STACK: u32 = 0;
pub const DT_CLASS_RIGHT_SKEWED: u32 = 1;
pub const DT_CLASS_LEFT_SKEWED: u32 = 2;
pub const DT_CLASS_SUPPORTING: u32 = 3;
pub const DT_CLASS_CONVEX_OTHER: u32 = 4;
pub const DT_CLASS_NON_CONVEX: u32 = 5;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DtStatus {
    DtOk = 0,
    /// The enumerator has no more towers.
    DtDone = 1,
    DtInvalidArgument = 2,
    DtNullPointer = 3,
    DtBufferTooSmall = 4,
    DtCapExceeded = 5,
    DtUnsupportedK = 6,
    DtUnsupportedB = 7,
    DtPanic = 8,
    DtInternal = 9,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let message = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(message).unwrap_or_default());
}

fn fail(status: DtStatus, message: impl Into<String>) -> DtStatus {
    set_error(message);
    status
}

fn from_error(e: Error) -> DtStatus {
    let status = match e {
        Error::CapExceeded { .. } => DtStatus::DtCapExceeded,
        Error::UnsupportedK(_) => DtStatus::DtUnsupportedK,
        Error::UnsupportedB(_) => DtStatus::DtUnsupportedB,
        Error::InvalidArgument(_) | Error::InvalidShape(_) | Error::SubsetBlowup(_) => {
            DtStatus::DtInvalidArgument
        }
        _ => DtStatus::DtInternal,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning panics into [`DtStatus::DtPanic`].
fn guard(f: impl FnOnce() -> DtStatus) -> DtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => {
            if status == DtStatus::DtOk {
                set_error("");
            }
            status
        }
        Err(_) => fail(DtStatus::DtPanic, "internal panic"),
    }
}

/// Copies `text` plus a NUL terminator into `buf`.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes; `required` null or writable.
unsafe fn write_text(text: &str, buf: *mut c_char, len: usize, required: *mut usize) -> DtStatus {
    let needed = text.len() + 1;
    if !required.is_null() {
        *required = needed;
    }
    if buf.is_null() || len < needed {
        return fail(
            DtStatus::DtBufferTooSmall,
            format!("buffer of {len} bytes, {needed} needed"),
        );
    }
    ptr::copy_nonoverlapping(text.as_ptr(), buf.cast::<u8>(), text.len());
    *buf.add(text.len()) = 0;
    DtStatus::DtOk
}

fn family(code: u32) -> Option<Family> {
    match code {
        DT_FAMILY_G => Some(Family::G),
        DT_FAMILY_H => Some(Family::H),
        DT_FAMILY_R => Some(Family::R),
        DT_FAMILY_C => Some(Family::C),
        _ => None,
    }
}

fn class_code(class: TowerClass) -> u32 {
    match class {
        TowerClass::Stack => DT_CLASS_STACK,
        TowerClass::RightSkewed => DT_CLASS_RIGHT_SKEWED,
        TowerClass::LeftSkewed => DT_CLASS_LEFT_SKEWED,
        TowerClass::Supporting => DT_CLASS_SUPPORTING,
        TowerClass::ConvexOther => DT_CLASS_CONVEX_OTHER,
        TowerClass::NonConvex => DT_CLASS_NON_CONVEX,
    }
}

enum Engine {
    Domino(Counts),
    Block(BlockCounts),
}

/// Memoized counter for one block length.
pub struct DtCounter {
    engine: Engine,
}

/// Creates a counter for blocks of length `k >= 2`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dt_counter_new(k: u32, out: *mut *mut DtCounter) -> DtStatus {
    guard(|| {
        if out.is_null() {
            return fail(DtStatus::DtNullPointer, "out is null");
        }
        let engine = match k {
            2 => Engine::Domino(Counts::new()),
            _ => match BlockCounts::new(k) {
                Ok(b) => Engine::Block(b),
                Err(e) => return from_error(e),
            },
        };
        *out = Box::into_raw(Box::new(DtCounter { engine }));
        DtStatus::DtOk
    })
}

/// Releases a counter; null is ignored.
///
/// # Safety
/// `counter` must come from [`dt_counter_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dt_counter_free(counter: *mut DtCounter) {
    if !counter.is_null() {
        drop(Box::from_raw(counter));
    }
}

/// Writes the count for `family` (a `DT_FAMILY_*` code) at `(b, n)` in
/// decimal.
///
/// # Safety
/// `counter` must be a live handle; see the module notes for buffers.
#[no_mangle]
pub unsafe extern "C" fn dt_counter_count(
    counter: *mut DtCounter,
    family_code: u32,
    b: u32,
    n: u32,
    buf: *mut c_char,
    len: usize,
    required: *mut usize,
) -> DtStatus {
    guard(|| {
        let Some(counter) = counter.as_mut() else {
            return fail(DtStatus::DtNullPointer, "counter is null");
        };
        let Some(family) = family(family_code) else {
            return fail(
                DtStatus::DtInvalidArgument,
                format!("unknown family code {family_code}"),
            );
        };
        let value = match &mut counter.engine {
            Engine::Domino(c) => c.get(family, b, n),
            Engine::Block(c) => match c.get(family, b, n) {
                Ok(v) => v,
                Err(e) => return from_error(e),
            },
        };
        write_text(&value.to_string(), buf, len, required)
    })
}

/// Writes `θ_b` as an exact fraction `numerator/denominator`.
///
/// # Safety
/// See the module notes for buffers.
#[no_mangle]
pub unsafe extern "C" fn dt_theta(
    b: u32,
    buf: *mut c_char,
    len: usize,
    required: *mut usize,
) -> DtStatus {
    guard(|| match theta_exact(b) {
        Ok(t) => write_text(&format!("{}/{}", t.numer(), t.denom()), buf, len, required),
        Err(e) => from_error(e),
    })
}

/// Writes `θ_b` rounded half-up to `decimals` places.
///
/// # Safety
/// See the module notes for buffers.
#[no_mangle]
pub unsafe extern "C" fn dt_theta_decimal(
    b: u32,
    decimals: u32,
    buf: *mut c_char,
    len: usize,
    required: *mut usize,
) -> DtStatus {
    guard(|| match theta_exact(b) {
        Ok(t) => write_text(&to_decimal(&t, decimals), buf, len, required),
        Err(e) => from_error(e),
    })
}

/// Stream of towers with `n` dominoes.
pub struct DtEnumerator {
    towers: Box<dyn Iterator<Item = TowerShape> + Send>,
    /// A tower that did not fit the caller's buffer, returned again next time.
    pending: Option<TowerShape>,
}

/// Starts enumerating towers of `n` dominoes on a base of `b` (0 for every
/// base). Sizes above the default cap are rejected.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dt_enumerator_new(
    n: u32,
    b: u32,
    out: *mut *mut DtEnumerator,
) -> DtStatus {
    guard(|| {
        if out.is_null() {
            return fail(DtStatus::DtNullPointer, "out is null");
        }
        let base = match b {
            0 => BaseSelector::All,
            b => BaseSelector::Fixed(b),
        };
        match enumerate(&EnumerationRequest::new(n, base)) {
            Ok(towers) => {
                let e = DtEnumerator {
                    towers: Box::new(towers),
                    pending: None,
                };
                *out = Box::into_raw(Box::new(e));
                DtStatus::DtOk
            }
            Err(e) => from_error(e),
        }
    })
}

/// Writes the next tower as `x0, y0, x1, y1, ...` cell coordinates into
/// `cells` (capacity `cap` integers), its cell count into `cell_count` and
/// its `DT_CLASS_*` code into `class_out`. Returns `DT_DONE` at the end.
///
/// If `cap` is too small the tower is kept, `cell_count` says how many cells
/// it has, and the next call returns it again.
///
/// # Safety
/// `enumerator` must be live; `cells` valid for `cap` integers;
/// `cell_count` and `class_out` writable or null.
#[no_mangle]
pub unsafe extern "C" fn dt_enumerator_next(
    enumerator: *mut DtEnumerator,
    cells: *mut i32,
    cap: usize,
    cell_count: *mut usize,
    class_out: *mut u32,
) -> DtStatus {
    guard(|| {
        let Some(e) = enumerator.as_mut() else {
            return fail(DtStatus::DtNullPointer, "enumerator is null");
        };
        let Some(shape) = e.pending.take().or_else(|| e.towers.next()) else {
            return DtStatus::DtDone;
        };
        let coords = shape.cells();
        if !cell_count.is_null() {
            *cell_count = coords.len();
        }
        if cells.is_null() || cap < 2 * coords.len() {
            e.pending = Some(shape);
            return fail(
                DtStatus::DtBufferTooSmall,
                format!("{} integers needed", 2 * coords.len()),
            );
        }
        for (i, (x, y)) in coords.into_iter().enumerate() {
            *cells.add(2 * i) = x;
            *cells.add(2 * i + 1) = y;
        }
        if !class_out.is_null() {
            *class_out = class_code(shape.classify());
        }
        DtStatus::DtOk
    })
}

/// Releases an enumerator; null is ignored.
///
/// # Safety
/// `enumerator` must come from [`dt_enumerator_new`] and not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn dt_enumerator_free(enumerator: *mut DtEnumerator) {
    if !enumerator.is_null() {
        drop(Box::from_raw(enumerator));
    }
}

/// Message for the last failure on this thread, empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn dt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn dt_version() -> *const c_char {
    static VERSION: &CStr =
        match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
            Ok(v) => v,
            Err(_) => panic!("version contains NUL"),
        };
    VERSION.as_ptr()
}
