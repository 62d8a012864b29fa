//! C ABI for the sl21 library: compute H^1 of a single (chi, lambda)
//! instance behind an opaque handle, or run a whole sweep and receive the
//! JSON table. All functions are panic-safe; errors come back as status
//! codes.
//!
//! The generated header lives at `include/sl21.h`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use sl21::sweep::{emit_json, sweep, ChiSpec, LambdaSpec, ModuleKind};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Sl21Status {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8 or did not parse.
    InvalidArgument = 2,
    /// The characteristic is not an odd prime below 2^16.
    BadCharacteristic = 3,
    /// The weight does not satisfy the p-character compatibility equations.
    InadmissibleWeight = 4,
    /// The two cohomology routes disagreed (library bug; cannot happen on
    /// a healthy build).
    InternalInconsistency = 5,
    /// A panic was caught at the boundary.
    Panic = 6,
}

/// Orbit class of the p-character.
#[repr(C)]
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Sl21ChiKind {
    Zero = 0,
    Semisimple = 1,
    Nilpotent = 2,
}

/// Which module family to build.
#[repr(C)]
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Sl21ModuleKind {
    Kac = 0,
    Simple = 1,
}

/// Opaque result of one computed instance.
pub struct Sl21Instance {
    dim_h1: u32,
    dim_even: u32,
    dim_odd: u32,
    module_dim: u32,
    predicted: i32,
    matched: i32,
}

fn chi_spec(kind: Sl21ChiKind, r: i64, s: i64) -> ChiSpec {
    match kind {
        Sl21ChiKind::Zero => ChiSpec::Zero,
        Sl21ChiKind::Semisimple => ChiSpec::Semisimple { r, s },
        Sl21ChiKind::Nilpotent => ChiSpec::Nilpotent { r },
    }
}

fn module_kind(kind: Sl21ModuleKind) -> ModuleKind {
    match kind {
        Sl21ModuleKind::Kac => ModuleKind::Kac,
        Sl21ModuleKind::Simple => ModuleKind::Simple,
    }
}

fn status_of(err: &sl21::Error) -> Sl21Status {
    match err {
        sl21::Error::BadCharacteristic(_) | sl21::Error::CharacteristicTooLarge(_) => {
            Sl21Status::BadCharacteristic
        }
        sl21::Error::InadmissibleWeight(_) | sl21::Error::NoAdmissibleWeights => {
            Sl21Status::InadmissibleWeight
        }
        sl21::Error::ParseElement(_) => Sl21Status::InvalidArgument,
        sl21::Error::Inconsistent(_) => Sl21Status::InternalInconsistency,
        _ => Sl21Status::InvalidArgument,
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn sl21_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Compute one instance and hand back an opaque handle through `out`.
///
/// `lambda1` and `lambda2` are field-element literals: integers for the
/// prime subfield, or `a+b*t` forms over the Artin-Schreier extension
/// (which is selected automatically when the character needs it). `r` and
/// `s` are integer parameters of the character; `s` is ignored unless the
/// kind is semisimple.
///
/// # Safety
/// `lambda1`, `lambda2` must be valid NUL-terminated strings and `out` a
/// valid pointer; the handle must be released with [`sl21_instance_free`].
#[no_mangle]
pub unsafe extern "C" fn sl21_instance_compute(
    p: u16,
    chi_kind: Sl21ChiKind,
    r: i64,
    s: i64,
    lambda1: *const c_char,
    lambda2: *const c_char,
    kind: Sl21ModuleKind,
    out: *mut *mut Sl21Instance,
) -> Sl21Status {
    if lambda1.is_null() || lambda2.is_null() || out.is_null() {
        return Sl21Status::NullArgument;
    }
    let (Ok(l1), Ok(l2)) = (
        CStr::from_ptr(lambda1).to_str(),
        CStr::from_ptr(lambda2).to_str(),
    ) else {
        return Sl21Status::InvalidArgument;
    };
    let result = catch_unwind(AssertUnwindSafe(|| {
        let lambda = LambdaSpec::Pair(l1.to_string(), l2.to_string());
        let table = sweep(
            p as u64,
            chi_spec(chi_kind, r, s),
            &lambda,
            &[module_kind(kind)],
            Some(1),
        )?;
        let row = table.rows.into_iter().next().expect("one instance");
        Ok::<Sl21Instance, sl21::Error>(Sl21Instance {
            dim_h1: row.dim_h1 as u32,
            dim_even: row.dim_even as u32,
            dim_odd: row.dim_odd as u32,
            module_dim: row.module_dim as u32,
            predicted: row.predicted.map_or(-1, |d| d as i32),
            matched: match row.matched {
                None => -1,
                Some(false) => 0,
                Some(true) => 1,
            },
        })
    }));
    match result {
        Ok(Ok(instance)) => {
            *out = Box::into_raw(Box::new(instance));
            Sl21Status::Ok
        }
        Ok(Err(e)) => status_of(&e),
        Err(_) => Sl21Status::Panic,
    }
}

/// Total dimension of H^1 for a computed instance.
///
/// # Safety
/// `instance` must be a live handle from [`sl21_instance_compute`].
#[no_mangle]
pub unsafe extern "C" fn sl21_instance_dim_h1(instance: *const Sl21Instance) -> u32 {
    instance.as_ref().map_or(0, |i| i.dim_h1)
}

/// Even-parity dimension of H^1.
///
/// # Safety
/// `instance` must be a live handle from [`sl21_instance_compute`].
#[no_mangle]
pub unsafe extern "C" fn sl21_instance_dim_even(instance: *const Sl21Instance) -> u32 {
    instance.as_ref().map_or(0, |i| i.dim_even)
}

/// Odd-parity dimension of H^1.
///
/// # Safety
/// `instance` must be a live handle from [`sl21_instance_compute`].
#[no_mangle]
pub unsafe extern "C" fn sl21_instance_dim_odd(instance: *const Sl21Instance) -> u32 {
    instance.as_ref().map_or(0, |i| i.dim_odd)
}

/// Dimension of the underlying module.
///
/// # Safety
/// `instance` must be a live handle from [`sl21_instance_compute`].
#[no_mangle]
pub unsafe extern "C" fn sl21_instance_module_dim(instance: *const Sl21Instance) -> u32 {
    instance.as_ref().map_or(0, |i| i.module_dim)
}

/// The predicted dimension from the closed-form table, or -1 when no
/// prediction applies (p = 3).
///
/// # Safety
/// `instance` must be a live handle from [`sl21_instance_compute`].
#[no_mangle]
pub unsafe extern "C" fn sl21_instance_predicted(instance: *const Sl21Instance) -> i32 {
    instance.as_ref().map_or(-1, |i| i.predicted)
}

/// 1 when the computed dimension matches the prediction, 0 when it does
/// not, -1 when no prediction applies.
///
/// # Safety
/// `instance` must be a live handle from [`sl21_instance_compute`].
#[no_mangle]
pub unsafe extern "C" fn sl21_instance_matched(instance: *const Sl21Instance) -> i32 {
    instance.as_ref().map_or(-1, |i| i.matched)
}

/// Release a handle. Null is allowed.
///
/// # Safety
/// `instance` must be null or a handle from [`sl21_instance_compute`] that
/// has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn sl21_instance_free(instance: *mut Sl21Instance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Sweep every admissible weight for the character and module kind and
/// return the JSON table (schema as in the `sl21` command-line tool)
/// through `out_json`. Free the string with [`sl21_string_free`].
///
/// # Safety
/// `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl21_sweep_json(
    p: u16,
    chi_kind: Sl21ChiKind,
    r: i64,
    s: i64,
    kind: Sl21ModuleKind,
    show_cocycles: bool,
    out_json: *mut *mut c_char,
) -> Sl21Status {
    if out_json.is_null() {
        return Sl21Status::NullArgument;
    }
    let result = catch_unwind(AssertUnwindSafe(|| {
        let table = sweep(
            p as u64,
            chi_spec(chi_kind, r, s),
            &LambdaSpec::All,
            &[module_kind(kind)],
            None,
        )?;
        let doc = emit_json(&table, show_cocycles);
        Ok::<String, sl21::Error>(serde_json::to_string(&doc).expect("serializable table"))
    }));
    match result {
        Ok(Ok(text)) => {
            let c = CString::new(text).expect("JSON contains no interior NUL");
            *out_json = c.into_raw();
            Sl21Status::Ok
        }
        Ok(Err(e)) => status_of(&e),
        Err(_) => Sl21Status::Panic,
    }
}

/// Free a string returned by [`sl21_sweep_json`]. Null is allowed.
///
/// # Safety
/// `s` must be null or a pointer produced by this library and not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn sl21_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
