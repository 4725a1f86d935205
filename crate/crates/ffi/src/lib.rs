//! C ABI over `nilmetric`.
//!
//! Matrices cross the boundary as 25 `double`s in row-major order. Every
//! function returns an [`NmStatus`]; on failure a description is available
//! from [`nm_last_error`] until the next call on the same thread. Handles
//! are opaque and must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use nilmetric::frames::{Coeff, MilnorFrame};
use nilmetric::moduli::{milnor_frame, InnerProduct};
use nilmetric::ricci::ricci_of_metric;
use nilmetric::solver::{solve_with_tolerance, verify_solution, PrescribedTensor, Solution, VERIFY_TOL};
use nilmetric::{AlgebraId, Mat5};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NmStatus {
    NmOk = 0,
    NmNullPointer = 1,
    NmUnknownAlgebra = 2,
    NmInvalidInput = 3,
    NmUnsolvable = 4,
    NmUnknownCoefficient = 5,
    NmPanic = 6,
}

/// Milnor frame of a metric.
pub struct NmMilnorFrame(MilnorFrame);

/// Verified solution of a prescribed Ricci problem.
pub struct NmSolution(Solution);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn fail(status: NmStatus, msg: impl Into<String>) -> NmStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> NmStatus + UnwindSafe) -> NmStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(f).unwrap_or_else(|_| fail(NmStatus::NmPanic, "internal panic"))
}

/// Message of the last failure on this thread, or NULL. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn nm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Number of algebras in the catalog.
#[no_mangle]
pub extern "C" fn nm_algebra_count() -> usize {
    AlgebraId::ALL.len()
}

/// Display name of the `index`-th algebra (static string), or NULL.
#[no_mangle]
pub extern "C" fn nm_algebra_name(index: usize) -> *const c_char {
    const NAMES: [&CStr; 9] = [
        c"5A1",
        c"A5,4",
        c"A3,1+2A1",
        c"A4,1+A1",
        c"A5,6",
        c"A5,5",
        c"A5,3",
        c"A5,1",
        c"A5,2",
    ];
    NAMES.get(index).map_or(ptr::null(), |s| s.as_ptr())
}

unsafe fn read_id(id: *const c_char) -> Result<AlgebraId, NmStatus> {
    if id.is_null() {
        return Err(fail(NmStatus::NmNullPointer, "algebra id is NULL"));
    }
    let s = CStr::from_ptr(id)
        .to_str()
        .map_err(|_| fail(NmStatus::NmUnknownAlgebra, "algebra id is not UTF-8"))?;
    s.parse()
        .map_err(|e: nilmetric::algebra::UnknownAlgebra| fail(NmStatus::NmUnknownAlgebra, e.to_string()))
}

unsafe fn read_mat(p: *const f64) -> Result<Mat5, NmStatus> {
    if p.is_null() {
        return Err(fail(NmStatus::NmNullPointer, "matrix pointer is NULL"));
    }
    Ok(Mat5::from_row_slice(std::slice::from_raw_parts(p, 25)))
}

unsafe fn write_mat(m: &Mat5, out: *mut f64) {
    let out = std::slice::from_raw_parts_mut(out, 25);
    for r in 0..5 {
        for c in 0..5 {
            out[5 * r + c] = m[(r, c)];
        }
    }
}

unsafe fn read_coeff(name: *const c_char) -> Result<Coeff, NmStatus> {
    if name.is_null() {
        return Err(fail(NmStatus::NmNullPointer, "coefficient name is NULL"));
    }
    let s = CStr::from_ptr(name).to_string_lossy();
    Coeff::from_name(&s).ok_or_else(|| fail(NmStatus::NmUnknownCoefficient, format!("unknown coefficient `{s}`")))
}

/// Builds the Milnor frame of the Gram matrix `gram` for algebra `id`.
///
/// # Safety
/// `id` must be a NUL-terminated string, `gram` must point to 25 doubles and
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nm_milnor_frame_new(
    id: *const c_char,
    gram: *const f64,
    out: *mut *mut NmMilnorFrame,
) -> NmStatus {
    guard(|| {
        if out.is_null() {
            return fail(NmStatus::NmNullPointer, "out is NULL");
        }
        let run = || -> Result<MilnorFrame, NmStatus> {
            let id = read_id(id)?;
            let s = InnerProduct::new(read_mat(gram)?).map_err(|e| fail(NmStatus::NmInvalidInput, e.to_string()))?;
            milnor_frame(id, &s).map_err(|e| fail(NmStatus::NmInvalidInput, e.to_string()))
        };
        match run() {
            Ok(f) => {
                *out = Box::into_raw(Box::new(NmMilnorFrame(f)));
                NmStatus::NmOk
            }
            Err(s) => s,
        }
    })
}

/// # Safety
/// `frame` must come from [`nm_milnor_frame_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nm_milnor_frame_free(frame: *mut NmMilnorFrame) {
    if !frame.is_null() {
        drop(Box::from_raw(frame));
    }
}

/// Scale `eta` with `Vᵀ(eta·S)V = I`.
///
/// # Safety
/// `frame` must be a live handle and `eta` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nm_milnor_frame_eta(frame: *const NmMilnorFrame, eta: *mut f64) -> NmStatus {
    guard(|| match (frame.as_ref(), eta.is_null()) {
        (Some(f), false) => {
            *eta = f.0.eta;
            NmStatus::NmOk
        }
        _ => fail(NmStatus::NmNullPointer, "frame or eta is NULL"),
    })
}

/// Frame vectors as the columns of a row-major 5×5 matrix.
///
/// # Safety
/// `frame` must be a live handle and `out` must point to 25 doubles.
#[no_mangle]
pub unsafe extern "C" fn nm_milnor_frame_vectors(frame: *const NmMilnorFrame, out: *mut f64) -> NmStatus {
    guard(|| match (frame.as_ref(), out.is_null()) {
        (Some(f), false) => {
            write_mat(&f.0.v, out);
            NmStatus::NmOk
        }
        _ => fail(NmStatus::NmNullPointer, "frame or out is NULL"),
    })
}

/// Value of a named coefficient (`alpha`, …, `sigma`); absent ones read 0.
///
/// # Safety
/// `frame` must be a live handle, `name` NUL-terminated, `value` valid.
#[no_mangle]
pub unsafe extern "C" fn nm_milnor_frame_coefficient(
    frame: *const NmMilnorFrame,
    name: *const c_char,
    value: *mut f64,
) -> NmStatus {
    guard(|| {
        let (Some(f), false) = (frame.as_ref(), value.is_null()) else {
            return fail(NmStatus::NmNullPointer, "frame or value is NULL");
        };
        match read_coeff(name) {
            Ok(c) => {
                *value = f.0.coeffs.value(c);
                NmStatus::NmOk
            }
            Err(s) => s,
        }
    })
}

/// Ricci matrix of the metric `gram` in its canonical orthonormal frame.
///
/// # Safety
/// `id` NUL-terminated; `gram` and `out` must point to 25 doubles.
#[no_mangle]
pub unsafe extern "C" fn nm_ricci_from_gram(id: *const c_char, gram: *const f64, out: *mut f64) -> NmStatus {
    guard(|| {
        if out.is_null() {
            return fail(NmStatus::NmNullPointer, "out is NULL");
        }
        let run = || -> Result<Mat5, NmStatus> {
            let id = read_id(id)?;
            let s = InnerProduct::new(read_mat(gram)?).map_err(|e| fail(NmStatus::NmInvalidInput, e.to_string()))?;
            let (ric, _, _) = ricci_of_metric(id, &s).map_err(|e| fail(NmStatus::NmInvalidInput, e.to_string()))?;
            Ok(ric.m)
        };
        match run() {
            Ok(m) => {
                write_mat(&m, out);
                NmStatus::NmOk
            }
            Err(s) => s,
        }
    })
}

/// Solves `Ric = t²T`. Returns `NmUnsolvable` (with a reason) when no
/// verified solution exists; `tolerance <= 0` selects the default 1e-8.
///
/// # Safety
/// `id` NUL-terminated; `tensor` must point to 25 doubles; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn nm_solve(
    id: *const c_char,
    tensor: *const f64,
    tolerance: f64,
    out: *mut *mut NmSolution,
) -> NmStatus {
    guard(|| {
        if out.is_null() {
            return fail(NmStatus::NmNullPointer, "out is NULL");
        }
        let run = || -> Result<Solution, NmStatus> {
            let id = read_id(id)?;
            let t = PrescribedTensor::new(id, read_mat(tensor)?)
                .map_err(|e| fail(NmStatus::NmInvalidInput, e.to_string()))?;
            let tol = if tolerance > 0.0 { tolerance } else { VERIFY_TOL };
            solve_with_tolerance(&t, tol).map_err(|e| fail(NmStatus::NmUnsolvable, e.to_string()))
        };
        match run() {
            Ok(s) => {
                *out = Box::into_raw(Box::new(NmSolution(s)));
                NmStatus::NmOk
            }
            Err(s) => s,
        }
    })
}

/// # Safety
/// `sol` must come from [`nm_solve`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nm_solution_free(sol: *mut NmSolution) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}

/// Coefficient of the solution (`t = 1` normalization).
///
/// # Safety
/// `sol` live, `name` NUL-terminated, `value` valid.
#[no_mangle]
pub unsafe extern "C" fn nm_solution_coefficient(
    sol: *const NmSolution,
    name: *const c_char,
    value: *mut f64,
) -> NmStatus {
    guard(|| {
        let (Some(s), false) = (sol.as_ref(), value.is_null()) else {
            return fail(NmStatus::NmNullPointer, "solution or value is NULL");
        };
        match read_coeff(name) {
            Ok(c) => {
                *value = s.0.coeffs.value(c);
                NmStatus::NmOk
            }
            Err(st) => st,
        }
    })
}

/// `t`, verification residual and whether only sufficiency is claimed.
///
/// # Safety
/// `sol` live; each non-NULL output pointer is written.
#[no_mangle]
pub unsafe extern "C" fn nm_solution_info(
    sol: *const NmSolution,
    t: *mut f64,
    residual: *mut f64,
    sufficiency_only: *mut bool,
) -> NmStatus {
    guard(|| {
        let Some(s) = sol.as_ref() else {
            return fail(NmStatus::NmNullPointer, "solution is NULL");
        };
        if !t.is_null() {
            *t = s.0.t;
        }
        if !residual.is_null() {
            *residual = s.0.residual;
        }
        if !sufficiency_only.is_null() {
            *sufficiency_only = s.0.sufficiency_only;
        }
        NmStatus::NmOk
    })
}

/// Recomputes `‖Ric(coeffs) − t²T‖∞` for `sol` against `tensor`.
///
/// # Safety
/// `sol` live; `tensor` must point to 25 doubles; `residual` valid.
#[no_mangle]
pub unsafe extern "C" fn nm_solution_verify(
    sol: *const NmSolution,
    tensor: *const f64,
    residual: *mut f64,
) -> NmStatus {
    guard(|| {
        let (Some(s), false) = (sol.as_ref(), residual.is_null()) else {
            return fail(NmStatus::NmNullPointer, "solution or residual is NULL");
        };
        let t = match read_mat(tensor).and_then(|m| {
            PrescribedTensor::new(s.0.coeffs.id, m).map_err(|e| fail(NmStatus::NmInvalidInput, e.to_string()))
        }) {
            Ok(t) => t,
            Err(st) => return st,
        };
        *residual = verify_solution(&s.0, &t);
        NmStatus::NmOk
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn last_error() -> String {
        let p = nm_last_error();
        assert!(!p.is_null());
        unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
    }

    #[test]
    fn solve_and_inspect() {
        let mut t = [0.0; 25];
        t[0] = -1.0;
        t[6] = -1.0;
        t[24] = 1.0;
        let mut sol = ptr::null_mut();
        unsafe {
            assert_eq!(
                nm_solve(c"A3,1+2A1".as_ptr(), t.as_ptr(), 0.0, &mut sol),
                NmStatus::NmOk
            );
            let mut alpha = 0.0;
            assert_eq!(
                nm_solution_coefficient(sol, c"alpha".as_ptr(), &mut alpha),
                NmStatus::NmOk
            );
            assert!((alpha - 2f64.sqrt()).abs() < 1e-14);
            let mut r = 1.0;
            assert_eq!(nm_solution_verify(sol, t.as_ptr(), &mut r), NmStatus::NmOk);
            assert!(r < 1e-12);
            nm_solution_free(sol);
        }
    }

    #[test]
    fn errors_are_reported() {
        let t = [0.0; 25];
        let mut sol = ptr::null_mut();
        unsafe {
            assert_eq!(
                nm_solve(c"A9".as_ptr(), t.as_ptr(), 0.0, &mut sol),
                NmStatus::NmUnknownAlgebra
            );
            assert!(last_error().contains("A9"));
            assert_eq!(
                nm_solve(ptr::null(), t.as_ptr(), 0.0, &mut sol),
                NmStatus::NmNullPointer
            );
            let mut bad = [0.0; 25];
            bad[0] = 1.0;
            assert_eq!(
                nm_solve(c"A5,4".as_ptr(), bad.as_ptr(), 0.0, &mut sol),
                NmStatus::NmUnsolvable
            );
            assert!(sol.is_null());
        }
        assert_eq!(nm_algebra_count(), 9);
        assert!(nm_algebra_name(9).is_null());
    }

    #[test]
    fn frame_round_trip() {
        let mut g = [0.0; 25];
        for i in 0..5 {
            g[6 * i] = 1.0;
        }
        g[24] = 4.0;
        let mut frame = ptr::null_mut();
        unsafe {
            assert_eq!(
                nm_milnor_frame_new(c"A31+2A1".as_ptr(), g.as_ptr(), &mut frame),
                NmStatus::NmOk
            );
            let (mut eta, mut alpha) = (0.0, 0.0);
            nm_milnor_frame_eta(frame, &mut eta);
            nm_milnor_frame_coefficient(frame, c"alpha".as_ptr(), &mut alpha);
            assert!((eta - 4.0).abs() < 1e-12 && (alpha - 1.0).abs() < 1e-12);
            let mut ric = [0.0; 25];
            assert_eq!(
                nm_ricci_from_gram(c"A31+2A1".as_ptr(), g.as_ptr(), ric.as_mut_ptr()),
                NmStatus::NmOk
            );
            assert!((ric[0] + 0.5).abs() < 1e-12);
            nm_milnor_frame_free(frame);
        }
    }
}
