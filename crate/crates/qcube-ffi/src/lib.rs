//! C ABI over the qcube library: opaque handles, integer status codes, and
//! out-parameters. Every constructor has a matching `_free`; strings returned
//! by `qcube_last_error` are released with `qcube_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::sync::Arc;

use num_traits::ToPrimitive;

use qcube::bounds::{bounds_report, BoundsOptions};
use qcube::codes::{forbidden_weight_greedy, gv_greedy, hamming_code, simplex_code, LinearCode};
use qcube::coloring::{
    coset_coloring, exact_d1_coloring, m_matrix_coloring, slab_coloring, verify_coloring,
    VerifyOutcome,
};
use qcube::exact::{chromatic_number, max_clique, max_code_size, SearchBudget, SearchResult};
use qcube::{Coloring, Elem, Error, Field, Mode, ProblemSpec};

/// Field element, encoded as an integer below the field order.
pub type QcubeElem = u16;

/// Opaque handle to a finite field GF(p^m).
pub struct QcubeField(Arc<Field>);

/// Opaque handle to a linear code over a finite field.
pub struct QcubeCode(LinearCode);

/// Opaque handle to a coloring of the q-ary n-cube.
pub struct QcubeColoring(Coloring);

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QcubeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Unsupported = 3,
    ConstructionFailed = 4,
    FormatError = 5,
    IoError = 6,
}

/// Distance constraint: conflicting pairs lie at distance <= d or exactly d.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QcubeMode {
    AtMost = 0,
    Exactly = 1,
}

impl From<QcubeMode> for Mode {
    fn from(mode: QcubeMode) -> Mode {
        match mode {
            QcubeMode::AtMost => Mode::AtMost,
            QcubeMode::Exactly => Mode::Exactly,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(err: Error) -> QcubeStatus {
    let status = match &err {
        Error::NonPrime(_) | Error::NonPrimePower(_) | Error::InvalidArgument(_) => {
            QcubeStatus::InvalidArgument
        }
        Error::FieldTooLarge(_)
        | Error::EnumerationTooLarge { .. }
        | Error::SpaceTooLarge { .. }
        | Error::VerifyBudget { .. } => QcubeStatus::Unsupported,
        Error::Construction(_) => QcubeStatus::ConstructionFailed,
        Error::Format(_) => QcubeStatus::FormatError,
        Error::Io(_) => QcubeStatus::IoError,
    };
    let message = CString::new(err.to_string()).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
    status
}

fn ok() -> QcubeStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    QcubeStatus::Ok
}

macro_rules! require {
    ($ptr:expr) => {
        match unsafe { $ptr.as_ref() } {
            Some(r) => r,
            None => return QcubeStatus::NullPointer,
        }
    };
}

macro_rules! require_out {
    ($ptr:expr) => {
        match unsafe { $ptr.as_mut() } {
            Some(r) => r,
            None => return QcubeStatus::NullPointer,
        }
    };
}

/// Message for the most recent failure on this thread, or null when the last
/// call succeeded. The caller owns the returned string.
///
/// # Safety
/// The returned pointer must be released with `qcube_string_free`.
#[no_mangle]
pub unsafe extern "C" fn qcube_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| match slot.borrow().as_ref() {
        Some(msg) => msg.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Releases a string obtained from this library. Null is ignored.
///
/// # Safety
/// `s` must have been returned by `qcube_last_error` and not freed before.
#[no_mangle]
pub unsafe extern "C" fn qcube_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Builds the canonical field GF(p^m) and stores the handle in `out`.
///
/// # Safety
/// `out` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn qcube_field_new(
    p: u64,
    m: u32,
    out: *mut *mut QcubeField,
) -> QcubeStatus {
    let out = require_out!(out);
    match Field::new(p, m) {
        Ok(field) => {
            *out = Box::into_raw(Box::new(QcubeField(Arc::new(field))));
            ok()
        }
        Err(err) => fail(err),
    }
}

/// Builds the canonical field of prime-power order q.
///
/// # Safety
/// `out` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn qcube_field_from_order(
    q: u64,
    out: *mut *mut QcubeField,
) -> QcubeStatus {
    let out = require_out!(out);
    match Field::from_order(q) {
        Ok(field) => {
            *out = Box::into_raw(Box::new(QcubeField(Arc::new(field))));
            ok()
        }
        Err(err) => fail(err),
    }
}

/// Releases a field handle. Null is ignored.
///
/// # Safety
/// `field` must have come from a qcube constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn qcube_field_free(field: *mut QcubeField) {
    if !field.is_null() {
        drop(unsafe { Box::from_raw(field) });
    }
}

/// Stores the field order q = p^m in `out`.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcube_field_order(
    field: *const QcubeField,
    out: *mut u64,
) -> QcubeStatus {
    let field = require!(field);
    let out = require_out!(out);
    *out = field.0.q();
    ok()
}

fn check_elems(field: &Field, elems: &[Elem]) -> Result<(), Error> {
    for &e in elems {
        if u64::from(e) >= field.q() {
            return Err(Error::InvalidArgument(format!(
                "element {} is outside the field of order {}",
                e,
                field.q()
            )));
        }
    }
    Ok(())
}

/// Stores a + b in `out`.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcube_field_add(
    field: *const QcubeField,
    a: QcubeElem,
    b: QcubeElem,
    out: *mut QcubeElem,
) -> QcubeStatus {
    let field = require!(field);
    let out = require_out!(out);
    if let Err(err) = check_elems(&field.0, &[a, b]) {
        return fail(err);
    }
    *out = field.0.add(a, b);
    ok()
}

/// Stores a * b in `out`.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcube_field_mul(
    field: *const QcubeField,
    a: QcubeElem,
    b: QcubeElem,
    out: *mut QcubeElem,
) -> QcubeStatus {
    let field = require!(field);
    let out = require_out!(out);
    if let Err(err) = check_elems(&field.0, &[a, b]) {
        return fail(err);
    }
    *out = field.0.mul(a, b);
    ok()
}

/// Stores the multiplicative inverse of a in `out`; fails for a = 0.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcube_field_inv(
    field: *const QcubeField,
    a: QcubeElem,
    out: *mut QcubeElem,
) -> QcubeStatus {
    let field = require!(field);
    let out = require_out!(out);
    if let Err(err) = check_elems(&field.0, &[a]) {
        return fail(err);
    }
    match field.0.inv(a) {
        Ok(v) => {
            *out = v;
            ok()
        }
        Err(err) => fail(err),
    }
}

fn emit_code(result: Result<LinearCode, Error>, out: &mut *mut QcubeCode) -> QcubeStatus {
    match result {
        Ok(code) => {
            *out = Box::into_raw(Box::new(QcubeCode(code)));
            ok()
        }
        Err(err) => fail(err),
    }
}

/// Builds the Hamming code of redundancy r over the field.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcube_hamming_code(
    field: *const QcubeField,
    r: u32,
    out: *mut *mut QcubeCode,
) -> QcubeStatus {
    let field = require!(field);
    let out = require_out!(out);
    emit_code(hamming_code(field.0.clone(), r), out)
}

/// Builds the simplex code of dimension r over the field.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcube_simplex_code(
    field: *const QcubeField,
    r: u32,
    out: *mut *mut QcubeCode,
) -> QcubeStatus {
    let field = require!(field);
    let out = require_out!(out);
    emit_code(simplex_code(field.0.clone(), r), out)
}

/// Builds the greedy length-n code with minimum distance at least d + 1.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcube_gv_code(
    field: *const QcubeField,
    n: u32,
    d: u32,
    out: *mut *mut QcubeCode,
) -> QcubeStatus {
    let field = require!(field);
    let out = require_out!(out);
    emit_code(gv_greedy(field.0.clone(), n as usize, d as usize), out)
}

/// Builds the greedy length-n code with no codeword of weight exactly d.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcube_forbidden_code(
    field: *const QcubeField,
    n: u32,
    d: u32,
    out: *mut *mut QcubeCode,
) -> QcubeStatus {
    let field = require!(field);
    let out = require_out!(out);
    emit_code(forbidden_weight_greedy(field.0.clone(), n as usize, d as usize), out)
}

/// Releases a code handle. Null is ignored.
///
/// # Safety
/// `code` must have come from a qcube constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn qcube_code_free(code: *mut QcubeCode) {
    if !code.is_null() {
        drop(unsafe { Box::from_raw(code) });
    }
}

/// Stores the code length and dimension in `n` and `k`.
///
/// # Safety
/// `code` must be a live handle; `n` and `k` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcube_code_params(
    code: *const QcubeCode,
    n: *mut u32,
    k: *mut u32,
) -> QcubeStatus {
    let code = require!(code);
    let n = require_out!(n);
    let k = require_out!(k);
    *n = code.0.n() as u32;
    *k = code.0.k() as u32;
    ok()
}

/// Stores the minimum nonzero codeword weight in `out`.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcube_code_min_distance(
    code: *const QcubeCode,
    out: *mut u32,
) -> QcubeStatus {
    let code = require!(code);
    let out = require_out!(out);
    match code.0.min_distance() {
        Ok(d) => {
            *out = d as u32;
            ok()
        }
        Err(err) => fail(err),
    }
}

fn emit_coloring(
    result: Result<Coloring, Error>,
    out: &mut *mut QcubeColoring,
) -> QcubeStatus {
    match result {
        Ok(coloring) => {
            *out = Box::into_raw(Box::new(QcubeColoring(coloring)));
            ok()
        }
        Err(err) => fail(err),
    }
}

/// Colors the cube of the code's length by coset membership, for the given
/// distance parameter and mode.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcube_coset_coloring(
    code: *const QcubeCode,
    d: u32,
    mode: QcubeMode,
    out: *mut *mut QcubeColoring,
) -> QcubeStatus {
    let code = require!(code);
    let out = require_out!(out);
    let spec = match ProblemSpec::new(code.0.field().clone(), code.0.n(), d as usize, mode.into())
    {
        Ok(spec) => spec,
        Err(err) => return fail(err),
    };
    emit_coloring(coset_coloring(&code.0, &spec), out)
}

/// Colors Q_n(q) by the digit-sum matrix; valid at distance at most 2 for
/// prime q.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcube_m_matrix_coloring(
    field: *const QcubeField,
    n: u32,
    out: *mut *mut QcubeColoring,
) -> QcubeStatus {
    let field = require!(field);
    let out = require_out!(out);
    emit_coloring(m_matrix_coloring(field.0.clone(), n as usize), out)
}

/// Colors Q_n(q) with q colors so that vertices at distance exactly 1 differ.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcube_exact_d1_coloring(
    field: *const QcubeField,
    n: u32,
    out: *mut *mut QcubeColoring,
) -> QcubeStatus {
    let field = require!(field);
    let out = require_out!(out);
    emit_coloring(exact_d1_coloring(field.0.clone(), n as usize), out)
}

/// Colors Q_n(q) with q colors so that vertices at distance exactly n differ.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcube_slab_coloring(
    field: *const QcubeField,
    n: u32,
    out: *mut *mut QcubeColoring,
) -> QcubeStatus {
    let field = require!(field);
    let out = require_out!(out);
    emit_coloring(slab_coloring(field.0.clone(), n as usize), out)
}

/// Releases a coloring handle. Null is ignored.
///
/// # Safety
/// `coloring` must have come from a qcube constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn qcube_coloring_free(coloring: *mut QcubeColoring) {
    if !coloring.is_null() {
        drop(unsafe { Box::from_raw(coloring) });
    }
}

/// Stores the palette size in `out`.
///
/// # Safety
/// `coloring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcube_coloring_colors(
    coloring: *const QcubeColoring,
    out: *mut u32,
) -> QcubeStatus {
    let coloring = require!(coloring);
    let out = require_out!(out);
    *out = coloring.0.palette_size();
    ok()
}

/// Stores the number of vertices in `out`.
///
/// # Safety
/// `coloring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcube_coloring_vertex_count(
    coloring: *const QcubeColoring,
    out: *mut u64,
) -> QcubeStatus {
    let coloring = require!(coloring);
    let out = require_out!(out);
    *out = coloring.0.labels().len() as u64;
    ok()
}

/// Stores the color of the vertex with the given rank in `out`.
///
/// # Safety
/// `coloring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcube_coloring_label(
    coloring: *const QcubeColoring,
    rank: u64,
    out: *mut u32,
) -> QcubeStatus {
    let coloring = require!(coloring);
    let out = require_out!(out);
    match coloring.0.labels().get(rank as usize) {
        Some(&label) => {
            *out = label;
            ok()
        }
        None => fail(Error::InvalidArgument(format!(
            "rank {} is outside the vertex space",
            rank
        ))),
    }
}

/// Scans the coloring for conflicts. On a clean scan `valid` is 1 and the
/// remaining fields are 0; otherwise `valid` is 0 and the least conflicting
/// pair and its distance are stored.
///
/// # Safety
/// `coloring` must be a live handle; the out-parameters must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcube_coloring_verify(
    coloring: *const QcubeColoring,
    valid: *mut i32,
    rank_a: *mut u64,
    rank_b: *mut u64,
    distance: *mut u64,
) -> QcubeStatus {
    let coloring = require!(coloring);
    let valid = require_out!(valid);
    let rank_a = require_out!(rank_a);
    let rank_b = require_out!(rank_b);
    let distance = require_out!(distance);
    match verify_coloring(&coloring.0) {
        Ok(VerifyOutcome::Valid) => {
            *valid = 1;
            *rank_a = 0;
            *rank_b = 0;
            *distance = 0;
            ok()
        }
        Ok(VerifyOutcome::Invalid(v)) => {
            *valid = 0;
            *rank_a = v.rank_a;
            *rank_b = v.rank_b;
            *distance = v.distance as u64;
            ok()
        }
        Err(err) => fail(err),
    }
}

fn emit_search(
    result: Result<(u64, u64, bool), Error>,
    lower: &mut u64,
    upper: &mut u64,
    is_exact: &mut i32,
) -> QcubeStatus {
    match result {
        Ok((lo, hi, exact)) => {
            *lower = lo;
            *upper = hi;
            *is_exact = i32::from(exact);
            ok()
        }
        Err(err) => fail(err),
    }
}

fn flatten<W>(result: SearchResult<W>) -> (u64, u64, bool) {
    match result {
        SearchResult::Exact { value, .. } => (value, value, true),
        SearchResult::Exhausted { lower, upper } => (lower, upper, false),
    }
}

fn budget(max_nodes: u64) -> SearchBudget {
    if max_nodes == 0 {
        SearchBudget::default()
    } else {
        SearchBudget { max_nodes }
    }
}

/// Chromatic number search. `max_nodes` of 0 selects the default budget.
/// When the search finishes, `is_exact` is 1 and both bracket ends hold the
/// value; otherwise they hold the proven bracket.
///
/// # Safety
/// `field` must be a live handle; the out-parameters must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcube_chromatic_number(
    field: *const QcubeField,
    n: u32,
    d: u32,
    mode: QcubeMode,
    max_nodes: u64,
    lower: *mut u64,
    upper: *mut u64,
    is_exact: *mut i32,
) -> QcubeStatus {
    let field = require!(field);
    let lower = require_out!(lower);
    let upper = require_out!(upper);
    let is_exact = require_out!(is_exact);
    let result = ProblemSpec::new(field.0.clone(), n as usize, d as usize, mode.into())
        .and_then(|spec| chromatic_number(&spec, &budget(max_nodes)))
        .map(flatten);
    emit_search(result, lower, upper, is_exact)
}

/// Maximum pairwise-conflicting vertex set size, reported like
/// `qcube_chromatic_number`.
///
/// # Safety
/// `field` must be a live handle; the out-parameters must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcube_max_clique(
    field: *const QcubeField,
    n: u32,
    d: u32,
    mode: QcubeMode,
    max_nodes: u64,
    lower: *mut u64,
    upper: *mut u64,
    is_exact: *mut i32,
) -> QcubeStatus {
    let field = require!(field);
    let lower = require_out!(lower);
    let upper = require_out!(upper);
    let is_exact = require_out!(is_exact);
    let result = ProblemSpec::new(field.0.clone(), n as usize, d as usize, mode.into())
        .and_then(|spec| max_clique(&spec, &budget(max_nodes)))
        .map(flatten);
    emit_search(result, lower, upper, is_exact)
}

/// Best size of a length-n code with minimum distance at least d, reported
/// like `qcube_chromatic_number`.
///
/// # Safety
/// `field` must be a live handle; the out-parameters must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcube_max_code_size(
    field: *const QcubeField,
    n: u32,
    d: u32,
    max_nodes: u64,
    lower: *mut u64,
    upper: *mut u64,
    is_exact: *mut i32,
) -> QcubeStatus {
    let field = require!(field);
    let lower = require_out!(lower);
    let upper = require_out!(upper);
    let is_exact = require_out!(is_exact);
    let result =
        max_code_size(&field.0, n as usize, d as usize, &budget(max_nodes)).map(flatten);
    emit_search(result, lower, upper, is_exact)
}

/// Best closed-form palette bounds. `has_lower` and `has_upper` are 1 when
/// the corresponding bound exists for these parameters.
///
/// # Safety
/// `field` must be a live handle; the out-parameters must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcube_palette_bounds(
    field: *const QcubeField,
    n: u32,
    d: u32,
    mode: QcubeMode,
    lower: *mut u64,
    upper: *mut u64,
    has_lower: *mut i32,
    has_upper: *mut i32,
) -> QcubeStatus {
    let field = require!(field);
    let lower = require_out!(lower);
    let upper = require_out!(upper);
    let has_lower = require_out!(has_lower);
    let has_upper = require_out!(has_upper);
    let report = ProblemSpec::new(field.0.clone(), n as usize, d as usize, mode.into())
        .and_then(|spec| bounds_report(&spec, &BoundsOptions::default()));
    let report = match report {
        Ok(report) => report,
        Err(err) => return fail(err),
    };
    fn unpack<T: ToPrimitive>(value: Option<&T>) -> Result<(u64, i32), Error> {
        match value {
            Some(v) => match v.to_u64() {
                Some(v) => Ok((v, 1)),
                None => Err(Error::Construction("bound does not fit in 64 bits".into())),
            },
            None => Ok((0, 0)),
        }
    }
    let (lo, lo_flag) = match unpack(report.best_lower()) {
        Ok(pair) => pair,
        Err(err) => return fail(err),
    };
    let (hi, hi_flag) = match unpack(report.best_upper()) {
        Ok(pair) => pair,
        Err(err) => return fail(err),
    };
    *lower = lo;
    *upper = hi;
    *has_lower = lo_flag;
    *has_upper = hi_flag;
    ok()
}
