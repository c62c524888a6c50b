//! C interface to `cobkh`: diagrams, Khovanov complexes, homology and the
//! verifier.
//!
//! Every function returns a [`CobkhStatus`]; on failure the message is
//! available from [`cobkh_last_error`] on the same thread. Strings handed
//! out by this library are released with [`cobkh_string_free`], handles with
//! their own `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use cobkh::chain::{kh_complex, simplify, Complex};
use cobkh::tangle::builtin::builtin;
use cobkh::tangle::TangleDiagram;
use cobkh::tqft::{kh_link, Coefficients, HomologyTable};
use cobkh::{verify, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CobkhStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownBuiltin = 4,
    OpenTangle = 5,
    UnknownCheck = 6,
    ChecksFailed = 7,
    OutOfRange = 8,
    Internal = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CobkhCoefficients {
    Z = 0,
    F2 = 1,
}

/// A parsed (possibly singular) tangle diagram.
pub struct CobkhDiagram(TangleDiagram);

/// A Khovanov complex over the dotted cobordism category.
pub struct CobkhComplex(Arc<Complex>);

/// A bigraded homology table, groups sorted by `(h, q)`.
pub struct CobkhHomology {
    rows: Vec<(i32, i32, usize, Vec<u64>)>,
    json: String,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(msg).expect("nul bytes removed")));
}

fn status_of(e: &Error) -> CobkhStatus {
    match e {
        Error::Parse { .. } | Error::Planarity(_) | Error::Orientation(_) | Error::Json(_) => CobkhStatus::Parse,
        Error::UnknownBuiltin(_) => CobkhStatus::UnknownBuiltin,
        Error::OpenTangle => CobkhStatus::OpenTangle,
        Error::UnknownCheck(_) => CobkhStatus::UnknownCheck,
        _ => CobkhStatus::Internal,
    }
}

struct Fail(CobkhStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CobkhStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CobkhStatus::Ok,
        Ok(Err(Fail(s, m))) => {
            set_error(m);
            s
        }
        Err(_) => {
            set_error("internal panic");
            CobkhStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(CobkhStatus::NullArgument, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Fail(CobkhStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(CobkhStatus::NullArgument, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(CobkhStatus::NullArgument, "null output pointer".into()));
    }
    out.write(v);
    Ok(())
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// Message of the last failure on this thread, or null. Valid until the
/// next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn cobkh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn cobkh_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn cobkh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a diagram in the JSON exchange format.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cobkh_diagram_from_json(json: *const c_char, out: *mut *mut CobkhDiagram) -> CobkhStatus {
    guard(|| {
        let d = TangleDiagram::parse_json(text(json)?)?;
        put(out, Box::into_raw(Box::new(CobkhDiagram(d))))
    })
}

/// One of the builtin diagrams, by name.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cobkh_diagram_builtin(name: *const c_char, out: *mut *mut CobkhDiagram) -> CobkhStatus {
    guard(|| {
        let d = builtin(text(name)?)?;
        put(out, Box::into_raw(Box::new(CobkhDiagram(d))))
    })
}

/// # Safety
/// `d` must be a valid handle; `boundary` and `crossings` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cobkh_diagram_info(
    d: *const CobkhDiagram,
    boundary: *mut u32,
    crossings: *mut usize,
) -> CobkhStatus {
    guard(|| {
        let d = &handle(d)?.0;
        put(boundary, d.boundary())?;
        put(crossings, d.crossings().len())
    })
}

/// # Safety
/// `d` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn cobkh_diagram_free(d: *mut CobkhDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// The Khovanov complex of a diagram; with `simplify`, delooped and with
/// every isomorphism cancelled.
///
/// # Safety
/// `d` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cobkh_complex_new(
    d: *const CobkhDiagram,
    simplify_first: bool,
    out: *mut *mut CobkhComplex,
) -> CobkhStatus {
    guard(|| {
        let c = Arc::new(kh_complex(&handle(d)?.0));
        let c = if simplify_first { simplify(&c)?.target } else { c };
        put(out, Box::into_raw(Box::new(CobkhComplex(c))))
    })
}

/// Lowest and highest homological degree; both 0 for the zero complex.
///
/// # Safety
/// `c` must be a valid handle; `lo` and `hi` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cobkh_complex_degrees(c: *const CobkhComplex, lo: *mut i32, hi: *mut i32) -> CobkhStatus {
    guard(|| {
        let (a, b) = handle(c)?.0.degree_range().unwrap_or((0, 0));
        put(lo, a)?;
        put(hi, b)
    })
}

/// Number of summands in homological degree `n`.
///
/// # Safety
/// `c` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cobkh_complex_rank(c: *const CobkhComplex, n: i32, out: *mut usize) -> CobkhStatus {
    guard(|| put(out, handle(c)?.0.rank(n)))
}

/// The complex as JSON; free the string with [`cobkh_string_free`].
///
/// # Safety
/// `c` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cobkh_complex_to_json(c: *const CobkhComplex, out: *mut *mut c_char) -> CobkhStatus {
    guard(|| put(out, owned(handle(c)?.0.to_json().to_string())))
}

/// # Safety
/// `c` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn cobkh_complex_free(c: *mut CobkhComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

fn table_handle(t: &HomologyTable) -> CobkhHomology {
    CobkhHomology {
        rows: t.groups.iter().map(|(&(h, q), g)| (h, q, g.free, g.torsion.clone())).collect(),
        json: t.to_json().to_string(),
    }
}

/// Khovanov homology of a closed diagram.
///
/// # Safety
/// `d` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cobkh_homology(
    d: *const CobkhDiagram,
    coeff: CobkhCoefficients,
    simplify_first: bool,
    out: *mut *mut CobkhHomology,
) -> CobkhStatus {
    guard(|| {
        let coeff = match coeff {
            CobkhCoefficients::Z => Coefficients::Z,
            CobkhCoefficients::F2 => Coefficients::F2,
        };
        let t = kh_link(&handle(d)?.0, coeff, simplify_first)?;
        put(out, Box::into_raw(Box::new(table_handle(&t))))
    })
}

/// Number of nonzero groups.
///
/// # Safety
/// `h` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cobkh_homology_len(h: *const CobkhHomology, out: *mut usize) -> CobkhStatus {
    guard(|| put(out, handle(h)?.rows.len()))
}

/// The `i`-th nonzero group: bidegree, free rank and number of torsion
/// summands. Torsion orders come from [`cobkh_homology_torsion`].
///
/// # Safety
/// `h` must be a valid handle; all outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn cobkh_homology_group(
    h: *const CobkhHomology,
    i: usize,
    hdeg: *mut i32,
    qdeg: *mut i32,
    rank: *mut usize,
    torsion_len: *mut usize,
) -> CobkhStatus {
    guard(|| {
        let (a, b, r, t) =
            handle(h)?.rows.get(i).ok_or_else(|| Fail(CobkhStatus::OutOfRange, format!("no group {i}")))?;
        put(hdeg, *a)?;
        put(qdeg, *b)?;
        put(rank, *r)?;
        put(torsion_len, t.len())
    })
}

/// Order of the `j`-th torsion summand of the `i`-th group.
///
/// # Safety
/// `h` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cobkh_homology_torsion(
    h: *const CobkhHomology,
    i: usize,
    j: usize,
    out: *mut u64,
) -> CobkhStatus {
    guard(|| {
        let t = handle(h)?
            .rows
            .get(i)
            .and_then(|r| r.3.get(j))
            .ok_or_else(|| Fail(CobkhStatus::OutOfRange, format!("no torsion summand ({i}, {j})")))?;
        put(out, *t)
    })
}

/// `[{h, q, rank, torsion}]`; free the string with [`cobkh_string_free`].
///
/// # Safety
/// `h` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cobkh_homology_to_json(h: *const CobkhHomology, out: *mut *mut c_char) -> CobkhStatus {
    guard(|| put(out, owned(handle(h)?.json.clone())))
}

/// # Safety
/// `h` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn cobkh_homology_free(h: *mut CobkhHomology) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Runs the checks matching `filter` (a name or glob; null for all) and
/// writes the JSON report. Returns `COBKH_STATUS_CHECKS_FAILED` when any
/// check fails; the report is written either way.
///
/// # Safety
/// `filter` must be null or a nul-terminated string; `report` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn cobkh_verify(filter: *const c_char, report: *mut *mut c_char) -> CobkhStatus {
    guard(|| {
        let filter = if filter.is_null() { None } else { Some(text(filter)?) };
        if report.is_null() {
            return Err(Fail(CobkhStatus::NullArgument, "null output pointer".into()));
        }
        let results = verify::run_all(filter)?;
        put(report, owned(verify::report_json(&results).to_string()))?;
        if verify::all_passed(&results) {
            Ok(())
        } else {
            let failed: Vec<&str> = results.iter().filter(|r| !r.passed()).map(|r| r.name.as_str()).collect();
            Err(Fail(CobkhStatus::ChecksFailed, format!("failed: {}", failed.join(", "))))
        }
    })
}
