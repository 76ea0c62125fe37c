//! C ABI for the gkz-umbrella library.
//!
//! The interface mirrors the command-line tool: a matrix handle is built
//! once from row-major `int64_t` entries, and each operation returns the
//! same JSON (or SVG) report the CLI prints, as a heap-allocated C string
//! the caller releases with [`gkz_string_free`].
//!
//! Status codes: 0 success, 1 API misuse (null pointer or invalid UTF-8),
//! 2 validation failure, 3 internal consistency failure, 4 power budget
//! exceeded. On any non-zero status the output parameter (when non-null)
//! receives an error document `{"error": {"reason", "detail", "exit"}}`
//! instead of a report; it must be freed the same way.
//!
//! Weight vectors and index lists are passed as the same comma-separated
//! strings the CLI accepts (`"1,1,1,2"`, `"1/2,1/2,1"`); indices are
//! 1-based. A null index list means "empty".

use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gkz_umbrella::cli::{
    cmd_cycle, cmd_gb, cmd_plot, cmd_slopes, cmd_umbrella, CliError, CmdOutput, InputSpec,
    TableFormat,
};

/// Opaque matrix handle: the validated configuration A ∈ Z^{d×n}.
pub struct GkzMatrix {
    rows: Vec<Vec<i64>>,
}

const STATUS_OK: c_int = 0;
const STATUS_MISUSE: c_int = 1;

fn misuse(detail: &str) -> CliError {
    CliError {
        code: STATUS_MISUSE,
        reason: "api-misuse".to_string(),
        detail: detail.to_string(),
    }
}

fn internal_panic() -> CliError {
    CliError {
        code: 3,
        reason: "internal-panic".to_string(),
        detail: "the operation panicked; this is a bug".to_string(),
    }
}

/// Writes `text` into `*out` as a heap C string. JSON and SVG reports never
/// contain NUL bytes, so the conversion cannot fail for library output.
unsafe fn write_out(out: *mut *mut c_char, text: String) {
    if !out.is_null() {
        let c = CString::new(text).unwrap_or_default();
        *out = c.into_raw();
    }
}

unsafe fn fail(out: *mut *mut c_char, err: CliError) -> c_int {
    let body = serde_json::json!({
        "error": {"reason": err.reason, "detail": err.detail, "exit": err.code}
    });
    write_out(out, format!("{body}\n"));
    err.code
}

/// Reads an optional comma-separated C string; null means `None`.
unsafe fn read_opt_str<'a>(ptr: *const c_char) -> Result<Option<&'a str>, CliError> {
    if ptr.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map(Some)
        .map_err(|_| misuse("string argument is not valid UTF-8"))
}

fn parse_weights_opt(s: Option<&str>) -> Result<Option<Vec<gkz_umbrella::exactmath::Rat>>, CliError> {
    match s {
        None => Ok(None),
        Some(text) => text
            .split(',')
            .map(|part| {
                gkz_umbrella::exactmath::parse_rat(part).map_err(|e| CliError {
                    code: 2,
                    reason: "bad-rational".to_string(),
                    detail: e,
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some),
    }
}

fn parse_indices_opt(s: Option<&str>) -> Result<Vec<usize>, CliError> {
    match s {
        None => Ok(Vec::new()),
        Some(text) => text
            .split(',')
            .map(|part| {
                part.trim().parse::<usize>().map_err(|_| CliError {
                    code: 2,
                    reason: "bad-index".to_string(),
                    detail: format!("invalid index {part:?}"),
                })
            })
            .collect(),
    }
}

unsafe fn build_spec(
    handle: *const GkzMatrix,
    weights: *const c_char,
    v0: *const c_char,
    vinf: *const c_char,
) -> Result<InputSpec, CliError> {
    if handle.is_null() {
        return Err(misuse("matrix handle is null"));
    }
    let rows = (*handle).rows.clone();
    let weights = parse_weights_opt(read_opt_str(weights)?)?;
    let v0 = parse_indices_opt(read_opt_str(v0)?)?;
    let vinf = parse_indices_opt(read_opt_str(vinf)?)?;
    InputSpec::from_parts(rows, weights, &v0, &vinf)
}

unsafe fn run_json(
    out: *mut *mut c_char,
    op: impl FnOnce() -> Result<CmdOutput, CliError>,
) -> c_int {
    let result = catch_unwind(AssertUnwindSafe(op)).unwrap_or_else(|_| Err(internal_panic()));
    match result {
        Ok(output) => {
            write_out(out, output.render());
            STATUS_OK
        }
        Err(e) => fail(out, e),
    }
}

/// Builds a matrix handle from row-major entries and validates it (no zero
/// column, full row rank, pointed). On failure returns the validation code
/// and, when `err_json` is non-null, an error document to free with
/// [`gkz_string_free`].
///
/// # Safety
///
/// `entries` must point to `num_rows * num_cols` readable `int64_t`s, and
/// `out` must be a valid location to store the handle.
#[no_mangle]
pub unsafe extern "C" fn gkz_matrix_new(
    entries: *const i64,
    num_rows: usize,
    num_cols: usize,
    out: *mut *mut GkzMatrix,
    err_json: *mut *mut c_char,
) -> c_int {
    if entries.is_null() || out.is_null() {
        return fail(err_json, misuse("entries and out must be non-null"));
    }
    *out = ptr::null_mut();
    let flat = std::slice::from_raw_parts(entries, num_rows.saturating_mul(num_cols));
    let rows: Vec<Vec<i64>> = flat.chunks(num_cols.max(1)).map(<[i64]>::to_vec).collect();
    let rows = if num_cols == 0 { Vec::new() } else { rows };
    let result = catch_unwind(AssertUnwindSafe(|| {
        InputSpec::from_parts(rows.clone(), None, &[], &[]).map(|_| rows)
    }))
    .unwrap_or_else(|_| Err(internal_panic()));
    match result {
        Ok(rows) => {
            *out = Box::into_raw(Box::new(GkzMatrix { rows }));
            STATUS_OK
        }
        Err(e) => fail(err_json, e),
    }
}

/// Releases a matrix handle. Null is ignored.
///
/// # Safety
///
/// `handle` must have come from [`gkz_matrix_new`] and not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn gkz_matrix_free(handle: *mut GkzMatrix) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Releases a string returned by any function here. Null is ignored.
///
/// # Safety
///
/// `s` must have been returned through an output parameter of this library
/// and not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn gkz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn gkz_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// The umbrella report (faces with witnesses, facets) as JSON.
///
/// # Safety
///
/// `handle` must be a live handle, `weights` a NUL-terminated string, and
/// `out_json` a valid location for the result.
#[no_mangle]
pub unsafe extern "C" fn gkz_umbrella_json(
    handle: *const GkzMatrix,
    weights: *const c_char,
    out_json: *mut *mut c_char,
) -> c_int {
    run_json(out_json, || {
        let spec = build_spec(handle, weights, ptr::null(), ptr::null())?;
        Ok(CmdOutput::Json(cmd_umbrella(&spec)?))
    })
}

/// The slope report along the chosen coordinate subspace as JSON. `v0` and
/// `vinf` are comma-separated 1-based index lists; null means empty, but at
/// least one must be non-empty.
///
/// # Safety
///
/// `handle` must be a live handle and `out_json` a valid result location.
#[no_mangle]
pub unsafe extern "C" fn gkz_slopes_json(
    handle: *const GkzMatrix,
    v0: *const c_char,
    vinf: *const c_char,
    out_json: *mut *mut c_char,
) -> c_int {
    run_json(out_json, || {
        let spec = build_spec(handle, ptr::null(), v0, vinf)?;
        Ok(CmdOutput::Json(cmd_slopes(&spec)?))
    })
}

/// The multiplicity table of the L-characteristic cycle as JSON.
///
/// # Safety
///
/// `handle` must be a live handle, `weights` a NUL-terminated string, and
/// `out_json` a valid result location.
#[no_mangle]
pub unsafe extern "C" fn gkz_cycle_json(
    handle: *const GkzMatrix,
    weights: *const c_char,
    out_json: *mut *mut c_char,
) -> c_int {
    run_json(out_json, || {
        let spec = build_spec(handle, weights, ptr::null(), ptr::null())?;
        cmd_cycle(&spec, TableFormat::Json)
    })
}

/// The marked Gröbner basis report as JSON. `nmax` overrides the radical
/// witness power budget; pass a negative value for the default (20·n).
///
/// # Safety
///
/// `handle` must be a live handle, `weights` a NUL-terminated string, and
/// `out_json` a valid result location.
#[no_mangle]
pub unsafe extern "C" fn gkz_gb_json(
    handle: *const GkzMatrix,
    weights: *const c_char,
    nmax: i64,
    out_json: *mut *mut c_char,
) -> c_int {
    run_json(out_json, || {
        let spec = build_spec(handle, weights, ptr::null(), ptr::null())?;
        let budget = usize::try_from(nmax).ok();
        Ok(CmdOutput::Json(cmd_gb(&spec, budget)?))
    })
}

/// The deterministic SVG picture of a planar configuration (d = 2 only).
///
/// # Safety
///
/// `handle` must be a live handle, `weights` a NUL-terminated string, and
/// `out_svg` a valid result location.
#[no_mangle]
pub unsafe extern "C" fn gkz_plot_svg(
    handle: *const GkzMatrix,
    weights: *const c_char,
    out_svg: *mut *mut c_char,
) -> c_int {
    run_json(out_svg, || {
        let spec = build_spec(handle, weights, ptr::null(), ptr::null())?;
        Ok(CmdOutput::Text(cmd_plot(&spec)?))
    })
}
