//! C ABI for the `idcode` library.
//!
//! Graphs and certificates are opaque handles created by this library and
//! released with their `_free` function. Every fallible call returns an
//! [`IdcodeStatus`]; the numeric values match the exit statuses of the
//! `idcode` command-line tool. After a failure, [`idcode_last_error`]
//! returns a description of it for the calling thread.
//!
//! Vertex lists cross the boundary as `size_t` arrays. Functions that fill
//! a caller buffer take its capacity and report the number of entries
//! needed, so callers can size the buffer with a first call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use idcode::codecheck::is_identifying;
use idcode::constructor::{
    construct_near_triangle_free, construct_triangle_free, Certificate, ConstructError, ConstructOptions,
};
use idcode::exact::{gamma_id_exact, ExactError};
use idcode::families::random_triangle_free;
use idcode::{parse_edge_list, write_edge_list, Graph, VertexSet};

/// Outcome of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdcodeStatus {
    Ok = 0,
    /// The code is not identifying.
    NotIdentifying = 1,
    /// A verified code misses its certified bound; the certificate is
    /// still returned.
    BoundMissed = 2,
    /// Malformed edge-list text.
    Parse = 3,
    /// The graph has closed twins.
    NotIdentifiable = 4,
    NotTriangleFree = 5,
    NotConnected = 6,
    /// The exact search ran out of its node budget.
    BudgetExceeded = 7,
    /// An argument is out of range or outside the operation's domain.
    InvalidArgument = 8,
    /// A construction failed its own checks, or the library panicked.
    Internal = 9,
    /// A required pointer argument was null.
    NullPointer = 11,
}

/// A graph handle.
pub struct IdcodeGraph(Graph);

/// A certificate handle.
pub struct IdcodeCertificate(Certificate);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).expect("interior NULs were replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn fail(status: IdcodeStatus, message: impl Into<String>) -> IdcodeStatus {
    set_error(message);
    status
}

/// Runs `body`, turning a panic into [`IdcodeStatus::Internal`].
fn guard(body: impl FnOnce() -> IdcodeStatus) -> IdcodeStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| fail(IdcodeStatus::Internal, "panic inside idcode"))
}

fn construct_status(e: &ConstructError) -> IdcodeStatus {
    match e {
        ConstructError::BoundMissed(_) => IdcodeStatus::BoundMissed,
        ConstructError::NotIdentifiable(..) => IdcodeStatus::NotIdentifiable,
        ConstructError::NotTriangleFree(..) => IdcodeStatus::NotTriangleFree,
        ConstructError::NotConnected => IdcodeStatus::NotConnected,
        ConstructError::EmptyGraph | ConstructError::DeltaTooSmall(_) | ConstructError::InvalidDeletionSet(_) => {
            IdcodeStatus::InvalidArgument
        }
        ConstructError::NotVerified(_) | ConstructError::InvariantViolated(_) => IdcodeStatus::Internal,
    }
}

/// Copies `code` into `buf` when it fits and stores the length in `len`.
///
/// # Safety
/// `buf` must be valid for `cap` writes unless `cap` is 0; `len` must be
/// valid for one write.
unsafe fn write_code(code: &VertexSet, buf: *mut usize, cap: usize, len: *mut usize) -> IdcodeStatus {
    *len = code.len();
    if code.len() > cap {
        return fail(IdcodeStatus::InvalidArgument, format!("buffer holds {cap} ids, {} needed", code.len()));
    }
    if code.is_empty() {
        return IdcodeStatus::Ok;
    }
    if buf.is_null() {
        return fail(IdcodeStatus::NullPointer, "buf is null");
    }
    for (i, v) in code.iter().enumerate() {
        *buf.add(i) = v;
    }
    IdcodeStatus::Ok
}

/// Reads `len` vertex ids from `ids`.
///
/// # Safety
/// `ids` must be valid for `len` reads unless `len` is 0.
unsafe fn read_ids(ids: *const usize, len: usize) -> Option<VertexSet> {
    if len == 0 {
        return Some(VertexSet::new());
    }
    if ids.is_null() {
        return None;
    }
    Some(std::slice::from_raw_parts(ids, len).iter().copied().collect())
}

/// A static description of `status`.
#[no_mangle]
pub extern "C" fn idcode_status_name(status: IdcodeStatus) -> *const c_char {
    let name: &'static CStr = match status {
        IdcodeStatus::Ok => c"ok",
        IdcodeStatus::NotIdentifying => c"code is not identifying",
        IdcodeStatus::BoundMissed => c"code misses its certified bound",
        IdcodeStatus::Parse => c"malformed edge list",
        IdcodeStatus::NotIdentifiable => c"graph has closed twins",
        IdcodeStatus::NotTriangleFree => c"graph has a triangle",
        IdcodeStatus::NotConnected => c"graph is not connected",
        IdcodeStatus::BudgetExceeded => c"node budget exhausted",
        IdcodeStatus::InvalidArgument => c"invalid argument",
        IdcodeStatus::Internal => c"internal error",
        IdcodeStatus::NullPointer => c"null pointer argument",
    };
    name.as_ptr()
}

/// The message of the last failed call on this thread, or null. The
/// string is newly allocated; release it with [`idcode_string_free`].
#[no_mangle]
pub extern "C" fn idcode_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().clone().map_or(ptr::null_mut(), CString::into_raw))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn idcode_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the edge-list text format into a new graph.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn idcode_graph_parse(text: *const c_char, out: *mut *mut IdcodeGraph) -> IdcodeStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(IdcodeStatus::NullPointer, "text and out must not be null");
        }
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(IdcodeStatus::Parse, "text is not UTF-8");
        };
        match parse_edge_list(text) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(IdcodeGraph(g)));
                IdcodeStatus::Ok
            }
            Err(e) => fail(IdcodeStatus::Parse, e.to_string()),
        }
    })
}

/// Builds a graph on `n` vertices from `m` edges given as `2m` ids
/// `u0 v0 u1 v1 ...`.
///
/// # Safety
/// `edges` must be valid for `2 * m` reads unless `m` is 0; `out` must be
/// valid for one write.
#[no_mangle]
pub unsafe extern "C" fn idcode_graph_from_edges(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut IdcodeGraph,
) -> IdcodeStatus {
    guard(|| {
        if out.is_null() || (m > 0 && edges.is_null()) {
            return fail(IdcodeStatus::NullPointer, "edges and out must not be null");
        }
        let flat = if m == 0 { &[][..] } else { std::slice::from_raw_parts(edges, 2 * m) };
        match Graph::new(n, flat.chunks_exact(2).map(|p| (p[0], p[1]))) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(IdcodeGraph(g)));
                IdcodeStatus::Ok
            }
            Err(e) => fail(IdcodeStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// A random connected triangle-free graph, deterministic in `seed`.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn idcode_graph_random_triangle_free(
    n: usize,
    target_edges: usize,
    seed: u64,
    out: *mut *mut IdcodeGraph,
) -> IdcodeStatus {
    guard(|| {
        if out.is_null() {
            return fail(IdcodeStatus::NullPointer, "out must not be null");
        }
        if n == 0 {
            return fail(IdcodeStatus::InvalidArgument, "n must be at least 1");
        }
        *out = Box::into_raw(Box::new(IdcodeGraph(random_triangle_free(n, target_edges, seed))));
        IdcodeStatus::Ok
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn idcode_graph_free(g: *mut IdcodeGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices; 0 for null.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn idcode_graph_order(g: *const IdcodeGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// Number of edges; 0 for null.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn idcode_graph_size(g: *const IdcodeGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.size())
}

/// Maximum degree; 0 for null.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn idcode_graph_max_degree(g: *const IdcodeGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.max_degree())
}

/// The canonical edge-list text of `g`, or null for a null handle.
/// Release it with [`idcode_string_free`].
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn idcode_graph_to_text(g: *const IdcodeGraph) -> *mut c_char {
    match g.as_ref() {
        Some(g) => CString::new(write_edge_list(&g.0)).expect("edge lists contain no NUL").into_raw(),
        None => ptr::null_mut(),
    }
}

/// Returns [`IdcodeStatus::Ok`] if the `len` ids in `code` form an
/// identifying code of `g`, and [`IdcodeStatus::NotIdentifying`] if not.
///
/// # Safety
/// `g` must be a live graph handle and `code` valid for `len` reads.
#[no_mangle]
pub unsafe extern "C" fn idcode_is_identifying(g: *const IdcodeGraph, code: *const usize, len: usize) -> IdcodeStatus {
    guard(|| {
        let (Some(g), Some(c)) = (g.as_ref(), read_ids(code, len)) else {
            return fail(IdcodeStatus::NullPointer, "g and code must not be null");
        };
        if let Err(e) = g.0.check_vertices(&c) {
            return fail(IdcodeStatus::InvalidArgument, e.to_string());
        }
        if is_identifying(&g.0, &c) {
            IdcodeStatus::Ok
        } else {
            IdcodeStatus::NotIdentifying
        }
    })
}

/// A minimum identifying code of `g`, written to `buf` (capacity `cap`)
/// with its size in `len`. `budget` limits the explored search nodes; 0
/// selects the default. When `cap` is too small, `len` still receives the
/// size and [`IdcodeStatus::InvalidArgument`] is returned.
///
/// # Safety
/// `g` must be a live graph handle, `buf` valid for `cap` writes and `len`
/// valid for one write.
#[no_mangle]
pub unsafe extern "C" fn idcode_gamma_exact(
    g: *const IdcodeGraph,
    budget: u64,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> IdcodeStatus {
    guard(|| {
        let Some(g) = g.as_ref() else { return fail(IdcodeStatus::NullPointer, "g must not be null") };
        if len.is_null() {
            return fail(IdcodeStatus::NullPointer, "len must not be null");
        }
        match gamma_id_exact(&g.0, (budget > 0).then_some(budget)) {
            Ok(r) => write_code(&r.code, buf, cap, len),
            Err(e @ ExactError::NotIdentifiable(..)) => fail(IdcodeStatus::NotIdentifiable, e.to_string()),
            Err(e @ ExactError::BudgetExceeded { .. }) => fail(IdcodeStatus::BudgetExceeded, e.to_string()),
            Err(e) => fail(IdcodeStatus::InvalidArgument, e.to_string()),
        }
    })
}

fn options(fallback_threshold: usize) -> ConstructOptions {
    ConstructOptions { fallback_threshold, ..ConstructOptions::default() }
}

/// Shared tail of the two constructors: stores the certificate for `Ok`
/// and `BoundMissed`.
unsafe fn deliver(result: Result<Certificate, ConstructError>, out: *mut *mut IdcodeCertificate) -> IdcodeStatus {
    match result {
        Ok(cert) => {
            *out = Box::into_raw(Box::new(IdcodeCertificate(cert)));
            IdcodeStatus::Ok
        }
        Err(ConstructError::BoundMissed(cert)) => {
            set_error(format!("code of size {} misses {}/{}", cert.code.len(), cert.bound_num, cert.bound_den));
            *out = Box::into_raw(Box::new(IdcodeCertificate(*cert)));
            IdcodeStatus::BoundMissed
        }
        Err(e) => fail(construct_status(&e), e.to_string()),
    }
}

/// Certified code of a connected triangle-free graph. Subproblems of
/// order up to `fallback_threshold` may be solved exactly (16 is the
/// library default).
///
/// # Safety
/// `g` must be a live graph handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn idcode_construct(
    g: *const IdcodeGraph,
    fallback_threshold: usize,
    out: *mut *mut IdcodeCertificate,
) -> IdcodeStatus {
    guard(|| {
        let Some(g) = g.as_ref() else { return fail(IdcodeStatus::NullPointer, "g must not be null") };
        if out.is_null() {
            return fail(IdcodeStatus::NullPointer, "out must not be null");
        }
        deliver(construct_triangle_free(&g.0, &options(fallback_threshold)), out)
    })
}

/// Certified code of a graph made triangle-free by greedily deleting
/// edges.
///
/// # Safety
/// `g` must be a live graph handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn idcode_construct_near(
    g: *const IdcodeGraph,
    fallback_threshold: usize,
    out: *mut *mut IdcodeCertificate,
) -> IdcodeStatus {
    guard(|| {
        let Some(g) = g.as_ref() else { return fail(IdcodeStatus::NullPointer, "g must not be null") };
        if out.is_null() {
            return fail(IdcodeStatus::NullPointer, "out must not be null");
        }
        deliver(construct_near_triangle_free(&g.0, None, &options(fallback_threshold)), out)
    })
}

/// Releases a certificate. Null is ignored.
///
/// # Safety
/// `c` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn idcode_certificate_free(c: *mut IdcodeCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Copies the certificate's code into `buf` (capacity `cap`) and its size
/// into `len`.
///
/// # Safety
/// `c` must be a live certificate handle, `buf` valid for `cap` writes and
/// `len` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn idcode_certificate_code(
    c: *const IdcodeCertificate,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> IdcodeStatus {
    guard(|| match (c.as_ref(), len.is_null()) {
        (Some(c), false) => write_code(&c.0.code, buf, cap, len),
        _ => fail(IdcodeStatus::NullPointer, "c and len must not be null"),
    })
}

/// The certified bound `den * |code| <= num`.
///
/// # Safety
/// `c` must be a live certificate handle; `num` and `den` valid for one
/// write each.
#[no_mangle]
pub unsafe extern "C" fn idcode_certificate_bound(
    c: *const IdcodeCertificate,
    num: *mut u64,
    den: *mut u64,
) -> IdcodeStatus {
    guard(|| match (c.as_ref(), num.is_null() || den.is_null()) {
        (Some(c), false) => {
            *num = c.0.bound_num;
            *den = c.0.bound_den;
            IdcodeStatus::Ok
        }
        _ => fail(IdcodeStatus::NullPointer, "c, num and den must not be null"),
    })
}

/// The certificate as TOML, or null for a null handle. Release it with
/// [`idcode_string_free`].
///
/// # Safety
/// `c` must be null or a live certificate handle.
#[no_mangle]
pub unsafe extern "C" fn idcode_certificate_to_toml(c: *const IdcodeCertificate) -> *mut c_char {
    match c.as_ref() {
        Some(c) => CString::new(c.0.to_toml()).expect("TOML output contains no NUL").into_raw(),
        None => ptr::null_mut(),
    }
}
