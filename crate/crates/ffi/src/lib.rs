//! C ABI over `confrb`.
//!
//! Objects cross the boundary as opaque handles created by `*_new`/`*_from_*`
//! functions and released with the matching `*_free`. Every fallible call
//! returns a [`ConfrbStatus`]; on failure the message is available from
//! [`confrb_last_error`] on the same thread. Strings returned through out
//! parameters are owned by the caller and released with
//! [`confrb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::ptr;

use confrb::ccybe::{self, ConformalForm};
use confrb::cli;
use confrb::conformal::{ConformalAlgebra, TensorElement};
use confrb::conformal_rb::{catalog, check_conformal_rb, ConformalMap};
use confrb::exact::Poly;
use confrb::Error;
use serde_json::{json, Value};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConfrbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Size = 4,
    Rank = 5,
    Weight = 6,
    Catalog = 7,
    InvalidAlgebra = 8,
    UnsupportedAlgebra = 9,
    Form = 10,
    Family = 11,
    SingularMap = 12,
    Alphabet = 13,
    Split = 14,
    ResourceCap = 15,
    Panic = 16,
}

/// A Lie conformal algebra given by its λ-bracket table.
pub struct ConfrbAlgebra {
    inner: ConformalAlgebra,
}

/// A ∂-linear operator, column `j` being the image of generator `j`.
pub struct ConfrbOperator {
    inner: ConformalMap,
}

/// A rank-2 or rank-3 tensor together with the generator names it was
/// read with.
pub struct ConfrbTensor {
    inner: TensorElement,
    names: Vec<String>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Fault(ConfrbStatus, String);

impl From<Error> for Fault {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Alphabet(_) => ConfrbStatus::Alphabet,
            Error::SingularMap(_) => ConfrbStatus::SingularMap,
            Error::Weight(_) => ConfrbStatus::Weight,
            Error::Split(_) => ConfrbStatus::Split,
            Error::Catalog(_) => ConfrbStatus::Catalog,
            Error::InvalidAlgebra(_) => ConfrbStatus::InvalidAlgebra,
            Error::Rank(_) => ConfrbStatus::Rank,
            Error::UnsupportedAlgebra(_) => ConfrbStatus::UnsupportedAlgebra,
            Error::Form(_) => ConfrbStatus::Form,
            Error::Family(_) => ConfrbStatus::Family,
            Error::Size(_) => ConfrbStatus::Size,
            Error::Parse(_) => ConfrbStatus::Parse,
            Error::ResourceCap(_) => ConfrbStatus::ResourceCap,
        };
        Fault(code, e.to_string())
    }
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Fault>) -> ConfrbStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ConfrbStatus::Ok,
        Ok(Err(Fault(code, msg))) => {
            set_last_error(msg);
            code
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("internal panic: {msg}"));
            ConfrbStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fault> {
    if p.is_null() {
        return Err(Fault(ConfrbStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fault(ConfrbStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fault> {
    p.as_ref()
        .ok_or_else(|| Fault(ConfrbStatus::NullPointer, format!("{what} is null")))
}

unsafe fn put<T>(out: *mut T, v: T, what: &str) -> Result<(), Fault> {
    if out.is_null() {
        return Err(Fault(ConfrbStatus::NullPointer, format!("{what} is null")));
    }
    out.write(v);
    Ok(())
}

fn json_in(s: &str) -> Result<Value, Fault> {
    serde_json::from_str(s).map_err(|e| Fault(ConfrbStatus::Parse, format!("invalid JSON: {e}")))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn confrb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library from this thread.
#[no_mangle]
pub extern "C" fn confrb_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn confrb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a compiled-in algebra: `cur-sl2`, `cur-sl2x2`, `vir` or
/// `rank2-example`.
///
/// # Safety
/// `name` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn confrb_algebra_preset(
    name: *const c_char,
    out: *mut *mut ConfrbAlgebra,
) -> ConfrbStatus {
    guard(|| {
        let inner = match text(name, "name")? {
            "cur-sl2" => ConformalAlgebra::cur_sl2(),
            "cur-sl2x2" => catalog::cur_sl2_sum(2)?,
            "vir" => ConformalAlgebra::virasoro(),
            "rank2-example" => ConformalAlgebra::rank2_example(),
            other => {
                return Err(Fault(ConfrbStatus::Catalog, format!("unknown preset `{other}`")));
            }
        };
        put(out, boxed(ConfrbAlgebra { inner }), "out")
    })
}

/// Reads an algebra from its JSON table.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn confrb_algebra_from_json(
    json: *const c_char,
    out: *mut *mut ConfrbAlgebra,
) -> ConfrbStatus {
    guard(|| {
        let v = json_in(text(json, "json")?)?;
        let inner = ConformalAlgebra::from_json(&v)?;
        put(out, boxed(ConfrbAlgebra { inner }), "out")
    })
}

/// # Safety
/// `alg` must be null or a handle from this library, not freed before.
#[no_mangle]
pub unsafe extern "C" fn confrb_algebra_free(alg: *mut ConfrbAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// # Safety
/// `alg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn confrb_algebra_rank(alg: *const ConfrbAlgebra, out: *mut usize) -> ConfrbStatus {
    guard(|| put(out, handle(alg, "alg")?.inner.rank(), "out"))
}

/// Checks conformal anticommutativity and Jacobi on generators. `out_ok`
/// receives whether both hold; `out_report` (may be null) receives the
/// defect report as JSON.
///
/// # Safety
/// `alg` must be a live handle, `out_ok` writable, `out_report` null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn confrb_algebra_check_axioms(
    alg: *const ConfrbAlgebra,
    out_ok: *mut bool,
    out_report: *mut *mut c_char,
) -> ConfrbStatus {
    guard(|| {
        let l = &handle(alg, "alg")?.inner;
        let rep = l.check_conformal_axioms();
        if !out_report.is_null() {
            let names = l.generators();
            let anti: Vec<Value> = rep
                .anticommutativity
                .iter()
                .map(|((i, j), d)| json!({ "pair": [names[*i], names[*j]], "defect": polys(d) }))
                .collect();
            let jac: Vec<Value> = rep
                .jacobi
                .iter()
                .map(|((i, j, k), d)| {
                    json!({ "triple": [names[*i], names[*j], names[*k]], "defect": polys(d) })
                })
                .collect();
            let v = json!({ "anticommutativity": anti, "jacobi": jac });
            out_report.write(c_string(v.to_string()));
        }
        put(out_ok, rep.is_empty(), "out_ok")
    })
}

fn polys(v: &[Poly]) -> Vec<String> {
    v.iter().map(Poly::to_string).collect()
}

/// Reads an operator from its JSON matrix (list of images).
///
/// # Safety
/// `json` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn confrb_operator_from_json(
    json: *const c_char,
    out: *mut *mut ConfrbOperator,
) -> ConfrbStatus {
    guard(|| {
        let v = json_in(text(json, "json")?)?;
        let inner = ConformalMap::from_json(&v)?;
        put(out, boxed(ConfrbOperator { inner }), "out")
    })
}

/// A Cur(sl₂) catalog operator by name (`R1`, `R2`, `Q1`, `R_1`…`R_4`,
/// `ext-a`, …) at weight 0 or 1, with symbolic parameters.
///
/// # Safety
/// `name` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn confrb_operator_catalog(
    name: *const c_char,
    weight: i64,
    out: *mut *mut ConfrbOperator,
) -> ConfrbStatus {
    guard(|| {
        let name = text(name, "name")?;
        let entry = catalog::catalog_cur_sl2(weight)?
            .into_iter()
            .find(|e| e.name == name)
            .ok_or_else(|| Fault(ConfrbStatus::Catalog, format!("no entry `{name}` at weight {weight}")))?;
        put(out, boxed(ConfrbOperator { inner: entry.map }), "out")
    })
}

/// # Safety
/// `op` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn confrb_operator_to_json(
    op: *const ConfrbOperator,
    out: *mut *mut c_char,
) -> ConfrbStatus {
    guard(|| {
        let s = handle(op, "op")?.inner.to_json().to_string();
        put(out, c_string(s), "out")
    })
}

/// # Safety
/// `op` must be null or a handle from this library, not freed before.
#[no_mangle]
pub unsafe extern "C" fn confrb_operator_free(op: *mut ConfrbOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Conformal Rota–Baxter check of weight `weight` (a polynomial in the
/// text syntax, e.g. `"0"` or `"k"`). `out_defects` (may be null) receives
/// the nonzero defects as a JSON list.
///
/// # Safety
/// Handles must be live, `weight` a nul-terminated string, `out_is_rb`
/// writable, `out_defects` null or writable.
#[no_mangle]
pub unsafe extern "C" fn confrb_check_rb(
    alg: *const ConfrbAlgebra,
    op: *const ConfrbOperator,
    weight: *const c_char,
    out_is_rb: *mut bool,
    out_defects: *mut *mut c_char,
) -> ConfrbStatus {
    guard(|| {
        let l = &handle(alg, "alg")?.inner;
        let r = &handle(op, "op")?.inner;
        let k = Poly::parse(text(weight, "weight")?)?;
        let wit = check_conformal_rb(l, r, &k)?;
        if !out_defects.is_null() {
            let names = l.generators();
            let list: Vec<Value> = wit
                .failures()
                .map(|((a, b), d)| json!({ "pair": [names[*a], names[*b]], "defect": polys(d) }))
                .collect();
            out_defects.write(c_string(Value::Array(list).to_string()));
        }
        put(out_is_rb, wit.is_rb(), "out_is_rb")
    })
}

/// Reads a tensor `{"rank": n, "terms": {"e,f": poly, …}}` over the
/// generators of `alg`.
///
/// # Safety
/// `alg` must be a live handle, `json` a nul-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn confrb_tensor_from_json(
    alg: *const ConfrbAlgebra,
    json: *const c_char,
    out: *mut *mut ConfrbTensor,
) -> ConfrbStatus {
    guard(|| {
        let names = handle(alg, "alg")?.inner.generators().to_vec();
        let v = json_in(text(json, "json")?)?;
        let inner = TensorElement::from_json(&v, &names)?;
        put(out, boxed(ConfrbTensor { inner, names }), "out")
    })
}

/// # Safety
/// `t` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn confrb_tensor_to_json(t: *const ConfrbTensor, out: *mut *mut c_char) -> ConfrbStatus {
    guard(|| {
        let t = handle(t, "tensor")?;
        put(out, c_string(t.inner.to_json(&t.names).to_string()), "out")
    })
}

/// # Safety
/// `t` must be null or a handle from this library, not freed before.
#[no_mangle]
pub unsafe extern "C" fn confrb_tensor_free(t: *mut ConfrbTensor) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn confrb_tensor_is_skew(t: *const ConfrbTensor, out: *mut bool) -> ConfrbStatus {
    guard(|| {
        let t = &handle(t, "tensor")?.inner;
        if t.rank() != 2 {
            return Err(Error::Rank(format!("skewness needs rank 2, got {}", t.rank())).into());
        }
        put(out, ccybe::is_skew(t), "out")
    })
}

/// Whether `⟦r, r⟧` vanishes modulo `∂^{⊗3}`; with `weak` set, the weak
/// form is checked instead.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn confrb_tensor_check_ccybe(
    alg: *const ConfrbAlgebra,
    t: *const ConfrbTensor,
    weak: bool,
    out: *mut bool,
) -> ConfrbStatus {
    guard(|| {
        let l = &handle(alg, "alg")?.inner;
        let r = &handle(t, "tensor")?.inner;
        let ok = if weak {
            ccybe::check_weak_ccybe(l, r)?
        } else {
            ccybe::check_ccybe(l, r)?
        };
        put(out, ok, "out")
    })
}

/// The operator `P(u) = Σ A_ij(-∂, ∂) K(i, u) j` of a rank-2 tensor, with
/// `K` the Killing form of the underlying Lie algebra.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn confrb_rb_from_solution(
    alg: *const ConfrbAlgebra,
    t: *const ConfrbTensor,
    out: *mut *mut ConfrbOperator,
) -> ConfrbStatus {
    guard(|| {
        let l = &handle(alg, "alg")?.inner;
        let r = &handle(t, "tensor")?.inner;
        let form = ConformalForm::killing(l)?;
        let inner = ccybe::rb_from_solution(&form, r)?;
        put(out, boxed(ConfrbOperator { inner }), "out")
    })
}

/// Runs a command-line invocation (`argv` without the program name) and
/// returns its JSON report and exit code. Errors raised by the command
/// itself are reported through the status and [`confrb_last_error`], with
/// `out_exit_code` set to the CLI's exit code.
///
/// # Safety
/// `argv` must point to `argc` nul-terminated strings (or be null when
/// `argc` is 0); `out_report` null or writable; `out_exit_code` writable.
#[no_mangle]
pub unsafe extern "C" fn confrb_run(
    argv: *const *const c_char,
    argc: usize,
    out_report: *mut *mut c_char,
    out_exit_code: *mut i32,
) -> ConfrbStatus {
    guard(|| {
        if out_exit_code.is_null() {
            return Err(Fault(ConfrbStatus::NullPointer, "out_exit_code is null".into()));
        }
        if argv.is_null() && argc > 0 {
            return Err(Fault(ConfrbStatus::NullPointer, "argv is null".into()));
        }
        let mut args = Vec::with_capacity(argc);
        for i in 0..argc {
            args.push(text(*argv.add(i), "argv entry")?.to_string());
        }
        match cli::run_args(args) {
            Ok(report) => {
                out_exit_code.write(report.exit_code());
                if !out_report.is_null() {
                    out_report.write(c_string(report.to_json().to_string()));
                }
                Ok(())
            }
            Err(e) => {
                out_exit_code.write(cli::error_code(&e));
                Err(e.into())
            }
        }
    })
}
