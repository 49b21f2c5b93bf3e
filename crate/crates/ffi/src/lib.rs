//! C ABI over the `cubical` library.
//!
//! Systems and chains are opaque heap handles released with their `_free`
//! function. Every fallible call returns a [`CtsStatus`]; on failure the
//! message is available from [`cts_last_error`] on the same thread.
//! Strings returned through `char **` out-parameters are owned by the
//! caller and released with [`cts_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cubical::axioms::{check_axiom, classify, Axiom, CheckOptions, SystemKind};
use cubical::content::{ContentError, StateContents};
use cubical::format::{parse_family, parse_system, SystemDocument};
use cubical::gsystem::build_gsystem;
use cubical::representation::embed;
use cubical::stochastic::{
    build_chain, simulate, stationary_closed_form, stationary_solve, uniform, StochasticError,
    StochasticSystem,
};
use cubical::{StateId, TokenSystem};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CtsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    NotCubical = 4,
    InvalidArgument = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CtsKind {
    Medium = 0,
    CubicalNotMedium = 1,
    NotCubical = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CtsAxiom {
    C1 = 0,
    C2 = 1,
    C3 = 2,
    C4 = 3,
    Ma = 4,
    Mb = 5,
}

/// A parsed token system with its optional distributions.
pub struct CtsSystem {
    doc: SystemDocument,
}

/// A validated Markov chain on a cubical system.
pub struct CtsChain {
    chain: StochasticSystem,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).unwrap_or_default());
}

fn fail(status: CtsStatus, message: impl Into<String>) -> CtsStatus {
    set_error(message);
    status
}

/// Runs `f`, turning a panic into [`CtsStatus::Panic`].
fn guard(f: impl FnOnce() -> CtsStatus) -> CtsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(CtsStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, CtsStatus> {
    if text.is_null() {
        return Err(fail(CtsStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| fail(CtsStatus::InvalidUtf8, "string is not UTF-8"))
}

unsafe fn system_ref<'a>(system: *const CtsSystem) -> Result<&'a TokenSystem, CtsStatus> {
    system
        .as_ref()
        .map(|s| &s.doc.system)
        .ok_or_else(|| fail(CtsStatus::NullPointer, "null system handle"))
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> CtsStatus {
    match CString::new(text) {
        Ok(c) => {
            *out = c.into_raw();
            CtsStatus::Ok
        }
        Err(_) => fail(CtsStatus::InvalidArgument, "string contains NUL"),
    }
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

/// Message of the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn cts_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn cts_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` is null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `.tks` text into a new system handle.
///
/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cts_system_parse(text: *const c_char, out: *mut *mut CtsSystem) -> CtsStatus {
    guard(|| {
        if out.is_null() {
            return fail(CtsStatus::NullPointer, "null out pointer");
        }
        let text = try_status!(read_str(text));
        match parse_system(text) {
            Ok(doc) => {
                *out = Box::into_raw(Box::new(CtsSystem { doc }));
                CtsStatus::Ok
            }
            Err(e) => fail(CtsStatus::ParseError, e.to_string()),
        }
    })
}

/// Parses `.fam` text and builds the G-system of the family.
///
/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cts_family_parse(text: *const c_char, out: *mut *mut CtsSystem) -> CtsStatus {
    guard(|| {
        if out.is_null() {
            return fail(CtsStatus::NullPointer, "null out pointer");
        }
        let text = try_status!(read_str(text));
        let graph = match parse_family(text) {
            Ok(g) => g,
            Err(e) => return fail(CtsStatus::ParseError, e.to_string()),
        };
        match build_gsystem(graph) {
            Ok(g) => {
                let doc = SystemDocument {
                    system: g.into_system(),
                    theta: None,
                    xi: None,
                };
                *out = Box::into_raw(Box::new(CtsSystem { doc }));
                CtsStatus::Ok
            }
            Err(e) => fail(CtsStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// # Safety
/// `system` is null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cts_system_free(system: *mut CtsSystem) {
    if !system.is_null() {
        drop(Box::from_raw(system));
    }
}

/// # Safety
/// `system` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cts_system_state_count(system: *const CtsSystem, out: *mut usize) -> CtsStatus {
    let sys = try_status!(system_ref(system));
    if out.is_null() {
        return fail(CtsStatus::NullPointer, "null out pointer");
    }
    *out = sys.state_count();
    CtsStatus::Ok
}

/// # Safety
/// `system` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cts_system_token_count(system: *const CtsSystem, out: *mut usize) -> CtsStatus {
    let sys = try_status!(system_ref(system));
    if out.is_null() {
        return fail(CtsStatus::NullPointer, "null out pointer");
    }
    *out = sys.token_count();
    CtsStatus::Ok
}

/// Name of state `index` as a new string.
///
/// # Safety
/// `system` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cts_system_state_name(
    system: *const CtsSystem,
    index: usize,
    out: *mut *mut c_char,
) -> CtsStatus {
    let sys = try_status!(system_ref(system));
    if out.is_null() {
        return fail(CtsStatus::NullPointer, "null out pointer");
    }
    if index >= sys.state_count() {
        return fail(CtsStatus::InvalidArgument, format!("no state #{index}"));
    }
    write_string(out, sys.state_name(StateId(index)).to_string())
}

/// # Safety
/// `system` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cts_system_classify(system: *const CtsSystem, out: *mut CtsKind) -> CtsStatus {
    guard(|| {
        let sys = try_status!(system_ref(system));
        if out.is_null() {
            return fail(CtsStatus::NullPointer, "null out pointer");
        }
        *out = match classify(sys).kind {
            SystemKind::Medium => CtsKind::Medium,
            SystemKind::CubicalNotMedium => CtsKind::CubicalNotMedium,
            SystemKind::NotCubical => CtsKind::NotCubical,
        };
        CtsStatus::Ok
    })
}

/// Checks one axiom. When `witness` is non-null it receives a description
/// of the verdict, including the counterexample if the axiom fails.
///
/// # Safety
/// `system` is a live handle; `holds` is writable; `witness` is null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn cts_system_check_axiom(
    system: *const CtsSystem,
    axiom: CtsAxiom,
    holds: *mut bool,
    witness: *mut *mut c_char,
) -> CtsStatus {
    guard(|| {
        let sys = try_status!(system_ref(system));
        if holds.is_null() {
            return fail(CtsStatus::NullPointer, "null out pointer");
        }
        let axiom = match axiom {
            CtsAxiom::C1 => Axiom::C1,
            CtsAxiom::C2 => Axiom::C2,
            CtsAxiom::C3 => Axiom::C3,
            CtsAxiom::C4 => Axiom::C4,
            CtsAxiom::Ma => Axiom::Ma,
            CtsAxiom::Mb => Axiom::Mb,
        };
        let verdict = check_axiom(sys, axiom, &CheckOptions::default());
        *holds = verdict.holds;
        if witness.is_null() {
            CtsStatus::Ok
        } else {
            write_string(witness, verdict.describe(sys))
        }
    })
}

/// Content of state `index`, rendered as `{ tau~, mu }`.
///
/// # Safety
/// `system` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cts_system_state_content(
    system: *const CtsSystem,
    index: usize,
    out: *mut *mut c_char,
) -> CtsStatus {
    guard(|| {
        let sys = try_status!(system_ref(system));
        if out.is_null() {
            return fail(CtsStatus::NullPointer, "null out pointer");
        }
        if index >= sys.state_count() {
            return fail(CtsStatus::InvalidArgument, format!("no state #{index}"));
        }
        match StateContents::new(sys) {
            Ok(c) => write_string(out, c.get(StateId(index)).render(sys)),
            Err(e @ ContentError::NotCubical(_)) => fail(CtsStatus::NotCubical, e.to_string()),
            Err(e) => fail(CtsStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// The cube embedding from the first state: one line per state,
/// `name<TAB>{labels}`.
///
/// # Safety
/// `system` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cts_system_embed(system: *const CtsSystem, out: *mut *mut c_char) -> CtsStatus {
    guard(|| {
        let sys = try_status!(system_ref(system));
        if out.is_null() {
            return fail(CtsStatus::NullPointer, "null out pointer");
        }
        match embed(sys, None) {
            Ok(e) => {
                let text: String = sys
                    .states()
                    .map(|s| format!("{}\t{}\n", sys.state_name(s), e.render_alpha(s)))
                    .collect();
                write_string(out, text)
            }
            Err(e) => fail(CtsStatus::NotCubical, e.to_string()),
        }
    })
}

unsafe fn read_f64s(data: *const f64, len: usize) -> Result<Vec<f64>, CtsStatus> {
    if data.is_null() {
        return Err(fail(CtsStatus::NullPointer, "null array"));
    }
    Ok(std::slice::from_raw_parts(data, len).to_vec())
}

/// Builds a chain from token probabilities `theta` (token order). A null
/// `theta` uses the document's theta line; a null `xi` uses the document's
/// xi line, or the uniform distribution.
///
/// # Safety
/// `system` is a live handle; non-null arrays hold the stated number of
/// values; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cts_chain_new(
    system: *const CtsSystem,
    theta: *const f64,
    theta_len: usize,
    xi: *const f64,
    xi_len: usize,
    out: *mut *mut CtsChain,
) -> CtsStatus {
    guard(|| {
        let Some(handle) = system.as_ref() else {
            return fail(CtsStatus::NullPointer, "null system handle");
        };
        if out.is_null() {
            return fail(CtsStatus::NullPointer, "null out pointer");
        }
        let doc = &handle.doc;
        let theta = if theta.is_null() {
            match doc.theta() {
                Some(t) => t,
                None => return fail(CtsStatus::InvalidArgument, "no theta given"),
            }
        } else {
            try_status!(read_f64s(theta, theta_len))
        };
        let xi = if xi.is_null() {
            doc.xi().unwrap_or_else(|| uniform(doc.system.state_count()))
        } else {
            try_status!(read_f64s(xi, xi_len))
        };
        match build_chain(doc.system.clone(), xi, theta) {
            Ok(chain) => {
                *out = Box::into_raw(Box::new(CtsChain { chain }));
                CtsStatus::Ok
            }
            Err(e @ StochasticError::NotCubical(_)) => fail(CtsStatus::NotCubical, e.to_string()),
            Err(e) => fail(CtsStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// # Safety
/// `chain` is null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cts_chain_free(chain: *mut CtsChain) {
    if !chain.is_null() {
        drop(Box::from_raw(chain));
    }
}

unsafe fn write_f64s(values: &[f64], out: *mut f64, len: usize) -> CtsStatus {
    if out.is_null() {
        return fail(CtsStatus::NullPointer, "null out array");
    }
    if len < values.len() {
        return fail(
            CtsStatus::BufferTooSmall,
            format!("need {} entries, got {len}", values.len()),
        );
    }
    ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    CtsStatus::Ok
}

/// Closed-form stationary distribution, in state order.
///
/// # Safety
/// `chain` is a live handle; `out` holds at least `len` values.
#[no_mangle]
pub unsafe extern "C" fn cts_chain_stationary(chain: *const CtsChain, out: *mut f64, len: usize) -> CtsStatus {
    guard(|| match chain.as_ref() {
        Some(c) => write_f64s(&stationary_closed_form(&c.chain), out, len),
        None => fail(CtsStatus::NullPointer, "null chain handle"),
    })
}

/// Stationary distribution by linear solve, in state order.
///
/// # Safety
/// `chain` is a live handle; `out` holds at least `len` values.
#[no_mangle]
pub unsafe extern "C" fn cts_chain_stationary_solved(
    chain: *const CtsChain,
    out: *mut f64,
    len: usize,
) -> CtsStatus {
    guard(|| match chain.as_ref() {
        Some(c) => write_f64s(&stationary_solve(&c.chain), out, len),
        None => fail(CtsStatus::NullPointer, "null chain handle"),
    })
}

/// Simulates `steps` steps from a seeded generator and writes visit
/// counts per state, including the initial state.
///
/// # Safety
/// `chain` is a live handle; `counts` holds at least `len` values.
#[no_mangle]
pub unsafe extern "C" fn cts_chain_simulate(
    chain: *const CtsChain,
    seed: u64,
    steps: usize,
    counts: *mut u64,
    len: usize,
) -> CtsStatus {
    guard(|| {
        let Some(c) = chain.as_ref() else {
            return fail(CtsStatus::NullPointer, "null chain handle");
        };
        if counts.is_null() {
            return fail(CtsStatus::NullPointer, "null out array");
        }
        let n = c.chain.system().state_count();
        if len < n {
            return fail(CtsStatus::BufferTooSmall, format!("need {n} entries, got {len}"));
        }
        let trajectory = simulate(&c.chain, seed, steps);
        ptr::copy_nonoverlapping(trajectory.counts.as_ptr(), counts, n);
        CtsStatus::Ok
    })
}
