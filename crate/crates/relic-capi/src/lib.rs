//! C ABI for the model checker.
//!
//! Everything crosses the boundary as opaque handles, integer status codes,
//! and borrowed strings:
//!
//! - `relic_system_load` sniffs AIGER (`aag`/`aig`) or the textual system
//!   format and returns an opaque system handle.
//! - `relic_prove` runs the engine and returns an opaque result handle with
//!   flat getters for the verdict, the statistics, and the rendered
//!   certificates.
//! - strings returned by getters are owned by their handle and stay valid
//!   until the handle is freed; nothing returned here needs `free(3)`.
//!
//! Non-OK statuses leave a message in a thread-local slot readable via
//! `relic_last_error`. The header `include/relic.h` is generated from this
//! file at build time.

#![allow(non_camel_case_types)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use relic_mc::engine::{prove, EngineConfig, ProveResult};
use relic_mc::{aiger, certify, sysfile, LimitKind, RunStats, TransitionSystem, Verdict};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum relic_status {
    RELIC_OK = 0,
    /// Input bytes did not parse as a supported format.
    RELIC_ERR_PARSE = 1,
    /// A null pointer or out-of-range argument was passed.
    RELIC_ERR_ARGUMENT = 2,
    /// The time budget ran out before a verdict.
    RELIC_LIMIT_TIMEOUT = 3,
    /// The memory budget ran out before a verdict.
    RELIC_LIMIT_MEMORY = 4,
    /// An internal invariant failed; the run cannot be trusted.
    RELIC_ERR_INTERNAL = 5,
}

/// Opaque transition system handle.
pub struct relic_system {
    sys: TransitionSystem,
}

/// Opaque proof-attempt result: verdict, statistics, rendered certificates.
pub struct relic_result {
    safe: bool,
    stats: RunStats,
    proof: Option<CString>,
    trace: Option<CString>,
    witness: Option<CString>,
}

/// Engine options. Zero/negative budgets mean unlimited.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct relic_options {
    pub seed: u64,
    pub mic_threshold: u32,
    pub use_binary_search: bool,
    pub use_literal_ordering: bool,
    pub ordering_decay: f64,
    pub timeout_secs: f64,
    pub mem_limit_mb: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let owned = CString::new(msg.into().replace('\0', "?")).expect("no interior nul");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = owned);
}

fn fail(status: relic_status, msg: impl Into<String>) -> relic_status {
    set_error(msg);
    status
}

/// Message describing the most recent non-OK status on this thread.
/// Borrowed; valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn relic_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Fill `out` with the default engine options.
///
/// # Safety
/// `out` must be null or point to writable memory for one options struct.
#[no_mangle]
pub unsafe extern "C" fn relic_options_default(out: *mut relic_options) {
    if out.is_null() {
        return;
    }
    let defaults = EngineConfig::default();
    *out = relic_options {
        seed: defaults.solver_seed,
        mic_threshold: defaults.mic_threshold,
        use_binary_search: defaults.use_binary_search,
        use_literal_ordering: defaults.use_literal_ordering,
        ordering_decay: defaults.ordering_decay,
        timeout_secs: 0.0,
        mem_limit_mb: 0,
    };
}

/// Parse `len` bytes of AIGER (`aag`/`aig`) or textual system format into a
/// system handle. On success stores the handle in `out`; free it with
/// `relic_system_free`.
///
/// # Safety
/// `data` must point to `len` readable bytes and `out` must be a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn relic_system_load(
    data: *const u8,
    len: usize,
    out: *mut *mut relic_system,
) -> relic_status {
    if data.is_null() || out.is_null() {
        return fail(relic_status::RELIC_ERR_ARGUMENT, "null pointer");
    }
    let bytes = std::slice::from_raw_parts(data, len);
    let parsed = if bytes.starts_with(b"aag ") || bytes.starts_with(b"aig ") {
        aiger::parse_aiger(bytes)
            .map_err(|e| e.to_string())
            .and_then(|m| aiger::build_system(&m).map_err(|e| e.to_string()))
    } else if bytes.starts_with(b"relic-sys") {
        std::str::from_utf8(bytes)
            .map_err(|e| e.to_string())
            .and_then(|text| sysfile::parse_sys(text).map_err(|e| e.to_string()))
    } else {
        Err("unrecognized input (expected aag/aig/relic-sys)".to_string())
    };
    match parsed {
        Ok(sys) => {
            *out = Box::into_raw(Box::new(relic_system { sys }));
            relic_status::RELIC_OK
        }
        Err(msg) => fail(relic_status::RELIC_ERR_PARSE, msg),
    }
}

/// # Safety
/// `sys` must come from `relic_system_load` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn relic_system_free(sys: *mut relic_system) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// # Safety
/// `sys` must be a live handle from `relic_system_load`.
#[no_mangle]
pub unsafe extern "C" fn relic_system_latch_count(sys: *const relic_system) -> usize {
    sys.as_ref().map_or(0, |s| s.sys.latch_count())
}

/// # Safety
/// `sys` must be a live handle from `relic_system_load`.
#[no_mangle]
pub unsafe extern "C" fn relic_system_input_count(sys: *const relic_system) -> usize {
    sys.as_ref().map_or(0, |s| s.sys.input_count())
}

fn config_from(options: Option<&relic_options>) -> Result<EngineConfig, String> {
    let mut cfg = EngineConfig {
        invariant_checks: false,
        ..EngineConfig::default()
    };
    if let Some(o) = options {
        if o.mic_threshold == 0 {
            return Err("mic_threshold must be at least 1".into());
        }
        if !(o.ordering_decay > 0.0 && o.ordering_decay < 1.0) {
            return Err("ordering_decay must lie in (0, 1)".into());
        }
        cfg.solver_seed = o.seed;
        cfg.mic_threshold = o.mic_threshold;
        cfg.use_binary_search = o.use_binary_search;
        cfg.use_literal_ordering = o.use_literal_ordering;
        cfg.ordering_decay = o.ordering_decay;
        if o.timeout_secs > 0.0 {
            cfg.timeout = Some(Duration::from_secs_f64(o.timeout_secs));
        }
        if o.mem_limit_mb > 0 {
            cfg.mem_limit_mb = Some(o.mem_limit_mb);
        }
    }
    Ok(cfg)
}

/// Run the engine on `sys`. `options` may be null for defaults. On a
/// verdict, stores a result handle in `out`; on a budget limit, returns the
/// limit status and stores nothing.
///
/// # Safety
/// `sys` must be a live handle; `out` must be valid; `options`, when
/// non-null, must point to an initialized options struct.
#[no_mangle]
pub unsafe extern "C" fn relic_prove(
    sys: *const relic_system,
    options: *const relic_options,
    out: *mut *mut relic_result,
) -> relic_status {
    let (Some(system), false) = (sys.as_ref(), out.is_null()) else {
        return fail(relic_status::RELIC_ERR_ARGUMENT, "null pointer");
    };
    let cfg = match config_from(options.as_ref()) {
        Ok(cfg) => cfg,
        Err(msg) => return fail(relic_status::RELIC_ERR_ARGUMENT, msg),
    };
    let run = catch_unwind(AssertUnwindSafe(|| prove(&system.sys, &cfg)));
    match run {
        Ok(ProveResult::Done(outcome)) => {
            let cstring = |s: String| CString::new(s).expect("no interior nul");
            let (safe, proof, trace, witness) = match &outcome.verdict {
                Verdict::Safe(f) => {
                    let text = certify::write_proof(&system.sys, f, outcome.stats.final_k);
                    (true, Some(cstring(text)), None, None)
                }
                Verdict::Unsafe(trace) => (
                    false,
                    None,
                    Some(cstring(certify::write_trace(&system.sys, trace))),
                    Some(cstring(certify::to_aiger_witness(&system.sys, trace))),
                ),
            };
            *out = Box::into_raw(Box::new(relic_result {
                safe,
                stats: outcome.stats,
                proof,
                trace,
                witness,
            }));
            relic_status::RELIC_OK
        }
        Ok(ProveResult::Limit(LimitKind::Timeout, _)) => {
            fail(relic_status::RELIC_LIMIT_TIMEOUT, "time budget exhausted")
        }
        Ok(ProveResult::Limit(LimitKind::Memory, _)) => {
            fail(relic_status::RELIC_LIMIT_MEMORY, "memory budget exhausted")
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "engine panicked".into());
            fail(relic_status::RELIC_ERR_INTERNAL, msg)
        }
    }
}

/// # Safety
/// `result` must come from `relic_prove` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn relic_result_free(result: *mut relic_result) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// 1 when the property was proved invariant, 0 when a counterexample exists.
///
/// # Safety
/// `result` must be a live handle from `relic_prove`.
#[no_mangle]
pub unsafe extern "C" fn relic_result_is_safe(result: *const relic_result) -> bool {
    result.as_ref().is_some_and(|r| r.safe)
}

/// # Safety
/// `result` must be a live handle from `relic_prove`.
#[no_mangle]
pub unsafe extern "C" fn relic_result_sat_calls(result: *const relic_result) -> u64 {
    result.as_ref().map_or(0, |r| r.stats.sat_calls)
}

/// The frame level the run converged or stopped at.
///
/// # Safety
/// `result` must be a live handle from `relic_prove`.
#[no_mangle]
pub unsafe extern "C" fn relic_result_depth(result: *const relic_result) -> usize {
    result.as_ref().map_or(0, |r| r.stats.final_k)
}

/// # Safety
/// `result` must be a live handle from `relic_prove`.
#[no_mangle]
pub unsafe extern "C" fn relic_result_wall_seconds(result: *const relic_result) -> f64 {
    result.as_ref().map_or(0.0, |r| r.stats.wall_seconds)
}

/// Proof clause count (safe) or trace step count (unsafe).
///
/// # Safety
/// `result` must be a live handle from `relic_prove`.
#[no_mangle]
pub unsafe extern "C" fn relic_result_certificate_size(result: *const relic_result) -> usize {
    result.as_ref().map_or(0, |r| {
        r.stats.proof_clauses.or(r.stats.trace_length).unwrap_or(0)
    })
}

fn borrowed(text: &Option<CString>) -> *const c_char {
    text.as_ref().map_or(ptr::null(), |s| s.as_ptr())
}

/// The proof certificate text; null on an unsafe verdict. Borrowed from the
/// result handle.
///
/// # Safety
/// `result` must be a live handle from `relic_prove`.
#[no_mangle]
pub unsafe extern "C" fn relic_result_proof(result: *const relic_result) -> *const c_char {
    result.as_ref().map_or(ptr::null(), |r| borrowed(&r.proof))
}

/// The counterexample trace text; null on a safe verdict. Borrowed from the
/// result handle.
///
/// # Safety
/// `result` must be a live handle from `relic_prove`.
#[no_mangle]
pub unsafe extern "C" fn relic_result_trace(result: *const relic_result) -> *const c_char {
    result.as_ref().map_or(ptr::null(), |r| borrowed(&r.trace))
}

/// The counterexample in AIGER witness format; null on a safe verdict.
/// Borrowed from the result handle.
///
/// # Safety
/// `result` must be a live handle from `relic_prove`.
#[no_mangle]
pub unsafe extern "C" fn relic_result_witness(result: *const relic_result) -> *const c_char {
    result
        .as_ref()
        .map_or(ptr::null(), |r| borrowed(&r.witness))
}

unsafe fn check_certificate(
    sys: *const relic_system,
    text: *const c_char,
    ok: *mut bool,
    run: impl Fn(&TransitionSystem, &str) -> Result<bool, String>,
) -> relic_status {
    let (Some(system), false, false) = (sys.as_ref(), text.is_null(), ok.is_null()) else {
        return fail(relic_status::RELIC_ERR_ARGUMENT, "null pointer");
    };
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        return fail(relic_status::RELIC_ERR_PARSE, "certificate is not UTF-8");
    };
    match run(&system.sys, text) {
        Ok(valid) => {
            *ok = valid;
            relic_status::RELIC_OK
        }
        Err(msg) => fail(relic_status::RELIC_ERR_PARSE, msg),
    }
}

/// Parse and check a proof certificate against `sys`; stores the validity
/// flag in `ok`.
///
/// # Safety
/// `sys` must be a live handle; `text` must be a NUL-terminated string;
/// `ok` must be valid.
#[no_mangle]
pub unsafe extern "C" fn relic_check_proof(
    sys: *const relic_system,
    text: *const c_char,
    ok: *mut bool,
) -> relic_status {
    check_certificate(sys, text, ok, |system, text| {
        let proof = certify::parse_proof(text).map_err(|e| e.to_string())?;
        certify::check_proof(system, &proof).map_err(|e| e.to_string())
    })
}

/// Parse and check a trace certificate against `sys`; stores the validity
/// flag in `ok`.
///
/// # Safety
/// `sys` must be a live handle; `text` must be a NUL-terminated string;
/// `ok` must be valid.
#[no_mangle]
pub unsafe extern "C" fn relic_check_trace(
    sys: *const relic_system,
    text: *const c_char,
    ok: *mut bool,
) -> relic_status {
    check_certificate(sys, text, ok, |system, text| {
        let trace = certify::parse_trace(text).map_err(|e| e.to_string())?;
        certify::check_trace(system, &trace).map_err(|e| e.to_string())
    })
}
