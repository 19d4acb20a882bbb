//! C ABI for the nestquad library.
//!
//! The API follows the usual opaque-handle pattern: `nq_generate` (or
//! `nq_rule_from_json`) returns a `*mut NqRule`, accessors read from it,
//! `nq_rule_free` releases it. Strings returned by the library are owned
//! by the caller and must be released with `nq_string_free`. Every
//! fallible call reports an [`NqStatus`]; the most recent failure message
//! is available per thread via `nq_last_error`.
//!
//! The generated header lives in `include/nestquad.h`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nestquad::document::{
    build_rule_document, extend_document, verify_document, RuleDocument, VerifyError,
};
use nestquad::moments::{moments_to_json, parse_moments_json};
use nestquad::{DistributionSpec, MomentSequence, Polynomial, Schedule};

/// Status codes returned by the fallible `nq_*` calls.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NqStatus {
    NqOk = 0,
    /// Bad arguments: unparsable spec, malformed JSON, null pointer.
    NqInvalidArgument = 1,
    /// The extension chain stopped early or the step failed.
    NqExtensionFailed = 2,
    /// A verification check failed.
    NqVerificationFailed = 3,
    /// Unexpected internal failure.
    NqInternalError = 4,
}

/// Opaque handle to a generated rule document.
pub struct NqRule {
    document: RuleDocument,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

/// Message describing the most recent failure on this thread.
///
/// The pointer stays valid until the next failing `nq_*` call on the
/// same thread. Never free it.
#[no_mangle]
pub extern "C" fn nq_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static string; never free it.
#[no_mangle]
pub extern "C" fn nq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be a pointer previously returned by an `nq_*` call that
/// documents `nq_string_free` ownership, or null.
#[no_mangle]
pub unsafe extern "C" fn nq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, NqStatus> {
    if ptr.is_null() {
        set_error(&format!("{what} must not be null"));
        return Err(NqStatus::NqInvalidArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error(&format!("{what} is not valid UTF-8"));
        NqStatus::NqInvalidArgument
    })
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Parses "1,2,4,6,12" or "gkp:ITERATIONS" into a start/schedule pair.
fn parse_plan(schedule: &str, mu: &MomentSequence) -> Result<(Polynomial, Schedule), String> {
    if let Some(iters) = schedule.strip_prefix("gkp:") {
        let iterations: usize = iters
            .trim()
            .parse()
            .map_err(|_| format!("bad gkp iteration count {iters:?}"))?;
        let mid = mu
            .domain()
            .midpoint()
            .ok_or_else(|| "gkp needs a domain with a midpoint".to_string())?;
        return Ok((
            Polynomial::linear_from_root(&mid),
            Schedule::NPlusOne { iterations },
        ));
    }
    let ps = schedule
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad schedule entry {s:?}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((Polynomial::one(), Schedule::Explicit(ps)))
}

fn generate_impl(
    mu: MomentSequence,
    schedule: &str,
    precision: u32,
) -> Result<NqRule, (NqStatus, String)> {
    if precision < 10 {
        return Err((
            NqStatus::NqInvalidArgument,
            "precision must be at least 10".to_string(),
        ));
    }
    let (start, plan) = parse_plan(schedule, &mu).map_err(|m| (NqStatus::NqInvalidArgument, m))?;
    plan.validate()
        .map_err(|e| (NqStatus::NqInvalidArgument, e.to_string()))?;
    let omega = mu.domain().clone();
    let description = format!("Nested quadrature rule on {omega}");
    let built = build_rule_document(&start, &plan, &mu, &omega, precision, &description)
        .map_err(|e| (NqStatus::NqInvalidArgument, e.to_string()))?;
    match built.failure {
        Some(reason) => Err((
            NqStatus::NqExtensionFailed,
            format!("chain stopped early: {reason}"),
        )),
        None => Ok(NqRule {
            document: built.document,
        }),
    }
}

fn guard<T>(what: &str, f: impl FnOnce() -> Result<T, NqStatus>) -> Result<T, NqStatus> {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(r) => r,
        Err(_) => {
            set_error(&format!("internal panic in {what}"));
            Err(NqStatus::NqInternalError)
        }
    }
}

/// Generates a nested rule for a built-in distribution.
///
/// `dist` is `uniform:a,b`, `beta:alpha,beta` or `gauss`; `schedule` is
/// either comma-separated p values (`1,2,4,6,12`, chain starts from the
/// empty formula) or `gkp:N` (N rounds of p = n+1 from the domain
/// midpoint). Returns null on failure; see `nq_last_error`.
///
/// # Safety
/// `dist` and `schedule` must be valid NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn nq_generate(
    dist: *const c_char,
    schedule: *const c_char,
    precision: u32,
) -> *mut NqRule {
    let result = guard("nq_generate", || {
        let dist = read_str(dist, "dist")?;
        let schedule = read_str(schedule, "schedule")?;
        let spec: DistributionSpec = dist.parse().map_err(|e| {
            set_error(&format!("{e}"));
            NqStatus::NqInvalidArgument
        })?;
        generate_impl(MomentSequence::from_distribution(spec), schedule, precision).map_err(
            |(status, msg)| {
                set_error(&msg);
                status
            },
        )
    });
    match result {
        Ok(rule) => Box::into_raw(Box::new(rule)),
        Err(_) => ptr::null_mut(),
    }
}

/// Generates a nested rule from a moments file (JSON text).
///
/// # Safety
/// `moments_json` and `schedule` must be valid NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn nq_generate_from_moments(
    moments_json: *const c_char,
    schedule: *const c_char,
    precision: u32,
) -> *mut NqRule {
    let result = guard("nq_generate_from_moments", || {
        let text = read_str(moments_json, "moments_json")?;
        let schedule = read_str(schedule, "schedule")?;
        let mu = parse_moments_json(text).map_err(|e| {
            set_error(&format!("{e}"));
            NqStatus::NqInvalidArgument
        })?;
        generate_impl(mu, schedule, precision).map_err(|(status, msg)| {
            set_error(&msg);
            status
        })
    });
    match result {
        Ok(rule) => Box::into_raw(Box::new(rule)),
        Err(_) => ptr::null_mut(),
    }
}

/// Parses a rule document from JSON text.
///
/// # Safety
/// `json` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn nq_rule_from_json(json: *const c_char) -> *mut NqRule {
    let result = guard("nq_rule_from_json", || {
        let text = read_str(json, "json")?;
        RuleDocument::from_json(text)
            .map(|document| NqRule { document })
            .map_err(|e| {
                set_error(&e.to_string());
                NqStatus::NqInvalidArgument
            })
    });
    match result {
        Ok(rule) => Box::into_raw(Box::new(rule)),
        Err(_) => ptr::null_mut(),
    }
}

/// Releases a rule handle.
///
/// # Safety
/// `rule` must be a pointer returned by this library, or null. It must
/// not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nq_rule_free(rule: *mut NqRule) {
    if !rule.is_null() {
        drop(Box::from_raw(rule));
    }
}

unsafe fn rule_ref<'a>(rule: *const NqRule, what: &str) -> Result<&'a NqRule, NqStatus> {
    if rule.is_null() {
        set_error(&format!("{what}: rule handle is null"));
        return Err(NqStatus::NqInvalidArgument);
    }
    Ok(&*rule)
}

/// Number of levels in the rule; -1 on a null handle.
///
/// # Safety
/// `rule` must be a live handle from this library, or null.
#[no_mangle]
pub unsafe extern "C" fn nq_rule_level_count(rule: *const NqRule) -> c_int {
    match rule_ref(rule, "nq_rule_level_count") {
        Ok(r) => r.document.levels.len() as c_int,
        Err(_) => -1,
    }
}

/// Number of nodes at a 0-based level index; -1 when out of range.
///
/// # Safety
/// `rule` must be a live handle from this library, or null.
#[no_mangle]
pub unsafe extern "C" fn nq_rule_node_count(rule: *const NqRule, level: c_int) -> c_int {
    match rule_ref(rule, "nq_rule_node_count") {
        Ok(r) => match usize::try_from(level)
            .ok()
            .and_then(|i| r.document.levels.get(i))
        {
            Some(l) => l.nodes.len() as c_int,
            None => {
                set_error("level index out of range");
                -1
            }
        },
        Err(_) => -1,
    }
}

/// Measured degree of exactness at a 0-based level index; -2 on error.
///
/// # Safety
/// `rule` must be a live handle from this library, or null.
#[no_mangle]
pub unsafe extern "C" fn nq_rule_verified_degree(rule: *const NqRule, level: c_int) -> i64 {
    match rule_ref(rule, "nq_rule_verified_degree") {
        Ok(r) => match usize::try_from(level)
            .ok()
            .and_then(|i| r.document.levels.get(i))
        {
            Some(l) => l.verified_degree,
            None => {
                set_error("level index out of range");
                -2
            }
        },
        Err(_) => -2,
    }
}

/// Serializes the rule as JSON. Free with `nq_string_free`.
///
/// # Safety
/// `rule` must be a live handle from this library, or null.
#[no_mangle]
pub unsafe extern "C" fn nq_rule_to_json(rule: *const NqRule) -> *mut c_char {
    match rule_ref(rule, "nq_rule_to_json").and_then(|r| {
        r.document.to_json().map_err(|e| {
            set_error(&e.to_string());
            NqStatus::NqInternalError
        })
    }) {
        Ok(json) => to_c_string(json),
        Err(_) => ptr::null_mut(),
    }
}

/// Serializes the top level as `node,weight,first_level` CSV. Free with
/// `nq_string_free`.
///
/// # Safety
/// `rule` must be a live handle from this library, or null.
#[no_mangle]
pub unsafe extern "C" fn nq_rule_to_csv(rule: *const NqRule) -> *mut c_char {
    match rule_ref(rule, "nq_rule_to_csv") {
        Ok(r) => to_c_string(r.document.to_csv()),
        Err(_) => ptr::null_mut(),
    }
}

/// Applies one extension step (first working p from `p_candidates`,
/// comma-separated) to the rule in place.
///
/// # Safety
/// `rule` must be a live mutable handle; `p_candidates` a valid string;
/// `moments_json` a valid string or null for built-in distributions.
#[no_mangle]
pub unsafe extern "C" fn nq_rule_extend(
    rule: *mut NqRule,
    p_candidates: *const c_char,
    moments_json: *const c_char,
) -> NqStatus {
    let result = guard("nq_rule_extend", || {
        if rule.is_null() {
            set_error("rule handle is null");
            return Err(NqStatus::NqInvalidArgument);
        }
        let handle = &mut *rule;
        let candidates = read_str(p_candidates, "p_candidates")?
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| {
                set_error("p_candidates must be comma-separated positive integers");
                NqStatus::NqInvalidArgument
            })?;
        let mu = resolve_moments(&handle.document, moments_json)?;
        match extend_document(&handle.document, &candidates, &mu) {
            Ok((Some(updated), _, _)) => {
                handle.document = updated;
                Ok(())
            }
            Ok((None, p, outcome)) => {
                let reason = outcome
                    .failure_reason()
                    .map_or_else(|| "unknown".to_string(), |r| r.to_string());
                set_error(&format!("extension with p = {p} failed: {reason}"));
                Err(NqStatus::NqExtensionFailed)
            }
            Err(e) => {
                set_error(&e.to_string());
                Err(NqStatus::NqInvalidArgument)
            }
        }
    });
    match result {
        Ok(()) => NqStatus::NqOk,
        Err(status) => status,
    }
}

unsafe fn resolve_moments(
    doc: &RuleDocument,
    moments_json: *const c_char,
) -> Result<MomentSequence, NqStatus> {
    let domain = doc.domain_interval().map_err(|e| {
        set_error(&e.to_string());
        NqStatus::NqInvalidArgument
    })?;
    if doc.distribution == "custom" {
        if moments_json.is_null() {
            set_error("document has a custom distribution; moments_json is required");
            return Err(NqStatus::NqInvalidArgument);
        }
        let text = read_str(moments_json, "moments_json")?;
        let mu = parse_moments_json(text).map_err(|e| {
            set_error(&e.to_string());
            NqStatus::NqInvalidArgument
        })?;
        if mu.domain() != &domain {
            set_error("moments domain does not match the document domain");
            return Err(NqStatus::NqInvalidArgument);
        }
        Ok(mu)
    } else {
        let spec: DistributionSpec = doc.distribution.parse().map_err(|e| {
            let e: nestquad::Error = e;
            set_error(&format!("{e}"));
            NqStatus::NqInvalidArgument
        })?;
        Ok(MomentSequence::from_distribution(spec).with_domain(domain))
    }
}

/// Re-derives every invariant of the rule from scratch.
///
/// # Safety
/// `rule` must be a live handle; `moments_json` a valid string or null
/// for built-in distributions.
#[no_mangle]
pub unsafe extern "C" fn nq_rule_verify(
    rule: *const NqRule,
    moments_json: *const c_char,
) -> NqStatus {
    let result = guard("nq_rule_verify", || {
        let handle = rule_ref(rule, "nq_rule_verify")?;
        let mu = resolve_moments(&handle.document, moments_json)?;
        match verify_document(&handle.document, &mu) {
            Ok(()) => Ok(()),
            Err(e @ (VerifyError::Malformed(_) | VerifyError::Cannot(_))) => {
                set_error(&e.to_string());
                Err(NqStatus::NqInvalidArgument)
            }
            Err(e @ VerifyError::Failed { .. }) => {
                set_error(&e.to_string());
                Err(NqStatus::NqVerificationFailed)
            }
        }
    });
    match result {
        Ok(()) => NqStatus::NqOk,
        Err(status) => status,
    }
}

/// Writes moments 0..=count of a built-in distribution as moments-file
/// JSON. Free with `nq_string_free`; null on failure.
///
/// # Safety
/// `dist` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn nq_moments_json(dist: *const c_char, count: u32) -> *mut c_char {
    let result = guard("nq_moments_json", || {
        let dist = read_str(dist, "dist")?;
        let spec: DistributionSpec = dist.parse().map_err(|e| {
            let e: nestquad::Error = e;
            set_error(&format!("{e}"));
            NqStatus::NqInvalidArgument
        })?;
        let mu = MomentSequence::from_distribution(spec);
        moments_to_json(&mu, count as usize).map_err(|e| {
            set_error(&e.to_string());
            NqStatus::NqInternalError
        })
    });
    match result {
        Ok(json) => to_c_string(json),
        Err(_) => ptr::null_mut(),
    }
}
