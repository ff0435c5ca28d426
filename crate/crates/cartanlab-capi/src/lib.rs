//! C ABI for the cartanlab core: opaque handles for groups and character
//! tables, integer status codes, and JSON strings for structured data.
//!
//! Conventions:
//! - Constructors return null on failure; functions returning a status code
//!   use 0 for success. `cartanlab_last_error_message` describes the most
//!   recent failure on the calling thread.
//! - Every returned string is owned by the caller and must be released with
//!   `cartanlab_string_free`; handles are released with their `_free`
//!   functions. All functions tolerate null handles (they fail cleanly).

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::sync::Arc;

use libc::{c_char, c_int};

use cartanlab::builtin;
use cartanlab::cartan::{complex_cartan, delta_matrix, modular_cartan, DecompositionMatrix};
use cartanlab::chartab::CharacterTable;
use cartanlab::group::{PairSubgroup, PermGroup};
use cartanlab::hunt::{self, CandidatePool, HuntError, SearchOutcome};
use cartanlab::io;
use cartanlab::monoid::DEFAULT_POINT_CAP;

/// Status codes shared with the CLI exit-code contract.
pub const CARTANLAB_OK: c_int = 0;
pub const CARTANLAB_ERR_PARSE: c_int = 2;
pub const CARTANLAB_ERR_EXHAUSTED: c_int = 3;
pub const CARTANLAB_ERR_VERIFY_FAILED: c_int = 4;
pub const CARTANLAB_ERR_INCONSISTENT: c_int = 5;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(msg.replace('\0', " ")).unwrap();
    });
}

/// Opaque handle: a permutation group with its conjugacy data.
pub struct CartanlabGroup {
    group: Arc<PermGroup>,
}

/// Opaque handle: an exact character table bound to its group.
pub struct CartanlabTable {
    table: CharacterTable,
}

fn cstr_arg<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, ()> {
    if ptr.is_null() {
        set_error(format!("{what} is null"));
        return Err(());
    }
    // Safety: the caller promises a NUL-terminated string
    match unsafe { CStr::from_ptr(ptr) }.to_str() {
        Ok(s) => Ok(s),
        Err(_) => {
            set_error(format!("{what} is not valid UTF-8"));
            Err(())
        }
    }
}

fn to_owned_cstring(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap().into_raw()
}

/// Message for the most recent failure on this thread. Borrowed: valid until
/// the next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn cartanlab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn cartanlab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Release a string returned by this library.
#[no_mangle]
pub extern "C" fn cartanlab_string_free(s: *mut c_char) {
    if !s.is_null() {
        // Safety: s came from CString::into_raw in this library
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Build a built-in group by name ("trivial", "C2", ..., "S3", "S4", "D4",
/// "Q8"). Returns null on failure.
#[no_mangle]
pub extern "C" fn cartanlab_group_builtin(name: *const c_char) -> *mut CartanlabGroup {
    let Ok(name) = cstr_arg(name, "group name") else {
        return std::ptr::null_mut();
    };
    match builtin::group(name) {
        Ok(g) => Box::into_raw(Box::new(CartanlabGroup { group: Arc::new(g) })),
        Err(e) => {
            set_error(e.to_string());
            std::ptr::null_mut()
        }
    }
}

/// Build a group from a JSON group spec (`degree`, `notation`, `generators`).
#[no_mangle]
pub extern "C" fn cartanlab_group_from_spec_json(json: *const c_char) -> *mut CartanlabGroup {
    let Ok(text) = cstr_arg(json, "group spec") else {
        return std::ptr::null_mut();
    };
    let spec: io::GroupSpecFile = match serde_json::from_str(text) {
        Ok(s) => s,
        Err(e) => {
            set_error(e.to_string());
            return std::ptr::null_mut();
        }
    };
    match spec.build() {
        Ok(g) => Box::into_raw(Box::new(CartanlabGroup { group: Arc::new(g) })),
        Err(e) => {
            set_error(e.to_string());
            std::ptr::null_mut()
        }
    }
}

/// Group order, or -1 for a null handle.
#[no_mangle]
pub extern "C" fn cartanlab_group_order(group: *const CartanlabGroup) -> i64 {
    if group.is_null() {
        set_error("group handle is null");
        return -1;
    }
    // Safety: non-null handle produced by this library
    unsafe { &*group }.group.order() as i64
}

#[no_mangle]
pub extern "C" fn cartanlab_group_free(group: *mut CartanlabGroup) {
    if !group.is_null() {
        // Safety: handle produced by Box::into_raw in this library
        drop(unsafe { Box::from_raw(group) });
    }
}

/// Compute the exact character table (Dixon's method). Returns null on
/// failure.
#[no_mangle]
pub extern "C" fn cartanlab_chartab_compute(group: *const CartanlabGroup) -> *mut CartanlabTable {
    if group.is_null() {
        set_error("group handle is null");
        return std::ptr::null_mut();
    }
    // Safety: non-null handle produced by this library
    let g = unsafe { &*group };
    match CharacterTable::dixon(Arc::clone(&g.group)) {
        Ok(table) => Box::into_raw(Box::new(CartanlabTable { table })),
        Err(e) => {
            set_error(e.to_string());
            std::ptr::null_mut()
        }
    }
}

/// Character table as JSON (`group_order`, `class_reps`, `class_sizes`,
/// `conductor`, `rows`). Caller frees with cartanlab_string_free.
#[no_mangle]
pub extern "C" fn cartanlab_chartab_to_json(table: *const CartanlabTable) -> *mut c_char {
    if table.is_null() {
        set_error("table handle is null");
        return std::ptr::null_mut();
    }
    // Safety: non-null handle produced by this library
    let t = unsafe { &*table };
    let file = io::character_table_to_file(&t.table);
    to_owned_cstring(serde_json::to_string_pretty(&file).unwrap())
}

#[no_mangle]
pub extern "C" fn cartanlab_table_free(table: *mut CartanlabTable) {
    if !table.is_null() {
        // Safety: handle produced by Box::into_raw in this library
        drop(unsafe { Box::from_raw(table) });
    }
}

fn resolve_subgroup(spec: &str, group: &PermGroup) -> Result<PairSubgroup, String> {
    if matches!(spec, "diag" | "La" | "Lb" | "Lc") && group.order() == 6 && group.degree() == 3 {
        return builtin::s3_pair_subgroup(group, spec).map_err(|e| e.to_string());
    }
    let file: io::PairSubgroupSpecFile =
        serde_json::from_str(spec).map_err(|e| format!("subgroup spec: {e}"))?;
    file.build(group).map_err(|e| e.to_string())
}

fn resolve_decomp(spec: &str, table: &CharacterTable) -> Result<DecompositionMatrix, String> {
    if spec == "S3-p3" {
        return Ok(builtin::s3_decomposition_p3());
    }
    if let Some(p) = spec.strip_prefix("identity:") {
        let prime: u64 = p.parse().map_err(|_| format!("bad prime in {spec:?}"))?;
        return Ok(builtin::identity_decomposition(&table.labels(), prime));
    }
    let file: io::DecompFile =
        serde_json::from_str(spec).map_err(|e| format!("decomposition spec: {e}"))?;
    let d = io::decomposition_from_file(&file).map_err(|e| e.to_string())?;
    d.validate_against_group_order(table.group().order())
        .map_err(|e| e.to_string())?;
    Ok(d)
}

/// Δ matrix of a subgroup of G×G as JSON (`labels`, `rows`). `subgroup` is a
/// built-in name (diag/La/Lb/Lc for S3) or a pair-subgroup spec as JSON.
#[no_mangle]
pub extern "C" fn cartanlab_delta_json(
    table: *const CartanlabTable,
    subgroup: *const c_char,
) -> *mut c_char {
    if table.is_null() {
        set_error("table handle is null");
        return std::ptr::null_mut();
    }
    let Ok(spec) = cstr_arg(subgroup, "subgroup spec") else {
        return std::ptr::null_mut();
    };
    // Safety: non-null handle produced by this library
    let t = unsafe { &*table };
    let sub = match resolve_subgroup(spec, t.table.group()) {
        Ok(s) => s,
        Err(e) => {
            set_error(e);
            return std::ptr::null_mut();
        }
    };
    match delta_matrix(&t.table, &sub) {
        Ok(delta) => {
            let mut v = io::labeled_matrix_to_json(&delta.labeled);
            v["subgroup_order"] = serde_json::Value::from(delta.subgroup_order);
            to_owned_cstring(serde_json::to_string_pretty(&v).unwrap())
        }
        Err(e) => {
            set_error(e.to_string());
            std::ptr::null_mut()
        }
    }
}

#[derive(serde::Deserialize)]
struct CartanRequest {
    /// Built-in names or pair-subgroup specs (JSON values).
    subgroups: Vec<serde_json::Value>,
    z: Vec<u64>,
    /// "S3-p3", "identity:P", or an inline decomposition object.
    #[serde(default)]
    decomp: Option<serde_json::Value>,
}

fn spec_string(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Assemble the complex (and, with `decomp`, modular) Cartan matrix.
/// `request` is JSON: {"subgroups": [...], "z": [...], "decomp": ...}.
/// On success writes a JSON report to *out_json (caller frees).
#[no_mangle]
pub extern "C" fn cartanlab_cartan_json(
    table: *const CartanlabTable,
    request: *const c_char,
    out_json: *mut *mut c_char,
) -> c_int {
    if table.is_null() || out_json.is_null() {
        set_error("null handle or output pointer");
        return CARTANLAB_ERR_PARSE;
    }
    let Ok(text) = cstr_arg(request, "request") else {
        return CARTANLAB_ERR_PARSE;
    };
    // Safety: non-null handle produced by this library
    let t = unsafe { &*table };
    let req: CartanRequest = match serde_json::from_str(text) {
        Ok(r) => r,
        Err(e) => {
            set_error(e.to_string());
            return CARTANLAB_ERR_PARSE;
        }
    };
    if req.subgroups.len() != req.z.len() {
        set_error(format!(
            "{} multiplicities for {} subgroups",
            req.z.len(),
            req.subgroups.len()
        ));
        return CARTANLAB_ERR_PARSE;
    }
    let mut deltas = Vec::new();
    for s in &req.subgroups {
        let sub = match resolve_subgroup(&spec_string(s), t.table.group()) {
            Ok(s) => s,
            Err(e) => {
                set_error(e);
                return CARTANLAB_ERR_PARSE;
            }
        };
        match delta_matrix(&t.table, &sub) {
            Ok(d) => deltas.push(d),
            Err(e) => {
                set_error(e.to_string());
                return CARTANLAB_ERR_PARSE;
            }
        }
    }
    let complex = match complex_cartan(&deltas, &req.z) {
        Ok(c) => c,
        Err(e) => {
            set_error(e.to_string());
            return CARTANLAB_ERR_PARSE;
        }
    };
    let mut report = serde_json::json!({ "complex": io::cartan_to_json(&complex) });
    if let Some(dspec) = &req.decomp {
        let d = match resolve_decomp(&spec_string(dspec), &t.table) {
            Ok(d) => d,
            Err(e) => {
                set_error(e);
                return CARTANLAB_ERR_PARSE;
            }
        };
        match modular_cartan(&complex, &d) {
            Ok(m) => {
                report["modular"] = io::cartan_to_json(&m);
            }
            Err(e) => {
                set_error(e.to_string());
                return CARTANLAB_ERR_PARSE;
            }
        }
    }
    // Safety: out_json checked non-null above
    unsafe {
        *out_json = to_owned_cstring(serde_json::to_string_pretty(&report).unwrap());
    }
    CARTANLAB_OK
}

#[derive(serde::Deserialize)]
struct SearchRequest {
    decomp: serde_json::Value,
    #[serde(default)]
    strategy: Option<String>,
    #[serde(default)]
    pool: Vec<serde_json::Value>,
    #[serde(default)]
    bound: Option<u64>,
    #[serde(default)]
    kernel_bound: Option<i64>,
    #[serde(default)]
    z_bound: Option<u64>,
    #[serde(default)]
    all: bool,
}

/// Run a counterexample search. `request` is JSON: {"decomp": ...,
/// "strategy": "box"|"kernel", "pool": [...], "bound": n, "kernel_bound": n,
/// "z_bound": n, "all": bool}. An empty pool defaults to the built-in S3
/// triple (S3 only). Returns 0 with a report in *out_json when a verified
/// counterexample is found, 3 when the bounds are exhausted (a report is
/// still written), other codes on error.
#[no_mangle]
pub extern "C" fn cartanlab_search_json(
    table: *const CartanlabTable,
    request: *const c_char,
    out_json: *mut *mut c_char,
) -> c_int {
    if table.is_null() || out_json.is_null() {
        set_error("null handle or output pointer");
        return CARTANLAB_ERR_PARSE;
    }
    let Ok(text) = cstr_arg(request, "request") else {
        return CARTANLAB_ERR_PARSE;
    };
    // Safety: non-null handle produced by this library
    let t = unsafe { &*table };
    let req: SearchRequest = match serde_json::from_str(text) {
        Ok(r) => r,
        Err(e) => {
            set_error(e.to_string());
            return CARTANLAB_ERR_PARSE;
        }
    };
    let d = match resolve_decomp(&spec_string(&req.decomp), &t.table) {
        Ok(d) => d,
        Err(e) => {
            set_error(e);
            return CARTANLAB_ERR_PARSE;
        }
    };
    let group = t.table.group();
    let named: Result<Vec<(String, PairSubgroup)>, String> = if req.pool.is_empty() {
        if group.order() == 6 && group.degree() == 3 {
            ["diag", "Lb", "Lc"]
                .iter()
                .map(|n| {
                    builtin::s3_pair_subgroup(group, n)
                        .map(|s| (n.to_string(), s))
                        .map_err(|e| e.to_string())
                })
                .collect()
        } else {
            Err("an explicit pool is required for groups other than S3".to_string())
        }
    } else {
        req.pool
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let spec = spec_string(v);
                resolve_subgroup(&spec, group).map(|s| {
                    let name = if matches!(v, serde_json::Value::String(_)) {
                        spec.clone()
                    } else {
                        format!("L{}", i + 1)
                    };
                    (name, s)
                })
            })
            .collect()
    };
    let named = match named {
        Ok(n) => n,
        Err(e) => {
            set_error(e);
            return CARTANLAB_ERR_PARSE;
        }
    };
    let pool = match CandidatePool::from_subgroups(&t.table, named) {
        Ok(p) => p,
        Err(e) => {
            set_error(e.to_string());
            return CARTANLAB_ERR_PARSE;
        }
    };
    let strategy = req.strategy.as_deref().unwrap_or("box");
    let start = std::time::Instant::now();
    let outcome = match strategy {
        "box" => hunt::search_bruteforce(
            &pool,
            &d,
            req.bound.unwrap_or(hunt::DEFAULT_BOX_BOUND),
            None,
            req.all,
        ),
        "kernel" => hunt::search_kernel_guided(
            &pool,
            &d,
            req.kernel_bound.unwrap_or(hunt::DEFAULT_KERNEL_BOUND),
            req.z_bound.unwrap_or(hunt::DEFAULT_Z_BOUND),
            req.all,
        ),
        other => {
            set_error(format!("unknown strategy {other:?} (box or kernel)"));
            return CARTANLAB_ERR_PARSE;
        }
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            set_error(e.to_string());
            return CARTANLAB_ERR_PARSE;
        }
    };
    let hits = match &outcome {
        SearchOutcome::Found(hits) => hits.as_slice(),
        SearchOutcome::Exhausted => &[],
    };
    let names = pool.candidates.iter().map(|c| c.name.clone()).collect();
    let config = serde_json::json!({
        "strategy": strategy,
        "prime": d.prime,
        "all": req.all,
    });
    let report = io::search_report(config, names, hits, start.elapsed().as_millis());
    // Safety: out_json checked non-null above
    unsafe {
        *out_json = to_owned_cstring(serde_json::to_string_pretty(&report).unwrap());
    }
    if hits.is_empty() {
        set_error("search exhausted");
        CARTANLAB_ERR_EXHAUSTED
    } else {
        CARTANLAB_OK
    }
}

/// Recompute the ready-made S3 counterexample from scratch and report per
/// claim. With `use_oracle` nonzero, every Δ is cross-checked against the
/// explicit coset biset. Returns 0 on pass, 4 on a failed claim, 5 on an
/// internal inconsistency between the two Δ routes.
#[no_mangle]
pub extern "C" fn cartanlab_verify_paper_s3(
    use_oracle: c_int,
    out_json: *mut *mut c_char,
) -> c_int {
    if out_json.is_null() {
        set_error("output pointer is null");
        return CARTANLAB_ERR_PARSE;
    }
    let run = || -> Result<(c_int, String), (c_int, String)> {
        let g = Arc::new(builtin::group("S3").map_err(|e| (CARTANLAB_ERR_PARSE, e.to_string()))?);
        let table = CharacterTable::dixon(Arc::clone(&g))
            .map_err(|e| (CARTANLAB_ERR_PARSE, e.to_string()))?;
        let cfg = builtin::paper_s3_config();
        let named: Vec<(String, PairSubgroup)> = cfg
            .subgroup_names
            .iter()
            .map(|n| {
                builtin::s3_pair_subgroup(&g, n)
                    .map(|s| (n.to_string(), s))
                    .map_err(|e| (CARTANLAB_ERR_PARSE, e.to_string()))
            })
            .collect::<Result<_, _>>()?;
        let d = builtin::s3_decomposition_p3();
        let report = hunt::verify_counterexample(
            &table,
            &named,
            &cfg.multiplicities,
            &d,
            use_oracle != 0,
            DEFAULT_POINT_CAP,
        )
        .map_err(|e| match e {
            HuntError::Inconsistency(msg) => (CARTANLAB_ERR_INCONSISTENT, msg),
            other => (CARTANLAB_ERR_PARSE, other.to_string()),
        })?;
        let code = if report.passed() {
            CARTANLAB_OK
        } else {
            CARTANLAB_ERR_VERIFY_FAILED
        };
        Ok((code, serde_json::to_string_pretty(&report).unwrap()))
    };
    match run() {
        Ok((code, json)) => {
            // Safety: out_json checked non-null above
            unsafe {
                *out_json = to_owned_cstring(json);
            }
            if code != CARTANLAB_OK {
                set_error("verification failed: see the claim report");
            }
            code
        }
        Err((code, msg)) => {
            set_error(msg);
            code
        }
    }
}
