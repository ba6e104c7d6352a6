//! Browser bindings: list the catalog, build matrices, run checks and
//! expand in `h`. Everything crosses the boundary as JSON text.

use serde::Deserialize;
use wasm_bindgen::prelude::*;
use ybe_core::catalog::{list_entries, Params};
use ybe_core::job::{self, CheckId, JobError, JobSpec, ReportFormat, Target};
use ybe_core::verify::{Backend, SamplerConfig};

/// Largest leg dimension for which the page runs an exact QYBE check.
const MAX_EXACT_LEG_DIM: usize = 8;

#[derive(Deserialize)]
struct Request {
    entry: String,
    #[serde(default)]
    params: Params,
}

fn parse(request: &str) -> Result<(Target, Request), String> {
    let req: Request = serde_json::from_str(request).map_err(|e| format!("bad request: {e}"))?;
    let target = Target::resolve(&req.entry, &req.params).map_err(message)?;
    Ok((target, req))
}

fn message(e: JobError) -> String {
    e.to_string()
}

pub fn entries_json() -> String {
    serde_json::to_string(&list_entries()).expect("entries serialize")
}

/// `{"entry": ..., "params": {...}}` to `{"g_hat": ..., "c_hat": ..., "r": ...}`.
pub fn build_json(request: &str) -> Result<String, String> {
    let (target, _) = parse(request)?;
    let map: serde_json::Map<String, serde_json::Value> = job::build_artifacts(&target)
        .map_err(message)?
        .into_iter()
        .map(|(k, m)| (k, serde_json::to_value(m).expect("matrix serializes")))
        .collect();
    Ok(serde_json::Value::Object(map).to_string())
}

/// Runs one check and returns the report array.
pub fn verify_json(request: &str, check: &str, mode: &str, seed: u64) -> Result<String, String> {
    let (target, req) = parse(request)?;
    let check = CheckId::from_name(check).ok_or_else(|| format!("unknown check `{check}`"))?;
    let mode = match mode {
        "exact" => Backend::Exact,
        "sampled" => Backend::Sampled,
        other => return Err(format!("unknown mode `{other}`")),
    };
    if mode == Backend::Exact && check == CheckId::Qybe && leg_dim(&target) > MAX_EXACT_LEG_DIM {
        return Err(format!("exact QYBE above leg dimension {MAX_EXACT_LEG_DIM} is too slow for the page; use sampled mode"));
    }
    let spec = JobSpec::new(check, req.entry, req.params).with_mode(mode).with_sampler(SamplerConfig::with_seed(seed));
    let reports = job::run_job(&spec, seed).map_err(message)?;
    Ok(job::emit_report(&reports, ReportFormat::Json))
}

/// `M_0 … M_order` as a JSON array of matrices.
pub fn expand_json(request: &str, order: usize) -> Result<String, String> {
    let (target, _) = parse(request)?;
    let ms = job::expand_artifacts(&target, order).map_err(message)?;
    Ok(serde_json::to_string(&ms).expect("matrices serialize"))
}

fn leg_dim(target: &Target) -> usize {
    match target {
        Target::Catalog(e) => e.leg_dim(),
        Target::Grassmann { p, q, algebra } => p * q * algebra.real_dim(),
    }
}

#[wasm_bindgen(js_name = listEntries)]
pub fn list_entries_js() -> String {
    entries_json()
}

#[wasm_bindgen(js_name = build)]
pub fn build_js(request: &str) -> Result<String, JsValue> {
    build_json(request).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = verify)]
pub fn verify_js(request: &str, check: &str, mode: &str, seed: u32) -> Result<String, JsValue> {
    verify_json(request, check, mode, seed.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = expand)]
pub fn expand_js(request: &str, order: u32) -> Result<String, JsValue> {
    expand_json(request, order as usize).map_err(|e| JsValue::from_str(&e))
}
