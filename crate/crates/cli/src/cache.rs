//! JSON-lines census cache keyed by (n, d, scope, engine version).
//!
//! Layout: one header line with metadata (including the only timestamp this
//! tool ever emits), then one line per record. Any unreadable or inconsistent
//! line invalidates the file: we warn on stderr and recompute - counts are
//! cheap, wrong cached counts are not.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use regis_core::census::CensusRecord;
use regis_core::enumerate::RegularClassSpec;
use serde_json::{json, Value};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn cache_dir() -> PathBuf {
    match std::env::var_os("REGIS_CACHE_DIR") {
        Some(dir) => PathBuf::from(dir),
        None => PathBuf::from(".regis-cache"),
    }
}

fn cache_file(spec: &RegularClassSpec) -> PathBuf {
    let scope = if spec.connected_only {
        "connected"
    } else {
        "all"
    };
    cache_dir().join(format!(
        "census-n{}-d{}-{}-v{}.jsonl",
        spec.n, spec.d, scope, ENGINE_VERSION
    ))
}

/// Loads a complete, consistent record set or returns None.
pub fn load(spec: &RegularClassSpec) -> Option<Vec<CensusRecord>> {
    let path = cache_file(spec);
    let text = fs::read_to_string(&path).ok()?;
    match parse(spec, &text) {
        Ok(records) => Some(records),
        Err(line) => {
            eprintln!(
                "warning: corrupt cache line {line} in {}; recomputing",
                path.display()
            );
            None
        }
    }
}

fn parse(spec: &RegularClassSpec, text: &str) -> Result<Vec<CensusRecord>, usize> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(1usize)?;
    let header: Value = serde_json::from_str(header).map_err(|_| 1usize)?;
    let meta = header.get("meta").ok_or(1usize)?;
    let classes = meta.get("classes").and_then(Value::as_u64).ok_or(1usize)? as usize;
    if meta.get("n").and_then(Value::as_u64) != Some(spec.n as u64)
        || meta.get("d").and_then(Value::as_u64) != Some(spec.d as u64)
    {
        return Err(1);
    }
    let mut records = Vec::with_capacity(classes);
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let value: Value = serde_json::from_str(line).map_err(|_| idx + 1)?;
        let record = CensusRecord::from_json(&value).ok_or(idx + 1)?;
        if record.n != spec.n || record.d != spec.d {
            return Err(idx + 1);
        }
        records.push(record);
    }
    if records.len() != classes {
        return Err(1);
    }
    Ok(records)
}

pub fn store(spec: &RegularClassSpec, records: &[CensusRecord]) {
    let dir = cache_dir();
    if fs::create_dir_all(&dir).is_err() {
        return; // cache is best-effort
    }
    let stamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let header = json!({
        "meta": {
            "n": spec.n,
            "d": spec.d,
            "scope": if spec.connected_only { "connected" } else { "all" },
            "classes": records.len(),
            "engine_version": ENGINE_VERSION,
            "generated_unix": stamp,
        }
    });
    let mut text = header.to_string();
    text.push('\n');
    for r in records {
        text.push_str(&r.to_json().to_string());
        text.push('\n');
    }
    let path = cache_file(spec);
    let tmp = path.with_extension("jsonl.tmp");
    if fs::write(&tmp, &text).is_ok() {
        let _ = fs::rename(&tmp, &path);
    }
}

/// Removes the cache entry (used after detecting corruption so a fresh store
/// replaces it).
pub fn invalidate(spec: &RegularClassSpec) {
    let _ = fs::remove_file(cache_file(spec));
}

pub fn exists(spec: &RegularClassSpec) -> bool {
    Path::exists(&cache_file(spec))
}
