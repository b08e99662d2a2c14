//! Run records and the on-disk result cache.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use sha2::{Digest, Sha256};

use crate::algebra::field::FIELD_TABLE_VERSION;
use crate::error::Result;

/// Everything that determines a result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunInputs {
    pub command: String,
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    pub mode: String,
    pub samples: usize,
    pub seed: u64,
    pub budget: usize,
}

impl RunInputs {
    /// Hex digest of the canonical JSON of the inputs and table versions.
    pub fn digest(&self) -> String {
        let canonical = serde_json::to_string(&(self, env!("CARGO_PKG_VERSION"), FIELD_TABLE_VERSION))
            .expect("inputs serialize");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RunRecord {
    pub inputs: RunInputs,
    pub version: String,
    pub field_table_version: u32,
    pub wall_clock_ms: u64,
    /// Exit status of the run; nonzero for partial records.
    pub status: i32,
    pub summary: String,
    pub result: Box<RawValue>,
}

impl RunRecord {
    pub fn new<T: Serialize>(
        inputs: RunInputs,
        result: &T,
        summary: String,
        wall_clock_ms: u64,
        status: i32,
    ) -> Result<RunRecord> {
        Ok(RunRecord {
            inputs,
            version: env!("CARGO_PKG_VERSION").into(),
            field_table_version: FIELD_TABLE_VERSION,
            wall_clock_ms,
            status,
            summary,
            result: RawValue::from_string(serde_json::to_string(result)?)?,
        })
    }
}

/// `COMPONENT_CACHE_DIR`, else `$XDG_CACHE_HOME/cgt`, else `~/.cache/cgt`.
pub fn cache_dir() -> PathBuf {
    if let Some(d) = std::env::var_os("COMPONENT_CACHE_DIR") {
        return PathBuf::from(d);
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(d).join("cgt");
    }
    match std::env::var_os("HOME") {
        Some(h) => PathBuf::from(h).join(".cache").join("cgt"),
        None => std::env::temp_dir().join("cgt-cache"),
    }
}

fn entry(dir: &Path, inputs: &RunInputs) -> PathBuf {
    let d = inputs.digest();
    dir.join(&d[..2]).join(format!("{d}.json"))
}

/// A cached record for these inputs, if one exists and matches them.
pub fn load(dir: &Path, inputs: &RunInputs) -> Result<Option<RunRecord>> {
    let path = entry(dir, inputs);
    if !path.exists() {
        return Ok(None);
    }
    let rec: RunRecord = serde_json::from_str(&fs::read_to_string(&path)?)?;
    Ok((rec.inputs == *inputs && rec.status == 0).then_some(rec))
}

pub fn store(dir: &Path, rec: &RunRecord) -> Result<PathBuf> {
    let path = entry(dir, &rec.inputs);
    fs::create_dir_all(path.parent().expect("entry has a parent"))?;
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, serde_json::to_string_pretty(rec)?)?;
    fs::rename(&tmp, &path)?;
    Ok(path)
}
