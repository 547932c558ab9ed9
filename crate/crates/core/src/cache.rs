//! On-disk persistence of the genus-zero memo table.
//!
//! ```json
//! {"version": 1, "entries": {"p3": [{"d": 2, "insertions": [2, 2], "value": "92"}]}}
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::gw0::{GwKey, GwTable, Insertions};

pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CacheFile {
    version: u32,
    entries: BTreeMap<String, Vec<CacheEntry>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CacheEntry {
    d: u32,
    insertions: Vec<u8>,
    value: String,
}

fn ambient_label(n: u8) -> String {
    format!("p{n}")
}

fn parse_label(label: &str) -> Result<u8> {
    match label {
        "p2" => Ok(2),
        "p3" => Ok(3),
        _ => Err(Error::Cache(format!("unknown ambient label {label:?}"))),
    }
}

/// Writes every cached invariant to `path` through a temporary file and a
/// rename, so readers never see a half-written cache.
pub fn store(table: &GwTable, path: &Path) -> Result<()> {
    let mut entries: BTreeMap<String, Vec<CacheEntry>> = BTreeMap::new();
    for (key, value) in table.snapshot() {
        entries
            .entry(ambient_label(key.ambient))
            .or_default()
            .push(CacheEntry {
                d: key.degree,
                insertions: key.insertions.exponents(),
                value: value.to_string(),
            });
    }
    let doc = CacheFile {
        version: CACHE_VERSION,
        entries,
    };
    let text = serde_json::to_string(&doc).map_err(|e| Error::Cache(e.to_string()))?;

    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::Cache(format!("{} is not a file path", path.display())))?;
    let tmp = dir.unwrap_or_else(|| Path::new(".")).join(format!(
        ".{}.tmp{}",
        file_name.to_string_lossy(),
        std::process::id()
    ));
    let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
    {
        let mut f = fs::File::create(&tmp).map_err(io)?;
        f.write_all(text.as_bytes()).map_err(io)?;
        f.sync_all().map_err(io)?;
    }
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io(e)
    })
}

/// Reads a cache file into `table`. Nothing is inserted unless the whole file
/// parses and every entry is a normalized, balanced key.
pub fn load(table: &GwTable, path: &Path) -> Result<usize> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
    let entries = parse(&text)?;
    let count = entries.len();
    table.absorb(entries)?;
    Ok(count)
}

fn parse(text: &str) -> Result<Vec<(GwKey, Rational)>> {
    let version = serde_json::from_str::<serde_json::Value>(text)
        .map_err(|e| Error::Cache(format!("malformed cache: {e}")))?
        .get("version")
        .and_then(|v| v.as_u64());
    if version != Some(CACHE_VERSION as u64) {
        return Err(Error::Cache(format!(
            "cache version {} is not supported (expected {CACHE_VERSION}); delete the file to rebuild it",
            version.map_or("missing".to_string(), |v| v.to_string())
        )));
    }
    let doc: CacheFile =
        serde_json::from_str(text).map_err(|e| Error::Cache(format!("malformed cache: {e}")))?;
    let mut out = Vec::new();
    for (label, list) in doc.entries {
        let ambient = parse_label(&label)?;
        for entry in list {
            let bad = |why: &str| Error::Cache(format!("{label} entry {entry:?}: {why}"));
            if entry.insertions.iter().any(|&e| e < 2 || e > ambient) {
                return Err(bad("insertions must be normalized exponents"));
            }
            let insertions =
                Insertions::from_exponents(&entry.insertions).ok_or_else(|| bad("exponent"))?;
            let key = GwKey {
                ambient,
                degree: entry.d,
                insertions,
            };
            if entry.d == 0 || !key.is_balanced() {
                return Err(bad("key is not balanced"));
            }
            let value: Rational = entry.value.parse().map_err(|_| bad("value"))?;
            out.push((key, value));
        }
    }
    Ok(out)
}
