//! Disk cache for computed chain counts, keyed by canonical spec. The file
//! records the engine version that produced it; entries from another version
//! are discarded wholesale rather than trusted.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::CliError;
use fuzzcount_core::ENGINE_VERSION;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CacheEntry {
    /// Decimal digits; h(G) overflows u64 well inside the supported range.
    pub h: String,
    pub method: String,
    pub subgroup_count: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    engine_version: String,
    entries: BTreeMap<String, CacheEntry>,
}

#[derive(Debug)]
pub struct Cache {
    path: Option<PathBuf>,
    entries: BTreeMap<String, CacheEntry>,
    dirty: bool,
}

impl Cache {
    /// In-memory cache that is never written anywhere.
    pub fn in_memory() -> Self {
        Cache {
            path: None,
            entries: BTreeMap::new(),
            dirty: false,
        }
    }

    /// Loads from `path`. A missing file or one written by a different
    /// engine version yields an empty cache bound to that path.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let entries = match std::fs::read_to_string(path) {
            Ok(text) => {
                let file: CacheFile = serde_json::from_str(&text)?;
                if file.engine_version == ENGINE_VERSION {
                    file.entries
                } else {
                    BTreeMap::new()
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => BTreeMap::new(),
            Err(e) => return Err(e.into()),
        };
        Ok(Cache {
            path: Some(path.to_path_buf()),
            entries,
            dirty: false,
        })
    }

    /// A cached count for `spec`, provided it was produced by the
    /// cross-checking method (both counters, compared). Entries that fail to
    /// parse as decimal integers are treated as absent.
    pub fn get(&self, spec: &str) -> Option<(BigUint, usize)> {
        let e = self.entries.get(spec)?;
        if e.method != "BOTH" {
            return None;
        }
        let h = e.h.parse::<BigUint>().ok()?;
        Some((h, e.subgroup_count))
    }

    pub fn put(&mut self, spec: &str, h: &BigUint, subgroup_count: usize) {
        self.entries.insert(
            spec.to_string(),
            CacheEntry {
                h: h.to_string(),
                method: "BOTH".to_string(),
                subgroup_count,
            },
        );
        self.dirty = true;
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Writes the cache back if it has a path and new entries.
    pub fn save(&mut self) -> Result<(), CliError> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        if !self.dirty {
            return Ok(());
        }
        let file = CacheFile {
            engine_version: ENGINE_VERSION.to_string(),
            entries: self.entries.clone(),
        };
        std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
        self.dirty = false;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmp(name: &str) -> PathBuf {
        let mut p = std::env::temp_dir();
        p.push(format!("fuzzcount-cache-test-{}-{name}.json", std::process::id()));
        p
    }

    #[test]
    fn round_trip_and_version_invalidation() {
        let path = tmp("roundtrip");
        let _ = std::fs::remove_file(&path);

        let mut c = Cache::load(&path).unwrap();
        assert!(c.is_empty());
        c.put("C2 x C4", &BigUint::from(24u32), 8);
        c.save().unwrap();

        let c2 = Cache::load(&path).unwrap();
        let (h, n) = c2.get("C2 x C4").unwrap();
        assert_eq!(h, BigUint::from(24u32));
        assert_eq!(n, 8);
        assert!(c2.get("C2 x C8").is_none());

        // stamp a different version: everything must be dropped
        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, text.replace(ENGINE_VERSION, "0.0.0-other")).unwrap();
        let c3 = Cache::load(&path).unwrap();
        assert!(c3.is_empty());

        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn rejects_entries_not_computed_by_both_methods() {
        let mut c = Cache::in_memory();
        c.entries.insert(
            "C4".into(),
            CacheEntry {
                h: "4".into(),
                method: "DP".into(),
                subgroup_count: 3,
            },
        );
        assert!(c.get("C4").is_none());
    }
}
