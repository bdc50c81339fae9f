//! Content-addressed disk cache of q-expansions.

use std::fs;
use std::path::PathBuf;

use cyclelift::qseries::QSeries;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::CliResult;

/// Cached series are stored as `<sha256>.json`; without a directory every
/// lookup builds the series afresh.
#[derive(Debug, Clone, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self { dir }
    }

    fn descriptor(family: &str, weight: i64, index: i64, truncation: i64) -> Value {
        json!({ "family": family, "weight": weight, "index": index, "truncation": truncation, "format": 1 })
    }

    pub fn key(family: &str, weight: i64, index: i64, truncation: i64) -> String {
        let d = Self::descriptor(family, weight, index, truncation).to_string();
        format!("{:x}", Sha256::digest(d.as_bytes()))
    }

    /// Returns the cached series for the key or builds and stores it. An
    /// unreadable or mismatched entry is rebuilt.
    pub fn get_or_build(
        &self,
        family: &str,
        weight: i64,
        index: i64,
        truncation: i64,
        build: impl FnOnce() -> cyclelift::Result<QSeries>,
    ) -> CliResult<QSeries> {
        let Some(dir) = &self.dir else {
            return Ok(build()?);
        };
        let descriptor = Self::descriptor(family, weight, index, truncation);
        let path = dir.join(format!("{}.json", Self::key(family, weight, index, truncation)));
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(entry) = serde_json::from_str::<Value>(&text) {
                if entry.get("key") == Some(&descriptor) {
                    if let Some(series) =
                        entry.get("series").and_then(|s| serde_json::from_value::<QSeries>(s.clone()).ok())
                    {
                        return Ok(series);
                    }
                }
            }
        }
        let series = build()?;
        fs::create_dir_all(dir)?;
        let entry = json!({ "key": descriptor, "series": series });
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&entry)?)?;
        fs::rename(&tmp, &path)?;
        Ok(series)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cyclelift::qseries::delta;

    #[test]
    fn keys_differ_by_every_field() {
        let k = Cache::key("delta", 12, 0, 100);
        assert_eq!(k.len(), 64);
        assert_ne!(k, Cache::key("delta", 12, 0, 101));
        assert_ne!(k, Cache::key("G", 12, 0, 100));
        assert_eq!(k, Cache::key("delta", 12, 0, 100));
    }

    #[test]
    fn round_trip_and_corrupt_entry() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        let a = cache.get_or_build("delta", 12, 0, 30, || Ok(delta(30))).unwrap();
        let b = cache.get_or_build("delta", 12, 0, 30, || panic!("should be cached")).unwrap();
        assert_eq!(a, b);
        let path = dir.path().join(format!("{}.json", Cache::key("delta", 12, 0, 30)));
        fs::write(&path, "not json").unwrap();
        let c = cache.get_or_build("delta", 12, 0, 30, || Ok(delta(30))).unwrap();
        assert_eq!(a, c);
    }
}
