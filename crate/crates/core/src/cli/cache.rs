use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const CACHE_ENV: &str = "HH1LAB_CACHE";
pub const DEFAULT_CACHE_DIR: &str = ".hh1lab-cache";

/// Content-addressed store of computed results, one JSON file per key.
#[derive(Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
    hits: AtomicU64,
    misses: AtomicU64,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

/// Hex SHA-256 of the key parts, each length-prefixed so that no two part
/// lists collide.
pub fn cache_key(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p.as_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache {
            dir: Some(dir.into()),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    /// A cache that stores nothing.
    pub fn disabled() -> Self {
        Cache {
            dir: None,
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    /// Directory from `HH1LAB_CACHE`, or `.hh1lab-cache` when unset.
    /// An empty value disables the cache.
    pub fn from_env() -> Self {
        match std::env::var_os(CACHE_ENV) {
            Some(v) if v.is_empty() => Cache::disabled(),
            Some(v) => Cache::new(v),
            None => Cache::new(DEFAULT_CACHE_DIR),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    pub fn get(&self, key: &str) -> Option<Value> {
        let text = std::fs::read_to_string(self.path(key)?).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Writes to a private temporary file, then renames it into place, so
    /// concurrent writers of the same key never expose a partial file.
    pub fn put(&self, key: &str, value: &Value) -> Result<()> {
        let (Some(dir), Some(path)) = (self.dir.as_ref(), self.path(key)) else {
            return Ok(());
        };
        let io = |e: std::io::Error| Error::Io(format!("{}: {e}", dir.display()));
        std::fs::create_dir_all(dir).map_err(io)?;
        let tmp = dir.join(format!(
            ".{key}.{}.{}.tmp",
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        std::fs::write(&tmp, serde_json::to_string(value).expect("json value serializes")).map_err(io)?;
        std::fs::rename(&tmp, &path).map_err(io)
    }

    /// Returns the stored value for `key`, or computes and stores it. Values
    /// carrying errors are returned but not stored.
    pub fn get_or_compute(&self, key: &str, compute: impl FnOnce() -> Value) -> Result<Value> {
        if let Some(v) = self.get(key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(v);
        }
        if self.dir.is_some() {
            self.misses.fetch_add(1, Ordering::Relaxed);
        }
        let v = compute();
        let failed = v.get("errors").and_then(Value::as_array).is_some_and(|e| !e.is_empty());
        if !failed {
            self.put(key, &v)?;
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keys_separate_parts() {
        assert_ne!(cache_key(&["ab", "c"]), cache_key(&["a", "bc"]));
        assert_eq!(cache_key(&["x"]).len(), 64);
    }

    #[test]
    fn hit_after_miss() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path());
        let mut runs = 0;
        let v1 = c.get_or_compute("k", || {
            runs += 1;
            json!({"a": 1})
        });
        let v2 = c.get_or_compute("k", || {
            runs += 1;
            json!({"a": 2})
        });
        assert_eq!(v1.unwrap(), v2.unwrap());
        assert_eq!((runs, c.hits(), c.misses()), (1, 1, 1));
    }

    #[test]
    fn errors_are_not_stored() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path());
        c.get_or_compute("e", || json!({"errors": ["boom"]})).unwrap();
        assert!(c.get("e").is_none());
        let d = Cache::disabled();
        d.get_or_compute("e", || json!({})).unwrap();
        assert!(d.get("e").is_none());
    }
}
