//! Content-addressed on-disk cache of computed polynomials.
//!
//! A key `(kind, g, n)` lives in `<dir>/<sha256("version/kind/g/n")>.json`.
//! Entries from other engine versions hash to different names and are never
//! seen. Unreadable or inconsistent entries are reported and treated as
//! misses.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::output::{canonical_json, PolyEntry};
use crate::pipeline::Kind;
use crate::ENGINE_VERSION;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub kind: Kind,
    pub g: usize,
    pub n: usize,
}

#[derive(Serialize, Deserialize)]
struct StoredEntry {
    engine_version: String,
    entry: PolyEntry,
}

/// Outcome of a lookup.
#[derive(Debug)]
pub enum Lookup {
    Hit(PolyEntry),
    Miss,
    /// The file exists but could not be used; the string says why.
    Corrupt(String),
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
    version: String,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self::with_version(dir, ENGINE_VERSION)
    }

    pub fn with_version(dir: impl Into<PathBuf>, version: &str) -> Self {
        Cache {
            dir: dir.into(),
            version: version.to_string(),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &CacheKey) -> PathBuf {
        let digest = Sha256::digest(format!("{}/{}/{}/{}", self.version, key.kind, key.g, key.n).as_bytes());
        self.dir.join(format!("{}.json", hex::encode(digest)))
    }

    pub fn load(&self, key: &CacheKey) -> Lookup {
        let path = self.path_for(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(format!("{}: {e}", path.display())),
        };
        let stored: StoredEntry = match serde_json::from_str(&text) {
            Ok(s) => s,
            Err(e) => return Lookup::Corrupt(format!("{}: {e}", path.display())),
        };
        let e = &stored.entry;
        let consistent = stored.engine_version == self.version
            && e.kind == key.kind
            && e.g == key.g
            && e.n == key.n
            && e.to_counting().is_some();
        if consistent {
            Lookup::Hit(stored.entry)
        } else {
            Lookup::Corrupt(format!("{}: entry does not match its key", path.display()))
        }
    }

    /// Writes through a temporary file in the same directory and renames it
    /// into place.
    pub fn store(&self, key: &CacheKey, entry: &PolyEntry) -> std::io::Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(key);
        let stored = StoredEntry {
            engine_version: self.version.clone(),
            entry: entry.clone(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(canonical_json(&stored).as_bytes())?;
        tmp.write_all(b"\n")?;
        tmp.persist(&path).map_err(|e| e.error)?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry() -> PolyEntry {
        PolyEntry {
            coeffs: vec!["0".into(), "2".into()],
            degree: Some(1),
            denominator: None,
            g: 2,
            kind: Kind::A,
            n: 2,
        }
    }

    fn key() -> CacheKey {
        CacheKey {
            kind: Kind::A,
            g: 2,
            n: 2,
        }
    }

    #[test]
    fn store_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        assert!(matches!(cache.load(&key()), Lookup::Miss));
        cache.store(&key(), &entry()).unwrap();
        match cache.load(&key()) {
            Lookup::Hit(e) => assert_eq!(e, entry()),
            other => panic!("expected hit, got {other:?}"),
        }
    }

    #[test]
    fn version_bump_misses() {
        let dir = tempfile::tempdir().unwrap();
        Cache::with_version(dir.path(), "0.0.1").store(&key(), &entry()).unwrap();
        assert!(matches!(Cache::with_version(dir.path(), "0.0.2").load(&key()), Lookup::Miss));
    }

    #[test]
    fn corrupt_and_mismatched_entries() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let path = cache.store(&key(), &entry()).unwrap();
        fs::write(&path, "{not json").unwrap();
        assert!(matches!(cache.load(&key()), Lookup::Corrupt(_)));

        // a valid entry filed under the wrong key
        let other = CacheKey { n: 3, ..key() };
        let wrong = cache.path_for(&other);
        fs::copy(cache.store(&key(), &entry()).unwrap(), &wrong).unwrap();
        assert!(matches!(cache.load(&other), Lookup::Corrupt(_)));
    }
}
