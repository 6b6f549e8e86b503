//! Content-addressed on-disk cache for canonical artifacts.
//!
//! Key: SHA-256 of the schema version and the canonical request. Each entry
//! is `<key>.json` plus `<key>.sha256`, the digest of the payload bytes; a
//! digest mismatch marks the entry corrupt and it is recomputed.

use sha2::{Digest, Sha256};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Bumped whenever any artifact schema changes; old entries then miss by key.
pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "SPINTAU_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    /// An entry existed but failed its digest check and was overwritten.
    Repaired,
    Disabled,
}

impl CacheStatus {
    pub fn tag(self) -> &'static str {
        match self {
            CacheStatus::Hit => "hit",
            CacheStatus::Miss => "miss",
            CacheStatus::Repaired => "repaired",
            CacheStatus::Disabled => "disabled",
        }
    }
}

#[derive(Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
    version: u32,
    pub warnings: Vec<String>,
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Cache {
    /// Explicit directory, else `$SPINTAU_CACHE_DIR`, else `$XDG_CACHE_HOME/spintau`
    /// or `$HOME/.cache/spintau`.
    pub fn open(dir: Option<PathBuf>) -> Self {
        let dir = dir
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            .or_else(|| std::env::var_os("XDG_CACHE_HOME").map(|d| PathBuf::from(d).join("spintau")))
            .or_else(|| std::env::var_os("HOME").map(|d| PathBuf::from(d).join(".cache").join("spintau")));
        Self::with_version(dir, SCHEMA_VERSION)
    }

    pub fn disabled() -> Self {
        Cache { dir: None, version: SCHEMA_VERSION, warnings: Vec::new() }
    }

    pub fn with_version(dir: Option<PathBuf>, version: u32) -> Self {
        Cache { dir, version, warnings: Vec::new() }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn key(&self, canonical_request: &str) -> String {
        digest(format!("spintau-artifact-v{}\n{canonical_request}", self.version).as_bytes())
    }

    fn paths(&self, key: &str) -> Option<(PathBuf, PathBuf)> {
        self.dir
            .as_ref()
            .map(|d| (d.join(format!("{key}.json")), d.join(format!("{key}.sha256"))))
    }

    fn load(&self, key: &str) -> Option<Result<String, ()>> {
        let (payload, sum) = self.paths(key)?;
        if !payload.exists() && !sum.exists() {
            return None;
        }
        let ok = (|| {
            let bytes = fs::read(&payload).ok()?;
            let want = fs::read_to_string(&sum).ok()?;
            (digest(&bytes) == want.trim()).then_some(())?;
            String::from_utf8(bytes).ok()
        })();
        Some(ok.ok_or(()))
    }

    fn store(&mut self, key: &str, payload: &str) {
        let Some((path, sum)) = self.paths(key) else { return };
        let dir = self.dir.clone().expect("paths imply a directory");
        let result = (|| -> std::io::Result<()> {
            fs::create_dir_all(&dir)?;
            write_atomic(&path, payload.as_bytes())?;
            write_atomic(&sum, digest(payload.as_bytes()).as_bytes())
        })();
        if let Err(e) = result {
            self.warnings
                .push(format!("cache directory {} is not writable ({e}); continuing uncached", dir.display()));
        }
    }

    /// Cached payload for `canonical_request`, computing and storing it on a miss.
    pub fn get_or_compute<E>(
        &mut self,
        canonical_request: &str,
        compute: impl FnOnce() -> Result<String, E>,
    ) -> Result<(String, CacheStatus), E> {
        if self.dir.is_none() {
            return compute().map(|p| (p, CacheStatus::Disabled));
        }
        let key = self.key(canonical_request);
        let status = match self.load(&key) {
            Some(Ok(payload)) => return Ok((payload, CacheStatus::Hit)),
            Some(Err(())) => CacheStatus::Repaired,
            None => CacheStatus::Miss,
        };
        let payload = compute()?;
        self.store(&key, &payload);
        Ok((payload, status))
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(tmp, path)
}
