//! Count tables with an in-memory memo and an optional content-addressed
//! disk cache. Tables are keyed by the canonical descriptor of a
//! [`CountingFn`]; the disk file name is the SHA-256 of that descriptor.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::partition::{count_by_enumeration, CountingFn, DEFAULT_ORACLE_CEILING};

pub const CACHE_FORMAT_VERSION: &str = "1";
pub const CACHE_DIR_ENV: &str = "PARTITION_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".partition-cache";

/// How tables are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Dp,
    /// Brute-force enumeration, one `n` at a time, refusing `n > ceiling`.
    Oracle { ceiling: u64 },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheManifest {
    pub version: String,
    /// content hash -> canonical descriptor
    pub entries: BTreeMap<String, String>,
}

pub fn content_hash(descriptor: &str) -> String {
    hex::encode(Sha256::digest(descriptor.as_bytes()))
}

#[derive(Debug)]
pub struct DiskCache {
    dir: PathBuf,
    manifest: Mutex<()>,
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(DiskCache { dir, manifest: Mutex::new(()) })
    }

    /// Directory from `explicit`, else `$PARTITION_CACHE_DIR`, else the default.
    pub fn resolve_dir(explicit: Option<&Path>) -> PathBuf {
        explicit
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn table_path(&self, hash: &str) -> PathBuf {
        self.dir.join(format!("{hash}.counts"))
    }

    fn manifest_path(&self) -> PathBuf {
        self.dir.join("manifest.json")
    }

    pub fn manifest(&self) -> Result<CacheManifest> {
        let path = self.manifest_path();
        if !path.exists() {
            return Ok(CacheManifest { version: CACHE_FORMAT_VERSION.into(), entries: BTreeMap::new() });
        }
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    /// Stored table for `descriptor`, if present and well formed.
    pub fn load(&self, descriptor: &str) -> Result<Option<Vec<BigUint>>> {
        let path = self.table_path(&content_hash(descriptor));
        let Ok(text) = fs::read_to_string(&path) else {
            return Ok(None);
        };
        let mut lines = text.lines();
        if lines.next() != Some(descriptor) {
            return Ok(None);
        }
        let parsed: Option<Vec<BigUint>> = lines.map(|l| l.parse().ok()).collect();
        Ok(parsed.filter(|t| !t.is_empty()))
    }

    pub fn store(&self, descriptor: &str, table: &[BigUint]) -> Result<()> {
        let hash = content_hash(descriptor);
        let tmp = self.dir.join(format!("{hash}.tmp{}", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            writeln!(f, "{descriptor}")?;
            for v in table {
                writeln!(f, "{v}")?;
            }
        }
        fs::rename(&tmp, self.table_path(&hash))?;

        let _guard = self.manifest.lock().expect("manifest lock poisoned");
        let mut manifest = self.manifest()?;
        manifest.version = CACHE_FORMAT_VERSION.into();
        manifest.entries.insert(hash, descriptor.to_string());
        let manifest_tmp = self.dir.join(format!("manifest.json.tmp{}", std::process::id()));
        fs::write(&manifest_tmp, serde_json::to_string_pretty(&manifest)? + "\n")?;
        fs::rename(manifest_tmp, self.manifest_path())?;
        Ok(())
    }
}

/// Shared source of count tables. Safe to use from many threads: lookups
/// take a read lock, insertion an exclusive one.
#[derive(Debug)]
pub struct Counter {
    backend: Backend,
    memo: RwLock<HashMap<String, Arc<Vec<BigUint>>>>,
    disk: Option<DiskCache>,
    verify_disk: bool,
}

impl Counter {
    pub fn new(backend: Backend) -> Self {
        Counter { backend, memo: RwLock::new(HashMap::new()), disk: None, verify_disk: false }
    }

    pub fn dp() -> Self {
        Self::new(Backend::Dp)
    }

    pub fn oracle() -> Self {
        Self::new(Backend::Oracle { ceiling: DEFAULT_ORACLE_CEILING })
    }

    /// Persist DP tables under `disk`. Oracle tables are never persisted.
    pub fn with_disk(mut self, disk: DiskCache) -> Self {
        self.disk = Some(disk);
        self
    }

    /// Recompute every disk hit and fail on any difference.
    pub fn verify_disk(mut self, verify: bool) -> Self {
        self.verify_disk = verify;
        self
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    /// Values of `f` at `0..=n_max` (the returned table may be longer).
    pub fn table(&self, f: &CountingFn, n_max: usize) -> Result<Arc<Vec<BigUint>>> {
        let key = match self.backend {
            Backend::Dp => f.to_string(),
            Backend::Oracle { .. } => format!("oracle|{f}"),
        };
        if let Some(t) = self.memo.read().expect("memo lock poisoned").get(&key) {
            if t.len() > n_max {
                return Ok(Arc::clone(t));
            }
        }
        let table = Arc::new(self.compute(f, &key, n_max)?);
        let mut memo = self.memo.write().expect("memo lock poisoned");
        let entry = memo.entry(key).or_insert_with(|| Arc::clone(&table));
        if entry.len() < table.len() {
            *entry = Arc::clone(&table);
        }
        Ok(table)
    }

    fn compute(&self, f: &CountingFn, key: &str, n_max: usize) -> Result<Vec<BigUint>> {
        match self.backend {
            Backend::Oracle { ceiling } => {
                if n_max as u64 > ceiling {
                    return Err(Error::CeilingExceeded { n: n_max as u64, ceiling });
                }
                let filter = f.filter()?;
                (0..=n_max as u64).map(|n| count_by_enumeration(n, filter.as_ref(), ceiling)).collect()
            }
            Backend::Dp => {
                if let Some(disk) = &self.disk {
                    if let Some(stored) = disk.load(key)? {
                        if stored.len() > n_max {
                            if self.verify_disk {
                                let fresh = f.table(stored.len() - 1)?;
                                if fresh != stored {
                                    return Err(Error::CacheMismatch { descriptor: key.to_string() });
                                }
                            }
                            return Ok(stored);
                        }
                    }
                    let fresh = f.table(n_max)?;
                    disk.store(key, &fresh)?;
                    return Ok(fresh);
                }
                f.table(n_max)
            }
        }
    }
}
