use std::fs;
use std::io::Write;
use std::path::PathBuf;

use nilcover::structure::{LatticeKey, LatticeStore};
use sha2::{Digest, Sha256};

/// Content-addressed lattice cache: one JSON file per key, named by a SHA-256 of the
/// degree, generator list and computation tag.
pub struct DiskCache {
    dir: PathBuf,
}

impl DiskCache {
    pub fn new(dir: PathBuf) -> Self {
        Self { dir }
    }

    /// `$NILCOVER_CACHE`, else `nilcover` under the platform cache directory.
    pub fn default_dir() -> Option<PathBuf> {
        match std::env::var_os("NILCOVER_CACHE") {
            Some(d) if !d.is_empty() => Some(PathBuf::from(d)),
            _ => dirs::cache_dir().map(|d| d.join("nilcover")),
        }
    }

    fn path(&self, key: &LatticeKey) -> PathBuf {
        let mut h = Sha256::new();
        h.update(key.degree.to_string());
        h.update([0]);
        for g in &key.generators {
            h.update(g);
            h.update([0]);
        }
        h.update(&key.tag);
        self.dir.join(format!("{}.json", hex::encode(h.finalize())))
    }

    fn write(&self, key: &LatticeKey, payload: &str) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(payload.as_bytes())?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}

impl LatticeStore for DiskCache {
    fn load(&self, key: &LatticeKey) -> Option<String> {
        fs::read_to_string(self.path(key)).ok()
    }

    /// Failures are ignored: the cache only saves time.
    fn save(&self, key: &LatticeKey, payload: &str) {
        let _ = self.write(key, payload);
    }
}
