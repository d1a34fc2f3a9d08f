//! On-disk cache of quotient bases, one JSON file per component.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use charvar::nilquot::{ComponentKey, QuotientEngine, QuotientProvider};
use charvar::words::Word;
use serde::{Deserialize, Serialize};

/// Bumped whenever the entry layout or basis convention changes.
pub const CACHE_VERSION: u32 = 1;

pub const CACHE_DIR_ENV: &str = "CHARVAR_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".charvar-cache";

#[derive(Debug, Serialize, Deserialize)]
pub struct CacheEntry {
    pub version: u32,
    pub key: ComponentKey,
    pub words: Vec<Word>,
}

pub struct DiskCache {
    dir: PathBuf,
    engine: QuotientEngine,
}

impl DiskCache {
    pub fn new(dir: PathBuf) -> Self {
        DiskCache { dir, engine: QuotientEngine::new() }
    }

    /// Directory from the environment, else the local default.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| DEFAULT_CACHE_DIR.into());
        Self::new(dir)
    }

    fn path(&self, key: &ComponentKey) -> PathBuf {
        let a = &key.alphabet;
        let name = format!(
            "n{}-k{}-{}-r{}-d{}-{}.json",
            key.n,
            a.size,
            if a.with_stars { "starred" } else { "plain" },
            a.max_letter.map_or("all".to_string(), |r| r.to_string()),
            key.degree,
            key.mode
        );
        self.dir.join(name)
    }

    fn load(&self, key: &ComponentKey) -> Option<Vec<Word>> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.version == CACHE_VERSION && entry.key == *key).then_some(entry.words)
    }

    /// Write-temp-then-rename, so readers never see a partial file.
    fn store(&self, key: &ComponentKey, words: &[Word]) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let entry = CacheEntry { version: CACHE_VERSION, key: *key, words: words.to_vec() };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(&entry)?.as_bytes())?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}

impl QuotientProvider for DiskCache {
    fn quotient_basis(&self, key: &ComponentKey) -> charvar::Result<Vec<Word>> {
        if let Some(words) = self.load(key) {
            return Ok(words);
        }
        let words = self.engine.quotient_basis(key)?;
        // a cache that cannot be written is only a missed speedup
        let _ = self.store(key, &words);
        Ok(words)
    }
}
