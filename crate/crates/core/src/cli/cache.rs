//! On-disk census cache: one JSON file per degree, written atomically and
//! regenerated byte-identically from scratch.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::doc::render_json;
use crate::hudson::Census;

pub const CACHE_SCHEMA: &str = "cremona.census-cache/v1";
pub const CACHE_ENV: &str = "CREMONA_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct CacheFile {
    schema: String,
    #[serde(flatten)]
    census: Census,
}

/// `flag`, else `$CREMONA_CACHE_DIR`, else `$XDG_DATA_HOME/cremona`, else
/// `$HOME/.local/share/cremona`.
pub fn resolve_cache_dir(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(dir) = flag {
        return Some(dir.to_path_buf());
    }
    let var = |name| std::env::var_os(name).filter(|v| !v.is_empty());
    if let Some(dir) = var(CACHE_ENV) {
        return Some(PathBuf::from(dir));
    }
    if let Some(dir) = var("XDG_DATA_HOME") {
        return Some(PathBuf::from(dir).join("cremona"));
    }
    var("HOME").map(|h| PathBuf::from(h).join(".local/share/cremona"))
}

#[derive(Debug, Clone)]
pub struct CensusCache {
    dir: PathBuf,
}

impl CensusCache {
    pub fn new(dir: impl Into<PathBuf>) -> CensusCache {
        CensusCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, d: u32) -> PathBuf {
        self.dir.join(format!("census-d{d}.v1.json"))
    }

    /// The exact bytes stored for degree `d`.
    pub fn render(census: &Census) -> String {
        render_json(&CacheFile {
            schema: CACHE_SCHEMA.to_string(),
            census: census.clone(),
        })
    }

    /// A cached census, if present and readable for this degree. Anything
    /// else (missing, stale schema, corrupt) reads as absent.
    pub fn load(&self, d: u32) -> Option<Census> {
        let text = fs::read_to_string(self.path_for(d)).ok()?;
        let file: CacheFile = serde_json::from_str(&text).ok()?;
        (file.schema == CACHE_SCHEMA && file.census.degree == d).then_some(file.census)
    }

    pub fn store(&self, census: &Census) -> io::Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let target = self.path_for(census.degree);
        let tmp = self.dir.join(format!(
            ".census-d{}.{}.tmp",
            census.degree,
            std::process::id()
        ));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(Self::render(census).as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &target)?;
        Ok(target)
    }

    /// Cached census for `d`, computing and storing it on a miss. Returns
    /// whether the cache was hit.
    pub fn get_or_build(&self, d: u32) -> io::Result<(Census, bool)> {
        if let Some(c) = self.load(d) {
            return Ok((c, true));
        }
        let census = Census::build(d);
        self.store(&census)?;
        Ok((census, false))
    }
}
