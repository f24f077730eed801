//! Append-only invariant cache.
//!
//! One entry per line, tab-separated: graph6, invariant name, parameter
//! string, value.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache I/O on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}:{line}: expected 4 tab-separated fields")]
    Format { path: PathBuf, line: usize },
    #[error("conflicting values for {graph6} {invariant} [{params}]: {old} vs {new}")]
    Conflict {
        graph6: String,
        invariant: String,
        params: String,
        old: String,
        new: String,
    },
    #[error("cache fields may not contain tabs or newlines: {0:?}")]
    BadField(String),
}

type Key = (String, String, String);

#[derive(Debug, Default)]
pub struct InvariantCache {
    entries: BTreeMap<Key, String>,
    file: Option<(PathBuf, File)>,
}

impl InvariantCache {
    pub fn in_memory() -> Self {
        InvariantCache::default()
    }

    /// Loads `path` if it exists; later puts are appended to it.
    pub fn open(path: &Path) -> Result<Self, CacheError> {
        let io_err = |source| CacheError::Io { path: path.to_path_buf(), source };
        let mut cache = InvariantCache::default();
        if path.exists() {
            let reader = BufReader::new(File::open(path).map_err(io_err)?);
            for (i, line) in reader.lines().enumerate() {
                let line = line.map_err(io_err)?;
                if line.is_empty() {
                    continue;
                }
                let fields: Vec<&str> = line.split('\t').collect();
                let [g, inv, params, value] = fields[..] else {
                    return Err(CacheError::Format { path: path.to_path_buf(), line: i + 1 });
                };
                cache.insert(g, inv, params, value)?;
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path).map_err(io_err)?;
        cache.file = Some((path.to_path_buf(), file));
        Ok(cache)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, graph6: &str, invariant: &str, params: &str) -> Option<&str> {
        self.entries
            .get(&(graph6.to_string(), invariant.to_string(), params.to_string()))
            .map(String::as_str)
    }

    /// Records a value. Re-putting an equal value does nothing; a different
    /// value is a conflict.
    pub fn put(&mut self, graph6: &str, invariant: &str, params: &str, value: &str) -> Result<(), CacheError> {
        for f in [graph6, invariant, params, value] {
            if f.contains(['\t', '\n']) {
                return Err(CacheError::BadField(f.to_string()));
            }
        }
        if self.insert(graph6, invariant, params, value)? {
            if let Some((path, file)) = self.file.as_mut() {
                writeln!(file, "{graph6}\t{invariant}\t{params}\t{value}")
                    .map_err(|source| CacheError::Io { path: path.clone(), source })?;
            }
        }
        Ok(())
    }

    /// Returns whether the entry is new.
    fn insert(&mut self, graph6: &str, invariant: &str, params: &str, value: &str) -> Result<bool, CacheError> {
        let key = (graph6.to_string(), invariant.to_string(), params.to_string());
        match self.entries.get(&key) {
            Some(old) if old == value => Ok(false),
            Some(old) => Err(CacheError::Conflict {
                graph6: key.0,
                invariant: key.1,
                params: key.2,
                old: old.clone(),
                new: value.to_string(),
            }),
            None => {
                self.entries.insert(key, value.to_string());
                Ok(true)
            }
        }
    }

    /// Puts every entry of `other`, failing on the first conflict.
    pub fn merge(&mut self, other: &InvariantCache) -> Result<(), CacheError> {
        for ((g, inv, params), value) in &other.entries {
            self.put(g, inv, params, value)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn put_get_and_conflicts() {
        let mut c = InvariantCache::in_memory();
        assert_eq!(c.get("C~", "chi", ""), None);
        c.put("C~", "chi", "", "4").unwrap();
        assert_eq!(c.get("C~", "chi", ""), Some("4"));
        c.put("C~", "chi", "", "4").unwrap();
        assert_eq!(c.len(), 1);
        assert!(matches!(c.put("C~", "chi", "", "3"), Err(CacheError::Conflict { .. })));
        assert!(matches!(c.put("C~", "chi", "a\tb", "3"), Err(CacheError::BadField(_))));
    }

    #[test]
    fn persists_and_reloads() {
        let dir = std::env::temp_dir().join(format!("chromagame-cache-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cache.tsv");
        let _ = std::fs::remove_file(&path);
        {
            let mut c = InvariantCache::open(&path).unwrap();
            c.put("Ch", "chi_g", "", "3").unwrap();
            c.put("Ch", "chi_gb", "D=0,2", "2").unwrap();
            c.put("Ch", "chi_g", "", "3").unwrap();
        }
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "Ch\tchi_g\t\t3\nCh\tchi_gb\tD=0,2\t2\n");
        let mut c = InvariantCache::open(&path).unwrap();
        assert_eq!(c.get("Ch", "chi_gb", "D=0,2"), Some("2"));
        assert!(c.put("Ch", "chi_g", "", "4").is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn merge_audits_conflicts() {
        let mut a = InvariantCache::in_memory();
        let mut b = InvariantCache::in_memory();
        a.put("A_", "chi", "", "2").unwrap();
        b.put("A_", "chi", "", "2").unwrap();
        b.put("A?", "chi", "", "1").unwrap();
        a.merge(&b).unwrap();
        assert_eq!(a.len(), 2);
        let mut c = InvariantCache::in_memory();
        c.put("A?", "chi", "", "2").unwrap();
        assert!(a.merge(&c).is_err());
    }

    #[test]
    fn rejects_malformed_files() {
        let dir = std::env::temp_dir().join(format!("chromagame-bad-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.tsv");
        std::fs::write(&path, "A_\tchi\t2\n").unwrap();
        assert!(matches!(InvariantCache::open(&path), Err(CacheError::Format { line: 1, .. })));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
