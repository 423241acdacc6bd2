//! Persistent store of character values on connected canonical keys.
//!
//! The file is line oriented: a header line, then `KIND\tkeyhex\tfraction`.
//! A file that fails to parse is dropped entirely.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::json::parse_rational;
use crate::{CanonicalKey, Character, Rational};

pub const HEADER: &str = "qpehr-cache v1";

#[derive(Debug, Default)]
pub struct Cache {
    path: PathBuf,
    entries: BTreeMap<(String, CanonicalKey), Rational>,
    dirty: bool,
}

/// Outcome of [`Cache::load`].
#[derive(Debug)]
pub struct Loaded {
    pub cache: Cache,
    /// Set when an existing file was unreadable and has been discarded.
    pub warning: Option<String>,
}

fn parse(text: &str) -> std::result::Result<BTreeMap<(String, CanonicalKey), Rational>, String> {
    let mut lines = text.lines();
    if lines.next() != Some(HEADER) {
        return Err("missing or unknown header".into());
    }
    let mut entries = BTreeMap::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let [kind, key, value] = fields.as_slice() else {
            return Err(format!("line {}: expected three fields", i + 2));
        };
        let key = CanonicalKey::from_hex(key).map_err(|e| format!("line {}: {e}", i + 2))?;
        let value = parse_rational(value).map_err(|e| format!("line {}: {e}", i + 2))?;
        entries.insert((kind.to_string(), key), value);
    }
    Ok(entries)
}

impl Cache {
    /// Reads `path`; a missing file gives an empty cache.
    pub fn load(path: &Path) -> Loaded {
        let mut cache = Cache {
            path: path.to_path_buf(),
            ..Default::default()
        };
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                return Loaded {
                    cache,
                    warning: None,
                }
            }
            Err(e) => {
                return Loaded {
                    cache,
                    warning: Some(format!("ignoring cache {}: {e}", path.display())),
                }
            }
        };
        match parse(&text) {
            Ok(entries) => {
                cache.entries = entries;
                Loaded {
                    cache,
                    warning: None,
                }
            }
            Err(msg) => {
                cache.dirty = true;
                Loaded {
                    cache,
                    warning: Some(format!("discarding corrupt cache {}: {msg}", path.display())),
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, kind: &str, key: &CanonicalKey) -> Option<&Rational> {
        self.entries.get(&(kind.to_string(), key.clone()))
    }

    /// Preloads the stored values of `chi`, matched by name.
    pub fn seed(&self, chi: &Character) {
        for ((kind, key), value) in &self.entries {
            if kind == chi.name() {
                chi.seed(key.clone(), value.clone());
            }
        }
    }

    /// Records the memoized values of `chi`.
    pub fn absorb(&mut self, chi: &Character) {
        if chi.name().contains(['\t', '\n']) {
            return;
        }
        for (key, value) in chi.memo_entries() {
            let slot = (chi.name().to_string(), key);
            if self.entries.get(&slot) != Some(&value) {
                self.entries.insert(slot, value);
                self.dirty = true;
            }
        }
    }

    /// Writes through a temporary file and a rename, if anything changed.
    pub fn save(&mut self) -> Result<()> {
        if !self.dirty {
            return Ok(());
        }
        let io = |e: std::io::Error| Error::Io(format!("{}: {e}", self.path.display()));
        let dir = self
            .path
            .parent()
            .filter(|d| !d.as_os_str().is_empty())
            .unwrap_or(Path::new("."));
        let file_name = self
            .path
            .file_name()
            .ok_or_else(|| Error::Io(format!("{}: not a file path", self.path.display())))?;
        let mut tmp_name = file_name.to_os_string();
        tmp_name.push(format!(".tmp{}", std::process::id()));
        let tmp = dir.join(tmp_name);
        {
            let mut f = fs::File::create(&tmp).map_err(io)?;
            writeln!(f, "{HEADER}").map_err(io)?;
            for ((kind, key), value) in &self.entries {
                writeln!(f, "{kind}\t{}\t{value}", key.to_hex()).map_err(io)?;
            }
            f.sync_all().map_err(io)?;
        }
        fs::rename(&tmp, &self.path).map_err(io)?;
        self.dirty = false;
        Ok(())
    }
}
