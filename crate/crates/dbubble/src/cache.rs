//! CSV store of oracle results keyed by volume pair.
//!
//! `n,m,value,exact,witness_file`, one row per pair in `(n, m)` order. Witness
//! paths are relative to the cache file's directory and hold the cell list in
//! the [`crate::format`] text format. One writer at a time.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use dbubble_core::oracle::OracleResult;
use dbubble_core::polyomino::{measure, LatticeConfig};

use crate::error::{CliError, Result};
use crate::format::{parse_config, write_config};

pub const HEADER: [&str; 5] = ["n", "m", "value", "exact", "witness_file"];

/// Environment variable overriding the cache location.
pub const CACHE_ENV: &str = "DBUBBLE_CACHE";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheEntry {
    pub value: u64,
    pub exact: bool,
    pub witness_file: String,
}

#[derive(Debug, Default)]
pub struct Cache {
    path: PathBuf,
    entries: BTreeMap<(u64, u64), CacheEntry>,
}

pub fn default_cache_path() -> PathBuf {
    std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".dbubble/cache.csv"))
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> CliError + '_ {
    move |source| CliError::Csv { path: path.to_path_buf(), source }
}

fn bad_row(line: u64, message: String) -> CliError {
    CliError::Format { line: line as usize, message }
}

/// Parses cache rows from CSV text.
pub fn parse_rows(text: &str, path: &Path) -> Result<BTreeMap<(u64, u64), CacheEntry>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers().map_err(csv_err(path))?.clone();
    if headers.iter().ne(HEADER) {
        return Err(bad_row(1, format!("expected header `{}`", HEADER.join(","))));
    }
    let mut entries = BTreeMap::new();
    for record in reader.records() {
        let record = record.map_err(csv_err(path))?;
        let line = record.position().map_or(0, |p| p.line());
        let int = |i: usize| record[i].parse::<u64>().map_err(|_| bad_row(line, format!("bad integer `{}`", &record[i])));
        let exact = record[3].parse::<bool>().map_err(|_| bad_row(line, format!("bad boolean `{}`", &record[3])))?;
        entries.insert((int(0)?, int(1)?), CacheEntry { value: int(2)?, exact, witness_file: record[4].to_string() });
    }
    Ok(entries)
}

/// Serializes rows in `(n, m)` order.
pub fn write_rows(entries: &BTreeMap<(u64, u64), CacheEntry>) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(HEADER).expect("in-memory write");
    for (&(n, m), e) in entries {
        writer
            .write_record([n.to_string(), m.to_string(), e.value.to_string(), e.exact.to_string(), e.witness_file.clone()])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("ascii output")
}

impl Cache {
    /// Loads the cache at `path`; a missing file is an empty cache.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let entries = match fs::read_to_string(&path) {
            Ok(text) => parse_rows(&text, &path)?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => BTreeMap::new(),
            Err(e) => return Err(CliError::io(&path, e)),
        };
        Ok(Cache { path, entries })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn entries(&self) -> &BTreeMap<(u64, u64), CacheEntry> {
        &self.entries
    }

    fn dir(&self) -> PathBuf {
        self.path.parent().map(Path::to_path_buf).unwrap_or_default()
    }

    /// Cached result with its witness, re-measured against the stored value.
    pub fn get(&self, n: u64, m: u64) -> Result<Option<OracleResult>> {
        let Some(entry) = self.entries.get(&(n, m)) else { return Ok(None) };
        let witness_path = self.dir().join(&entry.witness_file);
        let text = fs::read_to_string(&witness_path).map_err(|e| CliError::io(&witness_path, e))?;
        let config: LatticeConfig = parse_config(&text)?;
        if config.volumes() != (n as usize, m as usize) || measure(&config).rho_db != entry.value {
            return Err(CliError::Invariant(format!(
                "cached witness {} does not measure {} for ({n}, {m})",
                witness_path.display(),
                entry.value
            )));
        }
        Ok(Some(OracleResult { n, m, value: entry.value, config, exact: entry.exact, nodes_explored: 0 }))
    }

    /// Stores `result`, never replacing an exact entry with an inexact one,
    /// and rewrites the cache file.
    pub fn put(&mut self, result: &OracleResult) -> Result<()> {
        let key = (result.n, result.m);
        if let Some(old) = self.entries.get(&key) {
            if old.exact && !result.exact {
                return Ok(());
            }
        }
        let dir = self.dir();
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
        }
        let witness_file = format!("witness_{}_{}.txt", result.n, result.m);
        let witness_path = dir.join(&witness_file);
        fs::write(&witness_path, write_config(&result.config)).map_err(|e| CliError::io(&witness_path, e))?;
        self.entries.insert(key, CacheEntry { value: result.value, exact: result.exact, witness_file });
        fs::write(&self.path, write_rows(&self.entries)).map_err(|e| CliError::io(&self.path, e))
    }
}
