//! Append-only verdict store: one directory per sweep holding
//! `records.jsonl` (one [`VerdictRecord`] per line) and `sweep.meta.json`.

use std::collections::{HashMap, HashSet};
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::solver::Status;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

const RECORDS: &str = "records.jsonl";
const META: &str = "sweep.meta.json";

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub hash: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    pub edges: Vec<Vec<usize>>,
    /// Sweep id or construction description.
    pub provenance: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Coloring>,
    /// Whether the sweep predicate held on this instance.
    pub holds: bool,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub tool_version: String,
}

pub fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Totals written next to a sweep's records.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SweepMeta {
    pub sweep_id: String,
    pub n: usize,
    pub r: usize,
    pub min_edges: usize,
    pub max_edges: usize,
    pub filters: Vec<super::Filter>,
    pub predicate: String,
    pub classes_by_size: Vec<usize>,
    pub evaluated: usize,
    pub counterexamples: usize,
    pub complete: bool,
    pub elapsed_ms: u64,
    pub tool_version: String,
}

#[derive(Debug)]
pub struct VerdictStore {
    root: PathBuf,
    index: HashMap<String, Status>,
    by_sweep: HashMap<String, HashSet<String>>,
}

impl VerdictStore {
    /// Opens (creating if needed) the store rooted at `root` and indexes
    /// every record already present.
    pub fn open(root: impl AsRef<Path>) -> Result<VerdictStore> {
        let root = root.as_ref().to_path_buf();
        fs::create_dir_all(&root).map_err(|e| Error::io(&root, e))?;
        let mut store = VerdictStore {
            root: root.clone(),
            index: HashMap::new(),
            by_sweep: HashMap::new(),
        };
        let mut ids: Vec<String> = Vec::new();
        for entry in fs::read_dir(&root).map_err(|e| Error::io(&root, e))? {
            let entry = entry.map_err(|e| Error::io(&root, e))?;
            if entry.path().join(RECORDS).is_file() {
                ids.push(entry.file_name().to_string_lossy().into_owned());
            }
        }
        ids.sort();
        for id in ids {
            for record in store.records(&id)? {
                store.index_record(&id, &record)?;
            }
        }
        Ok(store)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn dir(&self, sweep_id: &str) -> PathBuf {
        self.root.join(sweep_id)
    }

    fn index_record(&mut self, sweep_id: &str, record: &VerdictRecord) -> Result<bool> {
        if let Some(&known) = self.index.get(&record.hash) {
            if known != record.status {
                return Err(Error::Contradiction(format!(
                    "instance {} recorded as {} but now {}",
                    record.hash,
                    known.as_str(),
                    record.status.as_str()
                )));
            }
        }
        self.index.insert(record.hash.clone(), record.status);
        Ok(self
            .by_sweep
            .entry(sweep_id.to_string())
            .or_default()
            .insert(record.hash.clone()))
    }

    /// Stored status of an instance, from any sweep.
    pub fn lookup(&self, hash: &str) -> Option<Status> {
        self.index.get(hash).copied()
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Appends records not yet present under `sweep_id`; returns how many
    /// were written. A record whose status disagrees with a stored one is
    /// refused.
    pub fn append(&mut self, sweep_id: &str, records: &[VerdictRecord]) -> Result<usize> {
        let dir = self.dir(sweep_id);
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        let path = dir.join(RECORDS);
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(|e| Error::io(&path, e))?;
        let mut out = BufWriter::new(file);
        let mut written = 0;
        for record in records {
            if self.index_record(sweep_id, record)? {
                serde_json::to_writer(&mut out, record)?;
                out.write_all(b"\n").map_err(|e| Error::io(&path, e))?;
                written += 1;
            }
        }
        out.flush().map_err(|e| Error::io(&path, e))?;
        Ok(written)
    }

    /// All records of one sweep, in file order.
    pub fn records(&self, sweep_id: &str) -> Result<Vec<VerdictRecord>> {
        let path = self.dir(sweep_id).join(RECORDS);
        if !path.exists() {
            return Ok(Vec::new());
        }
        let file = File::open(&path).map_err(|e| Error::io(&path, e))?;
        let mut out = Vec::new();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| Error::io(&path, e))?;
            if line.trim().is_empty() {
                continue;
            }
            let record = serde_json::from_str(&line).map_err(|e| Error::Parse {
                line: i + 1,
                msg: format!("{}: {e}", path.display()),
            })?;
            out.push(record);
        }
        Ok(out)
    }

    pub fn write_meta(&self, meta: &SweepMeta) -> Result<()> {
        let dir = self.dir(&meta.sweep_id);
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        let path = dir.join(META);
        let text = serde_json::to_string_pretty(meta)?;
        fs::write(&path, text + "\n").map_err(|e| Error::io(&path, e))
    }

    pub fn meta(&self, sweep_id: &str) -> Result<Option<SweepMeta>> {
        let path = self.dir(sweep_id).join(META);
        if !path.exists() {
            return Ok(None);
        }
        let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        Ok(Some(serde_json::from_str(&text)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(hash: &str, status: Status) -> VerdictRecord {
        VerdictRecord {
            hash: hash.into(),
            n: 3,
            r: Some(3),
            edges: vec![vec![0, 1, 2]],
            provenance: "test".into(),
            status,
            witness: None,
            holds: true,
            timestamp: 0,
            tool_version: TOOL_VERSION.into(),
        }
    }

    #[test]
    fn append_skips_duplicates_and_refuses_contradictions() {
        let dir = tempfile::tempdir().unwrap();
        let mut store = VerdictStore::open(dir.path()).unwrap();
        let a = record("aa", Status::Colorable);
        assert_eq!(store.append("s", &[a.clone(), a.clone()]).unwrap(), 1);
        assert_eq!(store.append("s", std::slice::from_ref(&a)).unwrap(), 0);
        assert_eq!(store.append("t", std::slice::from_ref(&a)).unwrap(), 1);
        assert!(matches!(
            store.append("s", &[record("aa", Status::Uncolorable)]),
            Err(Error::Contradiction(_))
        ));
        let reopened = VerdictStore::open(dir.path()).unwrap();
        assert_eq!(reopened.lookup("aa"), Some(Status::Colorable));
        assert_eq!(reopened.records("s").unwrap(), vec![a]);
    }
}
