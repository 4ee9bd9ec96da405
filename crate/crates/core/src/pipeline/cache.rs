use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use log::warn;

use super::run::CountRecord;
use super::spec::CODE_VERSION;
use crate::error::Result;

/// Append-only JSONL store of count records, keyed by `(fingerprint, q)`.
#[derive(Debug, Default)]
pub struct Cache {
    path: Option<PathBuf>,
    records: BTreeMap<(String, u32), CountRecord>,
}

impl Cache {
    /// An in-memory cache that never touches disk.
    pub fn memory() -> Cache {
        Cache::default()
    }

    /// Loads `path` if it exists. Unparseable lines and records from another
    /// code version are dropped, so those counts are recomputed.
    pub fn open(path: impl AsRef<Path>) -> Result<Cache> {
        let path = path.as_ref().to_path_buf();
        let mut cache = Cache {
            path: Some(path.clone()),
            records: BTreeMap::new(),
        };
        if !path.exists() {
            return Ok(cache);
        }
        for (n, line) in BufReader::new(File::open(&path)?).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<CountRecord>(&line) {
                Ok(r) if r.code_version == CODE_VERSION => {
                    cache.records.insert((r.fingerprint.clone(), r.q), r);
                }
                Ok(r) => warn!(
                    "{}:{}: code version {} differs, will recount",
                    path.display(),
                    n + 1,
                    r.code_version
                ),
                Err(e) => warn!(
                    "{}:{}: skipping corrupt record ({e})",
                    path.display(),
                    n + 1
                ),
            }
        }
        Ok(cache)
    }

    pub fn get(&self, fingerprint: &str, q: u32) -> Option<&CountRecord> {
        self.records.get(&(fingerprint.to_string(), q))
    }

    pub fn store(&mut self, record: CountRecord) -> Result<()> {
        if let Some(path) = &self.path {
            let mut f = OpenOptions::new().create(true).append(true).open(path)?;
            writeln!(
                f,
                "{}",
                serde_json::to_string(&record).expect("record serializes")
            )?;
        }
        self.records
            .insert((record.fingerprint.clone(), record.q), record);
        Ok(())
    }

    pub fn records(&self) -> impl Iterator<Item = &CountRecord> {
        self.records.values()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}
