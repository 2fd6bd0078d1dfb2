//! On-disk cache of per-`n` search outcomes.
//!
//! Layout: `<root>/<config-hash>/s<s>/n<n>.json`, one [`OutcomeJson`] per
//! file. The config hash covers every [`SearchConfig`] field, so a changed
//! bound lands in a fresh directory. Entries are never invalidated otherwise.
//! Timed-out searches are not stored.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use erdos_straus_core::{Instance, ScanOutcome, SearchConfig, SearchStatus};
use sha2::{Digest, Sha256};

use crate::report::{ConfigJson, OutcomeJson};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct WitnessCache {
    root: PathBuf,
}

/// Hex SHA-256 of the canonical JSON form of `cfg`, first 16 digits.
pub fn config_hash(cfg: &SearchConfig) -> String {
    let canonical = serde_json::to_string(&ConfigJson::from(cfg)).expect("config serializes");
    let digest = Sha256::digest(canonical.as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_owned(),
        source,
    }
}

impl WitnessCache {
    pub fn open(root: impl Into<PathBuf>) -> Result<Self> {
        let root = root.into();
        fs::create_dir_all(&root).map_err(io_err(&root))?;
        Ok(WitnessCache { root })
    }

    pub fn entry_path(&self, n: u64, s: u32, cfg: &SearchConfig) -> PathBuf {
        self.root
            .join(config_hash(cfg))
            .join(format!("s{s}"))
            .join(format!("n{n}.json"))
    }

    /// A stored outcome, if present and (when it carries a witness) verified.
    ///
    /// Unreadable or failing entries are treated as misses.
    pub fn get(&self, n: u64, s: u32, cfg: &SearchConfig) -> Option<ScanOutcome> {
        let text = fs::read_to_string(self.entry_path(n, s, cfg)).ok()?;
        let json: OutcomeJson = serde_json::from_str(&text).ok()?;
        let outcome = ScanOutcome::try_from(json).ok()?;
        if outcome.n != n || outcome.status == SearchStatus::TimedOut {
            return None;
        }
        if let Some(w) = &outcome.witness {
            let target = Instance::new(n, s).ok()?.target(cfg.numerator);
            if !target.verify(w) {
                return None;
            }
        }
        Some(outcome)
    }

    pub fn put(&self, s: u32, cfg: &SearchConfig, outcome: &ScanOutcome) -> Result<()> {
        if outcome.status == SearchStatus::TimedOut {
            return Ok(());
        }
        let path = self.entry_path(outcome.n, s, cfg);
        let dir = path.parent().expect("entry has a parent");
        fs::create_dir_all(dir).map_err(io_err(dir))?;
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let body = serde_json::to_vec(&OutcomeJson::from(outcome))?;
        let mut file = fs::File::create(&tmp).map_err(io_err(&tmp))?;
        file.write_all(&body).map_err(io_err(&tmp))?;
        drop(file);
        fs::rename(&tmp, &path).map_err(io_err(&path))
    }
}
