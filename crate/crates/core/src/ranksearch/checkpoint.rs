//! Resumable progress for long searches, stored as JSON.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{LevelStats, RankError};

/// Result of searching every prefix that starts with one first element.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub(crate) struct FirstResult {
    pub searched: u64,
    pub pruned: u64,
    pub symmetry_skipped: u64,
    pub exact_checks: u64,
    /// Sorted dictionary indices of the witness, if one starts here.
    pub hit: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub(crate) struct Checkpoint {
    /// Identifies the search (target, dictionary, options).
    pub fingerprint: String,
    /// Levels finished without a hit.
    pub finished: Vec<LevelStats>,
    /// Level in progress and its finished first elements.
    pub level: usize,
    pub done: BTreeMap<usize, FirstResult>,
}

impl Checkpoint {
    pub fn load(path: &Path, fingerprint: &str) -> Result<Option<Checkpoint>, RankError> {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(RankError::Checkpoint(format!("{}: {e}", path.display()))),
        };
        let cp: Checkpoint = serde_json::from_str(&text)
            .map_err(|e| RankError::Checkpoint(format!("{}: {e}", path.display())))?;
        if cp.fingerprint != fingerprint {
            return Err(RankError::Checkpoint(format!(
                "{} belongs to a different search; remove it to start over",
                path.display()
            )));
        }
        Ok(Some(cp))
    }

    /// Writes through a temporary file so an interrupted save never leaves a
    /// truncated checkpoint.
    pub fn save(&self, path: &Path) -> Result<(), RankError> {
        let tmp = path.with_extension("tmp");
        let text = serde_json::to_string(self).map_err(|e| RankError::Checkpoint(e.to_string()))?;
        std::fs::write(&tmp, text)
            .and_then(|_| std::fs::rename(&tmp, path))
            .map_err(|e| RankError::Checkpoint(format!("{}: {e}", path.display())))
    }
}
