//! Run configuration and its validation.

use serde::Serialize;

use fzeta_core::ffield::is_prime;
use fzeta_core::special::{Index, IndexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub p: u64,
    pub levels: Vec<u32>,
    /// `None` lets every check use its own default precision.
    pub precision: Option<i64>,
    pub tdeg: Option<usize>,
    pub index: Option<String>,
    pub seed: u64,
    pub format: Format,
    pub budget: u128,
}

/// A usage error; the CLI exits with status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), UsageError> {
        if !is_prime(self.p) {
            return Err(UsageError(format!("--p: p must be prime (got {})", self.p)));
        }
        if self.levels.is_empty() || self.levels.contains(&0) {
            return Err(UsageError("--l: levels must be positive".into()));
        }
        let mut sorted = self.levels.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.levels.len() {
            return Err(UsageError("--l: levels must be distinct".into()));
        }
        if let Some(p) = self.precision {
            if p < 1 {
                return Err(UsageError("--prec: precision must be at least 1".into()));
            }
        }
        if let Some(s) = &self.index {
            IndexSet::parse(s).map_err(|e| UsageError(format!("--index: {e}")))?;
        }
        Ok(())
    }

    pub fn index_set(&self) -> Result<IndexSet, UsageError> {
        let s = self.index.as_deref().ok_or_else(|| UsageError("--index is required".into()))?;
        IndexSet::parse(s).map_err(|e| UsageError(format!("--index: {e}")))
    }

    pub fn indices(&self) -> Result<Vec<Index>, UsageError> {
        Ok(self.index_set()?.indices().to_vec())
    }

    pub fn prec_or(&self, default: i64) -> i64 {
        self.precision.unwrap_or(default)
    }

    pub fn tdeg_or(&self, default: usize) -> usize {
        self.tdeg.unwrap_or(default)
    }
}
