//! Run configuration and its provenance hash.

use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};
use crate::json::{DirectionName, MonomerSpec};

/// An input file identified by name and content digest, so the hash does
/// not depend on where the file lives.
#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(path: &Path) -> CliResult<Self> {
        let bytes = std::fs::read(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(Self {
            name: path
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default(),
            sha256: hex_digest(&bytes),
        })
    }
}

pub fn hex_digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// Everything that determines a run's outputs. The output directory is
/// deliberately absent.
#[derive(Debug, Clone, Default, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction: Option<DirectionName>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_b: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub alphas: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monomer: Option<MonomerSpec>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub gamma_ex_grid: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_iters: Option<usize>,
    /// Remaining flags as `name=value`, in a fixed order chosen by the
    /// command.
    pub flags: Vec<String>,
}

impl RunConfig {
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("serializable config")
    }

    pub fn sha256(&self) -> String {
        hex_digest(self.canonical_json().as_bytes())
    }

    /// Text for the `generated-by` comment of emitted SVGs.
    pub fn provenance(&self) -> String {
        format!(
            "flowtopo {} {} config-sha256={}",
            env!("CARGO_PKG_VERSION"),
            self.command,
            self.sha256()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_tracks_content_not_location() {
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("g.csv");
        std::fs::create_dir(dir.path().join("sub")).unwrap();
        let b = dir.path().join("sub").join("g.csv");
        std::fs::write(&a, "0,1,1\n").unwrap();
        std::fs::write(&b, "0,1,1\n").unwrap();
        let cfg = |p: &Path| RunConfig {
            command: "analyze".into(),
            inputs: vec![InputDigest::of(p).unwrap()],
            ..Default::default()
        };
        assert_eq!(cfg(&a).sha256(), cfg(&b).sha256());
        std::fs::write(&b, "0,1,2\n").unwrap();
        assert_ne!(cfg(&a).sha256(), cfg(&b).sha256());
        assert_eq!(cfg(&a).sha256().len(), 64);
    }
}
