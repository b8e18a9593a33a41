//! Run manifests: parameter echo, seeds and SHA-256 digests of every output.

use std::fs;
use std::path::{Path, PathBuf};

use hidden_tree_core::ModelParams;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

/// Seeds used by one replicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplicateSeeds {
    /// Replicate index.
    pub replicate: usize,
    /// Edge-generation seed.
    pub seed: u64,
    /// Tree seed.
    pub tree_seed: u64,
}

/// One output file. `path` is relative to the manifest's directory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub bytes: u64,
    pub sha256: String,
}

/// Reproducibility record written next to every run's outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub command: String,
    /// Base parameters of the run (for sweeps, before the swept value is applied).
    pub params: ModelParams,
    /// Extra settings (sweep kind, values, analysis options), as text.
    pub settings: Vec<(String, String)>,
    pub seeds: Vec<ReplicateSeeds>,
    pub files: Vec<FileDigest>,
}

/// Hex SHA-256 of `bytes`.
pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Digest of the file at `base/rel`.
pub fn digest_file(base: &Path, rel: &str) -> CliResult<FileDigest> {
    let path = base.join(rel);
    let data = fs::read(&path).map_err(|e| CliError::io(&path, e))?;
    Ok(FileDigest {
        path: rel.to_string(),
        bytes: data.len() as u64,
        sha256: sha256_hex(&data),
    })
}

impl RunManifest {
    /// Writes the manifest as pretty JSON.
    pub fn write(&self, path: &Path) -> CliResult<()> {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        fs::write(path, text).map_err(|e| CliError::io(path, e))
    }

    /// Reads a manifest.
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::parse(path, e.line(), e.to_string()))
    }

    /// Files whose current digest differs from the recorded one.
    pub fn verify(&self, manifest_path: &Path) -> CliResult<Vec<PathBuf>> {
        let base = manifest_path.parent().unwrap_or(Path::new(""));
        let mut bad = Vec::new();
        for f in &self.files {
            let now = digest_file(base, &f.path)?;
            if now != *f {
                bad.push(base.join(&f.path));
            }
        }
        Ok(bad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hidden_tree_core::TreeParams;

    #[test]
    fn known_digest() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn verify_detects_changes() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("a.txt"), "hello").unwrap();
        let m = RunManifest {
            tool: crate::tool_version(),
            command: "test".into(),
            params: ModelParams::new(TreeParams::new(3, 2.0, 0), 0.4, 0),
            settings: vec![],
            seeds: vec![ReplicateSeeds {
                replicate: 0,
                seed: 0,
                tree_seed: 0,
            }],
            files: vec![digest_file(dir.path(), "a.txt").unwrap()],
        };
        let mp = dir.path().join("manifest.json");
        m.write(&mp).unwrap();
        let back = RunManifest::load(&mp).unwrap();
        assert_eq!(back, m);
        assert!(back.verify(&mp).unwrap().is_empty());
        fs::write(dir.path().join("a.txt"), "hellO").unwrap();
        assert_eq!(back.verify(&mp).unwrap().len(), 1);
    }
}
