use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::construction::{Construction, ConstructionParams, LevelOrdering};
use crate::error::Result;

use super::config::RunConfig;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelManifest {
    pub level: usize,
    #[serde(serialize_with = "crate::serde_big::decimal")]
    pub word_length: BigUint,
    #[serde(serialize_with = "crate::serde_big::decimal")]
    pub word_count: BigUint,
    #[serde(serialize_with = "crate::serde_big::decimal")]
    pub permuted_slots: BigUint,
    #[serde(serialize_with = "crate::serde_big::decimal")]
    pub spacer_count: BigUint,
    pub materialized: bool,
    pub ordering: &'static str,
}

/// The arithmetic of every built level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenerationManifest {
    pub params: ConstructionParams,
    pub levels: Vec<LevelManifest>,
    pub warnings: Vec<String>,
}

impl GenerationManifest {
    pub fn of(c: &Construction) -> Self {
        let levels = c
            .generations()
            .iter()
            .map(|g| LevelManifest {
                level: g.level,
                word_length: g.word_length.clone(),
                word_count: g.word_count.clone(),
                permuted_slots: g.permuted_set.len(),
                spacer_count: g.spacer_count.clone(),
                materialized: g.is_materialized(),
                ordering: match g.ordering {
                    LevelOrdering::Canonical => "canonical",
                    LevelOrdering::Egs(_) => "egs",
                    LevelOrdering::Unavailable => "unavailable",
                },
            })
            .collect();
        GenerationManifest {
            params: c.params().clone(),
            levels,
            warnings: c.warnings().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FileEntry {
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

/// Written last into the output directory as `manifest.json`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub config: RunConfig,
    pub files: Vec<FileEntry>,
    pub warnings: Vec<String>,
    pub complete: bool,
    pub error: Option<String>,
    pub exit_code: i32,
}

pub const MANIFEST_FILE: &str = "manifest.json";

/// Collects the files of one run.
pub struct Outputs {
    dir: PathBuf,
    pub files: Vec<FileEntry>,
}

impl Outputs {
    pub fn new(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Outputs {
            dir: dir.to_path_buf(),
            files: Vec::new(),
        })
    }

    pub fn write(&mut self, name: &str, contents: &str) -> Result<()> {
        fs::write(self.dir.join(name), contents)?;
        self.files.push(FileEntry {
            path: name.to_string(),
            sha256: format!("{:x}", Sha256::digest(contents.as_bytes())),
            bytes: contents.len() as u64,
        });
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.write(name, &text)
    }

    pub fn finish(self, manifest: &RunManifest) -> Result<()> {
        let mut text = serde_json::to_string_pretty(manifest)?;
        text.push('\n');
        fs::write(self.dir.join(MANIFEST_FILE), text)?;
        Ok(())
    }
}
