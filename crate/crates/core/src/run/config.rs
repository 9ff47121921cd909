use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::complexity::DimensionMethod;
use crate::construction::ConstructionParams;
use crate::error::{Error, Result};

/// One analysis to run, with its options.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    Construct {
        #[serde(default)]
        write_words: bool,
    },
    Profile {
        n_max: usize,
    },
    Dimension {
        /// A profile CSV to read instead of computing one.
        #[serde(default)]
        profile: Option<PathBuf>,
        #[serde(default = "default_n_max")]
        n_max: usize,
        #[serde(default)]
        method: Option<DimensionMethod>,
    },
    Measure {
        words: Vec<String>,
        length: u64,
    },
    ReturnTime {
        offsets: Vec<u64>,
        ns: Vec<u64>,
        budget: u64,
    },
    Chains {
        levels: Vec<usize>,
        #[serde(default)]
        offsets: Vec<u64>,
        #[serde(default = "default_eta")]
        eta: f64,
    },
    Egs {
        levels: usize,
    },
    Spectral {
        words: Vec<String>,
        level: usize,
        max_lag: u64,
        block_lags: u64,
        grid: usize,
        length: u64,
    },
    Rigidity {
        /// `None` scans the whole space.
        #[serde(default)]
        word: Option<String>,
        levels: Vec<usize>,
        length: u64,
    },
    Selftest {
        #[serde(default)]
        quick: bool,
    },
}

fn default_n_max() -> usize {
    256
}

fn default_eta() -> f64 {
    crate::ergodic::XhatCriteria::DEFAULT_ETA
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Construct { .. } => "construct",
            Command::Profile { .. } => "profile",
            Command::Dimension { .. } => "dimension",
            Command::Measure { .. } => "measure",
            Command::ReturnTime { .. } => "return-time",
            Command::Chains { .. } => "chains",
            Command::Egs { .. } => "egs",
            Command::Spectral { .. } => "spectral",
            Command::Rigidity { .. } => "rigidity",
            Command::Selftest { .. } => "selftest",
        }
    }
}

/// Everything a run needs; echoed verbatim into its manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub params: ConstructionParams,
    #[serde(flatten)]
    pub command: Command,
    pub out_dir: PathBuf,
    /// Also write a JSON copy of each table.
    #[serde(default)]
    pub json: bool,
}

impl RunConfig {
    /// Accepts a bare config or a run manifest that embeds one.
    pub fn from_json(text: &str) -> Result<Self> {
        let mut value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))?;
        if let Some(inner) = value.get_mut("config") {
            value = inner.take();
        }
        serde_json::from_value(value).map_err(|e| Error::Parse(format!("config: {e}")))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}
