//! JSON block-matrix configs for `generate multi-optimum`.

use std::path::Path;

use metanet_core::synthgen::MultiOptimumConfig;
use serde::{Deserialize, Serialize};

use crate::formats::{read_text, Result};

/// On-disk form of [`MultiOptimumConfig`] with `omega` as nested rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockMatrixFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    pub block_sizes: Vec<usize>,
    pub omega: Vec<Vec<f64>>,
    pub metadata_groups: Vec<usize>,
    pub planted_groups: Vec<usize>,
}

impl BlockMatrixFile {
    pub fn read(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&read_text(path)?)?)
    }

    pub fn to_config(&self) -> Result<MultiOptimumConfig> {
        let cfg = MultiOptimumConfig {
            block_sizes: self.block_sizes.clone(),
            omega: self.omega.iter().flatten().copied().collect(),
            metadata_groups: self.metadata_groups.clone(),
            planted_groups: self.planted_groups.clone(),
        };
        if self.omega.iter().any(|row| row.len() != self.block_sizes.len()) {
            return Err(metanet_core::Error::InvalidParameter {
                name: "omega",
                reason: "every row needs one entry per block".into(),
            }
            .into());
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_config(cfg: &MultiOptimumConfig, provenance: Option<&str>) -> Self {
        let b = cfg.n_blocks();
        BlockMatrixFile {
            provenance: provenance.map(str::to_string),
            block_sizes: cfg.block_sizes.clone(),
            omega: cfg.omega.chunks(b).map(<[f64]>::to_vec).collect(),
            metadata_groups: cfg.metadata_groups.clone(),
            planted_groups: cfg.planted_groups.clone(),
        }
    }
}
