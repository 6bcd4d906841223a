//! Run manifests: everything needed to repeat a `peel` invocation.
//!
//! The peel has no randomness, so replaying a manifest writes byte-identical
//! JSON to the recorded paths.

use std::path::PathBuf;

use anyhow::{Context, Result};
use peelkit::peel::Handedness;
use serde::{Deserialize, Serialize};

use crate::PeelArgs;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Catalog identifier or mesh file path.
    pub solid: String,
    pub mirror: bool,
    pub f1: usize,
    pub f2: usize,
    pub handedness: Handedness,
    pub tolerance: f64,
    pub outputs: Outputs,
    pub deterministic: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Outputs {
    pub json: Option<PathBuf>,
    pub net: Option<PathBuf>,
    pub graph: Option<PathBuf>,
    pub obj: Option<PathBuf>,
    pub step: Option<usize>,
}

impl RunManifest {
    pub fn from_args(args: &PeelArgs) -> RunManifest {
        RunManifest {
            command: "peel".to_owned(),
            solid: args.solid.clone(),
            mirror: args.options.mirror,
            f1: args.f1,
            f2: args.f2,
            handedness: args.options.handedness,
            tolerance: args.options.tolerance,
            outputs: Outputs {
                json: args.json.clone(),
                net: args.net.clone(),
                graph: args.graph.clone(),
                obj: args.obj.clone(),
                step: args.step,
            },
            deterministic: true,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<RunManifest> {
        let m: RunManifest = serde_json::from_str(text).context("invalid run manifest")?;
        anyhow::ensure!(
            m.command == "peel",
            "unsupported manifest command `{}`",
            m.command
        );
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let m = RunManifest {
            command: "peel".into(),
            solid: "{5,6,6}".into(),
            mirror: false,
            f1: 0,
            f2: 1,
            handedness: Handedness::Left,
            tolerance: 1e-9,
            outputs: Outputs {
                net: Some("net.svg".into()),
                ..Outputs::default()
            },
            deterministic: true,
        };
        assert_eq!(RunManifest::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn rejects_other_commands() {
        let text = RunManifest::from_json("{}");
        assert!(text.is_err());
    }
}
