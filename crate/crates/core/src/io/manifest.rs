use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::audit::{AuditGrid, Quantity};
use crate::error::{Error, Result};
use crate::io::grid::GridSpec;
use crate::io::table::write_atomic;
use crate::params::ExperimentParams;
use crate::squeezing::{Backend, RangeSpec};

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FigSeries {
    Fig1a,
    Fig1b,
    Fig2a,
    Fig2b,
    Fig3,
}

impl FigSeries {
    pub const ALL: [FigSeries; 5] = [
        FigSeries::Fig1a,
        FigSeries::Fig1b,
        FigSeries::Fig2a,
        FigSeries::Fig2b,
        FigSeries::Fig3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigSeries::Fig1a => "fig1a",
            FigSeries::Fig1b => "fig1b",
            FigSeries::Fig2a => "fig2a",
            FigSeries::Fig2b => "fig2b",
            FigSeries::Fig3 => "fig3",
        }
    }

    /// True for the series swept over `s` at fixed `r`.
    pub fn sweeps_s(self) -> bool {
        matches!(self, FigSeries::Fig1a | FigSeries::Fig2a)
    }
}

impl fmt::Display for FigSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigSeries {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FigSeries::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown figure series `{s}`")))
    }
}

/// Everything a command needs besides the scenario parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Job {
    Fig {
        series: FigSeries,
        phis: Vec<f64>,
        /// `s` range for fig1a/fig2a, `r` range otherwise
        sweep: RangeSpec,
        /// fidelity columns of fig3, empty elsewhere
        s_values: Vec<f64>,
    },
    Wigner {
        grid: GridSpec,
    },
    Audit {
        quantities: Vec<Quantity>,
        grid: AuditGrid,
    },
    Point,
}

/// Sidecar written next to every output as `<out>.manifest` (TOML).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    /// seconds since the Unix epoch
    pub timestamp: u64,
    pub output: PathBuf,
    pub backend: Backend,
    pub trunc: usize,
    pub params: ExperimentParams,
    pub job: Job,
}

impl RunManifest {
    pub fn new(job: Job, params: ExperimentParams, backend: Backend, output: &Path) -> Self {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        RunManifest {
            tool: TOOL.to_owned(),
            version: VERSION.to_owned(),
            timestamp,
            output: output.to_owned(),
            backend,
            trunc: params.trunc,
            params,
            job,
        }
    }

    pub fn path_for(output: &Path) -> PathBuf {
        sidecar(output, ".manifest")
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Manifest(e.to_string()))
    }

    pub fn from_toml(s: &str) -> Result<Self> {
        let m: RunManifest = toml::from_str(s).map_err(|e| Error::Manifest(e.to_string()))?;
        if m.trunc != m.params.trunc {
            return Err(Error::Manifest(format!(
                "trunc {} disagrees with params.trunc {}",
                m.trunc, m.params.trunc
            )));
        }
        if m.tool != TOOL {
            return Err(Error::Manifest(format!("written by `{}`, not `{TOOL}`", m.tool)));
        }
        if m.version != VERSION {
            log::warn!("manifest written by version {}, running {VERSION}", m.version);
        }
        Ok(m)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_toml(&fs::read_to_string(path)?)
    }

    pub fn write(&self) -> Result<()> {
        write_atomic(&Self::path_for(&self.output), self.to_toml()?.as_bytes())
    }
}

/// `path` with `suffix` appended to its file name.
pub fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}
