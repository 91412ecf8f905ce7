use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use mwis_core::subsolvers::{ExactParams, QuantumParams, SaParams};
use mwis_core::{BeamConfig, SubSolver};
use serde::{Deserialize, Serialize};

use crate::error::{BenchError, Result};

/// A solver under test. String forms: `greedy`, `exact`, `sa`, and
/// `beam+<subsolver>` for the decomposition solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Backend {
    Greedy,
    Exact,
    Sa,
    Beam(SubKind),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubKind {
    Exact,
    Greedy,
    Sa,
    Quantum,
}

impl SubKind {
    fn name(self) -> &'static str {
        match self {
            SubKind::Exact => "exact",
            SubKind::Greedy => "greedy",
            SubKind::Sa => "sa",
            SubKind::Quantum => "quantum",
        }
    }
}

impl Backend {
    /// Stable per-backend salt for seed derivation. Adding a backend to a
    /// config does not change the streams of the others.
    pub fn salt(self) -> u64 {
        match self {
            Backend::Greedy => 1,
            Backend::Exact => 2,
            Backend::Sa => 3,
            Backend::Beam(SubKind::Exact) => 10,
            Backend::Beam(SubKind::Greedy) => 11,
            Backend::Beam(SubKind::Sa) => 12,
            Backend::Beam(SubKind::Quantum) => 13,
        }
    }

    pub fn is_beam(self) -> bool {
        matches!(self, Backend::Beam(_))
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Greedy => f.write_str("greedy"),
            Backend::Exact => f.write_str("exact"),
            Backend::Sa => f.write_str("sa"),
            Backend::Beam(k) => write!(f, "beam+{}", k.name()),
        }
    }
}

impl FromStr for Backend {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self> {
        let sub = |name: &str| match name {
            "exact" => Ok(SubKind::Exact),
            "greedy" => Ok(SubKind::Greedy),
            "sa" => Ok(SubKind::Sa),
            "quantum" => Ok(SubKind::Quantum),
            other => Err(BenchError::Config(format!("unknown subsolver '{other}'"))),
        };
        match s {
            "greedy" => Ok(Backend::Greedy),
            "exact" => Ok(Backend::Exact),
            "sa" => Ok(Backend::Sa),
            _ => match s.strip_prefix("beam+") {
                Some(rest) => Ok(Backend::Beam(sub(rest)?)),
                None => Err(BenchError::Config(format!("unknown backend '{s}'"))),
            },
        }
    }
}

impl Serialize for Backend {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Backend {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Sweep description, read from JSON.
///
/// `beam` carries k, s, ell, the layout and the ranking policy; its
/// `subsolver` field is replaced per `beam+<subsolver>` backend using the
/// `sa` and `quantum` parameter blocks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BenchRunConfig {
    pub n_values: Vec<usize>,
    pub p_values: Vec<f64>,
    pub instances: usize,
    pub backends: Vec<Backend>,
    pub beam: BeamConfig,
    pub sa: SaParams,
    pub quantum: QuantumParams,
    pub seed: u64,
    pub output: PathBuf,
    /// Worker threads; `None` uses every core.
    pub threads: Option<usize>,
    /// Also solve exactly when n is at most this, for the reference weight.
    pub exact_reference_max_n: usize,
}

impl Default for BenchRunConfig {
    fn default() -> Self {
        Self {
            n_values: vec![20, 40, 60, 80, 120],
            p_values: vec![0.25, 0.5, 0.75],
            instances: 30,
            backends: vec![Backend::Greedy, Backend::Beam(SubKind::Exact)],
            beam: BeamConfig::default(),
            sa: SaParams::default(),
            quantum: QuantumParams::default(),
            seed: 0,
            output: PathBuf::from("bench-out"),
            threads: None,
            exact_reference_max_n: 40,
        }
    }
}

impl BenchRunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
        let cfg: Self = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(BenchError::Config(m));
        if self.instances == 0 {
            return bad("instances per cell must be at least 1".into());
        }
        if self.n_values.is_empty() || self.p_values.is_empty() || self.backends.is_empty() {
            return bad("n_values, p_values and backends must be nonempty".into());
        }
        if let Some(&n) = self.n_values.iter().find(|&&n| n == 0) {
            return bad(format!("graph size {n} is not allowed"));
        }
        if let Some(p) = self.p_values.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return bad(format!("edge probability {p} is outside [0, 1]"));
        }
        if self.threads == Some(0) {
            return bad("threads must be positive".into());
        }
        self.beam.validate()?;
        Ok(())
    }

    /// Beam configuration for one `beam+<subsolver>` backend.
    pub fn beam_for(&self, kind: SubKind) -> BeamConfig {
        let subsolver = match kind {
            SubKind::Exact => SubSolver::Exact(ExactParams::default()),
            SubKind::Greedy => SubSolver::Greedy,
            SubKind::Sa => SubSolver::Sa(self.sa.clone()),
            SubKind::Quantum => SubSolver::Quantum(self.quantum.clone()),
        };
        BeamConfig {
            subsolver,
            ..self.beam.clone()
        }
    }
}
