use std::path::{Path, PathBuf};

use lightcone_core::identities::SuiteConfig;
use lightcone_core::metrics::Backend;
use lightcone_core::{ChainParams, SpinOperator, Waveform};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    /// Energy unit of every physical quantity; only "J" is supported.
    #[serde(default = "unit_j")]
    pub units: String,
    pub chain: ChainParams,
    #[serde(default)]
    pub run: RunConfig,
    #[serde(default)]
    pub scan: ScanConfig,
    #[serde(default)]
    pub lightcone: LightconeConfig,
    #[serde(default)]
    pub fit: FitConfig,
    #[serde(default)]
    pub induction: InductionConfig,
    #[serde(default)]
    pub identities: SuiteConfig,
}

fn unit_j() -> String {
    "J".into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub realizations: usize,
    pub t_max: f64,
    pub points: usize,
    pub backend: Backend,
    /// Pauli strings in the text format, e.g. "Z-3"; default σ^z at the left edge.
    pub a: Option<String>,
    /// Default σ^z at the right edge.
    pub b: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 1, realizations: 40, t_max: 10.0, points: 21, backend: Backend::Auto, a: None, b: None }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanConfig {
    /// Values of Δ; empty means the chain's own Δ.
    pub deltas: Vec<f64>,
    /// Localization constants; without them (or a fit file) only curves are written.
    #[serde(rename = "K")]
    pub k: Option<f64>,
    pub xi: Option<f64>,
    pub fit_file: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LightconeConfig {
    /// Distances from A; empty means every distance the chain holds.
    pub distances: Vec<usize>,
    /// Threshold as a fraction of ‖A‖‖B‖.
    pub eps_fraction: f64,
}

impl Default for LightconeConfig {
    fn default() -> Self {
        LightconeConfig { distances: Vec::new(), eps_fraction: lightcone_core::metrics::DEFAULT_EPS_FRACTION }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FitConfig {
    pub distances: Vec<usize>,
    pub realizations: usize,
    pub points: usize,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig { distances: Vec::new(), realizations: 200, points: 201 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InductionConfig {
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "Omega")]
    pub omega: f64,
    pub modulation: Waveform,
    pub also_static: bool,
    pub s: f64,
    pub dts: Vec<f64>,
    pub j_max: usize,
    pub tol: f64,
}

impl Default for InductionConfig {
    fn default() -> Self {
        InductionConfig {
            l: 6,
            omega: 2.0,
            modulation: Waveform::Cos { freq: 1.5 },
            also_static: true,
            s: 0.5,
            dts: vec![0.1, 0.3, 1.0],
            j_max: 4,
            tol: 1e-9,
        }
    }
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, ConfigError> {
        let cfg: Config = toml::from_str(text).map_err(|e| ConfigError(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        Config::parse(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    fn validate(&self) -> Result<(), ConfigError> {
        if self.units != "J" {
            return Err(ConfigError(format!("unsupported units {:?}; quantities are in units of J", self.units)));
        }
        self.chain.validate().map_err(|e| ConfigError(e.to_string()))?;
        self.observables()?;
        if self.run.realizations == 0 || self.run.points == 0 || !(self.run.t_max >= 0.0) {
            return Err(ConfigError("run needs realizations > 0, points > 0 and t_max >= 0".into()));
        }
        Ok(())
    }

    pub fn observables(&self) -> Result<(SpinOperator, SpinOperator), ConfigError> {
        let chain = self.chain.chain();
        let parse = |s: Option<&String>, site: i32| {
            let text = s.cloned().unwrap_or_else(|| format!("Z{site}"));
            SpinOperator::parse_sum(chain, &[(1.0, text.as_str())]).map_err(|e| ConfigError(e.to_string()))
        };
        Ok((parse(self.run.a.as_ref(), chain.first())?, parse(self.run.b.as_ref(), chain.last())?))
    }
}
