use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distance::DEFAULT_SW_DIRECTIONS;
use crate::error::{Error, Result};
use crate::features::{
    WeightFunction, DEFAULT_IMAGE_RESOLUTION, DEFAULT_LANDSCAPE_K_MAX, DEFAULT_TV_LENGTH,
};

/// Feature maps compared against `d₁` in the ratio experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "PWG")]
    Pwg,
    #[serde(rename = "PSS")]
    Pss,
    #[serde(rename = "LS")]
    Ls,
    #[serde(rename = "IM")]
    Im,
    #[serde(rename = "TV")]
    Tv,
    #[serde(rename = "SW_SQRT")]
    SwSqrt,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Pwg,
        Method::Pss,
        Method::Ls,
        Method::Im,
        Method::Tv,
        Method::SwSqrt,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Method::Pwg => "PWG",
            Method::Pss => "PSS",
            Method::Ls => "LS",
            Method::Im => "IM",
            Method::Tv => "TV",
            Method::SwSqrt => "SW_SQRT",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MethodParams {
    pub pwg_bandwidth: f64,
    pub pwg_weight: WeightFunction,
    pub pss_bandwidth: f64,
    pub image_resolution: usize,
    pub image_bandwidth: f64,
    pub image_weight: WeightFunction,
    pub tv_length: usize,
    pub landscape_k_max: usize,
    pub sw_directions: usize,
}

impl Default for MethodParams {
    fn default() -> Self {
        Self {
            pwg_bandwidth: 1.0,
            pwg_weight: WeightFunction::PersistenceSquared,
            pss_bandwidth: 1.0,
            image_resolution: DEFAULT_IMAGE_RESOLUTION,
            image_bandwidth: 1.0,
            image_weight: WeightFunction::Persistence,
            tv_length: DEFAULT_TV_LENGTH,
            landscape_k_max: DEFAULT_LANDSCAPE_K_MAX,
            sw_directions: DEFAULT_SW_DIRECTIONS,
        }
    }
}

impl MethodParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("pwg_bandwidth", self.pwg_bandwidth),
            ("pss_bandwidth", self.pss_bandwidth),
            ("image_bandwidth", self.image_bandwidth),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        for (name, v) in [
            ("image_resolution", self.image_resolution),
            ("tv_length", self.tv_length),
            ("landscape_k_max", self.landscape_k_max),
            ("sw_directions", self.sw_directions),
        ] {
            if v == 0 {
                return Err(Error::Config(format!("{name} must be at least 1")));
            }
        }
        Ok(())
    }
}

/// Cardinalities used by `--full`: 10 then every hundred up to 1000.
pub const FULL_SCALE_CARDINALITIES: [usize; 11] =
    [10, 100, 200, 300, 400, 500, 600, 700, 800, 900, 1000];
pub const FULL_SCALE_DIAGRAMS: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub cardinalities: Vec<usize>,
    pub diagrams_per_cardinality: usize,
    pub rng_seed: u64,
    pub methods: Vec<Method>,
    #[serde(default)]
    pub params: MethodParams,
}

impl ExperimentConfig {
    /// Cardinalities 10, 30, 100 with 30 diagrams each and every method.
    pub fn desk_scale(rng_seed: u64) -> Self {
        Self {
            cardinalities: vec![10, 30, 100],
            diagrams_per_cardinality: 30,
            rng_seed,
            methods: Method::ALL.to_vec(),
            params: MethodParams::default(),
        }
    }

    pub fn into_full_scale(mut self) -> Self {
        self.cardinalities = FULL_SCALE_CARDINALITIES.to_vec();
        self.diagrams_per_cardinality = FULL_SCALE_DIAGRAMS;
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.cardinalities.is_empty() {
            return Err(Error::Config("cardinalities must not be empty".into()));
        }
        if self.cardinalities.contains(&0) {
            return Err(Error::Config("cardinalities must be positive".into()));
        }
        if self.cardinalities.iter().collect::<HashSet<_>>().len() != self.cardinalities.len() {
            return Err(Error::Config("cardinalities must be distinct".into()));
        }
        if self.diagrams_per_cardinality < 2 {
            return Err(Error::Config(
                "diagrams_per_cardinality must be at least 2".into(),
            ));
        }
        if self.methods.is_empty() {
            return Err(Error::Config("methods must not be empty".into()));
        }
        if self.methods.iter().collect::<HashSet<_>>().len() != self.methods.len() {
            return Err(Error::Config("methods must be distinct".into()));
        }
        self.params.validate()
    }
}
