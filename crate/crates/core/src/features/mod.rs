//! Feature maps from persistence diagrams into Hilbert spaces, each with an
//! exact (or closed-form) distance in the target space.

mod gaussian;
mod image;
mod landscape;
mod topvec;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::PlanePoint;
use crate::error::{Error, Result};

pub use gaussian::{
    gaussian_sum_l2_distance, gaussian_sum_squared_l2_distance, pss_embedding, pwg_embedding,
    GaussianSumEmbedding,
};
pub use image::{persistence_image, DEFAULT_IMAGE_RESOLUTION};
pub use landscape::{
    landscape_l2_distance, landscape_profile, Envelope, LandscapeProfile, DEFAULT_LANDSCAPE_K_MAX,
};
pub use topvec::{topological_vector, DEFAULT_TV_LENGTH};

/// Point weights used by the Gaussian-sum and image maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightFunction {
    /// `(y − x)²`
    #[default]
    PersistenceSquared,
    /// `y − x`
    Persistence,
    /// `arctan(y − x)`
    ArctanPersistence,
    /// `1`
    Constant,
}

impl WeightFunction {
    pub const ALL: [WeightFunction; 4] = [
        WeightFunction::PersistenceSquared,
        WeightFunction::Persistence,
        WeightFunction::ArctanPersistence,
        WeightFunction::Constant,
    ];

    pub fn apply(&self, p: &PlanePoint) -> f64 {
        let pers = p.persistence();
        match self {
            WeightFunction::PersistenceSquared => pers * pers,
            WeightFunction::Persistence => pers,
            WeightFunction::ArctanPersistence => pers.atan(),
            WeightFunction::Constant => 1.0,
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            WeightFunction::PersistenceSquared => "persistence_squared",
            WeightFunction::Persistence => "persistence",
            WeightFunction::ArctanPersistence => "arctan_persistence",
            WeightFunction::Constant => "constant",
        }
    }
}

impl fmt::Display for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for WeightFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WeightFunction::ALL
            .into_iter()
            .find(|w| w.id() == s)
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

/// Where a [`FiniteVector`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum VectorKind {
    /// Row-major `resolution × resolution` image; rows run along persistence.
    Image {
        resolution: usize,
    },
    TopologicalVector {
        length: usize,
    },
}

impl VectorKind {
    pub fn len(&self) -> usize {
        match *self {
            VectorKind::Image { resolution } => resolution * resolution,
            VectorKind::TopologicalVector { length } => length,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiniteVector {
    entries: Vec<f64>,
    kind: VectorKind,
}

impl FiniteVector {
    pub fn new(entries: Vec<f64>, kind: VectorKind) -> Result<Self> {
        if entries.len() != kind.len() {
            return Err(Error::Mismatch(format!(
                "vector has {} entries but {:?} declares {}",
                entries.len(),
                kind,
                kind.len()
            )));
        }
        Ok(Self { entries, kind })
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn kind(&self) -> VectorKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Comma-separated entries on one line, shortest round-trip formatting.
    pub fn to_csv_row(&self) -> String {
        self.entries
            .iter()
            .map(|x| format!("{x:?}"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

pub fn euclidean_distance(v1: &FiniteVector, v2: &FiniteVector) -> Result<f64> {
    if v1.len() != v2.len() {
        return Err(Error::Mismatch(format!(
            "vector lengths differ: {} vs {}",
            v1.len(),
            v2.len()
        )));
    }
    Ok(v1
        .entries
        .iter()
        .zip(&v2.entries)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt())
}
