//! The ratio experiment: sample diagram corpora per cardinality, compute
//! pairwise `d₁` and each feature map's Hilbert distance, and report the
//! ratio distributions.

mod config;
mod emit;
mod summary;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{sample_uniform_diagram, PersistenceDiagram};
use crate::distance::{diagram_distance, sliced_wasserstein_distance};
use crate::error::Result;
use crate::features::{
    euclidean_distance, gaussian_sum_l2_distance, landscape_l2_distance, landscape_profile,
    persistence_image, pss_embedding, pwg_embedding, topological_vector, FiniteVector,
    GaussianSumEmbedding, LandscapeProfile,
};

pub use config::{
    ExperimentConfig, Method, MethodParams, FULL_SCALE_CARDINALITIES, FULL_SCALE_DIAGRAMS,
};
pub use emit::{
    emit, parse_ratio_csv, read_ratio_csv, Emit, OutputFormat, BOXPLOT_CSV_HEADER, RATIO_CSV_HEADER,
};
pub use summary::{summarize, MethodTrend, Summary, SummaryEntry};

/// A diagram's image under one of the harness methods.
#[derive(Debug, Clone)]
pub enum Embedding {
    Landscape(LandscapeProfile),
    Gaussian(GaussianSumEmbedding),
    Vector(FiniteVector),
    /// The sliced Wasserstein "map" works on the diagrams themselves.
    Diagram(PersistenceDiagram),
}

impl Method {
    pub fn embed(&self, diagram: &PersistenceDiagram, params: &MethodParams) -> Result<Embedding> {
        Ok(match self {
            Method::Pwg => Embedding::Gaussian(pwg_embedding(
                diagram,
                params.pwg_weight,
                params.pwg_bandwidth,
            )?),
            Method::Pss => Embedding::Gaussian(pss_embedding(diagram, params.pss_bandwidth)?),
            Method::Ls => Embedding::Landscape(landscape_profile(diagram, params.landscape_k_max)?),
            Method::Im => Embedding::Vector(persistence_image(
                diagram,
                params.image_resolution,
                params.image_bandwidth,
                params.image_weight,
            )?),
            Method::Tv => Embedding::Vector(topological_vector(diagram, params.tv_length)?),
            Method::SwSqrt => Embedding::Diagram(diagram.clone()),
        })
    }

    /// Feature-space distance between two embeddings produced by this method.
    /// For `SW_SQRT` this is the square root of the sliced Wasserstein
    /// distance.
    pub fn embedded_distance(
        &self,
        a: &Embedding,
        b: &Embedding,
        params: &MethodParams,
    ) -> Result<f64> {
        use crate::error::Error;
        match (a, b) {
            (Embedding::Landscape(x), Embedding::Landscape(y)) => landscape_l2_distance(x, y),
            (Embedding::Gaussian(x), Embedding::Gaussian(y)) => gaussian_sum_l2_distance(x, y),
            (Embedding::Vector(x), Embedding::Vector(y)) => euclidean_distance(x, y),
            (Embedding::Diagram(x), Embedding::Diagram(y)) => {
                Ok(sliced_wasserstein_distance(x, y, params.sw_directions)?.sqrt())
            }
            _ => Err(Error::Mismatch(format!(
                "embeddings of different kinds for {self}"
            ))),
        }
    }

    pub fn distance(
        &self,
        a: &PersistenceDiagram,
        b: &PersistenceDiagram,
        params: &MethodParams,
    ) -> Result<f64> {
        self.embedded_distance(&self.embed(a, params)?, &self.embed(b, params)?, params)
    }
}

/// One ratio observation. `i < j` index diagrams within the bucket.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioRow {
    pub method: Method,
    pub cardinality: usize,
    pub i: usize,
    pub j: usize,
    pub d1: f64,
    pub dh: f64,
    pub ratio: f64,
}

/// A bucket that could not be completed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BucketFailure {
    pub cardinality: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RatioTable {
    pub rows: Vec<RatioRow>,
    /// Pairs with `d₁ = 0`, counted once per bucket (not per method).
    pub skipped_pairs: usize,
    pub failures: Vec<BucketFailure>,
}

/// splitmix64 finalizer; spreads (cardinality, index) over the seed space.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of diagram `index` in the bucket of size `cardinality`. Depends only
/// on those two numbers and the base seed, so buckets are independent of
/// each other and of the order of the config.
pub fn diagram_seed(base: u64, cardinality: usize, index: usize) -> u64 {
    base ^ mix64(((cardinality as u64) << 32) ^ index as u64)
}

pub fn sample_bucket(
    config: &ExperimentConfig,
    cardinality: usize,
) -> Result<Vec<PersistenceDiagram>> {
    (0..config.diagrams_per_cardinality)
        .map(|idx| {
            sample_uniform_diagram(cardinality, diagram_seed(config.rng_seed, cardinality, idx))
        })
        .collect()
}

/// Rows and skip count for an explicit diagram pool.
pub fn run_bucket(
    config: &ExperimentConfig,
    cardinality: usize,
    diagrams: &[PersistenceDiagram],
) -> Result<(Vec<RatioRow>, usize)> {
    let n = diagrams.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let d1: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| diagram_distance(&diagrams[i], &diagrams[j], 1))
        .collect();
    let kept: Vec<usize> = (0..pairs.len()).filter(|&k| d1[k] > 0.0).collect();
    let skipped = pairs.len() - kept.len();

    let mut rows = Vec::with_capacity(kept.len() * config.methods.len());
    for &method in &config.methods {
        let embedded = diagrams
            .par_iter()
            .map(|d| method.embed(d, &config.params))
            .collect::<Result<Vec<_>>>()?;
        let dh = kept
            .par_iter()
            .map(|&k| {
                let (i, j) = pairs[k];
                method.embedded_distance(&embedded[i], &embedded[j], &config.params)
            })
            .collect::<Result<Vec<_>>>()?;
        for (&k, dh) in kept.iter().zip(dh) {
            let (i, j) = pairs[k];
            rows.push(RatioRow {
                method,
                cardinality,
                i,
                j,
                d1: d1[k],
                dh,
                ratio: dh / d1[k],
            });
        }
    }
    Ok((rows, skipped))
}

/// Runs every bucket of the config. A failing bucket is recorded in
/// `failures` and the remaining buckets still run.
pub fn run_experiment(config: &ExperimentConfig) -> Result<RatioTable> {
    config.validate()?;
    let mut table = RatioTable::default();
    for &cardinality in &config.cardinalities {
        let outcome = sample_bucket(config, cardinality)
            .and_then(|pool| run_bucket(config, cardinality, &pool));
        match outcome {
            Ok((rows, skipped)) => {
                table.rows.extend(rows);
                table.skipped_pairs += skipped;
            }
            Err(e) => table.failures.push(BucketFailure {
                cardinality,
                message: e.to_string(),
            }),
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(methods: Vec<Method>) -> ExperimentConfig {
        ExperimentConfig {
            cardinalities: vec![10],
            diagrams_per_cardinality: 3,
            rng_seed: 0,
            methods,
            params: MethodParams::default(),
        }
    }

    #[test]
    fn three_diagrams_three_rows() {
        let t = run_experiment(&small(vec![Method::Ls])).unwrap();
        assert_eq!(t.rows.len(), 3);
        assert_eq!(t.skipped_pairs, 0);
        let ids: Vec<(usize, usize)> = t.rows.iter().map(|r| (r.i, r.j)).collect();
        assert_eq!(ids, vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn duplicate_diagram_pair_is_skipped() {
        let cfg = small(vec![Method::Tv, Method::Pwg]);
        let mut pool = sample_bucket(&cfg, 10).unwrap();
        pool[2] = pool[0].clone();
        let (rows, skipped) = run_bucket(&cfg, 10, &pool).unwrap();
        assert_eq!(skipped, 1);
        assert_eq!(rows.len(), 2 * 2);
        assert!(rows.iter().all(|r| !(r.i == 0 && r.j == 2)));
    }

    #[test]
    fn every_method_runs() {
        let t = run_experiment(&small(Method::ALL.to_vec())).unwrap();
        assert_eq!(t.rows.len(), 6 * 3);
        for r in &t.rows {
            assert!(r.d1 > 0.0 && r.dh >= 0.0);
            assert!(r.i < r.j);
            assert_eq!(r.ratio, r.dh / r.d1);
        }
    }

    #[test]
    fn seeds_are_bucket_local() {
        assert_eq!(diagram_seed(5, 10, 0), diagram_seed(5, 10, 0));
        assert_ne!(diagram_seed(5, 10, 0), diagram_seed(5, 10, 1));
        assert_ne!(diagram_seed(5, 10, 0), diagram_seed(5, 30, 0));
        assert_ne!(diagram_seed(5, 10, 0), diagram_seed(6, 10, 0));
    }

    #[test]
    fn method_distance_matches_embedded_route() {
        let cfg = small(vec![]);
        let pool = sample_bucket(&cfg, 10).unwrap();
        for m in Method::ALL {
            let direct = m.distance(&pool[0], &pool[1], &cfg.params).unwrap();
            let a = m.embed(&pool[0], &cfg.params).unwrap();
            let b = m.embed(&pool[1], &cfg.params).unwrap();
            assert_eq!(direct, m.embedded_distance(&a, &b, &cfg.params).unwrap());
        }
        let ls = Method::Ls.embed(&pool[0], &cfg.params).unwrap();
        let tv = Method::Tv.embed(&pool[0], &cfg.params).unwrap();
        assert!(Method::Ls.embedded_distance(&ls, &tv, &cfg.params).is_err());
    }
}
