//! Metric geometry of persistence diagrams.
//!
//! * [`diagram`]: the diagram value type, diagonal geometry and sampling.
//! * [`distance`]: exact `d_p` and bottleneck distances, a brute-force
//!   oracle, and the sliced Wasserstein distance.
//! * [`features`]: landscapes, weighted Gaussian sums (PWG/PSS), persistence
//!   images and topological vectors, with their Hilbert-space distances.
//! * [`theory`]: explicit diagram families with known distance behavior and
//!   empirical distortion estimates.
//! * [`harness`]: the ratio experiment and its CSV/JSON outputs.

pub mod diagram;
pub mod distance;
pub mod error;
pub mod features;
pub mod harness;
pub mod io;
pub mod theory;

pub use diagram::{
    diagonal_distance, diagonal_projection, sample_uniform_diagram, DiagramClassParams,
    PersistenceDiagram, PlanePoint,
};
pub use distance::{
    bottleneck_distance, brute_force_distance, diagram_distance, distance, matching_cost,
    sliced_wasserstein_distance, DistanceOrder, PartialMatching,
};
pub use error::{DiagramError, Error, Result};
pub use features::{
    euclidean_distance, gaussian_sum_l2_distance, landscape_l2_distance, landscape_profile,
    persistence_image, pss_embedding, pwg_embedding, topological_vector, FiniteVector,
    GaussianSumEmbedding, LandscapeProfile, WeightFunction,
};
pub use harness::{
    emit, run_experiment, summarize, ExperimentConfig, Method, MethodParams, OutputFormat,
    RatioRow, RatioTable, Summary,
};
