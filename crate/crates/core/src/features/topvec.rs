use super::{FiniteVector, VectorKind};
use crate::diagram::PersistenceDiagram;
use crate::error::{Error, Result};

pub const DEFAULT_TV_LENGTH: usize = 10;

/// Topological vector: for every unordered pair of (multiplicity-expanded)
/// points, `min(‖p − q‖∞, d_Δ(p), d_Δ(q))`, sorted in decreasing order and
/// truncated or zero-padded to `length`.
pub fn topological_vector(diagram: &PersistenceDiagram, length: usize) -> Result<FiniteVector> {
    if length == 0 {
        return Err(Error::InvalidParameter(
            "topological vector length must be at least 1".into(),
        ));
    }
    let pts = diagram.expanded();
    let diag: Vec<f64> = pts.iter().map(|p| p.diagonal_distance()).collect();
    let mut values = Vec::with_capacity(pts.len() * pts.len().saturating_sub(1) / 2);
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            values.push(pts[i].linf(&pts[j]).min(diag[i]).min(diag[j]));
        }
    }
    if values.len() > length {
        values.select_nth_unstable_by(length - 1, |a, b| b.total_cmp(a));
        values.truncate(length);
    }
    values.sort_by(|a, b| b.total_cmp(a));
    values.resize(length, 0.0);
    FiniteVector::new(values, VectorKind::TopologicalVector { length })
}
