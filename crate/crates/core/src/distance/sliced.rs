//! Sliced Wasserstein distance between persistence diagrams.

use std::f64::consts::PI;

use crate::diagram::{PersistenceDiagram, PlanePoint};
use crate::error::{Error, Result};

pub const DEFAULT_SW_DIRECTIONS: usize = 50;

/// Average over `n_directions` evenly spaced angles in `[-π/2, π/2)` of the
/// 1-D transport cost between the projections of `D1 ∪ π_Δ(D2)` and
/// `D2 ∪ π_Δ(D1)`.
pub fn sliced_wasserstein_distance(
    d1: &PersistenceDiagram,
    d2: &PersistenceDiagram,
    n_directions: usize,
) -> Result<f64> {
    if n_directions == 0 {
        return Err(Error::InvalidParameter(
            "n_directions must be at least 1".into(),
        ));
    }
    let a = d1.expanded();
    let b = d2.expanded();
    let left: Vec<PlanePoint> = a
        .iter()
        .copied()
        .chain(b.iter().map(PlanePoint::diagonal_projection))
        .collect();
    let right: Vec<PlanePoint> = b
        .iter()
        .copied()
        .chain(a.iter().map(PlanePoint::diagonal_projection))
        .collect();

    let mut pl = vec![0.0; left.len()];
    let mut pr = vec![0.0; right.len()];
    let mut total = 0.0;
    for i in 0..n_directions {
        let theta = -PI / 2.0 + i as f64 * PI / n_directions as f64;
        let (s, c) = theta.sin_cos();
        for (dst, p) in pl.iter_mut().zip(&left) {
            *dst = c * p.birth + s * p.death;
        }
        for (dst, p) in pr.iter_mut().zip(&right) {
            *dst = c * p.birth + s * p.death;
        }
        pl.sort_by(f64::total_cmp);
        pr.sort_by(f64::total_cmp);
        total += pl.iter().zip(&pr).map(|(x, y)| (x - y).abs()).sum::<f64>();
    }
    Ok(total / n_directions as f64)
}
