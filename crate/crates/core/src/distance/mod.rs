//! Matching distances between persistence diagrams.
//!
//! All distances use the ℓ∞ ground metric and charge unmatched points their
//! ℓ∞ distance to the diagonal. Matchings index into
//! [`PersistenceDiagram::expanded`], so a point of multiplicity `k` occupies
//! `k` consecutive indices.

mod bottleneck;
mod brute_force;
mod hungarian;
mod sliced;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{PersistenceDiagram, PlanePoint};
use crate::error::{Error, Result};

pub use bottleneck::bottleneck_distance;
pub use brute_force::{brute_force_distance, BRUTE_FORCE_LIMIT};
pub use hungarian::{solve_assignment, CostMatrix};
pub use sliced::{sliced_wasserstein_distance, DEFAULT_SW_DIRECTIONS};

/// The exponent `p` of a diagram distance: a positive integer or ∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DistanceOrder {
    Finite(u32),
    Infinity,
}

impl DistanceOrder {
    pub fn finite(p: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidParameter(
                "distance order p must be at least 1".into(),
            ));
        }
        Ok(DistanceOrder::Finite(p))
    }
}

impl fmt::Display for DistanceOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceOrder::Finite(p) => write!(f, "{p}"),
            DistanceOrder::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for DistanceOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(DistanceOrder::Infinity),
            other => other
                .parse::<u32>()
                .map_err(|_| Error::InvalidParameter(format!("invalid distance order `{s}`")))
                .and_then(DistanceOrder::finite),
        }
    }
}

/// A partial matching between two diagrams. Every (expanded) point of each
/// diagram appears exactly once, either in `pairs` or in its unmatched list.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialMatching {
    pub pairs: Vec<(usize, usize)>,
    pub unmatched_1: Vec<usize>,
    pub unmatched_2: Vec<usize>,
}

impl PartialMatching {
    /// The matching that sends every point to the diagonal.
    pub fn all_to_diagonal(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> Self {
        Self {
            pairs: Vec::new(),
            unmatched_1: (0..d1.total_mass()).collect(),
            unmatched_2: (0..d2.total_mass()).collect(),
        }
    }

    pub fn validate(&self, n1: usize, n2: usize) -> Result<()> {
        let check = |n: usize, used: &mut dyn Iterator<Item = usize>, side: u8| -> Result<()> {
            let mut seen = vec![false; n];
            for i in used {
                if i >= n {
                    return Err(Error::InvalidMatching(format!(
                        "index {i} out of range for diagram {side} with {n} points"
                    )));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidMatching(format!(
                        "point {i} of diagram {side} is used more than once"
                    )));
                }
            }
            if let Some(i) = seen.iter().position(|s| !s) {
                return Err(Error::InvalidMatching(format!(
                    "point {i} of diagram {side} is not covered"
                )));
            }
            Ok(())
        };
        check(
            n1,
            &mut self
                .pairs
                .iter()
                .map(|p| p.0)
                .chain(self.unmatched_1.iter().copied()),
            1,
        )?;
        check(
            n2,
            &mut self
                .pairs
                .iter()
                .map(|p| p.1)
                .chain(self.unmatched_2.iter().copied()),
            2,
        )
    }

    /// Individual ℓ∞ terms: matched pairs first, then unmatched points.
    fn terms<'a>(
        &'a self,
        a: &'a [PlanePoint],
        b: &'a [PlanePoint],
    ) -> impl Iterator<Item = f64> + 'a {
        self.pairs
            .iter()
            .map(move |&(i, j)| a[i].linf(&b[j]))
            .chain(
                self.unmatched_1
                    .iter()
                    .map(move |&i| a[i].diagonal_distance()),
            )
            .chain(
                self.unmatched_2
                    .iter()
                    .map(move |&j| b[j].diagonal_distance()),
            )
    }
}

/// Cost of a matching: `Σ termᵖ` (un-rooted) for finite `p`, the largest
/// single term for `p = ∞`.
pub fn matching_cost(
    d1: &PersistenceDiagram,
    d2: &PersistenceDiagram,
    matching: &PartialMatching,
    p: DistanceOrder,
) -> Result<f64> {
    let a = d1.expanded();
    let b = d2.expanded();
    matching.validate(a.len(), b.len())?;
    let terms = matching.terms(&a, &b);
    Ok(match p {
        DistanceOrder::Finite(p) => terms.map(|t| t.powi(p as i32)).sum(),
        DistanceOrder::Infinity => terms.fold(0.0, f64::max),
    })
}

fn augmented_cost(a: &[PlanePoint], b: &[PlanePoint], p: u32) -> CostMatrix {
    let (n, m) = (a.len(), b.len());
    let pow = |x: f64| x.powi(p as i32);
    CostMatrix::from_fn(n + m, |i, j| match (i < n, j < m) {
        (true, true) => pow(a[i].linf(&b[j])),
        (true, false) => pow(a[i].diagonal_distance()),
        (false, true) => pow(b[j].diagonal_distance()),
        (false, false) => 0.0,
    })
}

/// An optimal matching for `d_p` and its un-rooted cost `c_p`.
pub fn optimal_matching(
    d1: &PersistenceDiagram,
    d2: &PersistenceDiagram,
    p: u32,
) -> (PartialMatching, f64) {
    assert!(p >= 1, "distance order must be at least 1");
    let a = d1.expanded();
    let b = d2.expanded();
    let (n, m) = (a.len(), b.len());
    let cost = augmented_cost(&a, &b, p);
    let assignment = solve_assignment(&cost);

    let mut matching = PartialMatching::default();
    let mut b_matched = vec![false; m];
    for (i, &j) in assignment.iter().enumerate().take(n) {
        if j < m {
            matching.pairs.push((i, j));
            b_matched[j] = true;
        } else {
            matching.unmatched_1.push(i);
        }
    }
    matching.unmatched_2 = (0..m).filter(|&j| !b_matched[j]).collect();
    let total = matching.terms(&a, &b).map(|t| t.powi(p as i32)).sum();
    (matching, total)
}

/// The p-diagram distance `d_p = (min_Γ c_p(Γ))^{1/p}`, solved exactly as an
/// assignment problem on the `(n+m)×(n+m)` diagonal-augmented cost matrix.
///
/// Panics if `p == 0`.
pub fn diagram_distance(d1: &PersistenceDiagram, d2: &PersistenceDiagram, p: u32) -> f64 {
    if d1.is_empty() && d2.is_empty() {
        return 0.0;
    }
    // Solving in a fixed argument order makes the result bit-for-bit symmetric;
    // otherwise the summation order of the matched terms depends on it.
    let (d1, d2) = canonical_pair(d1, d2);
    let (_, cost) = optimal_matching(d1, d2, p);
    root(cost, p)
}

fn canonical_pair<'a>(
    a: &'a PersistenceDiagram,
    b: &'a PersistenceDiagram,
) -> (&'a PersistenceDiagram, &'a PersistenceDiagram) {
    let key = |d: &PersistenceDiagram| {
        d.entries()
            .iter()
            .map(|(q, m)| (q.birth.to_bits(), q.death.to_bits(), *m))
            .collect::<Vec<_>>()
    };
    if key(b) < key(a) {
        (b, a)
    } else {
        (a, b)
    }
}

pub(crate) fn root(cost: f64, p: u32) -> f64 {
    match p {
        1 => cost,
        2 => cost.sqrt(),
        _ => cost.powf(1.0 / p as f64),
    }
}

/// `d_p` for finite orders, `d_∞` otherwise.
pub fn distance(d1: &PersistenceDiagram, d2: &PersistenceDiagram, order: DistanceOrder) -> f64 {
    match order {
        DistanceOrder::Finite(p) => diagram_distance(d1, d2, p),
        DistanceOrder::Infinity => bottleneck_distance(d1, d2),
    }
}

/// Symmetric matrix of pairwise distances, computed in parallel over the
/// upper triangle.
pub fn pairwise_distances(diagrams: &[PersistenceDiagram], order: DistanceOrder) -> Vec<Vec<f64>> {
    let n = diagrams.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let values: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| distance(&diagrams[i], &diagrams[j], order))
        .collect();
    let mut out = vec![vec![0.0; n]; n];
    for (&(i, j), v) in pairs.iter().zip(values) {
        out[i][j] = v;
        out[j][i] = v;
    }
    out
}
