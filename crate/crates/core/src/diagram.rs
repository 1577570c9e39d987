//! Persistence diagrams: finite multisets of points strictly above the diagonal.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{DiagramError, Result};

/// A point `(birth, death)` of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanePoint {
    pub birth: f64,
    pub death: f64,
}

impl PlanePoint {
    pub const fn new(birth: f64, death: f64) -> Self {
        Self { birth, death }
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }

    /// ℓ∞ distance to the diagonal `{(x, x)}`.
    pub fn diagonal_distance(&self) -> f64 {
        (self.death - self.birth) / 2.0
    }

    /// Nearest diagonal point under ℓ∞.
    pub fn diagonal_projection(&self) -> PlanePoint {
        let mid = (self.birth + self.death) / 2.0;
        PlanePoint::new(mid, mid)
    }

    pub fn linf(&self, other: &PlanePoint) -> f64 {
        (self.birth - other.birth)
            .abs()
            .max((self.death - other.death).abs())
    }

    pub fn l2_squared(&self, other: &PlanePoint) -> f64 {
        let dx = self.birth - other.birth;
        let dy = self.death - other.death;
        dx * dx + dy * dy
    }

    /// Reflection across the diagonal.
    pub fn mirror(&self) -> PlanePoint {
        PlanePoint::new(self.death, self.birth)
    }

    fn total_cmp(&self, other: &PlanePoint) -> Ordering {
        self.birth
            .total_cmp(&other.birth)
            .then(self.death.total_cmp(&other.death))
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.birth, self.death)
    }
}

pub fn diagonal_distance(q: PlanePoint) -> f64 {
    q.diagonal_distance()
}

pub fn diagonal_projection(q: PlanePoint) -> PlanePoint {
    q.diagonal_projection()
}

/// Bounds `N` (strict upper bound on total mass) and `L` (coordinate box
/// half-width) of a diagram class. `None` means unbounded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagramClassParams {
    max_points: Option<usize>,
    box_half_width: Option<f64>,
}

impl DiagramClassParams {
    pub fn new(max_points: Option<usize>, box_half_width: Option<f64>) -> Result<Self> {
        if max_points == Some(0) {
            return Err(DiagramError::InvalidParameter("N must be at least 1".into()).into());
        }
        if let Some(l) = box_half_width {
            if !(l > 0.0) {
                return Err(
                    DiagramError::InvalidParameter(format!("L must be positive, got {l}")).into(),
                );
            }
        }
        Ok(Self {
            max_points,
            box_half_width,
        })
    }

    pub fn max_points(&self) -> Option<usize> {
        self.max_points
    }

    pub fn box_half_width(&self) -> Option<f64> {
        self.box_half_width
    }
}

/// A finite persistence diagram. Entries are kept sorted by `(birth, death)`
/// with duplicates merged into their multiplicity, so structural equality is
/// multiset equality.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct PersistenceDiagram {
    entries: Vec<(PlanePoint, u32)>,
}

impl PersistenceDiagram {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a diagram from points with multiplicity one each.
    pub fn from_points<I>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = PlanePoint>,
    {
        Self::from_weighted(points.into_iter().map(|p| (p, 1)))
    }

    /// Builds a diagram from `(point, multiplicity)` pairs, merging duplicates.
    pub fn from_weighted<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PlanePoint, u32)>,
    {
        let mut v: Vec<(PlanePoint, u32)> = Vec::new();
        for (p, m) in entries {
            validate_point(&p)?;
            if m == 0 {
                return Err(DiagramError::ZeroMultiplicity(p).into());
            }
            v.push((p, m));
        }
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(PlanePoint, u32)> = Vec::with_capacity(v.len());
        for (p, m) in v {
            match merged.last_mut() {
                Some((last, lm)) if last.total_cmp(&p) == Ordering::Equal => {
                    *lm = lm
                        .checked_add(m)
                        .ok_or(DiagramError::MultiplicityOverflow)?;
                }
                _ => merged.push((p, m)),
            }
        }
        Ok(Self { entries: merged })
    }

    /// Convenience constructor from `(birth, death)` tuples.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::from_points(pairs.iter().map(|&(b, d)| PlanePoint::new(b, d)))
    }

    pub fn entries(&self) -> &[(PlanePoint, u32)] {
        &self.entries
    }

    /// Number of distinct points.
    pub fn distinct_len(&self) -> usize {
        self.entries.len()
    }

    /// Σ multiplicities.
    pub fn total_mass(&self) -> usize {
        self.entries.iter().map(|&(_, m)| m as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Points repeated according to multiplicity, in sorted order.
    pub fn expanded(&self) -> Vec<PlanePoint> {
        let mut out = Vec::with_capacity(self.total_mass());
        for &(p, m) in &self.entries {
            out.extend(std::iter::repeat_n(p, m as usize));
        }
        out
    }

    pub fn multiplicity(&self, p: &PlanePoint) -> u32 {
        self.entries
            .binary_search_by(|(q, _)| q.total_cmp(p))
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    /// Largest absolute coordinate, 0 for the empty diagram.
    pub fn max_abs_coordinate(&self) -> f64 {
        self.entries
            .iter()
            .map(|(p, _)| p.birth.abs().max(p.death.abs()))
            .fold(0.0, f64::max)
    }

    /// Membership in `D_N^L`: fewer than `N` points, all inside `[-L, L]²`.
    pub fn belongs_to(&self, class: &DiagramClassParams) -> bool {
        let mass_ok = class.max_points.is_none_or(|n| self.total_mass() < n);
        let box_ok = class
            .box_half_width
            .is_none_or(|l| self.max_abs_coordinate() <= l);
        mass_ok && box_ok
    }

    /// Applies `f` to every point; the result is re-validated and re-merged.
    pub fn map_points<F>(&self, f: F) -> Result<Self>
    where
        F: Fn(PlanePoint) -> PlanePoint,
    {
        Self::from_weighted(self.entries.iter().map(|&(p, m)| (f(p), m)))
    }

    pub fn scaled(&self, s: f64) -> Result<Self> {
        self.map_points(|p| PlanePoint::new(s * p.birth, s * p.death))
    }

    pub fn translated_along_diagonal(&self, c: f64) -> Result<Self> {
        self.map_points(|p| PlanePoint::new(p.birth + c, p.death + c))
    }

    /// Multiset union.
    pub fn union(&self, other: &PersistenceDiagram) -> Self {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Self::from_weighted(entries).expect("union of valid diagrams is valid")
    }
}

fn validate_point(p: &PlanePoint) -> Result<()> {
    if !p.birth.is_finite() || !p.death.is_finite() {
        return Err(DiagramError::NonFinite(*p).into());
    }
    if p.death < p.birth {
        return Err(DiagramError::BelowDiagonal(*p).into());
    }
    if p.death == p.birth {
        return Err(DiagramError::OnDiagonal(*p).into());
    }
    Ok(())
}

/// Samples `n` i.i.d. points uniformly on `{0 ≤ x ≤ y ≤ 1}` by rejection from
/// the unit square. Points that land exactly on the diagonal are redrawn.
pub fn sample_uniform_diagram(n: usize, rng_seed: u64) -> Result<PersistenceDiagram> {
    if n == 0 {
        return Err(DiagramError::InvalidParameter(
            "cannot sample an empty diagram (n = 0)".into(),
        )
        .into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut points = Vec::with_capacity(n);
    while points.len() < n {
        let x: f64 = rng.gen();
        let y: f64 = rng.gen();
        if x < y {
            points.push(PlanePoint::new(x, y));
        }
    }
    PersistenceDiagram::from_points(points)
}
