//! Explicit diagram families with known metric behavior, and empirical
//! distortion estimates of feature maps against `d₁`.
//!
//! * The S-set: diagrams `Dg_u` built from subsets of the points
//!   `p_i = (i, i + 1/i)`. Their `d₁` distances are harmonic-type sums, which
//!   diverge, while their PWG and landscape images form Cauchy sequences.
//! * The packing family: `M` single-point diagrams spread along a line of
//!   constant persistence inside `[−L, L]²`, all within `r/2` of the empty
//!   diagram and pairwise `2^{1/p}·r/2` apart.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{PersistenceDiagram, PlanePoint};
use crate::distance::{
    brute_force_distance, diagram_distance, distance, DistanceOrder, BRUTE_FORCE_LIMIT,
};
use crate::error::{Error, Result};
use crate::features::{
    gaussian_sum_squared_l2_distance, landscape_l2_distance, landscape_profile,
    GaussianSumEmbedding, LandscapeProfile,
};

/// `p_i = (i, i + 1/i)`.
pub fn s_point(i: usize) -> PlanePoint {
    let x = i as f64;
    PlanePoint::new(x, x + 1.0 / x)
}

/// A finite S-set diagram: the points `p_i` for `i` in `support`.
#[derive(Debug, Clone, PartialEq)]
pub struct STruncation {
    support: BTreeSet<usize>,
    diagram: PersistenceDiagram,
}

impl STruncation {
    pub fn from_support<I: IntoIterator<Item = usize>>(support: I) -> Result<Self> {
        let support: BTreeSet<usize> = support.into_iter().collect();
        if support.contains(&0) {
            return Err(Error::InvalidParameter("S-set indices start at 1".into()));
        }
        let diagram = PersistenceDiagram::from_points(support.iter().map(|&i| s_point(i)))?;
        Ok(Self { support, diagram })
    }

    pub fn support(&self) -> &BTreeSet<usize> {
        &self.support
    }

    pub fn diagram(&self) -> &PersistenceDiagram {
        &self.diagram
    }
}

/// `Dg_{u_k}`: the first `k` points of the S-set.
pub fn s_truncation(k: usize) -> Result<STruncation> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "truncation length k must be at least 1".into(),
        ));
    }
    STruncation::from_support(1..=k)
}

/// Cost of matching every point of the symmetric difference to the
/// diagonal: `Σ_{i ∈ A △ B} 1/(2i)`.
pub fn s_distance_lower_bound(support_a: &BTreeSet<usize>, support_b: &BTreeSet<usize>) -> f64 {
    support_a
        .symmetric_difference(support_b)
        .map(|&i| 1.0 / (2.0 * i as f64))
        .sum()
}

#[derive(Debug, Clone, Serialize)]
pub struct SDistanceCheck {
    pub support_a: Vec<usize>,
    pub support_b: Vec<usize>,
    pub diagonal_matching_cost: f64,
    pub exact_d1: f64,
    /// Present when the instance is small enough for exhaustive search.
    pub brute_force_d1: Option<f64>,
    pub diagonal_matching_optimal: bool,
}

/// Compares the diagonal-matching cost with the exact solver (and the
/// exhaustive oracle when small enough).
pub fn check_s_distance(
    a: &STruncation,
    b: &STruncation,
    tolerance: f64,
) -> Result<SDistanceCheck> {
    let bound = s_distance_lower_bound(&a.support, &b.support);
    let exact = diagram_distance(&a.diagram, &b.diagram, 1);
    let brute = if a.diagram.total_mass() + b.diagram.total_mass() <= BRUTE_FORCE_LIMIT {
        Some(brute_force_distance(
            &a.diagram,
            &b.diagram,
            DistanceOrder::Finite(1),
        )?)
    } else {
        None
    };
    let optimal =
        (exact - bound).abs() <= tolerance && brute.is_none_or(|v| (v - bound).abs() <= tolerance);
    Ok(SDistanceCheck {
        support_a: a.support.iter().copied().collect(),
        support_b: b.support.iter().copied().collect(),
        diagonal_matching_cost: bound,
        exact_d1: exact,
        brute_force_d1: brute,
        diagonal_matching_optimal: optimal,
    })
}

/// A Cauchy-tail measurement `‖Φ(Dg_{u_q}) − Φ(Dg_{u_p})‖²` with its bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CauchyTail {
    pub p: usize,
    pub q: usize,
    pub tail_norm_sq: f64,
    pub bound: f64,
}

/// Relative slack for tail-vs-bound comparisons. Single-term tails
/// (`q = p + 1`) meet their bound with equality, so the two sides differ
/// only by rounding.
pub const CAUCHY_BOUND_SLACK: f64 = 1e-12;

impl CauchyTail {
    pub fn within_bound(&self) -> bool {
        self.tail_norm_sq <= self.bound * (1.0 + CAUCHY_BOUND_SLACK)
    }
}

fn check_tail_range(p: usize, q: usize) -> Result<()> {
    if p == 0 || p >= q {
        return Err(Error::InvalidParameter(format!(
            "Cauchy tail needs 1 <= p < q, got p = {p}, q = {q}"
        )));
    }
    Ok(())
}

/// PWG image (weight `(y − x)²`) of the S-set points `p_k`, `k ∈ (from, to]`.
/// The weight of `p_k` is exactly `1/k²`; it is taken in closed form rather
/// than from the rounded coordinates of `p_k`.
pub fn s_set_pwg_embedding(from: usize, to: usize, bandwidth: f64) -> Result<GaussianSumEmbedding> {
    let atoms = (from + 1..=to)
        .map(|k| (s_point(k), 1.0 / (k as f64 * k as f64)))
        .collect();
    GaussianSumEmbedding::new(atoms, bandwidth)
}

/// `‖Φ_PWG(Dg_{u_q}) − Φ_PWG(Dg_{u_p})‖²` in closed form, against
/// `πσ²(Σ_{k=p+1}^{q} 1/k²)²`.
pub fn pwg_cauchy_tail(p: usize, q: usize, bandwidth: f64) -> Result<CauchyTail> {
    check_tail_range(p, q)?;
    let outer = s_set_pwg_embedding(0, q, bandwidth)?;
    let inner = s_set_pwg_embedding(0, p, bandwidth)?;
    let tail_norm_sq = gaussian_sum_squared_l2_distance(&outer, &inner)?;
    let s: f64 = (p + 1..=q).map(|k| 1.0 / (k as f64 * k as f64)).sum();
    Ok(CauchyTail {
        p,
        q,
        tail_norm_sq,
        bound: PI * bandwidth * bandwidth * s * s,
    })
}

/// Landscape tail from exact integration of the two landscapes, against
/// `Σ_{k=p+1}^{q} 1/(4k²)` (the total area under the dropped triangles).
pub fn landscape_cauchy_tail(p: usize, q: usize) -> Result<CauchyTail> {
    check_tail_range(p, q)?;
    let lp = landscape_profile(s_truncation(p)?.diagram(), 2)?;
    let lq = landscape_profile(s_truncation(q)?.diagram(), 2)?;
    landscape_tail_from_profiles(p, q, &lp, &lq)
}

fn landscape_tail_from_profiles(
    p: usize,
    q: usize,
    lp: &LandscapeProfile,
    lq: &LandscapeProfile,
) -> Result<CauchyTail> {
    let d = landscape_l2_distance(lq, lp)?;
    Ok(CauchyTail {
        p,
        q,
        tail_norm_sq: d * d,
        bound: (p + 1..=q).map(|k| 1.0 / (4.0 * (k * k) as f64)).sum(),
    })
}

/// `Σ_{k=p+1}^{q} 1/(12k³)`: the landscape tail from the triangle integral
/// `∫ φ_k² = base · height² / 3`.
pub fn landscape_tail_closed_form(p: usize, q: usize) -> f64 {
    (p + 1..=q).map(|k| 1.0 / (12.0 * (k as f64).powi(3))).sum()
}

/// Landscapes of `Dg_{u_1}, …, Dg_{u_n}`, for sweeping many tails.
pub struct SSetLandscapes {
    profiles: Vec<LandscapeProfile>,
}

impl SSetLandscapes {
    pub fn new(max_k: usize) -> Result<Self> {
        let profiles = (1..=max_k)
            .into_par_iter()
            .map(|k| landscape_profile(s_truncation(k)?.diagram(), 2))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { profiles })
    }

    pub fn cauchy_tail(&self, p: usize, q: usize) -> Result<CauchyTail> {
        check_tail_range(p, q)?;
        let get = |k: usize| {
            self.profiles
                .get(k - 1)
                .ok_or_else(|| Error::InvalidParameter(format!("k = {k} beyond precomputed range")))
        };
        landscape_tail_from_profiles(p, q, get(p)?, get(q)?)
    }
}

pub const PACKING_BETA: f64 = 0.5;
pub const PACKING_MAX_MEMBERS: usize = 10_000_000;

/// `M` single-point diagrams `{(−L + j r, −L + (j+1) r)}`, `r = 2L/M`,
/// `M = 1 + ⌊C β^{−α}⌋` with `β = ½`.
#[derive(Debug, Clone, Serialize)]
pub struct PackingFamily {
    pub c: f64,
    pub alpha: f64,
    pub half_width: f64,
    pub beta: f64,
    pub members: usize,
    pub r: f64,
    #[serde(skip)]
    pub diagrams: Vec<PersistenceDiagram>,
}

pub fn assouad_packing(c: f64, alpha: f64, half_width: f64) -> Result<PackingFamily> {
    for (name, v) in [("C", c), ("alpha", alpha), ("L", half_width)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "{name} must be positive, got {v}"
            )));
        }
    }
    let count = c * PACKING_BETA.powf(-alpha);
    let m = 1.0 + count.floor();
    if !(m <= PACKING_MAX_MEMBERS as f64) {
        return Err(Error::InvalidParameter(format!(
            "packing would need {m} diagrams (limit {PACKING_MAX_MEMBERS})"
        )));
    }
    let members = m as usize;
    let r = 2.0 * half_width / members as f64;
    let diagrams = (0..members)
        .map(|j| {
            let j = j as f64;
            PersistenceDiagram::from_points([PlanePoint::new(
                -half_width + j * r,
                -half_width + (j + 1.0) * r,
            )])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PackingFamily {
        c,
        alpha,
        half_width,
        beta: PACKING_BETA,
        members,
        r,
        diagrams,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PackingReport {
    pub family: PackingFamily,
    pub order: String,
    pub tolerance: f64,
    pub expected_to_empty: f64,
    pub expected_pairwise: f64,
    pub min_to_empty: f64,
    pub max_to_empty: f64,
    pub min_pairwise: f64,
    pub max_pairwise: f64,
    pub pair_count: usize,
    /// Every member lies strictly inside the radius-`r` ball around ∅.
    pub inside_ball: bool,
    pub in_box: bool,
    pub pairwise_as_expected: bool,
    pub pass: bool,
}

/// Checks the family's distances with the exact solvers.
pub fn verify_packing(
    family: &PackingFamily,
    order: DistanceOrder,
    tolerance: f64,
) -> PackingReport {
    let empty = PersistenceDiagram::empty();
    let r = family.r;
    let expected_pairwise = match order {
        DistanceOrder::Finite(p) => 2f64.powf(1.0 / p as f64) * r / 2.0,
        DistanceOrder::Infinity => r / 2.0,
    };
    let to_empty: Vec<f64> = family
        .diagrams
        .iter()
        .map(|d| distance(d, &empty, order))
        .collect();
    let n = family.diagrams.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let pairwise: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| distance(&family.diagrams[i], &family.diagrams[j], order))
        .collect();

    let min_max = |v: &[f64]| {
        v.iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
                (lo.min(x), hi.max(x))
            })
    };
    let (min_to_empty, max_to_empty) = min_max(&to_empty);
    let (min_pairwise, max_pairwise) = min_max(&pairwise);
    let inside_ball = to_empty
        .iter()
        .all(|&d| (d - r / 2.0).abs() <= tolerance && d < r);
    let in_box = family
        .diagrams
        .iter()
        .all(|d| d.max_abs_coordinate() <= family.half_width * (1.0 + 1e-12));
    let pairwise_as_expected = pairwise
        .iter()
        .all(|&d| (d - expected_pairwise).abs() <= tolerance);
    PackingReport {
        family: family.clone(),
        order: order.to_string(),
        tolerance,
        expected_to_empty: r / 2.0,
        expected_pairwise,
        min_to_empty,
        max_to_empty,
        min_pairwise,
        max_pairwise,
        pair_count: pairwise.len(),
        inside_ball,
        in_box,
        pairwise_as_expected,
        pass: inside_ball && in_box && pairwise_as_expected,
    }
}

/// Ratios `d_H(Φ(D_i), Φ(D_j)) / d₁(D_i, D_j)` over a diagram pool.
///
/// `a_hat`/`b_hat` are the min/max ratio in this Hilbert-over-diagram
/// orientation. The bi-Lipschitz constants for `d₁ ≤ c·d_H` style bounds are
/// their reciprocals, reported as `inverse_lower`/`inverse_upper`.
#[derive(Debug, Clone, Serialize)]
pub struct DistortionEstimate {
    pub method: String,
    /// Strict bound on the pool's cardinalities (max total mass + 1).
    pub max_points: usize,
    /// Largest absolute coordinate in the pool.
    pub box_half_width: f64,
    pub a_hat: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub b_hat: f64,
    /// `1 / b_hat`.
    pub inverse_lower: f64,
    /// `1 / a_hat`.
    pub inverse_upper: f64,
    pub pair_count: usize,
    pub skipped_zero_pairs: usize,
    pub injectivity_violations: Vec<(usize, usize)>,
}

/// Linear-interpolated quantile of sorted data.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty());
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Builds the estimate from precomputed `(i, j, d₁, d_H)` tuples.
pub fn distortion_from_pairs(
    method: &str,
    pool: &[PersistenceDiagram],
    pairs: &[(usize, usize, f64, f64)],
) -> Result<DistortionEstimate> {
    let mut ratios = Vec::with_capacity(pairs.len());
    let mut skipped = 0;
    let mut violations = Vec::new();
    for &(i, j, d1, dh) in pairs {
        if d1 > 0.0 {
            ratios.push(dh / d1);
        } else {
            skipped += 1;
            if dh > 0.0 {
                violations.push((i, j));
            }
        }
    }
    if ratios.is_empty() {
        return Err(Error::InvalidParameter(
            "no diagram pair with positive d1 distance".into(),
        ));
    }
    ratios.sort_by(f64::total_cmp);
    let a_hat = ratios[0];
    let b_hat = ratios[ratios.len() - 1];
    Ok(DistortionEstimate {
        method: method.to_string(),
        max_points: pool.iter().map(|d| d.total_mass()).max().unwrap_or(0) + 1,
        box_half_width: pool
            .iter()
            .map(|d| d.max_abs_coordinate())
            .fold(0.0, f64::max),
        a_hat,
        q1: quantile_sorted(&ratios, 0.25),
        median: quantile_sorted(&ratios, 0.5),
        q3: quantile_sorted(&ratios, 0.75),
        b_hat,
        inverse_lower: 1.0 / b_hat,
        inverse_upper: 1.0 / a_hat,
        pair_count: ratios.len(),
        skipped_zero_pairs: skipped,
        injectivity_violations: violations,
    })
}

/// Computes `d₁` and the feature-space distance for every pair of the pool.
pub fn empirical_distortion<F>(
    method: &str,
    diagrams: &[PersistenceDiagram],
    hilbert_distance: F,
) -> Result<DistortionEstimate>
where
    F: Fn(&PersistenceDiagram, &PersistenceDiagram) -> Result<f64> + Sync,
{
    if diagrams.len() < 2 {
        return Err(Error::InvalidParameter("need at least two diagrams".into()));
    }
    let n = diagrams.len();
    let idx: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let pairs = idx
        .par_iter()
        .map(|&(i, j)| {
            let d1 = diagram_distance(&diagrams[i], &diagrams[j], 1);
            let dh = hilbert_distance(&diagrams[i], &diagrams[j])?;
            Ok((i, j, d1, dh))
        })
        .collect::<Result<Vec<_>>>()?;
    distortion_from_pairs(method, diagrams, &pairs)
}

/// Report of the S-set checks: oracle agreement on small supports and the
/// divergence of `d₁(Dg_{u_k}, ∅)`.
#[derive(Debug, Clone, Serialize)]
pub struct SSuiteReport {
    pub checks: Vec<SDistanceCheck>,
    pub witness_k: usize,
    pub witness_value: f64,
    pub log_lower_bound: f64,
    pub threshold: f64,
    pub diverges_past_threshold: bool,
    pub pass: bool,
}

/// Checks `{1..k}` against ∅ and against `{1..k'}` for all `k' < k ≤
/// max_oracle_k`, then evaluates the diagonal cost of `{1..witness_k}`.
pub fn run_s_suite(max_oracle_k: usize, witness_k: usize, threshold: f64) -> Result<SSuiteReport> {
    let empty = STruncation::from_support(std::iter::empty())?;
    let mut checks = Vec::new();
    for k in 1..=max_oracle_k {
        let tk = s_truncation(k)?;
        checks.push(check_s_distance(&tk, &empty, 1e-12)?);
        for j in 1..k {
            checks.push(check_s_distance(&s_truncation(j)?, &tk, 1e-12)?);
        }
    }
    let witness = STruncation::from_support(1..=witness_k)?;
    let witness_value = s_distance_lower_bound(witness.support(), empty.support());
    let log_lower_bound = (witness_k as f64 + 1.0).ln() / 2.0;
    let diverges = witness_value > threshold;
    Ok(SSuiteReport {
        pass: diverges && checks.iter().all(|c| c.diagonal_matching_optimal),
        checks,
        witness_k,
        witness_value,
        log_lower_bound,
        threshold,
        diverges_past_threshold: diverges,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CauchySuiteReport {
    pub q_max: usize,
    pub bandwidth: f64,
    pub pairs_checked: usize,
    pub pwg_violations: Vec<CauchyTail>,
    pub landscape_violations: Vec<CauchyTail>,
    /// Largest `tail / bound` seen, per map.
    pub pwg_max_ratio: f64,
    pub landscape_max_ratio: f64,
    pub landscape_closed_form_max_error: f64,
    pub pass: bool,
}

/// Sweeps all `1 ≤ p < q ≤ q_max` for both maps.
pub fn run_cauchy_suite(q_max: usize, bandwidth: f64) -> Result<CauchySuiteReport> {
    if q_max < 2 {
        return Err(Error::InvalidParameter("q_max must be at least 2".into()));
    }
    let landscapes = SSetLandscapes::new(q_max)?;
    let grid: Vec<(usize, usize)> = (1..q_max)
        .flat_map(|p| (p + 1..=q_max).map(move |q| (p, q)))
        .collect();
    let results = grid
        .par_iter()
        .map(|&(p, q)| {
            let pwg = pwg_cauchy_tail(p, q, bandwidth)?;
            let ls = landscapes.cauchy_tail(p, q)?;
            Ok((pwg, ls))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut report = CauchySuiteReport {
        q_max,
        bandwidth,
        pairs_checked: results.len(),
        pwg_violations: Vec::new(),
        landscape_violations: Vec::new(),
        pwg_max_ratio: 0.0,
        landscape_max_ratio: 0.0,
        landscape_closed_form_max_error: 0.0,
        pass: false,
    };
    for (pwg, ls) in results {
        report.pwg_max_ratio = report.pwg_max_ratio.max(pwg.tail_norm_sq / pwg.bound);
        report.landscape_max_ratio = report.landscape_max_ratio.max(ls.tail_norm_sq / ls.bound);
        let closed = landscape_tail_closed_form(ls.p, ls.q);
        report.landscape_closed_form_max_error = report
            .landscape_closed_form_max_error
            .max((ls.tail_norm_sq - closed).abs());
        if !pwg.within_bound() {
            report.pwg_violations.push(pwg);
        }
        if !ls.within_bound() {
            report.landscape_violations.push(ls);
        }
    }
    report.pass = report.pwg_violations.is_empty() && report.landscape_violations.is_empty();
    Ok(report)
}
