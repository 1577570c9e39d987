//! Weighted sums of isotropic Gaussians: the Persistence Weighted Gaussian
//! and Persistence Scale Space feature maps.

use std::f64::consts::PI;

use serde::Serialize;

use super::WeightFunction;
use crate::diagram::{PersistenceDiagram, PlanePoint};
use crate::error::{Error, Result};

/// The function `x ↦ Σ_i w_i exp(−‖x − c_i‖² / 2σ²)` on ℝ².
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussianSumEmbedding {
    atoms: Vec<(PlanePoint, f64)>,
    bandwidth: f64,
}

impl GaussianSumEmbedding {
    pub fn new(atoms: Vec<(PlanePoint, f64)>, bandwidth: f64) -> Result<Self> {
        check_bandwidth(bandwidth)?;
        Ok(Self { atoms, bandwidth })
    }

    pub fn atoms(&self) -> &[(PlanePoint, f64)] {
        &self.atoms
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    /// Pointwise value of the embedded function.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let two_s2 = 2.0 * self.bandwidth * self.bandwidth;
        let at = PlanePoint::new(x, y);
        self.atoms
            .iter()
            .map(|(c, w)| w * (-c.l2_squared(&at) / two_s2).exp())
            .sum()
    }

    /// Exact `‖f‖²_{L²(ℝ²)}`.
    pub fn squared_norm(&self) -> f64 {
        gram_sum(&self.atoms, self.bandwidth)
    }
}

fn check_bandwidth(sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "bandwidth must be positive, got {sigma}"
        )))
    }
}

/// `πσ² Σ_{i,j} w_i w_j exp(−‖c_i − c_j‖² / 4σ²)`, using
/// `∫ e^{−(‖x−a‖² + ‖x−b‖²)/2σ²} dx = πσ² e^{−‖a−b‖²/4σ²}`.
fn gram_sum(atoms: &[(PlanePoint, f64)], sigma: f64) -> f64 {
    let four_s2 = 4.0 * sigma * sigma;
    let mut diag = 0.0;
    let mut off = 0.0;
    for (i, (ci, wi)) in atoms.iter().enumerate() {
        diag += wi * wi;
        for (cj, wj) in &atoms[i + 1..] {
            off += wi * wj * (-ci.l2_squared(cj) / four_s2).exp();
        }
    }
    PI * sigma * sigma * (diag + 2.0 * off)
}

/// Persistence Weighted Gaussian: one atom per distinct point, weight
/// `ω(p) · multiplicity(p)`.
pub fn pwg_embedding(
    diagram: &PersistenceDiagram,
    weight: WeightFunction,
    bandwidth: f64,
) -> Result<GaussianSumEmbedding> {
    let atoms = diagram
        .entries()
        .iter()
        .map(|&(p, m)| (p, weight.apply(&p) * m as f64))
        .collect();
    GaussianSumEmbedding::new(atoms, bandwidth)
}

/// Persistence Scale Space: each point contributes `+mult` at itself and
/// `−mult` at its mirror image across the diagonal.
pub fn pss_embedding(diagram: &PersistenceDiagram, bandwidth: f64) -> Result<GaussianSumEmbedding> {
    let atoms = diagram
        .entries()
        .iter()
        .flat_map(|&(p, m)| [(p, m as f64), (p.mirror(), -(m as f64))])
        .collect();
    GaussianSumEmbedding::new(atoms, bandwidth)
}

/// Exact L²(ℝ²) distance between two Gaussian sums of equal bandwidth.
pub fn gaussian_sum_l2_distance(
    e1: &GaussianSumEmbedding,
    e2: &GaussianSumEmbedding,
) -> Result<f64> {
    gaussian_sum_squared_l2_distance(e1, e2).map(f64::sqrt)
}

/// Squared L² distance, clamped at zero.
pub fn gaussian_sum_squared_l2_distance(
    e1: &GaussianSumEmbedding,
    e2: &GaussianSumEmbedding,
) -> Result<f64> {
    if e1.bandwidth != e2.bandwidth {
        return Err(Error::Mismatch(format!(
            "bandwidths differ: {} vs {}",
            e1.bandwidth, e2.bandwidth
        )));
    }
    let mut signed: Vec<(PlanePoint, f64)> = e1
        .atoms
        .iter()
        .copied()
        .chain(e2.atoms.iter().map(|&(c, w)| (c, -w)))
        .collect();
    merge_coincident(&mut signed);
    Ok(gram_sum(&signed, e1.bandwidth).max(0.0))
}

/// Sums the weights of atoms sharing a center and drops zero weights, so
/// shared atoms cancel exactly.
fn merge_coincident(atoms: &mut Vec<(PlanePoint, f64)>) {
    atoms.sort_by(|a, b| {
        a.0.birth
            .total_cmp(&b.0.birth)
            .then(a.0.death.total_cmp(&b.0.death))
    });
    let mut out: Vec<(PlanePoint, f64)> = Vec::with_capacity(atoms.len());
    for &(c, w) in atoms.iter() {
        match out.last_mut() {
            Some((lc, lw)) if *lc == c => *lw += w,
            _ => out.push((c, w)),
        }
    }
    out.retain(|&(_, w)| w != 0.0);
    *atoms = out;
}
