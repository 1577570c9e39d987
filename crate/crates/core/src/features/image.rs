use std::f64::consts::PI;

use super::{FiniteVector, VectorKind, WeightFunction};
use crate::diagram::PersistenceDiagram;
use crate::error::{Error, Result};

pub const DEFAULT_IMAGE_RESOLUTION: usize = 10;

/// Persistence image on `[0, 1]²` in birth–persistence coordinates.
///
/// Pixel `(row, col)` has center `((col + ½)/res, (row + ½)/res)` and value
/// `Σ_p ω(p) · G_σ(center − (b, d − b))`, where `G_σ` is the unit-mass
/// isotropic Gaussian density. Multiplicities scale the contribution.
pub fn persistence_image(
    diagram: &PersistenceDiagram,
    resolution: usize,
    bandwidth: f64,
    weight: WeightFunction,
) -> Result<FiniteVector> {
    if resolution == 0 {
        return Err(Error::InvalidParameter(
            "image resolution must be at least 1".into(),
        ));
    }
    if !(bandwidth > 0.0 && bandwidth.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "bandwidth must be positive, got {bandwidth}"
        )));
    }
    let s2 = bandwidth * bandwidth;
    let norm = 1.0 / (2.0 * PI * s2);
    let step = 1.0 / resolution as f64;
    let centers: Vec<f64> = (0..resolution).map(|i| (i as f64 + 0.5) * step).collect();

    let mut pixels = vec![0.0; resolution * resolution];
    for &(p, m) in diagram.entries() {
        let w = weight.apply(&p) * m as f64;
        if w == 0.0 {
            continue;
        }
        let (bx, py) = (p.birth, p.persistence());
        // Separable kernel: precompute the two 1-D factors.
        let gx: Vec<f64> = centers
            .iter()
            .map(|c| (-(c - bx).powi(2) / (2.0 * s2)).exp())
            .collect();
        let gy: Vec<f64> = centers
            .iter()
            .map(|c| (-(c - py).powi(2) / (2.0 * s2)).exp())
            .collect();
        for (row, fy) in gy.iter().enumerate() {
            let line = &mut pixels[row * resolution..(row + 1) * resolution];
            for (px, fx) in line.iter_mut().zip(&gx) {
                *px += w * norm * fy * fx;
            }
        }
    }
    FiniteVector::new(pixels, VectorKind::Image { resolution })
}
