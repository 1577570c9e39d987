//! Persistence landscapes as exact piecewise-linear functions.

use serde::Serialize;

use crate::diagram::PersistenceDiagram;
use crate::error::{Error, Result};

pub const DEFAULT_LANDSCAPE_K_MAX: usize = 5;

/// One landscape function `λ_k`, stored as knots `(t, value)` sorted by `t`.
/// Linear between knots and zero outside the knot range. An empty knot list
/// is the zero function.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Envelope {
    knots: Vec<(f64, f64)>,
}

impl Envelope {
    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    pub fn is_zero(&self) -> bool {
        self.knots.iter().all(|&(_, y)| y == 0.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let k = &self.knots;
        if k.is_empty() || t < k[0].0 || t > k[k.len() - 1].0 {
            return 0.0;
        }
        // First knot with abscissa > t.
        let idx = k.partition_point(|&(x, _)| x <= t);
        if idx == 0 {
            return k[0].1;
        }
        if idx == k.len() {
            return k[k.len() - 1].1;
        }
        let (x0, y0) = k[idx - 1];
        let (x1, y1) = k[idx];
        if x1 == x0 {
            return y0.max(y1);
        }
        y0 + (y1 - y0) * (t - x0) / (x1 - x0)
    }

    /// Exact `∫ f dt`.
    pub fn integral(&self) -> f64 {
        self.knots
            .windows(2)
            .map(|w| (w[1].0 - w[0].0) * (w[0].1 + w[1].1) / 2.0)
            .sum()
    }

    /// Exact `∫ (self − other)² dt` over the merged breakpoint grid.
    pub fn squared_l2_distance(&self, other: &Envelope) -> f64 {
        let mut grid: Vec<f64> = self
            .knots
            .iter()
            .chain(other.knots.iter())
            .map(|&(t, _)| t)
            .collect();
        grid.sort_by(f64::total_cmp);
        grid.dedup();
        let diff: Vec<f64> = grid.iter().map(|&t| self.eval(t) - other.eval(t)).collect();
        grid.windows(2)
            .zip(diff.windows(2))
            .map(|(t, d)| (t[1] - t[0]) * (d[0] * d[0] + d[0] * d[1] + d[1] * d[1]) / 3.0)
            .sum()
    }

    fn push(&mut self, t: f64, y: f64) {
        if let Some(&(lt, _)) = self.knots.last() {
            if lt == t {
                return;
            }
        }
        self.knots.push((t, y));
    }

    /// Drops interior knots that lie on the segment joining their neighbours,
    /// and the zero-valued knots bracketing the support beyond the first and
    /// last ones.
    fn simplify(&mut self) {
        let k = &self.knots;
        if k.len() <= 2 {
            if self.is_zero() {
                self.knots.clear();
            }
            return;
        }
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(k.len());
        for i in 0..k.len() {
            if i > 0 && i + 1 < k.len() {
                let (x0, y0) = *out.last().unwrap();
                let (x1, y1) = k[i];
                let (x2, y2) = k[i + 1];
                let cross = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0);
                let scale =
                    (x2 - x0).abs().max(1.0) * (y2.abs().max(y1.abs()).max(y0.abs()).max(1.0));
                if cross.abs() <= 1e-14 * scale {
                    continue;
                }
            }
            out.push(k[i]);
        }
        let first = out.iter().position(|&(_, y)| y != 0.0);
        let last = out.iter().rposition(|&(_, y)| y != 0.0);
        self.knots = match (first, last) {
            (Some(f), Some(l)) => out[f.saturating_sub(1)..=(l + 1).min(out.len() - 1)].to_vec(),
            _ => Vec::new(),
        };
    }
}

/// The first `k_max` landscape functions of a diagram.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LandscapeProfile {
    envelopes: Vec<Envelope>,
}

impl LandscapeProfile {
    pub fn k_max(&self) -> usize {
        self.envelopes.len()
    }

    pub fn envelopes(&self) -> &[Envelope] {
        &self.envelopes
    }

    /// `λ_k(t)` with 1-based `k`; zero beyond `k_max`.
    pub fn eval(&self, k: usize, t: f64) -> f64 {
        match k.checked_sub(1).and_then(|i| self.envelopes.get(i)) {
            Some(e) => e.eval(t),
            None => 0.0,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "k_max": self.k_max(),
            "envelopes": self.envelopes.iter().map(|e| &e.knots).collect::<Vec<_>>(),
        })
    }
}

/// Tent `φ(t) = min(t − u, v − t)⁺` of the point `(u, v)`, peak `(v − u)/2`.
#[derive(Debug, Clone, Copy)]
struct Tent {
    birth: f64,
    mid: f64,
    death: f64,
}

/// Exact upper-`k` envelopes of the tents.
///
/// Between consecutive tent critical points (births, peaks, deaths) every
/// active tent is a line of slope +1 (`t − u`) or −1 (`v − t`). Within such
/// an interval the rising lines keep their order (by smallest `u`) and the
/// falling lines keep theirs (by largest `v`), so the `k` largest values come
/// from the top `k` of each family, and the envelopes can only bend where a
/// top rising line crosses a top falling line, at `t = (u + v)/2`.
pub fn landscape_profile(diagram: &PersistenceDiagram, k_max: usize) -> Result<LandscapeProfile> {
    if k_max == 0 {
        return Err(Error::InvalidParameter("k_max must be at least 1".into()));
    }
    let tents: Vec<Tent> = diagram
        .expanded()
        .into_iter()
        .map(|p| Tent {
            birth: p.birth,
            mid: (p.birth + p.death) / 2.0,
            death: p.death,
        })
        .collect();
    let mut envelopes = vec![Envelope::default(); k_max];
    if tents.is_empty() {
        return Ok(LandscapeProfile { envelopes });
    }

    let mut critical: Vec<f64> = tents
        .iter()
        .flat_map(|t| [t.birth, t.mid, t.death])
        .collect();
    critical.sort_by(f64::total_cmp);
    critical.dedup();

    let mut rising: Vec<f64> = Vec::new();
    let mut falling: Vec<f64> = Vec::new();
    let mut stops: Vec<f64> = Vec::new();
    let mut values: Vec<f64> = Vec::with_capacity(2 * k_max);

    for w in critical.windows(2) {
        let (a, b) = (w[0], w[1]);
        rising.clear();
        falling.clear();
        for t in &tents {
            if t.birth <= a && t.mid >= b {
                rising.push(t.birth);
            } else if t.mid <= a && t.death >= b {
                falling.push(t.death);
            }
        }
        rising.sort_by(f64::total_cmp);
        rising.truncate(k_max);
        falling.sort_by(|x, y| y.total_cmp(x));
        falling.truncate(k_max);

        stops.clear();
        stops.push(a);
        for &u in &rising {
            for &v in &falling {
                let t = (u + v) / 2.0;
                if t > a && t < b {
                    stops.push(t);
                }
            }
        }
        stops.push(b);
        stops.sort_by(f64::total_cmp);
        stops.dedup();

        for &t in &stops {
            values.clear();
            values.extend(rising.iter().map(|&u| (t - u).max(0.0)));
            values.extend(falling.iter().map(|&v| (v - t).max(0.0)));
            values.sort_by(|x, y| y.total_cmp(x));
            for (level, env) in envelopes.iter_mut().enumerate() {
                env.push(t, values.get(level).copied().unwrap_or(0.0));
            }
        }
    }
    for env in &mut envelopes {
        env.simplify();
    }
    Ok(LandscapeProfile { envelopes })
}

/// `√(Σ_k ∫ (λ_k − λ'_k)² dt)`, the L² distance between the stacked
/// landscape images (one unit-width strip per level).
pub fn landscape_l2_distance(p1: &LandscapeProfile, p2: &LandscapeProfile) -> Result<f64> {
    if p1.k_max() != p2.k_max() {
        return Err(Error::Mismatch(format!(
            "landscape k_max differs: {} vs {}",
            p1.k_max(),
            p2.k_max()
        )));
    }
    let sq: f64 = p1
        .envelopes
        .iter()
        .zip(&p2.envelopes)
        .map(|(e1, e2)| e1.squared_l2_distance(e2))
        .sum();
    Ok(sq.max(0.0).sqrt())
}
