//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls into the closed forms under test: Gaussian norms are
//! integrated numerically, landscapes are evaluated straight from the tent
//! definition, and random diagrams come from a separate generator.

#![allow(dead_code)]

use pdmetric::{PersistenceDiagram, PlanePoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Gauss–Kronrod 7/15 nodes and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive Gauss–Kronrod quadrature by recursive bisection.
pub fn integrate(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn rec(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (v, err) = gk15(f, a, b);
        if err <= tol || depth == 0 {
            return v;
        }
        let m = 0.5 * (a + b);
        rec(f, a, m, 0.5 * tol, depth - 1) + rec(f, m, b, 0.5 * tol, depth - 1)
    }
    rec(f, a, b, tol, 40)
}

/// Nested adaptive quadrature of `f(x, y)` over a rectangle.
pub fn integrate_2d(
    f: &dyn Fn(f64, f64) -> f64,
    (x0, x1): (f64, f64),
    (y0, y1): (f64, f64),
    tol: f64,
) -> f64 {
    let inner_tol = tol / (x1 - x0);
    integrate(
        &mut |x| integrate(&mut |y| f(x, y), y0, y1, inner_tol),
        x0,
        x1,
        tol,
    )
}

/// `∫∫ (Σ w_i e^{−‖z − c_i‖²/2σ²})² dz` over a box of ±10σ around the atoms.
pub fn gaussian_sum_sq_norm_by_quadrature(atoms: &[(f64, f64, f64)], sigma: f64) -> f64 {
    if atoms.is_empty() {
        return 0.0;
    }
    let pad = 10.0 * sigma;
    let xs = atoms.iter().map(|a| a.0);
    let ys = atoms.iter().map(|a| a.1);
    let x0 = xs.clone().fold(f64::INFINITY, f64::min) - pad;
    let x1 = xs.fold(f64::NEG_INFINITY, f64::max) + pad;
    let y0 = ys.clone().fold(f64::INFINITY, f64::min) - pad;
    let y1 = ys.fold(f64::NEG_INFINITY, f64::max) + pad;
    let two_s2 = 2.0 * sigma * sigma;
    let f = |x: f64, y: f64| {
        let v: f64 = atoms
            .iter()
            .map(|&(cx, cy, w)| w * (-((x - cx).powi(2) + (y - cy).powi(2)) / two_s2).exp())
            .sum();
        v * v
    };
    let scale: f64 = atoms.iter().map(|a| a.2 * a.2).sum::<f64>() * sigma * sigma;
    integrate_2d(&f, (x0, x1), (y0, y1), 1e-10 * scale.max(1e-300))
}

/// `λ_k(t)` straight from the definition: the k-th largest tent value.
pub fn landscape_by_definition(points: &[(f64, f64)], k: usize, t: f64) -> f64 {
    let mut v: Vec<f64> = points
        .iter()
        .map(|&(u, w)| (t - u).min(w - t).max(0.0))
        .collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v.get(k - 1).copied().unwrap_or(0.0)
}

/// `Σ_{k ≤ k_max} ∫ (λ_k^a − λ_k^b)²` by the trapezoid rule on a uniform grid.
pub fn landscape_sq_distance_on_grid(
    a: &[(f64, f64)],
    b: &[(f64, f64)],
    k_max: usize,
    samples: usize,
) -> f64 {
    let all = a.iter().chain(b);
    let lo = all.clone().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = all.map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    if !lo.is_finite() {
        return 0.0;
    }
    let h = (hi - lo) / samples as f64;
    let mut total = 0.0;
    for k in 1..=k_max {
        let g = |i: usize| {
            let t = lo + i as f64 * h;
            (landscape_by_definition(a, k, t) - landscape_by_definition(b, k, t)).powi(2)
        };
        let inner: f64 = (1..samples).map(g).sum();
        total += h * (inner + 0.5 * (g(0) + g(samples)));
    }
    total
}

/// Random pairs `(birth, death)` in the unit upper triangle, drawn without
/// the crate's sampler.
pub fn random_pairs(rng: &mut ChaCha8Rng, max_points: usize) -> Vec<(f64, f64)> {
    let n = rng.gen_range(0..=max_points);
    (0..n)
        .map(|_| loop {
            let (x, y): (f64, f64) = (rng.gen(), rng.gen());
            if x < y {
                break (x, y);
            }
        })
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn diagram(pairs: &[(f64, f64)]) -> PersistenceDiagram {
    PersistenceDiagram::from_pairs(pairs).expect("valid test diagram")
}

pub fn pairs_of(d: &PersistenceDiagram) -> Vec<(f64, f64)> {
    d.expanded()
        .into_iter()
        .map(|p: PlanePoint| (p.birth, p.death))
        .collect()
}

pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}
