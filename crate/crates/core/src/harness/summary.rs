use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Method, RatioTable};
use crate::theory::quantile_sorted;

/// Ratio statistics for one (method, cardinality) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryEntry {
    pub method: Method,
    pub cardinality: usize,
    pub count: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub mean: f64,
    /// Mean of the largest `⌈count/10⌉` ratios.
    pub upper_decile_mean: f64,
    /// Mean of the largest `⌈count/10⌉` reciprocal ratios `d₁ / dh`, the
    /// orientation in which a vanishing lower distortion bound shows up as
    /// a growing upper tail.
    pub inverse_upper_decile_mean: f64,
}

/// Per-method statistics in ascending cardinality order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodTrend {
    pub method: Method,
    pub cardinalities: Vec<usize>,
    pub max_ratio: Vec<f64>,
    pub upper_decile_mean: Vec<f64>,
    pub upper_decile_strictly_increasing: bool,
    pub inverse_upper_decile_mean: Vec<f64>,
    pub inverse_upper_decile_strictly_increasing: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub entries: Vec<SummaryEntry>,
    pub trends: Vec<MethodTrend>,
}

impl Summary {
    pub fn entry(&self, method: Method, cardinality: usize) -> Option<&SummaryEntry> {
        self.entries
            .iter()
            .find(|e| e.method == method && e.cardinality == cardinality)
    }

    pub fn trend(&self, method: Method) -> Option<&MethodTrend> {
        self.trends.iter().find(|t| t.method == method)
    }
}

fn describe(method: Method, cardinality: usize, mut ratios: Vec<f64>) -> SummaryEntry {
    ratios.sort_by(f64::total_cmp);
    let n = ratios.len();
    let top = n.div_ceil(10);
    // Largest reciprocals come from the smallest ratios; ratios are positive
    // except for `dh = 0`, whose reciprocal is +inf.
    let inverse_upper_decile_mean = ratios[..top].iter().map(|r| 1.0 / r).sum::<f64>() / top as f64;
    SummaryEntry {
        method,
        cardinality,
        count: n,
        min: ratios[0],
        q1: quantile_sorted(&ratios, 0.25),
        median: quantile_sorted(&ratios, 0.5),
        q3: quantile_sorted(&ratios, 0.75),
        max: ratios[n - 1],
        mean: ratios.iter().sum::<f64>() / n as f64,
        upper_decile_mean: ratios[n - top..].iter().sum::<f64>() / top as f64,
        inverse_upper_decile_mean,
    }
}

fn strictly_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

pub fn summarize(table: &RatioTable) -> Summary {
    let mut cells: BTreeMap<(Method, usize), Vec<f64>> = BTreeMap::new();
    for row in &table.rows {
        cells
            .entry((row.method, row.cardinality))
            .or_default()
            .push(row.ratio);
    }
    let entries: Vec<SummaryEntry> = cells
        .into_iter()
        .map(|((m, c), r)| describe(m, c, r))
        .collect();

    let mut trends: Vec<MethodTrend> = Vec::new();
    for e in &entries {
        if trends.last().is_none_or(|t| t.method != e.method) {
            trends.push(MethodTrend {
                method: e.method,
                cardinalities: Vec::new(),
                max_ratio: Vec::new(),
                upper_decile_mean: Vec::new(),
                upper_decile_strictly_increasing: true,
                inverse_upper_decile_mean: Vec::new(),
                inverse_upper_decile_strictly_increasing: true,
            });
        }
        let t = trends.last_mut().unwrap();
        t.cardinalities.push(e.cardinality);
        t.max_ratio.push(e.max);
        t.upper_decile_mean.push(e.upper_decile_mean);
        t.inverse_upper_decile_mean
            .push(e.inverse_upper_decile_mean);
    }
    for t in &mut trends {
        t.upper_decile_strictly_increasing = strictly_increasing(&t.upper_decile_mean);
        t.inverse_upper_decile_strictly_increasing =
            strictly_increasing(&t.inverse_upper_decile_mean);
    }
    Summary { entries, trends }
}
