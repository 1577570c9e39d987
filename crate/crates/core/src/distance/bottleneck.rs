//! Bottleneck distance: binary search over candidate costs with a
//! Hopcroft–Karp perfect-matching test on the threshold graph.

use std::collections::VecDeque;

use crate::diagram::{PersistenceDiagram, PlanePoint};

/// Maximum bipartite matching on an adjacency-list graph.
struct HopcroftKarp<'a> {
    adj: &'a [Vec<usize>],
    n_right: usize,
    match_left: Vec<Option<usize>>,
    match_right: Vec<Option<usize>>,
    dist: Vec<u32>,
}

impl<'a> HopcroftKarp<'a> {
    fn new(adj: &'a [Vec<usize>], n_right: usize) -> Self {
        Self {
            adj,
            n_right,
            match_left: vec![None; adj.len()],
            match_right: vec![None; n_right],
            dist: vec![0; adj.len()],
        }
    }

    fn bfs(&mut self) -> bool {
        let mut queue = VecDeque::new();
        let mut found = false;
        for (u, m) in self.match_left.iter().enumerate() {
            if m.is_none() {
                self.dist[u] = 0;
                queue.push_back(u);
            } else {
                self.dist[u] = u32::MAX;
            }
        }
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                match self.match_right[v] {
                    None => found = true,
                    Some(w) if self.dist[w] == u32::MAX => {
                        self.dist[w] = self.dist[u] + 1;
                        queue.push_back(w);
                    }
                    Some(_) => {}
                }
            }
        }
        found
    }

    fn dfs(&mut self, u: usize) -> bool {
        for k in 0..self.adj[u].len() {
            let v = self.adj[u][k];
            let ok = match self.match_right[v] {
                None => true,
                Some(w) => self.dist[w] == self.dist[u] + 1 && self.dfs(w),
            };
            if ok {
                self.match_left[u] = Some(v);
                self.match_right[v] = Some(u);
                return true;
            }
        }
        self.dist[u] = u32::MAX;
        false
    }

    fn max_matching(mut self) -> usize {
        debug_assert!(self.adj.iter().flatten().all(|&v| v < self.n_right));
        let mut size = 0;
        while self.bfs() {
            for u in 0..self.adj.len() {
                if self.match_left[u].is_none() && self.dfs(u) {
                    size += 1;
                }
            }
        }
        size
    }
}

/// Whether a partial matching with every term ≤ `t` exists.
///
/// Augmented graph: left = A ∪ {diagonal copy per B point}, right = B ∪
/// {diagonal copy per A point}. A point may only use its own diagonal copy;
/// diagonal copies are interchangeable so this loses nothing.
fn feasible(a: &[PlanePoint], b: &[PlanePoint], t: f64) -> bool {
    let (n, m) = (a.len(), b.len());
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(n + m);
    for (i, p) in a.iter().enumerate() {
        let mut row: Vec<usize> = b
            .iter()
            .enumerate()
            .filter(|(_, q)| p.linf(q) <= t)
            .map(|(j, _)| j)
            .collect();
        if p.diagonal_distance() <= t {
            row.push(m + i);
        }
        adj.push(row);
    }
    for (j, q) in b.iter().enumerate() {
        let mut row = Vec::new();
        if q.diagonal_distance() <= t {
            row.push(j);
        }
        row.extend(m..m + n);
        adj.push(row);
    }
    HopcroftKarp::new(&adj, n + m).max_matching() == n + m
}

/// Bottleneck distance `d_∞`: the smallest possible largest ℓ∞ term over
/// all partial matchings.
pub fn bottleneck_distance(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> f64 {
    let a = d1.expanded();
    let b = d2.expanded();
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    let mut candidates: Vec<f64> = Vec::with_capacity(a.len() * b.len() + a.len() + b.len());
    candidates.extend(a.iter().map(PlanePoint::diagonal_distance));
    candidates.extend(b.iter().map(PlanePoint::diagonal_distance));
    for p in &a {
        candidates.extend(b.iter().map(|q| p.linf(q)));
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    // Matching everything to the diagonal is feasible at the largest
    // diagonal cost, so the last candidate always succeeds.
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(&a, &b, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}
