//! Exhaustive search over partial matchings. Exponential; for validating the
//! exact solvers on tiny instances only.

use super::{root, DistanceOrder};
use crate::diagram::{PersistenceDiagram, PlanePoint};
use crate::error::{Error, Result};

/// Largest combined total mass accepted by [`brute_force_distance`].
pub const BRUTE_FORCE_LIMIT: usize = 10;

struct Search<'a> {
    a: &'a [PlanePoint],
    b: &'a [PlanePoint],
    order: DistanceOrder,
    used: Vec<bool>,
    best: f64,
}

impl Search<'_> {
    fn combine(&self, acc: f64, term: f64) -> f64 {
        match self.order {
            DistanceOrder::Finite(p) => acc + term.powi(p as i32),
            DistanceOrder::Infinity => acc.max(term),
        }
    }

    fn run(&mut self, i: usize, acc: f64) {
        if i == self.a.len() {
            let mut total = acc;
            for (j, q) in self.b.iter().enumerate() {
                if !self.used[j] {
                    total = self.combine(total, q.diagonal_distance());
                }
            }
            self.best = self.best.min(total);
            return;
        }
        let p = self.a[i];
        let to_diag = self.combine(acc, p.diagonal_distance());
        self.run(i + 1, to_diag);
        for j in 0..self.b.len() {
            if !self.used[j] {
                self.used[j] = true;
                let next = self.combine(acc, p.linf(&self.b[j]));
                self.run(i + 1, next);
                self.used[j] = false;
            }
        }
    }
}

/// Minimum over every partial matching, found by enumeration.
pub fn brute_force_distance(
    d1: &PersistenceDiagram,
    d2: &PersistenceDiagram,
    order: DistanceOrder,
) -> Result<f64> {
    let size = d1.total_mass() + d2.total_mass();
    if size > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            size,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let a = d1.expanded();
    let b = d2.expanded();
    let mut search = Search {
        a: &a,
        b: &b,
        order,
        used: vec![false; b.len()],
        best: f64::INFINITY,
    };
    search.run(0, 0.0);
    Ok(match order {
        DistanceOrder::Finite(p) => root(search.best, p),
        DistanceOrder::Infinity => search.best,
    })
}
