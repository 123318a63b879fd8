//! Enumeration of the nonzero multiplicative functions `χ: S → ℂ`.
//!
//! If `x` has index `i` and period `p`, then `χ(x)^i (χ(x)^p − 1) = 0`, so
//! `χ(x)` is either 0 or a `p`-th root of unity. A backtracking search over
//! these finite candidate sets, with forward checking on every product of
//! assigned elements, finds all of them.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::func::CFunc;
use crate::semigroup::FiniteSemigroup;

/// Absolute tolerance of the multiplicativity checks.
pub const MULT_TOL: f64 = 1e-12;
/// Minimum max-abs distance between distinct members.
pub const DISTINCT_EPS: f64 = 1e-8;

/// `{0} ∪ { e^(2πik/p) : 0 ≤ k < p }` for the period `p` of `x`.
pub fn candidate_values(s: &FiniteSemigroup, x: usize) -> Vec<Complex64> {
    let period = s.orbit(x).period;
    let mut out = vec![Complex64::new(0.0, 0.0)];
    out.extend((0..period).map(|k| root_of_unity(k, period)));
    out
}

/// `e^(2πik/p)` with components that are exactly 0 or ±1 snapped.
pub fn root_of_unity(k: usize, p: usize) -> Complex64 {
    let k = k % p;
    // exact quarter turns
    if (4 * k).is_multiple_of(p) {
        return match 4 * k / p {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let (sin, cos) = (TAU * k as f64 / p as f64).sin_cos();
    Complex64::new(cos, sin)
}

/// Exact scan over all `n²` pairs.
pub fn is_multiplicative(s: &FiniteSemigroup, f: &CFunc, tol: f64) -> bool {
    let n = s.order();
    (0..n).all(|x| (0..n).all(|y| (f[s.mul(x, y)] - f[x] * f[y]).norm() <= tol))
}

/// A canonically ordered set of distinct nonzero multiplicative functions.
#[derive(Debug, Clone, PartialEq)]
pub struct MultSet {
    members: Vec<CFunc>,
}

impl MultSet {
    pub fn members(&self) -> &[CFunc] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, CFunc> {
        self.members.iter()
    }

    /// Position of the member within `eps` of `f`.
    pub fn position(&self, f: &CFunc, eps: f64) -> Option<usize> {
        self.members.iter().position(|m| m.distance(f) <= eps)
    }
}

impl<'a> IntoIterator for &'a MultSet {
    type Item = &'a CFunc;
    type IntoIter = std::slice::Iter<'a, CFunc>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// All nonzero multiplicative functions on `s`, canonically ordered.
pub fn enumerate_multiplicative(s: &FiniteSemigroup) -> MultSet {
    enumerate_with_zero(s, false)
}

/// As [`enumerate_multiplicative`], optionally keeping `χ ≡ 0`.
pub fn enumerate_with_zero(s: &FiniteSemigroup, include_zero: bool) -> MultSet {
    let n = s.order();
    let candidates: Vec<Vec<Complex64>> = (0..n).map(|x| candidate_values(s, x)).collect();
    let periods: Vec<usize> = (0..n).map(|x| s.orbit(x).period).collect();

    // Descending period, ties by index.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| periods[b].cmp(&periods[a]).then(a.cmp(&b)));

    let search = Search {
        s,
        candidates: &candidates,
        order: &order,
    };
    let first = order[0];
    let mut found: Vec<CFunc> = candidates[first]
        .par_iter()
        .flat_map_iter(|&v| {
            let mut assignment = vec![None; n];
            let mut out = Vec::new();
            if search.consistent_after(&mut assignment, first, v) {
                search.extend(&mut assignment, 1, &mut out);
            }
            out
        })
        .collect();

    if !include_zero {
        found.retain(|f| !f.is_zero(0.0));
    }
    found.sort_by_cached_key(CFunc::canonical_key);
    let mut members: Vec<CFunc> = Vec::with_capacity(found.len());
    for f in found {
        if members.iter().all(|m| m.distance(&f) > DISTINCT_EPS) {
            members.push(f);
        }
    }
    MultSet { members }
}

struct Search<'a> {
    s: &'a FiniteSemigroup,
    candidates: &'a [Vec<Complex64>],
    order: &'a [usize],
}

impl Search<'_> {
    fn extend(&self, assignment: &mut [Option<Complex64>], depth: usize, out: &mut Vec<CFunc>) {
        if depth == self.order.len() {
            let values = assignment.iter().map(|v| v.expect("complete")).collect();
            out.push(CFunc::new(values).expect("roots of unity are finite"));
            return;
        }
        let x = self.order[depth];
        for &v in &self.candidates[x] {
            if self.consistent_after(assignment, x, v) {
                self.extend(assignment, depth + 1, out);
            }
            assignment[x] = None;
        }
    }

    /// Assigns `χ(x) = v` and checks every product among assigned elements
    /// that involves `x`. An unassigned product must admit the forced value
    /// among its candidates.
    fn consistent_after(&self, assignment: &mut [Option<Complex64>], x: usize, v: Complex64) -> bool {
        assignment[x] = Some(v);
        let n = self.s.order();
        for y in 0..n {
            let Some(w) = assignment[y] else { continue };
            for (a, b, forced) in [(x, y, v * w), (y, x, w * v)] {
                let ab = self.s.mul(a, b);
                let ok = match assignment[ab] {
                    Some(u) => (u - forced).norm() <= MULT_TOL,
                    None => self.candidates[ab]
                        .iter()
                        .any(|c| (c - forced).norm() <= MULT_TOL),
                };
                if !ok {
                    return false;
                }
            }
        }
        // pairs assigned earlier whose product is x
        for (a, wa) in assignment.iter().enumerate() {
            let Some(wa) = wa else { continue };
            for (b, wb) in assignment.iter().enumerate() {
                let Some(wb) = wb else { continue };
                if self.s.mul(a, b) == x && (v - wa * wb).norm() > MULT_TOL {
                    return false;
                }
            }
        }
        true
    }
}
