//! Brute-force numeric solver for the quadratic functional equations.
//!
//! The unknowns are the `n` complex values of `f`, embedded as `2n` reals.
//! Each equation `(x, y)` is a complex polynomial
//! `Σ cₖ f(k) − 2 f(x) f(y)`, giving `2n²` real residuals.
//!
//! Solving for `f` directly wastes most restarts: wherever the linear part
//! has a kernel the zero root is degenerate and its basin is a wide cone.
//! Restarts instead write `f = a·φ` with `φ(p) = 1` for a pivot `p` and
//! solve `Lφ = 2a φ⊗φ`, which is the residual divided by `a`. That keeps
//! the nonzero roots with `f(p) ≠ 0`, and the zero root survives only as
//! `a = 0` with `φ` in the kernel, no longer a degenerate point. Each
//! restart runs damped Gauss–Newton with pseudoinverse steps and a halving
//! line search in that chart; converged points are clustered and anything
//! at zero dropped.
//!
//! Restart `r` uses pivot `r mod n` and draws from a ChaCha stream keyed
//! by `(seed, r)`, and clustering runs on results sorted by residual and
//! then restart, so the output does not depend on the number of threads.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::equations::{EquationKind, Instance};
use crate::func::CFunc;
use crate::report::{Provenance, Solution, SolutionReport};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleConfig {
    pub restarts: usize,
    pub start_radius: f64,
    pub max_iters: usize,
    pub converge_tol: f64,
    pub dedup_eps: f64,
    pub rng_seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            restarts: 400,
            start_radius: 2.0,
            max_iters: 200,
            converge_tol: 1e-12,
            dedup_eps: 1e-6,
            rng_seed: 0,
        }
    }
}

impl OracleConfig {
    pub fn with_seed(seed: u64) -> Self {
        OracleConfig {
            rng_seed: seed,
            ..Self::default()
        }
    }

    /// Default config with the start disc widened to `1.5‖μ‖₁` when that
    /// exceeds the default. Solutions of the measure equations scale with
    /// `∫χ dμ`, so a fixed disc misses the large ones. d'Alembert solutions
    /// ignore `μ` and keep the default disc.
    pub fn for_instance(kind: EquationKind, inst: &Instance, seed: u64) -> Self {
        let base = Self::with_seed(seed);
        let start_radius = match kind {
            EquationKind::Dalembert => base.start_radius,
            _ => base.start_radius.max(1.5 * inst.measure().total_variation()),
        };
        OracleConfig { start_radius, ..base }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.restarts == 0 || self.max_iters == 0 {
            return Err("restarts and max_iters must be positive".into());
        }
        if !(self.start_radius > 0.0 && self.converge_tol > 0.0 && self.dedup_eps > 0.0) {
            return Err("start_radius, converge_tol and dedup_eps must be positive".into());
        }
        if self.dedup_eps <= self.converge_tol {
            return Err("dedup_eps must exceed converge_tol".into());
        }
        Ok(())
    }
}

/// One complex equation `Σ cₖ f(k) − 2 f(x) f(y) = 0`.
#[derive(Debug, Clone)]
struct Equation {
    linear: Vec<(usize, Complex64)>,
    x: usize,
    y: usize,
}

/// The `n²` equations of one functional equation on one instance.
#[derive(Debug, Clone)]
pub struct QuadraticSystem {
    n: usize,
    equations: Vec<Equation>,
}

impl QuadraticSystem {
    pub fn new(kind: EquationKind, inst: &Instance) -> Self {
        let (s, tau) = (inst.semigroup(), inst.tau());
        let n = inst.order();
        let one = Complex64::new(1.0, 0.0);
        let mut equations = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let xy = s.mul(x, y);
                let xty = s.mul(x, tau.apply(y));
                let mut linear = Vec::new();
                match kind {
                    EquationKind::Dalembert => {
                        linear.push((xy, one));
                        linear.push((xty, one));
                    }
                    EquationKind::VanVleck | EquationKind::Kannappan => {
                        let sign = if kind == EquationKind::VanVleck { -1.0 } else { 1.0 };
                        for a in inst.measure().atoms() {
                            linear.push((s.mul(xy, a.point), a.weight * sign));
                            linear.push((s.mul(xty, a.point), a.weight));
                        }
                    }
                }
                equations.push(Equation { linear, x, y });
            }
        }
        QuadraticSystem { n, equations }
    }

    pub fn unknowns(&self) -> usize {
        self.n
    }

    fn residual(&self, eq: &Equation, f: &[Complex64]) -> Complex64 {
        let lin: Complex64 = eq.linear.iter().map(|&(k, c)| c * f[k]).sum();
        lin - 2.0 * f[eq.x] * f[eq.y]
    }

    pub fn max_abs_residual(&self, f: &[Complex64]) -> f64 {
        self.equations
            .iter()
            .map(|eq| self.residual(eq, f).norm())
            .fold(0.0, f64::max)
    }

    fn linear_part(&self, eq: &Equation, c: &Chart) -> Complex64 {
        eq.linear.iter().map(|&(k, w)| w * c.phi(k)).sum()
    }

    /// `Σ cₖ φ(k) − 2a φ(x) φ(y)`, which is `r(aφ)/a`.
    fn chart_residual(&self, eq: &Equation, c: &Chart) -> Complex64 {
        self.linear_part(eq, c) - 2.0 * c.scale() * c.phi(eq.x) * c.phi(eq.y)
    }

    /// Real chart residual vector, `(re, im)` per equation.
    fn residual_vector(&self, c: &Chart) -> DVector<f64> {
        let mut r = DVector::zeros(2 * self.equations.len());
        for (e, eq) in self.equations.iter().enumerate() {
            let v = self.chart_residual(eq, c);
            r[2 * e] = v.re;
            r[2 * e + 1] = v.im;
        }
        r
    }

    /// Complex partials of one chart residual by chart coordinate.
    fn partials<'a>(&'a self, eq: &'a Equation, c: &Chart) -> impl Iterator<Item = (usize, Complex64)> + 'a {
        let (a, p) = (c.scale(), c.pivot);
        let quad = [(eq.x, -2.0 * a * c.phi(eq.y)), (eq.y, -2.0 * a * c.phi(eq.x))];
        let da = -2.0 * c.phi(eq.x) * c.phi(eq.y);
        // φ(p) is pinned to 1, so slot p only carries the scale
        eq.linear
            .iter()
            .copied()
            .chain(quad)
            .filter(move |&(k, _)| k != p)
            .chain(std::iter::once((p, da)))
    }

    /// Each residual is holomorphic in the chart, so a complex partial `d`
    /// maps to the real block `[[Re d, −Im d], [Im d, Re d]]`.
    #[cfg(test)]
    fn dense_jacobian(&self, c: &Chart) -> DMatrix<f64> {
        let mut jac = DMatrix::zeros(2 * self.equations.len(), 2 * self.n);
        let mut put = |e: usize, k: usize, d: Complex64| {
            jac[(2 * e, 2 * k)] += d.re;
            jac[(2 * e, 2 * k + 1)] -= d.im;
            jac[(2 * e + 1, 2 * k)] += d.im;
            jac[(2 * e + 1, 2 * k + 1)] += d.re;
        };
        for (e, eq) in self.equations.iter().enumerate() {
            for (k, d) in self.partials(eq, c) {
                put(e, k, d);
            }
        }
        jac
    }

    /// `(JᵀJ, Jᵀr)` of the real embedding, accumulated from the complex
    /// products `J_cᴴ J_c` and `J_cᴴ R` without forming `J`.
    fn normal_equations(&self, c: &Chart) -> (DMatrix<f64>, DVector<f64>) {
        let n = self.n;
        let mut gram = vec![Complex64::new(0.0, 0.0); n * n];
        let mut grad = vec![Complex64::new(0.0, 0.0); n];
        let mut row: Vec<(usize, Complex64)> = Vec::new();
        for eq in &self.equations {
            row.clear();
            for (k, d) in self.partials(eq, c) {
                match row.iter_mut().find(|(j, _)| *j == k) {
                    Some((_, acc)) => *acc += d,
                    None => row.push((k, d)),
                }
            }
            let r = self.chart_residual(eq, c);
            for &(k, dk) in &row {
                grad[k] += dk.conj() * r;
                for &(l, dl) in &row {
                    gram[k * n + l] += dk.conj() * dl;
                }
            }
        }

        let mut jtj = DMatrix::zeros(2 * n, 2 * n);
        for k in 0..n {
            for l in 0..n {
                let g = gram[k * n + l];
                jtj[(2 * k, 2 * l)] = g.re;
                jtj[(2 * k, 2 * l + 1)] = -g.im;
                jtj[(2 * k + 1, 2 * l)] = g.im;
                jtj[(2 * k + 1, 2 * l + 1)] = g.re;
            }
        }
        let jtr = DVector::from_iterator(2 * n, grad.iter().flat_map(|g| [g.re, g.im]));
        (jtj, jtr)
    }

    fn merit(&self, c: &Chart) -> f64 {
        self.residual_vector(c).norm_squared()
    }

    /// Minimum-norm least-squares step `−J⁺r` via the eigendecomposition
    /// of `JᵀJ` with relative eigenvalue cutoff [`EIGEN_CUTOFF`].
    fn pseudoinverse_step(&self, c: &Chart) -> DVector<f64> {
        let (jtj, jtr) = self.normal_equations(c);
        let eig = jtj.symmetric_eigen();
        let cutoff = eig.eigenvalues.max().max(0.0) * EIGEN_CUTOFF;
        let mut step = DVector::zeros(jtr.len());
        for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
            if lambda > cutoff && lambda > 0.0 {
                let v = eig.eigenvectors.column(i);
                step -= v * (v.dot(&jtr) / lambda);
            }
        }
        step
    }

    /// One pseudoinverse step with halving line search. `None` when no
    /// step length lowers the merit.
    fn damped_step(&self, c: &Chart, merit: f64) -> Option<(Chart, f64)> {
        let step = self.pseudoinverse_step(c);
        let mut alpha = 1.0;
        for _ in 0..LINE_SEARCH_HALVINGS {
            let trial = c.moved(&step, alpha);
            let m = self.merit(&trial);
            if m < merit {
                return Some((trial, m));
            }
            alpha *= 0.5;
        }
        None
    }

    /// Damped Gauss–Newton in the chart pivoted at `pivot`, started from
    /// `start` (slot `pivot` holds `a`). Returns the lifted point `aφ`, or
    /// `None` on stagnation, divergence or an exhausted budget.
    /// Convergence is judged on the residual of the lifted point.
    pub fn gauss_newton(&self, pivot: usize, start: Vec<Complex64>, cfg: &OracleConfig) -> Option<Vec<Complex64>> {
        let bound = 10.0 * cfg.start_radius;
        let mut c = Chart { pivot, coords: start };
        let mut merit = self.merit(&c);
        let mut converged_at = None;
        for iter in 0..cfg.max_iters {
            if converged_at.is_none() && self.max_abs_residual(&c.lift()) < cfg.converge_tol {
                converged_at = Some(iter);
            }
            // a few extra steps past convergence tighten singular roots
            if let Some(at) = converged_at {
                if iter >= at + POLISH_STEPS {
                    break;
                }
            }
            let Some((next, m)) = self.damped_step(&c, merit) else {
                break;
            };
            (c, merit) = (next, m);
            if c.coords.iter().any(|v| v.norm() > CHART_BOUND) || c.lift().iter().any(|v| v.norm() > bound) {
                return None;
            }
        }
        let f = c.lift();
        (self.max_abs_residual(&f) < cfg.converge_tol).then_some(f)
    }
}

/// Coordinates `f = a·φ` with `φ(pivot) = 1`, so `a = f(pivot)`. Slot
/// `pivot` of `coords` holds `a` and the others hold `φ`. Every nonzero
/// function has this form for some pivot.
#[derive(Debug, Clone)]
struct Chart {
    pivot: usize,
    coords: Vec<Complex64>,
}

impl Chart {
    fn scale(&self) -> Complex64 {
        self.coords[self.pivot]
    }

    fn phi(&self, k: usize) -> Complex64 {
        if k == self.pivot {
            Complex64::new(1.0, 0.0)
        } else {
            self.coords[k]
        }
    }

    fn lift(&self) -> Vec<Complex64> {
        let a = self.scale();
        (0..self.coords.len()).map(|k| a * self.phi(k)).collect()
    }

    fn moved(&self, step: &DVector<f64>, alpha: f64) -> Chart {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(k, v)| v + alpha * Complex64::new(step[2 * k], step[2 * k + 1]))
            .collect();
        Chart {
            pivot: self.pivot,
            coords,
        }
    }
}

const POLISH_STEPS: usize = 8;
const EIGEN_CUTOFF: f64 = 1e-14;
const LINE_SEARCH_HALVINGS: usize = 40;
/// Runs whose chart coordinates leave this disc are chasing a solution
/// that vanishes at the pivot; another pivot finds it.
const CHART_BOUND: f64 = 1e8;
/// Radius of the start disc for `φ`. With the pivot at the largest value
/// of a solution every ratio lies in the unit disc.
const PHI_START_RADIUS: f64 = 1.25;
/// Converged points with every `|f(x)| < NEAR_ZERO·start_radius` belong to
/// the zero solution. The lifted residual is `a` times the chart residual,
/// so runs drifting toward `a = 0` meet the tolerance while `f` is merely
/// small.
pub const NEAR_ZERO: f64 = 1e-3;

/// Uniform on the disc of radius `radius`.
fn random_point(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.random::<f64>().sqrt();
    let theta = std::f64::consts::TAU * rng.random::<f64>();
    Complex64::from_polar(r, theta)
}

/// Chart start for `pivot`: `f(pivot)` from the disc of radius
/// `start_radius`, each ratio from the disc of radius [`PHI_START_RADIUS`].
fn random_start(rng: &mut ChaCha8Rng, n: usize, pivot: usize, start_radius: f64) -> Vec<Complex64> {
    (0..n)
        .map(|k| random_point(rng, if k == pivot { start_radius } else { PHI_START_RADIUS }))
        .collect()
}

/// Finds the nonzero solutions of `kind` on `inst` by random restarts.
pub fn oracle_solve(kind: EquationKind, inst: &Instance, cfg: &OracleConfig) -> SolutionReport {
    if let Err(msg) = cfg.validate() {
        panic!("invalid oracle config: {msg}");
    }
    let system = QuadraticSystem::new(kind, inst);
    let n = system.unknowns();
    let runs: Vec<Option<(Vec<Complex64>, f64)>> = (0..cfg.restarts)
        .into_par_iter()
        .map(|restart| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
            rng.set_stream(restart as u64);
            let pivot = restart % n;
            let start = random_start(&mut rng, n, pivot, cfg.start_radius);
            system.gauss_newton(pivot, start, cfg).map(|f| {
                let res = system.max_abs_residual(&f);
                (f, res)
            })
        })
        .collect();

    let mut converged: Vec<(usize, CFunc, f64)> = runs
        .into_iter()
        .enumerate()
        .filter_map(|(k, run)| run.map(|(f, res)| (k, CFunc::new(f).expect("finite iterate"), res)))
        .collect();
    let converged_count = converged.len();

    // Greedy clustering; the representative is the member with the
    // smallest residual.
    converged.sort_by(|a, b| a.2.total_cmp(&b.2).then(a.0.cmp(&b.0)));
    let mut reps: Vec<CFunc> = Vec::new();
    for (_, f, _) in converged {
        if reps.iter().all(|r| r.distance(&f) > cfg.dedup_eps) {
            reps.push(f);
        }
    }
    reps.retain(|f| !f.is_zero(cfg.dedup_eps.max(NEAR_ZERO * cfg.start_radius)));
    reps.sort_by_cached_key(CFunc::canonical_key);

    let solutions = reps
        .into_iter()
        .map(|values| Solution {
            residual: kind.residual(&values, inst).max_abs,
            values,
            provenance: Provenance::Oracle,
        })
        .collect();
    let mut warnings = Vec::new();
    if converged_count * 10 < cfg.restarts {
        warnings.push(format!(
            "no convergence budget: only {converged_count} of {} restarts converged",
            cfg.restarts
        ));
    }
    SolutionReport {
        kind,
        solutions,
        warnings,
    }
}

/// Result of matching two solution sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetMatch {
    pub pairs: Vec<(usize, usize)>,
    pub unmatched_left: Vec<usize>,
    pub unmatched_right: Vec<usize>,
}

impl SetMatch {
    pub fn is_perfect(&self) -> bool {
        self.unmatched_left.is_empty() && self.unmatched_right.is_empty()
    }
}

pub fn match_solution_sets(a: &SolutionReport, b: &SolutionReport, eps: f64) -> SetMatch {
    let left: Vec<CFunc> = a.functions().cloned().collect();
    let right: Vec<CFunc> = b.functions().cloned().collect();
    match_functions(&left, &right, eps)
}

/// Maximum bipartite matching under max-abs distance `≤ eps`.
pub fn match_functions(left: &[CFunc], right: &[CFunc], eps: f64) -> SetMatch {
    let adj: Vec<Vec<usize>> = left
        .iter()
        .map(|l| (0..right.len()).filter(|&j| l.distance(&right[j]) <= eps).collect())
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; right.len()];
    for i in 0..left.len() {
        let mut visited = vec![false; right.len()];
        augment(i, &adj, &mut owner, &mut visited);
    }
    let mut pairs: Vec<(usize, usize)> = owner
        .iter()
        .enumerate()
        .filter_map(|(j, o)| o.map(|i| (i, j)))
        .collect();
    pairs.sort_unstable();
    let unmatched_left = (0..left.len())
        .filter(|i| !pairs.iter().any(|p| p.0 == *i))
        .collect();
    let unmatched_right = (0..right.len()).filter(|j| owner[*j].is_none()).collect();
    SetMatch {
        pairs,
        unmatched_left,
        unmatched_right,
    }
}

fn augment(i: usize, adj: &[Vec<usize>], owner: &mut [Option<usize>], visited: &mut [bool]) -> bool {
    for &j in &adj[i] {
        if visited[j] {
            continue;
        }
        visited[j] = true;
        if owner[j].is_none_or(|k| augment(k, adj, owner, visited)) {
            owner[j] = Some(i);
            return true;
        }
    }
    false
}
