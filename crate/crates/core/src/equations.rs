//! Residual evaluators for the functional equations.
//!
//! Every evaluator is an exhaustive scan over the argument tuples of its
//! equation and reports the largest absolute defect together with the
//! lexicographically first tuple attaining it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::func::CFunc;
use crate::measure::CentralMeasure;
use crate::semigroup::{FiniteSemigroup, Involution};

/// Tolerance of the permutation-invariance test in [`is_abelian_function`].
pub const ABELIAN_TOL: f64 = 1e-12;

/// A semigroup with involution and a central measure, mutually validated.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    semigroup: FiniteSemigroup,
    tau: Involution,
    measure: CentralMeasure,
}

impl Instance {
    pub fn new(semigroup: FiniteSemigroup, tau: Involution, measure: CentralMeasure) -> Result<Self> {
        if tau.len() != semigroup.order() {
            return Err(Error::LengthMismatch {
                found: tau.len(),
                order: semigroup.order(),
            });
        }
        for a in measure.atoms() {
            if a.point >= semigroup.order() {
                return Err(Error::PointOutOfRange {
                    point: a.point,
                    order: semigroup.order(),
                });
            }
            if !semigroup.is_central(a.point) {
                return Err(Error::SupportNotCentral { point: a.point });
            }
        }
        Ok(Instance {
            semigroup,
            tau,
            measure,
        })
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.semigroup
    }

    pub fn tau(&self) -> &Involution {
        &self.tau
    }

    pub fn measure(&self) -> &CentralMeasure {
        &self.measure
    }

    pub fn order(&self) -> usize {
        self.semigroup.order()
    }

    /// `∫ f(x t) dμ(t)`.
    pub fn right_integral(&self, f: &CFunc, x: usize) -> Complex64 {
        self.measure.right_integral(&self.semigroup, f, x)
    }

    /// `∫ f dμ`.
    pub fn mass(&self, f: &CFunc) -> Complex64 {
        self.measure.total_mass_integral(f)
    }

    fn check_len(&self, f: &CFunc) {
        assert_eq!(f.len(), self.order(), "function length must equal the semigroup order");
    }
}

/// The three quadratic equations the solvers target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EquationKind {
    /// `∫f(xτ(y)t)dμ − ∫f(xyt)dμ = 2f(x)f(y)`
    #[serde(rename = "vanvleck")]
    VanVleck,
    /// `∫f(xyt)dμ + ∫f(xτ(y)t)dμ = 2f(x)f(y)`
    Kannappan,
    /// `g(xy) + g(xτ(y)) = 2g(x)g(y)`
    Dalembert,
}

impl EquationKind {
    pub fn name(self) -> &'static str {
        match self {
            EquationKind::VanVleck => "vanvleck",
            EquationKind::Kannappan => "kannappan",
            EquationKind::Dalembert => "dalembert",
        }
    }

    pub fn residual(self, f: &CFunc, inst: &Instance) -> Residual {
        match self {
            EquationKind::VanVleck => residual_van_vleck(f, inst),
            EquationKind::Kannappan => residual_kannappan(f, inst),
            EquationKind::Dalembert => residual_dalembert(f, inst.semigroup(), inst.tau()),
        }
    }
}

/// Max-abs defect over a family of argument tuples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub max_abs: f64,
    pub argmax: Vec<usize>,
}

impl Residual {
    fn scan<const K: usize>(n: usize, mut defect: impl FnMut([usize; K]) -> Complex64) -> Self {
        let mut best = Residual {
            max_abs: 0.0,
            argmax: vec![0; K],
        };
        let mut args = [0usize; K];
        let total = n.pow(K as u32);
        for code in 0..total {
            let mut c = code;
            for slot in args.iter_mut().rev() {
                *slot = c % n;
                c /= n;
            }
            let v = defect(args).norm();
            // strict comparison keeps the lexicographically first argmax;
            // NaN defects always win so they are never hidden
            if v > best.max_abs || (v.is_nan() && !best.max_abs.is_nan()) {
                best.max_abs = v;
                best.argmax = args.to_vec();
            }
        }
        best
    }

    pub fn below(&self, tol: f64) -> bool {
        self.max_abs < tol
    }
}

pub fn residual_van_vleck(f: &CFunc, inst: &Instance) -> Residual {
    inst.check_len(f);
    let (s, tau) = (inst.semigroup(), inst.tau());
    Residual::scan(inst.order(), |[x, y]| {
        inst.right_integral(f, s.mul(x, tau.apply(y))) - inst.right_integral(f, s.mul(x, y))
            - 2.0 * f[x] * f[y]
    })
}

pub fn residual_kannappan(f: &CFunc, inst: &Instance) -> Residual {
    inst.check_len(f);
    let (s, tau) = (inst.semigroup(), inst.tau());
    Residual::scan(inst.order(), |[x, y]| {
        inst.right_integral(f, s.mul(x, y)) + inst.right_integral(f, s.mul(x, tau.apply(y)))
            - 2.0 * f[x] * f[y]
    })
}

pub fn residual_dalembert(g: &CFunc, s: &FiniteSemigroup, tau: &Involution) -> Residual {
    assert_eq!(g.len(), s.order());
    Residual::scan(s.order(), |[x, y]| {
        g[s.mul(x, y)] + g[s.mul(x, tau.apply(y))] - 2.0 * g[x] * g[y]
    })
}

/// `|∫ψ(xty)dμ(t) − ψ(x)ψ(y)|`.
pub fn residual_mu_spherical(psi: &CFunc, inst: &Instance) -> Residual {
    inst.check_len(psi);
    let s = inst.semigroup();
    Residual::scan(inst.order(), |[x, y]| {
        let lhs: Complex64 = inst
            .measure()
            .atoms()
            .iter()
            .map(|a| a.weight * psi[s.product(&[x, a.point, y])])
            .sum();
        lhs - psi[x] * psi[y]
    })
}

/// `|∫∫f(xtysz) − ∫∫f(ytxsz)|` over all `(x, y, z)`.
pub fn check_kannappan_condition(f: &CFunc, inst: &Instance) -> Residual {
    inst.check_len(f);
    let s = inst.semigroup();
    let atoms = inst.measure().atoms();
    Residual::scan(inst.order(), |[x, y, z]| {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in atoms {
            for u in atoms {
                let w = t.weight * u.weight;
                acc += w * (f[s.product(&[x, t.point, y, u.point, z])]
                    - f[s.product(&[y, t.point, x, u.point, z])]);
            }
        }
        acc
    })
}

/// Whether `f(x₁⋯x_d)` is invariant under every permutation of the factors,
/// for `d = 2` and, with `depth = 3`, also `d = 3`.
pub fn is_abelian_function(f: &CFunc, s: &FiniteSemigroup, depth: usize) -> bool {
    assert!((2..=3).contains(&depth), "depth must be 2 or 3");
    let n = s.order();
    let close = |a: usize, b: usize| (f[a] - f[b]).norm() <= ABELIAN_TOL;
    for x in 0..n {
        for y in 0..n {
            if !close(s.mul(x, y), s.mul(y, x)) {
                return false;
            }
        }
    }
    if depth == 3 {
        const PERMS: [[usize; 3]; 5] = [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let w = [x, y, z];
                    let base = s.product(&w);
                    for p in PERMS {
                        if !close(base, s.product(&[w[p[0]], w[p[1]], w[p[2]]])) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}
