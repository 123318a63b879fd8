//! Closed-form solution families built from multiplicative functions, the
//! correspondence between d'Alembert and Kannappan solutions, and the
//! identity suites every solution must satisfy.
//!
//! With `a = ∫χ dμ` and `b = ∫χ∘τ dμ`:
//!
//! * Van Vleck: `f = b·(χ − χ∘τ)/2` for every `χ` with `a ≠ 0`, `b = −a`.
//! * Kannappan (abelian): `f = a·(χ + χ∘τ)/2` for every `χ` with `a ≠ 0`, `b = a`.
//! * d'Alembert (abelian): `g = (χ + χ∘τ)/2`.
//!
//! Kannappan solutions are in bijection with d'Alembert solutions `g` that
//! have `∫g dμ ≠ 0` and `∫g(xt)dμ = g(x)∫g dμ`, via `g ↦ (∫g dμ)·g` with
//! inverse `f ↦ ∫f(·t)dμ / ∫f dμ`.

use num_complex::Complex64;
use serde::Serialize;

use crate::chars::MultSet;
use crate::equations::{
    is_abelian_function, residual_dalembert, residual_kannappan, EquationKind, Instance, Residual,
};
use crate::error::{Error, Result};
use crate::func::{dedup_canonical, CFunc};
use crate::measure::DoubleMode;
use crate::report::SolutionReport;

/// Thresholds used by the constructions and predicates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Admissibility and membership predicates, nonvanishing tests.
    pub admissible: f64,
    /// Residual assertions and identity checks.
    pub residual: f64,
    /// Family deduplication distance.
    pub dedup: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            admissible: 1e-9,
            residual: 1e-10,
            dedup: 1e-8,
        }
    }
}

/// A multiplicative function together with its two measure integrals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibleChar {
    pub chi: CFunc,
    /// `∫χ dμ`
    #[serde(serialize_with = "crate::func::serialize_complex")]
    pub mass: Complex64,
    /// `∫χ∘τ dμ`
    #[serde(serialize_with = "crate::func::serialize_complex")]
    pub tau_mass: Complex64,
}

impl AdmissibleChar {
    pub fn new(chi: &CFunc, inst: &Instance) -> Self {
        let chi_tau = chi.compose_tau(inst.tau());
        AdmissibleChar {
            mass: inst.mass(chi),
            tau_mass: inst.mass(&chi_tau),
            chi: chi.clone(),
        }
    }

    pub fn is_van_vleck_admissible(&self, tol: f64) -> bool {
        self.mass.norm() > tol && (self.tau_mass + self.mass).norm() < tol
    }

    pub fn is_kannappan_admissible(&self, tol: f64) -> bool {
        self.mass.norm() > tol && (self.tau_mass - self.mass).norm() < tol
    }
}

/// `b·(χ − χ∘τ)/2`.
pub fn van_vleck_from_char(chi: &CFunc, inst: &Instance) -> CFunc {
    let tau_mass = inst.mass(&chi.compose_tau(inst.tau()));
    let odd = chi.zip_with(&chi.compose_tau(inst.tau()), |a, b| (a - b) / 2.0);
    odd.scale(tau_mass)
}

/// All nonzero Van Vleck solutions, one per admissible `χ`; `χ` and `χ∘τ`
/// give the same function and are merged.
pub fn van_vleck_family(inst: &Instance, chars: &MultSet, tol: &Tolerances) -> SolutionReport {
    let funcs = chars
        .iter()
        .map(|chi| AdmissibleChar::new(chi, inst))
        .filter(|a| a.is_van_vleck_admissible(tol.admissible))
        .map(|a| van_vleck_from_char(&a.chi, inst))
        .collect();
    SolutionReport::constructed(EquationKind::VanVleck, inst, funcs, tol.dedup)
}

/// The unit point mass case, `f = χ(τ(z₀))·(χ − χ∘τ)/2` for `χ(z₀) ≠ 0`
/// and `χ(τ(z₀)) = −χ(z₀)`.
pub fn van_vleck_dirac_family(inst: &Instance, chars: &MultSet, tol: &Tolerances) -> Result<SolutionReport> {
    let z0 = inst.measure().is_unit_dirac().ok_or(Error::NotDirac)?;
    let tz0 = inst.tau().apply(z0);
    let funcs = chars
        .iter()
        .filter(|chi| chi[z0].norm() > tol.admissible && (chi[tz0] + chi[z0]).norm() < tol.admissible)
        .map(|chi| {
            chi.zip_with(&chi.compose_tau(inst.tau()), |a, b| (a - b) / 2.0)
                .scale(chi[tz0])
        })
        .collect();
    Ok(SolutionReport::constructed(
        EquationKind::VanVleck,
        inst,
        funcs,
        tol.dedup,
    ))
}

/// `a·(χ + χ∘τ)/2`.
pub fn kannappan_from_char(chi: &CFunc, inst: &Instance) -> CFunc {
    let even = chi.zip_with(&chi.compose_tau(inst.tau()), |a, b| (a + b) / 2.0);
    even.scale(inst.mass(chi))
}

/// The nonzero abelian Kannappan solutions.
pub fn kannappan_abelian_family(inst: &Instance, chars: &MultSet, tol: &Tolerances) -> SolutionReport {
    let funcs = chars
        .iter()
        .map(|chi| AdmissibleChar::new(chi, inst))
        .filter(|a| a.is_kannappan_admissible(tol.admissible))
        .map(|a| kannappan_from_char(&a.chi, inst))
        .collect();
    SolutionReport::constructed(EquationKind::Kannappan, inst, funcs, tol.dedup)
}

/// The nonzero abelian d'Alembert solutions `(χ + χ∘τ)/2`. The measure is
/// not involved.
pub fn dalembert_abelian_family(inst: &Instance, chars: &MultSet, tol: &Tolerances) -> SolutionReport {
    let funcs = dalembert_abelian_functions(inst, chars, tol.dedup);
    SolutionReport::constructed(EquationKind::Dalembert, inst, funcs, tol.dedup)
}

pub fn dalembert_abelian_functions(inst: &Instance, chars: &MultSet, eps: f64) -> Vec<CFunc> {
    let funcs = chars
        .iter()
        .map(|chi| chi.zip_with(&chi.compose_tau(inst.tau()), |a, b| (a + b) / 2.0))
        .filter(|g| !g.is_zero(eps))
        .collect();
    dedup_canonical(funcs, eps)
}

/// The three conditions singling out the d'Alembert solutions that
/// correspond to Kannappan solutions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SetAConditions {
    /// `max_x |∫g(xt)dμ − ∫g(xτ(t))dμ|`
    pub tau_shift: Residual,
    /// `max_x |∫g(xt)dμ − g(x)∫g dμ|`
    pub factorized_shift: Residual,
    /// `|∫∫g(ts)dμdμ − (∫g dμ)²|`
    pub double_mass: f64,
    #[serde(serialize_with = "crate::func::serialize_complex")]
    pub mass: Complex64,
}

impl SetAConditions {
    pub fn evaluate(g: &CFunc, inst: &Instance) -> Self {
        let (s, tau, mu) = (inst.semigroup(), inst.tau(), inst.measure());
        let mass = inst.mass(g);
        let tau_shift = max_over_x(inst.order(), |x| {
            let shifted: Complex64 = mu
                .atoms()
                .iter()
                .map(|a| a.weight * g[s.mul(x, tau.apply(a.point))])
                .sum();
            inst.right_integral(g, x) - shifted
        });
        let factorized_shift = max_over_x(inst.order(), |x| inst.right_integral(g, x) - g[x] * mass);
        let double = mu.double_integral(s, tau, g, DoubleMode::Plain, None);
        SetAConditions {
            tau_shift,
            factorized_shift,
            double_mass: (double - mass * mass).norm(),
            mass,
        }
    }

    pub fn truths(&self, tol: f64) -> [bool; 3] {
        [
            self.tau_shift.max_abs < tol,
            self.factorized_shift.max_abs < tol,
            self.double_mass < tol,
        ]
    }
}

fn max_over_x(n: usize, defect: impl Fn(usize) -> Complex64) -> Residual {
    let mut best = Residual {
        max_abs: 0.0,
        argmax: vec![0],
    };
    for x in 0..n {
        let v = defect(x).norm();
        if v > best.max_abs || v.is_nan() {
            best.max_abs = v;
            best.argmax = vec![x];
        }
    }
    best
}

/// Outcome of [`set_a_membership`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SetAReport {
    pub conditions: SetAConditions,
    /// Whether the three equivalent conditions hold (they agree).
    pub conditions_hold: bool,
    /// Conditions hold and `∫g dμ ≠ 0`.
    pub member: bool,
}

/// Evaluates the three conditions on a d'Alembert solution and checks that
/// they agree.
pub fn set_a_membership(g: &CFunc, inst: &Instance, tol: &Tolerances) -> Result<SetAReport> {
    let r = residual_dalembert(g, inst.semigroup(), inst.tau());
    if !r.below(tol.admissible) {
        return Err(Error::NotDalembertSolution {
            residual: r.max_abs,
            argmax: r.argmax,
        });
    }
    let conditions = SetAConditions::evaluate(g, inst);
    let [tau_shift, factorized, double_mass] = conditions.truths(tol.admissible);
    if !(tau_shift == factorized && factorized == double_mass) {
        return Err(Error::EquivalenceViolation {
            tau_shift,
            factorized,
            double_mass,
        });
    }
    let member = tau_shift && conditions.mass.norm() > tol.admissible;
    Ok(SetAReport {
        conditions,
        conditions_hold: tau_shift,
        member,
    })
}

/// A d'Alembert solution with `∫g dμ ≠ 0` satisfying the three equivalent
/// conditions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibleDalembert {
    g: CFunc,
    #[serde(serialize_with = "crate::func::serialize_complex")]
    mass: Complex64,
}

impl AdmissibleDalembert {
    pub fn try_new(g: CFunc, inst: &Instance, tol: &Tolerances) -> Result<Self> {
        let report = set_a_membership(&g, inst, tol)?;
        if !report.conditions_hold {
            return Err(Error::NotInSetA(format!(
                "shift condition fails at x = {:?}",
                report.conditions.factorized_shift.argmax
            )));
        }
        if !report.member {
            return Err(Error::VanishingMass {
                magnitude: report.conditions.mass.norm(),
            });
        }
        Ok(AdmissibleDalembert {
            mass: report.conditions.mass,
            g,
        })
    }

    pub fn function(&self) -> &CFunc {
        &self.g
    }

    pub fn mass(&self) -> Complex64 {
        self.mass
    }
}

/// A nonzero Kannappan solution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KannappanSolution {
    f: CFunc,
}

impl KannappanSolution {
    pub fn try_new(f: CFunc, inst: &Instance, tol: &Tolerances) -> Result<Self> {
        let r = residual_kannappan(&f, inst);
        if !r.below(tol.admissible) {
            return Err(Error::NotKannappanSolution {
                residual: r.max_abs,
                argmax: r.argmax,
            });
        }
        if f.is_zero(tol.admissible) {
            return Err(Error::ZeroFunction);
        }
        Ok(KannappanSolution { f })
    }

    pub fn function(&self) -> &CFunc {
        &self.f
    }
}

/// `g ↦ (∫g dμ)·g`.
pub fn kannappan_from_dalembert(
    g: &AdmissibleDalembert,
    inst: &Instance,
    tol: &Tolerances,
) -> Result<KannappanSolution> {
    KannappanSolution::try_new(g.function().scale(g.mass()), inst, tol)
}

/// `f ↦ ∫f(·t)dμ / ∫f dμ`.
pub fn dalembert_from_kannappan(
    f: &KannappanSolution,
    inst: &Instance,
    tol: &Tolerances,
) -> Result<AdmissibleDalembert> {
    let g = normalized_shift(f.function(), inst, tol.admissible)?;
    AdmissibleDalembert::try_new(g, inst, tol)
}

/// `x ↦ ∫f(xt)dμ / ∫f dμ`.
pub fn normalized_shift(f: &CFunc, inst: &Instance, tol: f64) -> Result<CFunc> {
    let denom = inst.mass(f);
    if denom.norm() <= tol {
        return Err(Error::ZeroDenominator {
            magnitude: denom.norm(),
        });
    }
    let values = (0..inst.order())
        .map(|x| inst.right_integral(f, x) / denom)
        .collect();
    CFunc::new(values)
}

/// One identity of a suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    /// Max-abs defect for equalities; a magnitude for nonvanishing checks.
    pub value: f64,
    pub argmax: Vec<usize>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn first_failure(&self) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| !c.holds)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn equality(name: &'static str, r: Residual, tol: f64) -> IdentityCheck {
    IdentityCheck {
        name,
        holds: r.max_abs < tol,
        value: r.max_abs,
        argmax: r.argmax,
    }
}

/// The six identities satisfied by a nonzero Van Vleck solution:
///
/// * `odd_under_tau`: `f(τ(x)) = −f(x)`
/// * `nonzero_mass`: `∫f dμ ≠ 0`
/// * `double_mass_vanishes`: `∫∫f(ts) = ∫∫f(τ(t)s) = 0`
/// * `left_tau_double`: `∫∫f(xτ(t)s) = f(x)∫f dμ`
/// * `plain_double`: `∫∫f(xts) = −f(x)∫f dμ`
/// * `tau_shift_invariant`: `∫f(τ(x)t) = ∫f(xt)`
pub fn van_vleck_identities(f: &CFunc, inst: &Instance, tol: &Tolerances) -> IdentityReport {
    let (s, tau, mu) = (inst.semigroup(), inst.tau(), inst.measure());
    let n = inst.order();
    let mass = inst.mass(f);
    let plain = mu.double_integral(s, tau, f, DoubleMode::Plain, None);
    let left_tau = mu.double_integral(s, tau, f, DoubleMode::LeftTau, None);
    let checks = vec![
        equality("odd_under_tau", max_over_x(n, |x| f[x] + f[tau.apply(x)]), tol.residual),
        IdentityCheck {
            name: "nonzero_mass",
            value: mass.norm(),
            argmax: Vec::new(),
            holds: mass.norm() > tol.admissible,
        },
        IdentityCheck {
            name: "double_mass_vanishes",
            value: plain.norm().max(left_tau.norm()),
            argmax: Vec::new(),
            holds: plain.norm().max(left_tau.norm()) < tol.residual,
        },
        equality(
            "left_tau_double",
            max_over_x(n, |x| {
                mu.double_integral(s, tau, f, DoubleMode::LeftTau, Some(x)) - f[x] * mass
            }),
            tol.residual,
        ),
        equality(
            "plain_double",
            max_over_x(n, |x| mu.double_integral(s, tau, f, DoubleMode::Plain, Some(x)) + f[x] * mass),
            tol.residual,
        ),
        equality(
            "tau_shift_invariant",
            max_over_x(n, |x| inst.right_integral(f, tau.apply(x)) - inst.right_integral(f, x)),
            tol.residual,
        ),
    ];
    IdentityReport { checks }
}

/// The identities satisfied by every Kannappan solution:
///
/// * `even_under_tau`: `f(τ(x)) = f(x)`
/// * `mass_vanishes_iff_zero`: `∫f dμ ≠ 0 ⇔ f ≠ 0`
/// * `left_tau_double`: `∫∫f(xτ(t)s) = f(x)∫f dμ`
/// * `plain_double`: `∫∫f(xts) = f(x)∫f dμ`
pub fn kannappan_identities(f: &CFunc, inst: &Instance, tol: &Tolerances) -> IdentityReport {
    let (s, tau, mu) = (inst.semigroup(), inst.tau(), inst.measure());
    let n = inst.order();
    let mass = inst.mass(f);
    let checks = vec![
        equality("even_under_tau", max_over_x(n, |x| f[x] - f[tau.apply(x)]), tol.residual),
        IdentityCheck {
            name: "mass_vanishes_iff_zero",
            value: mass.norm(),
            argmax: Vec::new(),
            holds: (mass.norm() > tol.admissible) == !f.is_zero(tol.admissible),
        },
        equality(
            "left_tau_double",
            max_over_x(n, |x| {
                mu.double_integral(s, tau, f, DoubleMode::LeftTau, Some(x)) - f[x] * mass
            }),
            tol.residual,
        ),
        equality(
            "plain_double",
            max_over_x(n, |x| mu.double_integral(s, tau, f, DoubleMode::Plain, Some(x)) - f[x] * mass),
            tol.residual,
        ),
    ];
    IdentityReport { checks }
}

/// Properties of the d'Alembert function attached to a Van Vleck solution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransformReport {
    pub dalembert_residual: Residual,
    pub abelian: bool,
    /// `∫∫g(ts)dμdμ`, nonzero
    #[serde(serialize_with = "crate::func::serialize_complex")]
    pub double_mass: Complex64,
    /// `∫g dμ`, zero
    #[serde(serialize_with = "crate::func::serialize_complex")]
    pub mass: Complex64,
    pub holds: bool,
}

/// `g(x) = ∫f(xt)dμ / ∫f dμ` for a nonzero Van Vleck solution `f`; `g` is
/// an abelian d'Alembert solution with `∫g dμ = 0` and `∫∫g(ts) ≠ 0`.
pub fn van_vleck_transform(f: &CFunc, inst: &Instance, tol: &Tolerances) -> Result<(CFunc, TransformReport)> {
    let g = normalized_shift(f, inst, tol.admissible)?;
    let (s, tau, mu) = (inst.semigroup(), inst.tau(), inst.measure());
    let dalembert_residual = residual_dalembert(&g, s, tau);
    let abelian = is_abelian_function(&g, s, 3);
    let double_mass = mu.double_integral(s, tau, &g, DoubleMode::Plain, None);
    let mass = inst.mass(&g);
    let holds = dalembert_residual.below(tol.residual)
        && abelian
        && double_mass.norm() > tol.admissible
        && mass.norm() < tol.residual;
    Ok((
        g,
        TransformReport {
            dalembert_residual,
            abelian,
            double_mass,
            mass,
            holds,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::enumerate_multiplicative;
    use crate::equations::residual_van_vleck;
    use crate::measure::CentralMeasure;
    use crate::semigroup::{cyclic_group, Involution};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn z4(points: &[(usize, Complex64)], inverse: bool) -> Instance {
        let s = cyclic_group(4);
        let tau = if inverse {
            Involution::group_inverse(&s).unwrap()
        } else {
            Involution::identity(&s).unwrap()
        };
        let mu = CentralMeasure::new(&s, points.iter().copied()).unwrap();
        Instance::new(s, tau, mu).unwrap()
    }

    fn one() -> Complex64 {
        c(1.0, 0.0)
    }

    fn funcs(r: &SolutionReport) -> Vec<CFunc> {
        r.functions().cloned().collect()
    }

    fn assert_set(got: &[CFunc], want: &[&[f64]]) {
        assert_eq!(got.len(), want.len(), "got {got:?}");
        for w in want {
            let w = CFunc::from_real(w);
            assert!(got.iter().any(|g| g.distance(&w) < 1e-12), "missing {w:?} in {got:?}");
        }
    }

    #[test]
    fn van_vleck_family_on_z4() {
        let tol = Tolerances::default();
        let chars = enumerate_multiplicative(&cyclic_group(4));
        let d1 = z4(&[(1, one())], true);
        let fam = van_vleck_family(&d1, &chars, &tol);
        assert_set(&funcs(&fam), &[&[0.0, 1.0, 0.0, -1.0]]);
        assert!(fam.max_residual() < 1e-12);

        assert!(van_vleck_family(&z4(&[(2, one())], true), &chars, &tol).is_empty());
        assert!(van_vleck_family(&z4(&[(1, one())], false), &chars, &tol).is_empty());
        assert!(van_vleck_family(&z4(&[(1, one()), (3, one())], true), &chars, &tol).is_empty());
    }

    #[test]
    fn chi_and_chi_tau_give_the_same_solution() {
        let inst = z4(&[(1, one())], true);
        let chi = CFunc::new((0..4).map(|x| Complex64::i().powu(x)).collect()).unwrap();
        let a = van_vleck_from_char(&chi, &inst);
        let b = van_vleck_from_char(&chi.compose_tau(inst.tau()), &inst);
        assert!(a.distance(&b) < 1e-12);
        assert!(a.distance(&CFunc::from_real(&[0.0, 1.0, 0.0, -1.0])) < 1e-15);
    }

    #[test]
    fn dirac_specialization() {
        let tol = Tolerances::default();
        let chars = enumerate_multiplicative(&cyclic_group(4));
        let d1 = z4(&[(1, one())], true);
        let general = van_vleck_family(&d1, &chars, &tol);
        let dirac = van_vleck_dirac_family(&d1, &chars, &tol).unwrap();
        assert_eq!(funcs(&general), funcs(&dirac));

        let z6 = cyclic_group(6);
        let inv = Involution::group_inverse(&z6).unwrap();
        let inst = Instance::new(z6.clone(), inv, CentralMeasure::dirac(&z6, 1).unwrap()).unwrap();
        let chars6 = enumerate_multiplicative(&z6);
        assert!(van_vleck_dirac_family(&inst, &chars6, &tol).unwrap().is_empty());

        let heavy = z4(&[(1, c(2.0, 0.0))], true);
        assert_eq!(van_vleck_dirac_family(&heavy, &chars, &tol), Err(Error::NotDirac));
    }

    #[test]
    fn kannappan_family_on_z4() {
        let tol = Tolerances::default();
        let chars = enumerate_multiplicative(&cyclic_group(4));
        let d2 = z4(&[(2, one())], true);
        let fam = kannappan_abelian_family(&d2, &chars, &tol);
        assert_set(
            &funcs(&fam),
            &[&[1.0; 4], &[-1.0, 0.0, 1.0, 0.0], &[1.0, -1.0, 1.0, -1.0]],
        );
        let sym = z4(&[(1, one()), (3, one())], true);
        assert_set(
            &funcs(&kannappan_abelian_family(&sym, &chars, &tol)),
            &[&[2.0; 4], &[-2.0, 2.0, -2.0, 2.0]],
        );
        // δ_e: the family is the abelian d'Alembert family
        let e = z4(&[(0, one())], true);
        let k = funcs(&kannappan_abelian_family(&e, &chars, &tol));
        let d = dalembert_abelian_functions(&e, &chars, tol.dedup);
        assert_eq!(k, d);
    }

    #[test]
    fn dalembert_family() {
        let tol = Tolerances::default();
        let inst = z4(&[(0, one())], true);
        let chars = enumerate_multiplicative(inst.semigroup());
        assert_set(
            &dalembert_abelian_functions(&inst, &chars, tol.dedup),
            &[&[1.0; 4], &[1.0, 0.0, -1.0, 0.0], &[1.0, -1.0, 1.0, -1.0]],
        );
        let z2 = cyclic_group(2);
        let id = Involution::identity(&z2).unwrap();
        let inst2 = Instance::new(z2.clone(), id, CentralMeasure::dirac(&z2, 0).unwrap()).unwrap();
        let chars2 = enumerate_multiplicative(&z2);
        assert_set(
            &dalembert_abelian_functions(&inst2, &chars2, tol.dedup),
            &[&[1.0, 1.0], &[1.0, -1.0]],
        );
        let z1 = cyclic_group(1);
        let inst1 = Instance::new(
            z1.clone(),
            Involution::identity(&z1).unwrap(),
            CentralMeasure::dirac(&z1, 0).unwrap(),
        )
        .unwrap();
        assert_set(
            &dalembert_abelian_functions(&inst1, &enumerate_multiplicative(&z1), tol.dedup),
            &[&[1.0]],
        );
    }

    #[test]
    fn correspondence_examples() {
        let tol = Tolerances::default();
        let d2 = z4(&[(2, one())], true);
        let cosine = CFunc::from_real(&[1.0, 0.0, -1.0, 0.0]);
        let a = AdmissibleDalembert::try_new(cosine.clone(), &d2, &tol).unwrap();
        assert_eq!(a.mass(), c(-1.0, 0.0));
        let k = kannappan_from_dalembert(&a, &d2, &tol).unwrap();
        assert!(k.function().distance(&CFunc::from_real(&[-1.0, 0.0, 1.0, 0.0])) < 1e-15);
        let back = dalembert_from_kannappan(&k, &d2, &tol).unwrap();
        assert!(back.function().distance(&cosine) < 1e-15);

        // g ≡ 1 with unit total weight
        let w = z4(&[(1, c(0.5, 0.5)), (2, c(0.5, -0.5))], true);
        let unit = AdmissibleDalembert::try_new(CFunc::from_real(&[1.0; 4]), &w, &tol).unwrap();
        let tg = kannappan_from_dalembert(&unit, &w, &tol).unwrap();
        assert!(tg.function().distance(&CFunc::from_real(&[1.0; 4])) < 1e-15);
    }

    #[test]
    fn zero_denominator() {
        let d1 = z4(&[(1, one())], true);
        // f(1) = 0 so the shift cannot be normalized
        let f = CFunc::from_real(&[1.0, 0.0, -1.0, 0.0]);
        assert!(matches!(normalized_shift(&f, &d1, 1e-9), Err(Error::ZeroDenominator { .. })));
    }

    #[test]
    fn set_a_conditions() {
        let tol = Tolerances::default();
        let d2 = z4(&[(2, one())], true);
        let cosine = CFunc::from_real(&[1.0, 0.0, -1.0, 0.0]);
        let report = set_a_membership(&cosine, &d2, &tol).unwrap();
        assert!(report.conditions_hold && report.member);
        let ones = CFunc::from_real(&[1.0; 4]);
        assert!(set_a_membership(&ones, &d2, &tol).unwrap().member);

        // With τ = id the cosine is not a d'Alembert solution; the raw
        // conditions disagree but the precondition rejects it first.
        let probe = z4(&[(1, one())], false);
        let raw = SetAConditions::evaluate(&cosine, &probe);
        assert_eq!(raw.truths(tol.admissible), [true, false, false]);
        assert_eq!(raw.factorized_shift.argmax, vec![1]);
        assert!(matches!(
            set_a_membership(&cosine, &probe, &tol),
            Err(Error::NotDalembertSolution { .. })
        ));
    }

    #[test]
    fn van_vleck_suite_on_sine() {
        let tol = Tolerances::default();
        let d1 = z4(&[(1, one())], true);
        let sine = CFunc::from_real(&[0.0, 1.0, 0.0, -1.0]);
        assert!(residual_van_vleck(&sine, &d1).below(1e-12));
        let report = van_vleck_identities(&sine, &d1, &tol);
        assert!(report.all_hold(), "{report:?}");
        assert_eq!(report.get("nonzero_mass").unwrap().value, 1.0);
        // componentwise: f(x+2) = −f(x) and f(1−x) = f(x+1)
        let (s, tau, mu) = (d1.semigroup(), d1.tau(), d1.measure());
        assert_eq!(mu.double_integral(s, tau, &sine, DoubleMode::Plain, Some(0)), -sine[0]);
        assert_eq!(d1.right_integral(&sine, tau.apply(1)), d1.right_integral(&sine, 1));

        let (g, tr) = van_vleck_transform(&sine, &d1, &tol).unwrap();
        assert!(g.distance(&CFunc::from_real(&[1.0, 0.0, -1.0, 0.0])) < 1e-15);
        assert_eq!(tr.mass, c(0.0, 0.0));
        assert_eq!(tr.double_mass, c(-1.0, 0.0));
        assert!(tr.holds);
    }

    #[test]
    fn kannappan_suite() {
        let tol = Tolerances::default();
        let d2 = z4(&[(2, one())], true);
        let f = CFunc::from_real(&[-1.0, 0.0, 1.0, 0.0]);
        let report = kannappan_identities(&f, &d2, &tol);
        assert!(report.all_hold());
        assert_eq!(report.get("mass_vanishes_iff_zero").unwrap().value, 1.0);
        assert!(kannappan_identities(&CFunc::zero(4), &d2, &tol).all_hold());

        let sym = z4(&[(1, one()), (3, one())], true);
        let two = CFunc::from_real(&[2.0; 4]);
        let (s, tau, mu) = (sym.semigroup(), sym.tau(), sym.measure());
        assert_eq!(mu.double_integral(s, tau, &two, DoubleMode::Plain, Some(0)), c(8.0, 0.0));
        assert!(kannappan_identities(&two, &sym, &tol).all_hold());
    }
}
