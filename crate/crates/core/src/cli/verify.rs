//! Runs every identity suite on the constructed and oracle-found solutions
//! of one instance.

use serde::Serialize;

use super::commands::constructed_family;
use crate::equations::{EquationKind, Instance};
use crate::func::{dedup_canonical, CFunc};
use crate::oracle::{match_functions, oracle_solve, OracleConfig};
use crate::report::{Provenance, SolutionReport};
use crate::theorems::{
    dalembert_from_kannappan, kannappan_from_dalembert, kannappan_identities, set_a_membership,
    van_vleck_identities, van_vleck_transform, AdmissibleDalembert, IdentityReport, KannappanSolution,
    Tolerances,
};

/// Set distance for matching the image of the d'Alembert side with the
/// Kannappan solutions.
pub const MATCH_TOL: f64 = 1e-6;

/// One evaluated check on one solution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub check: String,
    pub provenance: Provenance,
    pub solution: usize,
    pub value: f64,
    pub argmax: Vec<usize>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Suite {
    pub name: &'static str,
    pub solutions: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// Where the first failing check happened.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub suite: &'static str,
    pub check: String,
    pub provenance: Provenance,
    pub solution: usize,
    pub value: f64,
    pub argmax: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub passed: bool,
    pub seed: u64,
    pub suites: Vec<Suite>,
    pub first_failure: Option<Failure>,
}

struct SuiteBuilder {
    name: &'static str,
    solutions: usize,
    checks: Vec<Check>,
}

impl SuiteBuilder {
    fn new(name: &'static str) -> Self {
        SuiteBuilder {
            name,
            solutions: 0,
            checks: Vec::new(),
        }
    }

    fn push(&mut self, check: &str, provenance: Provenance, solution: usize, value: f64, argmax: Vec<usize>, holds: bool) {
        self.checks.push(Check {
            check: check.to_string(),
            provenance,
            solution,
            value,
            argmax,
            holds,
        });
    }

    fn identities(&mut self, report: &IdentityReport, provenance: Provenance, solution: usize) {
        for c in &report.checks {
            self.push(c.name, provenance, solution, c.value, c.argmax.clone(), c.holds);
        }
    }

    fn finish(self) -> Suite {
        Suite {
            name: self.name,
            solutions: self.solutions,
            passed: self.checks.iter().all(|c| c.holds),
            checks: self.checks,
        }
    }
}

fn tagged(reports: &[&SolutionReport]) -> Vec<(Provenance, usize, CFunc)> {
    reports
        .iter()
        .flat_map(|r| {
            r.solutions
                .iter()
                .enumerate()
                .map(|(i, s)| (s.provenance, i, s.values.clone()))
        })
        .collect()
}

fn solve_both(kind: EquationKind, inst: &Instance, seed: u64) -> Vec<(Provenance, usize, CFunc)> {
    let constructed = constructed_family(kind, inst);
    let oracle = oracle_solve(kind, inst, &OracleConfig::for_instance(kind, inst, seed));
    tagged(&[&constructed, &oracle])
}

fn van_vleck_suite(inst: &Instance, sols: &[(Provenance, usize, CFunc)], tol: &Tolerances) -> Suite {
    let mut suite = SuiteBuilder::new("van_vleck");
    suite.solutions = sols.len();
    for (prov, i, f) in sols {
        suite.identities(&van_vleck_identities(f, inst, tol), *prov, *i);
        match van_vleck_transform(f, inst, tol) {
            Ok((_, t)) => suite.push(
                "shift_is_abelian_dalembert",
                *prov,
                *i,
                t.dalembert_residual.max_abs,
                t.dalembert_residual.argmax.clone(),
                t.holds,
            ),
            Err(e) => suite.push(&format!("shift_is_abelian_dalembert: {e}"), *prov, *i, f64::NAN, Vec::new(), false),
        }
    }
    suite.finish()
}

fn kannappan_suite(inst: &Instance, sols: &[(Provenance, usize, CFunc)], tol: &Tolerances) -> Suite {
    let mut suite = SuiteBuilder::new("kannappan");
    suite.solutions = sols.len();
    for (prov, i, f) in sols {
        suite.identities(&kannappan_identities(f, inst, tol), *prov, *i);
        let back = KannappanSolution::try_new(f.clone(), inst, tol).and_then(|k| {
            let g = dalembert_from_kannappan(&k, inst, tol)?;
            let f2 = kannappan_from_dalembert(&g, inst, tol)?;
            Ok(f2.function().distance(f))
        });
        match back {
            Ok(d) => suite.push("inverse_map_round_trip", *prov, *i, d, Vec::new(), d < tol.residual),
            Err(e) => suite.push(&format!("inverse_map_round_trip: {e}"), *prov, *i, f64::NAN, Vec::new(), false),
        }
    }
    suite.finish()
}

/// Equivalence of the three conditions on every d'Alembert solution, and
/// the forward round trip on those that qualify.
fn dalembert_suite(
    inst: &Instance,
    sols: &[(Provenance, usize, CFunc)],
    tol: &Tolerances,
) -> (Suite, Vec<CFunc>) {
    let mut suite = SuiteBuilder::new("dalembert_conditions");
    suite.solutions = sols.len();
    let mut admissible = Vec::new();
    for (prov, i, g) in sols {
        match set_a_membership(g, inst, tol) {
            Ok(r) => {
                let c = &r.conditions;
                let value = c.tau_shift.max_abs.max(c.factorized_shift.max_abs).max(c.double_mass);
                suite.push("conditions_agree", *prov, *i, value, c.factorized_shift.argmax.clone(), true);
                if r.member {
                    let trip = AdmissibleDalembert::try_new(g.clone(), inst, tol).and_then(|a| {
                        let f = kannappan_from_dalembert(&a, inst, tol)?;
                        let g2 = dalembert_from_kannappan(&f, inst, tol)?;
                        Ok((f.function().clone(), g2.function().distance(g)))
                    });
                    match trip {
                        Ok((f, d)) => {
                            suite.push("forward_map_round_trip", *prov, *i, d, Vec::new(), d < tol.residual);
                            admissible.push(f);
                        }
                        Err(e) => {
                            suite.push(&format!("forward_map_round_trip: {e}"), *prov, *i, f64::NAN, Vec::new(), false)
                        }
                    }
                }
            }
            Err(e) => suite.push(&format!("conditions_agree: {e}"), *prov, *i, f64::NAN, Vec::new(), false),
        }
    }
    (suite.finish(), admissible)
}

/// The image of the admissible d'Alembert solutions is exactly the set of
/// Kannappan solutions.
fn bijection_suite(image: Vec<CFunc>, kannappan: &[(Provenance, usize, CFunc)]) -> Suite {
    let mut suite = SuiteBuilder::new("bijection");
    let image = dedup_canonical(image, MATCH_TOL);
    let targets = dedup_canonical(kannappan.iter().map(|(_, _, f)| f.clone()).collect(), MATCH_TOL);
    suite.solutions = targets.len();
    let m = match_functions(&image, &targets, MATCH_TOL);
    let unmatched = m.unmatched_left.len() + m.unmatched_right.len();
    suite.push(
        "image_equals_kannappan_set",
        Provenance::Constructed,
        0,
        unmatched as f64,
        m.unmatched_right,
        unmatched == 0,
    );
    suite.finish()
}

/// Runs all suites with default tolerances and oracle seed `seed`.
pub fn verify_theorems(inst: &Instance, seed: u64) -> TheoremReport {
    let tol = Tolerances::default();
    let vv = solve_both(EquationKind::VanVleck, inst, seed);
    let k = solve_both(EquationKind::Kannappan, inst, seed);
    let d = solve_both(EquationKind::Dalembert, inst, seed);
    let (d_suite, image) = dalembert_suite(inst, &d, &tol);
    let suites = vec![
        van_vleck_suite(inst, &vv, &tol),
        kannappan_suite(inst, &k, &tol),
        d_suite,
        bijection_suite(image, &k),
    ];
    let first_failure = suites.iter().find_map(|s| {
        s.checks.iter().find(|c| !c.holds).map(|c| Failure {
            suite: s.name,
            check: c.check.clone(),
            provenance: c.provenance,
            solution: c.solution,
            value: c.value,
            argmax: c.argmax.clone(),
        })
    });
    TheoremReport {
        passed: first_failure.is_none(),
        seed,
        suites,
        first_failure,
    }
}
