use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use super::{load, Exit, LoadedInstance, Outcome};
use crate::chars::enumerate_multiplicative;
use crate::equations::{is_abelian_function, EquationKind, Instance};
use crate::func::CFunc;
use crate::measure::Atom;
use crate::oracle::{match_solution_sets, oracle_solve, OracleConfig};
use crate::report::{Provenance, Solution, SolutionReport};
use crate::semigroup::Orbit;
use crate::theorems::{
    dalembert_abelian_family, kannappan_abelian_family, van_vleck_family, AdmissibleChar, Tolerances,
};

const TAU_INVARIANCE_TOL: f64 = 1e-12;

#[derive(Debug, Serialize)]
struct MeasureSummary<'a> {
    atoms: &'a [Atom],
    #[serde(serialize_with = "crate::func::serialize_complex")]
    total_weight: Complex64,
    tau_invariant: bool,
}

#[derive(Debug, Serialize)]
struct ValidateSummary<'a> {
    order: usize,
    commutative: bool,
    identity: Option<usize>,
    center: Vec<usize>,
    center_size: usize,
    involution: &'a [usize],
    involution_is_identity: bool,
    measure: MeasureSummary<'a>,
    orbits: Vec<Orbit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<&'a [String]>,
}

pub fn validate(path: &Path) -> Outcome {
    let loaded = match load(path) {
        Ok(l) => l,
        Err(msg) => return Outcome::validation(msg),
    };
    let inst = &loaded.instance;
    let (s, tau, mu) = (inst.semigroup(), inst.tau(), inst.measure());
    let center = s.center();
    let summary = ValidateSummary {
        order: s.order(),
        commutative: s.is_commutative(),
        identity: s.identity(),
        center_size: center.len(),
        center,
        involution: tau.as_slice(),
        involution_is_identity: tau.is_identity(),
        measure: MeasureSummary {
            atoms: mu.atoms(),
            total_weight: mu.total_weight(),
            tau_invariant: mu.is_tau_invariant(s, tau, TAU_INVARIANCE_TOL),
        },
        orbits: (0..s.order()).map(|x| s.orbit(x)).collect(),
        labels: loaded.labels.as_deref(),
    };
    Outcome::json(Exit::Ok, &summary, None)
}

#[derive(Debug, Serialize)]
struct CharEntry {
    k: usize,
    values: CFunc,
    #[serde(serialize_with = "crate::func::serialize_complex")]
    mass: Complex64,
    #[serde(serialize_with = "crate::func::serialize_complex")]
    tau_mass: Complex64,
    van_vleck_admissible: bool,
    kannappan_admissible: bool,
}

#[derive(Debug, Serialize)]
struct CharsReport<'a> {
    count: usize,
    characters: Vec<CharEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<&'a [String]>,
}

pub fn chars(path: &Path) -> Outcome {
    let loaded = match load(path) {
        Ok(l) => l,
        Err(msg) => return Outcome::validation(msg),
    };
    let inst = &loaded.instance;
    let tol = Tolerances::default();
    let characters: Vec<CharEntry> = enumerate_multiplicative(inst.semigroup())
        .iter()
        .enumerate()
        .map(|(k, chi)| {
            let a = AdmissibleChar::new(chi, inst);
            CharEntry {
                k,
                values: chi.clone(),
                mass: a.mass,
                tau_mass: a.tau_mass,
                van_vleck_admissible: a.is_van_vleck_admissible(tol.admissible),
                kannappan_admissible: a.is_kannappan_admissible(tol.admissible),
            }
        })
        .collect();
    let report = CharsReport {
        count: characters.len(),
        characters,
        labels: loaded.labels.as_deref(),
    };
    Outcome::json(Exit::Ok, &report, None)
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub oracle: bool,
    pub seed: u64,
    pub tol: f64,
    pub include_zero: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Match,
    Mismatch,
}

/// Comparison of a constructed family with the oracle's set.
///
/// Van Vleck solutions are all of the constructed form, so every unmatched
/// member on either side is a mismatch. The constructed Kannappan and
/// d'Alembert families hold only abelian solutions, so non-abelian oracle
/// solutions are listed separately and do not count against the match.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub tol: f64,
    pub unmatched_constructed: Vec<usize>,
    pub unmatched_oracle: Vec<usize>,
    pub oracle_only_nonabelian: Vec<usize>,
}

pub fn compare_with_oracle(
    kind: EquationKind,
    inst: &Instance,
    constructed: &SolutionReport,
    oracle: &SolutionReport,
    tol: f64,
) -> Verdict {
    let m = match_solution_sets(constructed, oracle, tol);
    let (nonabelian, unmatched_oracle): (Vec<usize>, Vec<usize>) =
        m.unmatched_right.iter().partition(|&&j| {
            kind != EquationKind::VanVleck
                && !is_abelian_function(&oracle.solutions[j].values, inst.semigroup(), 3)
        });
    let status = if m.unmatched_left.is_empty() && unmatched_oracle.is_empty() {
        Status::Match
    } else {
        Status::Mismatch
    };
    Verdict {
        status,
        tol,
        unmatched_constructed: m.unmatched_left,
        unmatched_oracle,
        oracle_only_nonabelian: nonabelian,
    }
}

/// The constructed family of `kind` on `inst`.
pub fn constructed_family(kind: EquationKind, inst: &Instance) -> SolutionReport {
    let chars = enumerate_multiplicative(inst.semigroup());
    let tol = Tolerances::default();
    match kind {
        EquationKind::VanVleck => van_vleck_family(inst, &chars, &tol),
        EquationKind::Kannappan => kannappan_abelian_family(inst, &chars, &tol),
        EquationKind::Dalembert => dalembert_abelian_family(inst, &chars, &tol),
    }
}

#[derive(Debug, Serialize)]
struct SolveReport<'a> {
    kind: EquationKind,
    constructed: SolutionReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<SolutionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_config: Option<OracleConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<&'a [String]>,
}

fn append_zero(report: &mut SolutionReport, inst: &Instance, provenance: Provenance) {
    let values = CFunc::zero(inst.order());
    report.solutions.push(Solution {
        residual: report.kind.residual(&values, inst).max_abs,
        values,
        provenance,
    });
}

pub fn solve(kind: EquationKind, path: &Path, opts: &SolveOptions) -> Outcome {
    if !(opts.tol > 0.0 && opts.tol.is_finite()) {
        return Outcome::validation(format!("--tol must be positive and finite, got {}", opts.tol));
    }
    let loaded = match load(path) {
        Ok(l) => l,
        Err(msg) => return Outcome::validation(msg),
    };
    let LoadedInstance { instance: inst, labels } = &loaded;
    let mut constructed = constructed_family(kind, inst);
    let (mut oracle, oracle_config, verdict) = if opts.oracle {
        let cfg = OracleConfig::for_instance(kind, inst, opts.seed);
        let report = oracle_solve(kind, inst, &cfg);
        let v = compare_with_oracle(kind, inst, &constructed, &report, opts.tol);
        (Some(report), Some(cfg), Some(v))
    } else {
        (None, None, None)
    };
    if opts.include_zero {
        append_zero(&mut constructed, inst, Provenance::Constructed);
        if let Some(o) = oracle.as_mut() {
            append_zero(o, inst, Provenance::Oracle);
        }
    }
    let exit = match &verdict {
        Some(v) if v.status == Status::Mismatch => Exit::Mismatch,
        _ => Exit::Ok,
    };
    let stderr = verdict.as_ref().filter(|v| v.status == Status::Mismatch).map(|v| {
        format!(
            "mismatch: constructed members {:?} and oracle members {:?} are unmatched",
            v.unmatched_constructed, v.unmatched_oracle
        )
    });
    let report = SolveReport {
        kind,
        constructed,
        oracle,
        oracle_config,
        verdict,
        labels: labels.as_deref(),
    };
    Outcome::json(exit, &report, stderr)
}
