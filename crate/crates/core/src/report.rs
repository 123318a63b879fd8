//! Solution reports shared by the constructive families and the oracle.

use serde::Serialize;

use crate::equations::{EquationKind, Instance};
use crate::func::{dedup_canonical, CFunc};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Constructed,
    Oracle,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Provenance::Constructed => "constructed",
            Provenance::Oracle => "oracle",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Solution {
    pub values: CFunc,
    /// Max-abs equation residual, as evaluated by [`crate::equations`].
    pub residual: f64,
    pub provenance: Provenance,
}

/// A deduplicated, canonically ordered list of nonzero solutions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionReport {
    pub kind: EquationKind,
    pub solutions: Vec<Solution>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl SolutionReport {
    /// Drops near-zero functions, deduplicates at `eps` keeping the
    /// canonically smaller member, and evaluates residuals.
    pub fn constructed(kind: EquationKind, inst: &Instance, funcs: Vec<CFunc>, eps: f64) -> Self {
        let nonzero = funcs.into_iter().filter(|f| !f.is_zero(eps)).collect();
        let solutions = dedup_canonical(nonzero, eps)
            .into_iter()
            .map(|values| Solution {
                residual: kind.residual(&values, inst).max_abs,
                values,
                provenance: Provenance::Constructed,
            })
            .collect();
        SolutionReport {
            kind,
            solutions,
            warnings: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn functions(&self) -> impl Iterator<Item = &CFunc> {
        self.solutions.iter().map(|s| &s.values)
    }

    pub fn max_residual(&self) -> f64 {
        self.solutions.iter().map(|s| s.residual).fold(0.0, f64::max)
    }
}
