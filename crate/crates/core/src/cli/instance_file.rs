//! The JSON instance file format.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::equations::Instance;
use crate::measure::CentralMeasure;
use crate::semigroup::{FiniteSemigroup, Involution};

/// One atom `w·δ_point` of the measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomSpec {
    pub point: usize,
    pub re: f64,
    pub im: f64,
}

/// `cayley` is row-major with `cayley[x·n + y] = x·y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub order: usize,
    pub cayley: Vec<usize>,
    pub involution: Vec<usize>,
    pub measure: Vec<AtomSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// A validated instance with its optional element labels.
#[derive(Debug, Clone)]
pub struct LoadedInstance {
    pub instance: Instance,
    pub labels: Option<Vec<String>>,
}

impl InstanceSpec {
    pub fn from_instance(inst: &Instance) -> Self {
        InstanceSpec {
            order: inst.order(),
            cayley: inst.semigroup().flat_table().to_vec(),
            involution: inst.tau().as_slice().to_vec(),
            measure: inst
                .measure()
                .atoms()
                .iter()
                .map(|a| AtomSpec {
                    point: a.point,
                    re: a.weight.re,
                    im: a.weight.im,
                })
                .collect(),
            labels: None,
        }
    }

    /// Runs every semigroup, involution and measure validation, in that
    /// order, and reports the first violation.
    pub fn validate(self) -> Result<LoadedInstance, String> {
        let s = FiniteSemigroup::from_flat(self.order, self.cayley).map_err(|e| e.to_string())?;
        let tau = Involution::new(&s, self.involution).map_err(|e| e.to_string())?;
        let atoms = self.measure.iter().map(|a| (a.point, Complex64::new(a.re, a.im)));
        let mu = CentralMeasure::new(&s, atoms).map_err(|e| e.to_string())?;
        if let Some(labels) = &self.labels {
            if labels.len() != self.order {
                return Err(format!(
                    "labels: expected {} labels, found {}",
                    self.order,
                    labels.len()
                ));
            }
        }
        let instance = Instance::new(s, tau, mu).map_err(|e| e.to_string())?;
        Ok(LoadedInstance {
            instance,
            labels: self.labels,
        })
    }
}

/// Reads, parses and validates an instance file.
pub fn load(path: &Path) -> Result<LoadedInstance, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let spec: InstanceSpec =
        serde_json::from_str(&text).map_err(|e| format!("malformed instance file {}: {e}", path.display()))?;
    spec.validate()
}
