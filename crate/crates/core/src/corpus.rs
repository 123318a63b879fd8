//! The fixed grid of small instances used by the test suites.

use num_complex::Complex64;

use crate::equations::Instance;
use crate::measure::CentralMeasure;
use crate::semigroup::{
    cyclic_group, cyclic_semigroup, direct_product, symmetric_group_3, FiniteSemigroup, Involution,
};

/// The named semigroups of the corpus, smallest first.
pub fn semigroups() -> Vec<(String, FiniteSemigroup)> {
    let z = cyclic_group;
    vec![
        ("Z2".into(), z(2)),
        ("Z3".into(), z(3)),
        ("Z4".into(), z(4)),
        ("Z6".into(), z(6)),
        ("Z2xZ2".into(), direct_product(&z(2), &z(2))),
        ("Z2xZ4".into(), direct_product(&z(2), &z(4))),
        ("S3".into(), symmetric_group_3()),
        ("C(2,1)".into(), cyclic_semigroup(2, 1)),
        ("C(2,2)".into(), cyclic_semigroup(2, 2)),
    ]
}

/// Group inversion and the identity map, where each is an involution.
/// When the two coincide only `inverse` is kept.
pub fn involutions(s: &FiniteSemigroup) -> Vec<(String, Involution)> {
    let mut out: Vec<(String, Involution)> = Vec::new();
    if let Some(inv) = Involution::group_inverse(s) {
        out.push(("inverse".into(), inv));
    }
    if let Ok(id) = Involution::identity(s) {
        if out.iter().all(|(_, t)| t != &id) {
            out.push(("identity".into(), id));
        }
    }
    out
}

/// `δ_z` for every central `z`, then `δ_z + δ_w` and `(1+i)δ_z + 2δ_w` for
/// every pair `z < w` of central points.
pub fn measures(s: &FiniteSemigroup) -> Vec<(String, CentralMeasure)> {
    let center = s.center();
    let one = Complex64::new(1.0, 0.0);
    let mut out = Vec::new();
    for &z in &center {
        out.push((format!("d{z}"), CentralMeasure::dirac(s, z).expect("central point")));
    }
    for (i, &z) in center.iter().enumerate() {
        for &w in &center[i + 1..] {
            out.push((
                format!("d{z}+d{w}"),
                CentralMeasure::new(s, [(z, one), (w, one)]).expect("central points"),
            ));
            out.push((
                format!("(1+i)d{z}+2d{w}"),
                CentralMeasure::new(s, [(z, Complex64::new(1.0, 1.0)), (w, 2.0 * one)])
                    .expect("central points"),
            ));
        }
    }
    out
}

/// One instance of the grid with its label.
#[derive(Debug, Clone)]
pub struct GridInstance {
    pub label: String,
    pub instance: Instance,
}

/// semigroups × involutions × measures.
pub fn grid() -> Vec<GridInstance> {
    let mut out = Vec::new();
    for (name, s) in semigroups() {
        for (tau_name, tau) in involutions(&s) {
            for (mu_name, mu) in measures(&s) {
                out.push(GridInstance {
                    label: format!("{name}/{tau_name}/{mu_name}"),
                    instance: Instance::new(s.clone(), tau.clone(), mu).expect("corpus instance"),
                });
            }
        }
    }
    out
}
