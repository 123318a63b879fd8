//! Complex measures supported on finitely many central points, and the
//! integral operators built from them.
//!
//! Every integral reduces to a finite weighted sum; atoms are iterated in
//! ascending point order so sums are bit-reproducible.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::func::CFunc;
use crate::semigroup::{FiniteSemigroup, Involution};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Atom {
    pub point: usize,
    #[serde(serialize_with = "crate::func::serialize_complex")]
    pub weight: Complex64,
}

/// `μ = Σ wᵢ δ_{zᵢ}` with every `zᵢ` central, points distinct and sorted,
/// weights nonzero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CentralMeasure {
    atoms: Vec<Atom>,
}

/// Argument pattern of [`CentralMeasure::double_integral`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DoubleMode {
    /// `∫∫ f(x t s) dμ(t) dμ(s)`
    Plain,
    /// `∫∫ f(x τ(t) s) dμ(t) dμ(s)`
    LeftTau,
}

impl CentralMeasure {
    /// Duplicate points are merged by summing their weights.
    pub fn new(s: &FiniteSemigroup, atoms: impl IntoIterator<Item = (usize, Complex64)>) -> Result<Self> {
        let mut merged: Vec<Atom> = Vec::new();
        for (point, weight) in atoms {
            if point >= s.order() {
                return Err(Error::PointOutOfRange {
                    point,
                    order: s.order(),
                });
            }
            if !(weight.re.is_finite() && weight.im.is_finite()) {
                return Err(Error::NonFiniteWeight { point });
            }
            if weight == Complex64::new(0.0, 0.0) {
                return Err(Error::ZeroWeight { point });
            }
            if !s.is_central(point) {
                return Err(Error::SupportNotCentral { point });
            }
            match merged.iter_mut().find(|a| a.point == point) {
                Some(a) => a.weight += weight,
                None => merged.push(Atom { point, weight }),
            }
        }
        if merged.is_empty() {
            return Err(Error::EmptyMeasure);
        }
        if let Some(a) = merged.iter().find(|a| a.weight == Complex64::new(0.0, 0.0)) {
            return Err(Error::ZeroWeight { point: a.point });
        }
        merged.sort_by_key(|a| a.point);
        Ok(CentralMeasure { atoms: merged })
    }

    /// Unit point mass `δ_z`.
    pub fn dirac(s: &FiniteSemigroup, z: usize) -> Result<Self> {
        Self::new(s, [(z, Complex64::new(1.0, 0.0))])
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn total_weight(&self) -> Complex64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    /// `Σ |wᵢ|`.
    pub fn total_variation(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight.norm()).sum()
    }

    pub fn is_unit_dirac(&self) -> Option<usize> {
        match self.atoms.as_slice() {
            [a] if a.weight == Complex64::new(1.0, 0.0) => Some(a.point),
            _ => None,
        }
    }

    /// `∫ f(x t) dμ(t) = Σ wᵢ f(x zᵢ)`.
    pub fn right_integral(&self, s: &FiniteSemigroup, f: &CFunc, x: usize) -> Complex64 {
        self.atoms
            .iter()
            .map(|a| a.weight * f[s.mul(x, a.point)])
            .sum()
    }

    /// `∫ f dμ = Σ wᵢ f(zᵢ)`.
    pub fn total_mass_integral(&self, f: &CFunc) -> Complex64 {
        self.atoms.iter().map(|a| a.weight * f[a.point]).sum()
    }

    /// Double integrals over `(t, s)`. With `x = None` the leading factor is
    /// omitted: `∫∫ f(ts)` or `∫∫ f(τ(t) s)`.
    pub fn double_integral(
        &self,
        s: &FiniteSemigroup,
        tau: &Involution,
        f: &CFunc,
        mode: DoubleMode,
        x: Option<usize>,
    ) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.atoms {
            let tp = match mode {
                DoubleMode::Plain => t.point,
                DoubleMode::LeftTau => tau.apply(t.point),
            };
            let head = match x {
                Some(x) => s.mul(x, tp),
                None => tp,
            };
            for u in &self.atoms {
                acc += t.weight * u.weight * f[s.mul(head, u.point)];
            }
        }
        acc
    }

    /// The image measure `τ(μ)` with atoms `(τ(zᵢ), wᵢ)`.
    pub fn pushforward_tau(&self, s: &FiniteSemigroup, tau: &Involution) -> Result<Self> {
        for a in &self.atoms {
            if !s.is_central(tau.apply(a.point)) {
                return Err(Error::SupportNotCentral {
                    point: tau.apply(a.point),
                });
            }
        }
        Self::new(s, self.atoms.iter().map(|a| (tau.apply(a.point), a.weight)))
    }

    /// Whether `τ(μ) = μ`, comparing merged atom sets within `tol`.
    pub fn is_tau_invariant(&self, s: &FiniteSemigroup, tau: &Involution, tol: f64) -> bool {
        match self.pushforward_tau(s, tau) {
            Ok(image) => self.approx_eq(&image, tol),
            Err(_) => false,
        }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.atoms.len() == other.atoms.len()
            && self
                .atoms
                .iter()
                .zip(&other.atoms)
                .all(|(a, b)| a.point == b.point && (a.weight - b.weight).norm() <= tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{cyclic_group, symmetric_group_3};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn construction_rules() {
        let z4 = cyclic_group(4);
        assert_eq!(CentralMeasure::new(&z4, []), Err(Error::EmptyMeasure));
        assert_eq!(
            CentralMeasure::new(&z4, [(1, c(0.0, 0.0))]),
            Err(Error::ZeroWeight { point: 1 })
        );
        assert_eq!(
            CentralMeasure::new(&z4, [(1, c(1.0, 0.0)), (1, c(-1.0, 0.0))]),
            Err(Error::ZeroWeight { point: 1 })
        );
        let merged = CentralMeasure::new(&z4, [(3, c(1.0, 0.0)), (1, c(1.0, 0.0)), (3, c(0.0, 1.0))]).unwrap();
        assert_eq!(merged.atoms().len(), 2);
        assert_eq!(merged.atoms()[0].point, 1);
        assert_eq!(merged.atoms()[1].weight, c(1.0, 1.0));
        assert_eq!(
            CentralMeasure::dirac(&symmetric_group_3(), 1),
            Err(Error::SupportNotCentral { point: 1 })
        );
        assert!(matches!(
            CentralMeasure::dirac(&z4, 4),
            Err(Error::PointOutOfRange { .. })
        ));
    }

    #[test]
    fn integrals_on_z4() {
        let z4 = cyclic_group(4);
        let tau = Involution::group_inverse(&z4).unwrap();
        let f = CFunc::from_real(&[0.0, 1.0, 0.0, -1.0]);
        let mu = CentralMeasure::new(&z4, [(1, c(1.0, 0.0)), (3, c(1.0, 0.0))]).unwrap();
        assert_eq!(mu.right_integral(&z4, &f, 0), c(0.0, 0.0));

        let chi = CFunc::new((0..4).map(|x| Complex64::i().powu(x)).collect()).unwrap();
        assert!(mu.total_mass_integral(&chi).norm() < 1e-15);

        let konst = CFunc::constant(4, c(2.0, -1.0));
        assert_eq!(mu.total_mass_integral(&konst), c(2.0, -1.0) * mu.total_weight());

        let d1 = CentralMeasure::dirac(&z4, 1).unwrap();
        for x in 0..4 {
            assert_eq!(d1.right_integral(&z4, &f, x), f[(x + 1) % 4]);
        }
        assert_eq!(d1.double_integral(&z4, &tau, &f, DoubleMode::Plain, Some(0)), f[2]);
        assert_eq!(d1.double_integral(&z4, &tau, &f, DoubleMode::Plain, None), f[2]);
        assert_eq!(d1.double_integral(&z4, &tau, &f, DoubleMode::LeftTau, None), f[0]);
        let zero = CFunc::zero(4);
        assert_eq!(mu.double_integral(&z4, &tau, &zero, DoubleMode::LeftTau, Some(3)), c(0.0, 0.0));
    }

    #[test]
    fn tau_invariance() {
        let z4 = cyclic_group(4);
        let tau = Involution::group_inverse(&z4).unwrap();
        let sym = CentralMeasure::new(&z4, [(1, c(1.0, 0.0)), (3, c(1.0, 0.0))]).unwrap();
        assert!(sym.is_tau_invariant(&z4, &tau, 1e-12));
        let d1 = CentralMeasure::dirac(&z4, 1).unwrap();
        assert_eq!(d1.pushforward_tau(&z4, &tau).unwrap(), CentralMeasure::dirac(&z4, 3).unwrap());
        assert!(!d1.is_tau_invariant(&z4, &tau, 1e-12));
        let id = Involution::identity(&z4).unwrap();
        assert!(d1.is_tau_invariant(&z4, &id, 0.0));
    }
}
