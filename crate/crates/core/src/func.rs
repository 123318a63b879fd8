//! Complex-valued functions on a finite semigroup.

use std::ops::Index;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::semigroup::Involution;

/// Grid used for canonical ordering keys.
pub const CANONICAL_GRID: f64 = 1e-8;

/// A total function `S → ℂ` stored as one value per element.
/// Serialized as a list of `{"re", "im"}` objects.
#[derive(Debug, Clone, PartialEq)]
pub struct CFunc(Vec<Complex64>);

/// Serde form of one complex number.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
struct ReIm {
    re: f64,
    im: f64,
}

impl From<&Complex64> for ReIm {
    // adding 0.0 turns -0.0 into 0.0 so signed zeros never reach the JSON
    fn from(c: &Complex64) -> Self {
        ReIm {
            re: c.re + 0.0,
            im: c.im + 0.0,
        }
    }
}

/// `serialize_with` helper writing a complex number as `{"re", "im"}`.
pub fn serialize_complex<S: Serializer>(c: &Complex64, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ReIm::from(c).serialize(ser)
}

impl Serialize for CFunc {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_seq(self.0.iter().map(ReIm::from))
    }
}

impl<'de> Deserialize<'de> for CFunc {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let values: Vec<ReIm> = Vec::deserialize(de)?;
        CFunc::new(values.into_iter().map(|v| Complex64::new(v.re, v.im)).collect())
            .map_err(serde::de::Error::custom)
    }
}

impl CFunc {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if let Some(index) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::NonFiniteValue { index });
        }
        Ok(CFunc(values))
    }

    pub fn from_real(values: &[f64]) -> Self {
        CFunc(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn constant(n: usize, c: Complex64) -> Self {
        CFunc(vec![c; n])
    }

    pub fn zero(n: usize) -> Self {
        Self::constant(n, Complex64::new(0.0, 0.0))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.0
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    pub fn distance(&self, other: &CFunc) -> f64 {
        assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn map(&self, op: impl Fn(Complex64) -> Complex64) -> CFunc {
        CFunc(self.0.iter().map(|&v| op(v)).collect())
    }

    pub fn scale(&self, c: Complex64) -> CFunc {
        self.map(|v| v * c)
    }

    pub fn zip_with(&self, other: &CFunc, op: impl Fn(Complex64, Complex64) -> Complex64) -> CFunc {
        assert_eq!(self.len(), other.len());
        CFunc(self.0.iter().zip(&other.0).map(|(&a, &b)| op(a, b)).collect())
    }

    /// `χ ∘ τ`.
    pub fn compose_tau(&self, tau: &Involution) -> CFunc {
        assert_eq!(self.len(), tau.len());
        CFunc((0..self.len()).map(|x| self.0[tau.apply(x)]).collect())
    }

    /// Values rounded to [`CANONICAL_GRID`], as `(re, im)` per element.
    pub fn canonical_key(&self) -> Vec<(i64, i64)> {
        self.0
            .iter()
            .map(|v| (grid(v.re), grid(v.im)))
            .collect()
    }
}

fn grid(v: f64) -> i64 {
    (v / CANONICAL_GRID).round() as i64
}

impl Index<usize> for CFunc {
    type Output = Complex64;

    fn index(&self, x: usize) -> &Complex64 {
        &self.0[x]
    }
}

/// Sorts canonically, then drops later members within `eps` of an earlier
/// kept one, so the canonically smaller representative survives.
pub fn dedup_canonical(mut funcs: Vec<CFunc>, eps: f64) -> Vec<CFunc> {
    funcs.sort_by_cached_key(CFunc::canonical_key);
    let mut kept: Vec<CFunc> = Vec::with_capacity(funcs.len());
    for f in funcs {
        if kept.iter().all(|k| k.distance(&f) > eps) {
            kept.push(f);
        }
    }
    kept
}
