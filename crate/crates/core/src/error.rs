use thiserror::Error;

/// Everything that can go wrong while building or checking an instance.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cayley table is not square: expected {expected} entries, found {found}")]
    NotSquare { expected: usize, found: usize },

    #[error("empty semigroup: order must be positive")]
    EmptySemigroup,

    #[error("entry out of range: table[{row}][{col}] = {value} but order is {order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },

    #[error("not associative: ({x}*{y})*{z} != {x}*({y}*{z})")]
    NotAssociative { x: usize, y: usize, z: usize },

    #[error("involution has length {found}, semigroup order is {order}")]
    LengthMismatch { found: usize, order: usize },

    #[error("not a permutation: value {value} repeated or out of range")]
    NotPermutation { value: usize },

    #[error("not an anti-homomorphism: tau({x}*{y}) != tau({y})*tau({x})")]
    NotAntiHomomorphism { x: usize, y: usize },

    #[error("not involutive: tau(tau({x})) != {x}")]
    NotInvolutive { x: usize },

    #[error("measure has no atoms")]
    EmptyMeasure,

    #[error("measure point {point} is out of range for order {order}")]
    PointOutOfRange { point: usize, order: usize },

    #[error("zero weight at point {point}")]
    ZeroWeight { point: usize },

    #[error("non-finite weight at point {point}")]
    NonFiniteWeight { point: usize },

    #[error("support not central: point {point} does not commute with every element")]
    SupportNotCentral { point: usize },

    #[error("function has {found} values, semigroup order is {order}")]
    FunctionLength { found: usize, order: usize },

    #[error("function value at {index} is not finite")]
    NonFiniteValue { index: usize },

    #[error("measure is not a unit point mass")]
    NotDirac,

    #[error("zero denominator: |integral| = {magnitude:e} is below tolerance")]
    ZeroDenominator { magnitude: f64 },

    #[error("not a d'Alembert solution: residual {residual:e} at {argmax:?}")]
    NotDalembertSolution { residual: f64, argmax: Vec<usize> },

    #[error("not a Kannappan solution: residual {residual:e} at {argmax:?}")]
    NotKannappanSolution { residual: f64, argmax: Vec<usize> },

    #[error("function is identically zero")]
    ZeroFunction,

    #[error("integral of g vanishes (|mass| = {magnitude:e})")]
    VanishingMass { magnitude: f64 },

    #[error(
        "equivalence violation: tau-symmetric shift = {tau_shift}, factorized shift = {factorized}, \
         double mass = {double_mass}"
    )]
    EquivalenceViolation {
        tau_shift: bool,
        factorized: bool,
        double_mass: bool,
    },

    #[error("set-A conditions fail: {0}")]
    NotInSetA(String),
}

pub type Result<T> = std::result::Result<T, Error>;
