//! Solution sets of the integral Van Vleck, integral Kannappan and
//! d'Alembert functional equations on finite semigroups with involution and
//! a complex measure supported on central points.

pub mod chars;
pub mod cli;
pub mod corpus;
pub mod equations;
pub mod error;
pub mod func;
pub mod measure;
pub mod oracle;
pub mod report;
pub mod semigroup;
pub mod theorems;

pub use error::{Error, Result};
pub use func::CFunc;
