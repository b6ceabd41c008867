//! Decides F-purity and F-liftability of isolated hypersurface and
//! complete-intersection singularities over prime fields, with certificates.

pub mod catalog;
pub mod criteria;
pub mod error;
pub mod fp_poly;
pub mod frobsplit;
pub mod groebner;
pub mod sweep;

pub use error::{Error, Result};
