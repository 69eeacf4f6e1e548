//! Numerical laboratory for sharp Wehrl-type inequalities on weighted Bergman
//! and Hardy spaces of the unit disk.

pub mod disk;
pub mod error;
pub mod extremum;
pub mod functionals;
pub mod halfplane;
pub mod hardy;
pub mod operators;
pub mod quadrature;
pub mod random;
pub mod report;
pub mod rules;
pub mod stability;

pub use disk::{DiskPoint, SpaceParams, TaylorFunction};
pub use error::{Error, Result};
pub use report::CheckReport;
