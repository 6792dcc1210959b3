//! Enumeration, random generation and the property suites.

pub mod enumerate;
pub mod random;
pub mod suites;

pub use enumerate::{enumerate_double_extensions, enumerate_extensions_from, enumerate_normal_subgroups};
pub use random::{random_cube, RandomCube};
pub use suites::{run_property_suite, PropertyRunReport};
