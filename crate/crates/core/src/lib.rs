//! Higher extensions, higher central extensions and Hopf formulae, computed
//! concretely for finite groups.

pub mod category;
pub mod cube;
pub mod dsl;
pub mod birkhoff;
pub mod error;
pub mod harness;
pub mod higher;
pub mod homology;
pub mod hopf;
pub mod group;
pub mod hom;
pub mod iso;
pub mod library;
pub mod limits;
pub mod perm;

pub use error::{Error, Result};
pub use group::{FinGroup, Subgroup};
pub use hom::GroupHom;
pub use perm::Perm;
