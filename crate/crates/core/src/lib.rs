//! Exact computations around central units of integral group rings of finite
//! groups: RS-elements, the cut property, central unit ranks, arithmetic in
//! `ZG`, symbolic decisions for infinite families, and executable suites that
//! replay the classification theorems over a catalog of finite groups.

pub mod catalog;
pub mod classes;
pub mod construct;
pub mod error;
pub mod families;
pub mod group;
pub mod hom;
pub mod lattice;
pub mod linalg;
pub mod numtheory;
pub mod perm;
pub mod ring;
pub mod rs;
pub mod subgroup;
pub mod verify;

pub use catalog::{catalog, GroupSpec};
pub use classes::ClassData;
pub use error::{Error, Result};
pub use group::{group_from_generators, FiniteGroup};
pub use hom::GroupHom;
pub use perm::Permutation;
pub use ring::{GroupRing, GroupRingElement};
pub use rs::{Verdict, Witness};
pub use subgroup::Subgroup;
