//! Exhaustive computation with finite rings and finite left modules.
//!
//! Rings and modules are given by explicit presentations (cyclic additive
//! orders plus structure constants or action matrices). The submodule
//! lattice of a module is enumerated completely, after which radicals,
//! socles, the singular submodule, delta-small submodules, supplements and
//! delta-supplements are decided by direct quantification over the lattice.

pub mod algebra;
pub mod bitset;
pub mod corpus;
pub mod error;
pub mod lattice;
pub mod predicates;
pub mod report;
pub mod structure;
pub mod suite;

pub use algebra::{Bounds, Element, ModuleRep, RingTable};
pub use bitset::ElemSet;
pub use error::{Error, Result};
pub use lattice::{NodeId, Submodule, SubmoduleLattice};
