//! Finite multiplicative lattices, lattice modules over them, and
//! exhaustive checkers for the element classes studied on such modules.
//!
//! Everything is table-driven: a lattice or module is a finite carrier of
//! dense ids with order, multiplication and action tables. Tables are
//! validated once on construction, after which every operation is a lookup.

pub mod classify;
pub mod format;
pub mod gen;
pub mod harness;
pub mod lattice;
pub mod module;
mod order;
mod violation;

pub use classify::{Classification, Classifier, Flag, Flags, Verdict, Witness};
pub use lattice::{validate_lattice, LElem, LElementFlags, LatticeTables, MultiplicativeLattice};
pub use module::{
    validate_module, ElementError, LatticeModule, MElem, ModuleTables, ModuleValidation,
};
pub use order::{closure_from_pairs, FiniteLattice, OrderTables};
pub use violation::{Axiom, ValidationError, ValidationMode, Violation};
