//! Finite commutative Krasner (m,n)-hyperrings and (m,n)-hypermodules as
//! explicit hyperoperation tables.
//!
//! The crate represents every structure by total tables over a small carrier
//! (bitmask element sets, sorted-tuple keys), verifies the defining axioms,
//! enumerates hyperideals and subhypermodules, classifies subhypermodules as
//! n-ary prime / classical prime / weakly classical prime / phi-classical
//! prime, builds quotients, products and homomorphisms, and runs a corpus of
//! structures through an executable suite of transport and characterization
//! properties.
//!
//! Everything is immutable after construction and every operation is a pure
//! function of its inputs, so values can be shared freely across threads.

pub mod classify;
pub mod construct;
pub mod harness;
pub mod parse;
pub mod report;
pub mod sets;
pub mod structure;
pub mod subobjects;
pub mod verify;

pub use classify::{PhiFunction, TorsionReading};
pub use parse::{parse_structure, ParseError, ParsedFile};
pub use sets::SmallSet;
pub use structure::{ActionTable, HyperOpTable, Hypermodule, Hyperring, StructureError};
pub use subobjects::{SubsetHandle, SubsetRole};
pub use verify::{verify_module_axioms, verify_ring_axioms, AxiomReport};
