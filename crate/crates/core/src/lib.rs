//! Finite foundation of the entity-relationship-attribute data model.
//!
//! A [`Structure`] joins an entity classification (entity types classifying
//! keys) and an attribute classification (sorts classifying data values)
//! through a list designation: every entity type has a signature (a list of
//! sorts), every key has a tuple (a list of values), and a key of type `r`
//! must carry a tuple that is classified by the signature of `r`.
//!
//! All carriers are finite and names are opaque strings ordered
//! lexicographically, so every law in this crate is decided exhaustively and
//! every report comes out in a canonical order.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod classification;
pub mod error;
pub mod fibration;
pub mod interpretation;
pub mod linearization;
pub mod list;
pub mod name;
pub mod schema;
pub mod structure;
pub mod verdict;

#[cfg(any(test, feature = "testing"))]
pub mod testing;

pub use classification::{Classification, Infomorphism};
pub use error::Error;
pub use list::{IndexedList, SignatureMorphism};
pub use name::{Name, NameMap, NameSet};
pub use schema::{Schema, SchemaMorphism, Universe, UniverseMorphism};
pub use structure::{Structure, StructureMorphism};
pub use verdict::Verdict;
