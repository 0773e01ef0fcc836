//! Exact equivariant cohomology of Hamiltonian circle actions with isolated
//! fixed points, computed from GKM fixed-point data, and a certifying check
//! of the hard Lefschetz property.
//!
//! The pipeline runs in this order:
//!
//! 1. [`gkm::parse_gkm`] validates a fixed-point document;
//! 2. [`gkm::restrict_to_circle`] picks a circle and derives indices and levels;
//! 3. [`equivariant::canonical_classes`] builds the canonical basis;
//! 4. [`equivariant::kirwan_reduce`] passes to ordinary cohomology;
//! 5. [`lefschetz::hard_lefschetz_check`] decides the property.
//!
//! The guide under `book/` walks through each step; its snippets are compiled
//! as doc-tests of this crate.

pub mod catalog;
pub mod equivariant;
pub mod error;
pub mod exact;
pub mod gkm;
pub mod lefschetz;
pub mod render;
pub mod report;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/gkm-data.md")]
    mod gkm_data {}
    #[doc = include_str!("../../../book/src/canonical-classes.md")]
    mod canonical_classes {}
    #[doc = include_str!("../../../book/src/localization.md")]
    mod localization {}
    #[doc = include_str!("../../../book/src/hard-lefschetz.md")]
    mod hard_lefschetz {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
    #[doc = include_str!("../../../book/src/catalog.md")]
    mod catalog {}
}
