//! Circle-equivariant cohomology in the fixed-point model.
//!
//! Classes are tuples of restrictions to fixed points. Membership is decided
//! at the torus level (GKM congruences) and classes are then specialized to
//! the chosen circle, so every circle class here has a torus lift.

mod canonical;
mod class;
mod congruence;
mod kirwan;
mod localization;

pub use canonical::{
    canonical_classes, equivariant_symplectic_class, expand_in_basis, symplectic_torus_lift,
    CanonicalBasis, CanonicalClass,
};
pub use class::{is_member, CircleClass, TorusClass};
pub use congruence::torus_class_basis;
pub use kirwan::{kirwan_reduce, OrdinaryRing, RingLabel};
pub use localization::{abbv_integrate, EulerData};
