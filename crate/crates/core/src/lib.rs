//! Twisted conjugacy for finite groups.
//!
//! Given endomorphisms `phi`, `psi` of a finite group `G`, two elements
//! `x`, `y` are (phi, psi)-conjugate when `x = phi(z) y psi(z)^-1` for some
//! `z`. The number of equivalence classes is the Reidemeister number
//! `R(phi, psi)`. This crate computes the class partition and the
//! Reidemeister number by several independent routes (direct orbits,
//! Burnside counting, an exact class-sum formula, and irreducible
//! characters computed as exact cyclotomic numbers), together with the
//! spectra, congruences, and structural invariants that relate them.

pub mod chartab;
pub mod congruence;
pub mod error;
pub mod group;
pub mod morphism;
pub mod twisted;

pub use error::{Error, Result};
pub use group::{
    BuiltinFamily, CentralQuotient, ConjugacyClassTable, FiniteGroup, Subgroup, SubgroupView,
    DEFAULT_ORDER_CAP,
};
pub use morphism::{Endomorphism, MorphismClassification};
pub use twisted::{ReidemeisterMethod, SpectrumResult, SpectrumScope, TwistedClassPartition};
