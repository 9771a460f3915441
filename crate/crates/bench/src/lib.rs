//! Shared fixtures for the benchmark targets.

use reidemeister::morphism::from_generator_images;
use reidemeister::{BuiltinFamily, Endomorphism, FiniteGroup};

/// A fresh instance of the order-32 example group. Fresh instances bypass
/// the per-group character-table cache, so benchmarks measure real work.
pub fn order32() -> FiniteGroup {
    FiniteGroup::builtin(BuiltinFamily::Paper32).expect("builtin")
}

/// Its class-preserving non-inner automorphism x -> x, y -> x^6 y, z -> z.
pub fn order32_psi(group: &FiniteGroup) -> Endomorphism {
    from_generator_images(group, &[1, 8, 16], &[1, 14, 16]).expect("automorphism")
}

pub fn symmetric4() -> FiniteGroup {
    FiniteGroup::builtin(BuiltinFamily::Symmetric(4)).expect("builtin")
}

pub fn cyclic27() -> FiniteGroup {
    FiniteGroup::builtin(BuiltinFamily::Cyclic(27)).expect("builtin")
}
