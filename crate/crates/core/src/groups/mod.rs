//! Grouplike groups and acting groups.
//!
//! [`FgAbelianGroup`] models the group `Γ` of grouplikes (finitely generated
//! abelian), with [`Character`]s into an exact field. [`FiniteGroup`] is a small
//! group given by its multiplication table, used for conjugacy data and as the
//! acting group of a color Lie superalgebra.

mod abelian;
mod finite;

pub use abelian::{character_kernel, character_order, Character, FgAbelianGroup, GammaElem, KernelInfo};
pub use finite::{
    find_abelian_finite_index, ConjugacyProfile, FiniteGroup, NeumannWiegold, DEFAULT_SUBGROUP_CAP,
};
