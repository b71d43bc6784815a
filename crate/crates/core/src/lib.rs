//! Exact combinatorics of the symmetric group at desk scale: integer
//! partitions and conjugacy classes, irreducible character values through the
//! rim-hook recursion, class-algebra counting of commutators and generating
//! pairs, and exhaustive orbit enumeration of generating-tuple graphs.
//!
//! Everything integer-valued is computed in arbitrary precision; floating
//! point appears only in the two asymptotic estimates and in report-only
//! bound evaluations.
//!
//! Conventions fixed across the crate:
//! - products of permutations compose left: `(s t)(x) = s(t(x))`;
//! - the commutator is `[p, s] = p^-1 s^-1 p s`;
//! - partitions are ordered reverse-lexicographically, `(n)` first, `(1^n)`
//!   last, and character tables index rows (characters) and columns (classes)
//!   identically in that order.

pub mod characters;
pub mod counting;
pub mod error;
pub mod partitions;
pub mod perm;
pub mod tsystems;
pub mod util;

pub use characters::{character_value, dimension, CharacterTable, RimHookRemoval};
pub use counting::{CommutatorSweep, CountReport, TableProvider};
pub use error::{Error, Result};
pub use partitions::{
    class_descriptor, enumerate_partitions, partition_count, ClassDescriptor, Partition,
};
pub use perm::{
    generates_alternating, group_order, is_transitive, CycleDecomposition, Permutation,
};
pub use tsystems::{GeneratingTuple, GroupTag, HigmanInvariant, OrbitSummary};
