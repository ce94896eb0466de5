//! Finite permutation groups, wreath products in product action, Cartesian
//! decompositions, and diagonal groups, with exhaustive checkers for the
//! embedding results that tie them together.
//!
//! Everything acts on the right and all point sets are `0..n`.

pub mod cartdec;
pub mod cli;
pub mod diagonal;
pub mod embedding;
pub mod error;
pub mod perm;
pub mod verify;
pub mod wreath;

pub use cartdec::{natural_cartesian_decomposition, CartesianDecomposition, MixedRadix, Partition};
pub use diagonal::{automorphism_group, AutomorphismSet, CayleyTable, Family, FamilySet};
pub use embedding::{is_permutational_isomorphism, wreath_embedding, EmbeddingWitness};
pub use error::{Error, Result};
pub use perm::{right_regular_representation, PermGroup, Permutation};
pub use wreath::{WreathContext, WreathElement};
