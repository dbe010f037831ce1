//! Word maps on finite permutation groups.
//!
//! The crate evaluates free-group words on tuples of permutations, computes
//! word images exhaustively or one orbit of the automorphism action at a
//! time, checks closure of subsets under automorphisms and endomorphisms,
//! and finds chirality witnesses. It also carries two end-to-end checks:
//! a word over M₁₁ whose image contains an order-11 element but not its
//! inverse ([`theorem2`]), and an endomorphism-closed subset of C₁₂ that is
//! no word image ([`abelian::run_theorem3`]).

pub mod abelian;
pub mod action;
pub mod catalog;
pub mod error;
pub mod group;
pub mod imaging;
pub mod perm;
pub mod theorem2;
pub mod word;

pub use action::{count_dn, tuple_orbits, ActionScope, AutAction, TupleDomain, TupleOrbits};
pub use catalog::{build, build_named, verify_simplicity, CatalogGroup, GroupSpec};
pub use error::{Error, ErrorKind, Result};
pub use group::{generate, ConjugacyClasses, FiniteGroup};
pub use perm::Permutation;
pub use word::{power_case_table, ExponentVector, Slp, Word};
