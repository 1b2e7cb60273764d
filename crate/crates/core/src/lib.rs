//! Weak-order lattices of pattern-avoiding permutations and their Möbius
//! numbers.
//!
//! The crate builds three lattice families (123-132-213-avoiders with an
//! adjoined `0̂`, 321-avoiders with an adjoined `1̂`, and words over `{1, 2}`
//! with an adjoined `0̂`), computes Möbius numbers both from the defining
//! recurrence and as signed counts of NBB bases, and checks the structural
//! facts that tie the families to modified Fibonacci polynomials.

mod bitset;

pub mod families;
pub mod fibpoly;
pub mod nbb;
pub mod permutation;
pub mod poset;
pub mod verify;

pub use bitset::BitSet;
pub use families::{CompositionWord, Family, FamilyError, FamilyLattice};
pub use fibpoly::{fib_poly, h_poly, sparse_sets, IntPolynomial, SparseSet};
pub use nbb::{AtomOrder, NbbBase, NbbError};
pub use permutation::{InversionSet, Pattern, Permutation, PermutationError};
pub use poset::{as_lattice, BoundedLattice, FinitePoset, PosetError};
