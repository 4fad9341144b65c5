//! Exact computations on the joint distribution of the descent set and the
//! connectivity set of permutations.
//!
//! For `w = a_1 a_2 ... a_n` the descent set is `D(w) = {i : a_i > a_{i+1}}`
//! and the connectivity set is `C(w) = {i : a_j < a_k for all j <= i < k}`.
//! The crate builds the subset-indexed matrices `M`, `D`, `Gamma`, `A`, `B`
//! (and their inversion-weighted q-analogues) both by brute-force enumeration
//! and from closed forms, together with the closed-form inverses, so every
//! closed form can be checked against an enumeration.
//!
//! All arithmetic is exact: integers are arbitrary precision and q-analogues
//! live in [`IntPolynomial`] / [`LaurentPolynomial`].

pub mod config;
pub mod duality;
pub mod error;
pub mod identities;
pub mod matrix;
pub mod perm;
pub mod ring;
pub mod series_check;
pub mod subset;

pub use config::Caps;
pub use error::{Error, Result};
pub use matrix::SubsetMatrix;
pub use perm::{MultisetWord, Permutation};
pub use ring::{ExactInt, IntPolynomial, LaurentPolynomial, Ring, RingTag, TruncatedSeries};
pub use subset::{Composition, SubsetMask};
