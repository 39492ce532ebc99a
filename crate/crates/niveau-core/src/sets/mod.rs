//! Distinguished subsets of `G_p^(n)`: Hamming balls, niveau sets (with
//! nested chains of scales), their exact counts and densities, plus
//! materialized bitmap sets and black-box predicates.

mod hamming;
mod niveau;
mod store;

pub use hamming::HammingBallSpec;
pub use niveau::{in_block_extension, ChainLink, NiveauSampler, NiveauSpec};
pub use store::{materialize, FiniteSet, SetPredicate};
