//! Exact combinatorics over the groups `G_p^(n) = F_p^{Omega_n}`, where
//! `Omega_n` is the set of binary strings of length `n`.
//!
//! An element is a function from the `2^n` strings ("cylinders") to residues
//! mod a prime `p`. The crate provides:
//!
//! * [`group`] — elements, cylinder indexing, embeddings between scales,
//!   restriction to a cylinder, enumeration and seeded sampling;
//! * [`sets`] — Hamming balls around a centre, niveau sets (elements whose
//!   level count at a residue clears `half + margin`, possibly nested through
//!   a chain of scales), exact counting, densities and materialized bitmaps;
//! * [`verify`] — difference-set avoidance checks and chromatic lower bounds
//!   for Cayley graphs on these groups, with explicit verdicts that are
//!   either `PROVEN`, `REFUTED` (with a witness) or `INCONCLUSIVE` (budget);
//! * [`construct`] — the full witness pipeline that picks scales for a target
//!   density, builds the avoiding pair `(A, S)` and re-verifies the claimed
//!   identities, plus an exhaustive small-scale lemma battery;
//! * [`explore`] — evidence-gathering probes for odd primes, where the
//!   corresponding recurrence question is open.
//!
//! All counts are exact big integers and all densities exact rationals;
//! floating point appears only in human-readable annotations. Randomness is
//! always drawn from a seeded, platform-independent stream so that every
//! sampled verdict can be reproduced byte for byte.

pub mod bits;
pub mod counting;
pub mod error;
pub mod explore;
pub mod group;
pub mod sets;
pub mod verify;

pub mod construct;

pub use error::{Error, Result};
pub use group::{BinaryString, GroupElement, RandomStream};
pub use sets::{FiniteSet, HammingBallSpec, NiveauSpec, SetPredicate};
pub use verify::{Budget, Status, Verdict, Witness};

/// Default ceiling on `p^(2^n)` for full enumeration / materialization.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

/// Version string stamped into every serialized verdict and report.
pub fn library_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}
