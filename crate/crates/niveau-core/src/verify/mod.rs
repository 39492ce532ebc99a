//! Verdicts, Cayley graphs, chromatic lower bounds and difference-set checks.
//!
//! Everything here decides a concrete finite claim and hands back a
//! [`Verdict`]: `PROVEN`, `REFUTED` with a replayable witness, or
//! `INCONCLUSIVE` when a deterministic node budget ran out. Budgets are
//! counted in search nodes, never wall-clock, so identical inputs give
//! identical verdicts on any machine.

pub mod cayley;
pub mod checks;
pub mod coloring;
pub mod verdict;

pub use cayley::{CayleyGraph, ExplicitGraph};
pub use checks::{
    difference_avoids, is_independent_set, kneser_graph, max_avoiding_density,
    rejection_sampler, sampled_difference_check, verify_lovasz, verify_poincare,
    verify_translate_claim, DensityInterval,
};
pub use coloring::{
    chromatic_exceeds, chromatic_exceeds_explicit, replay_explicit_witness, MAX_COLORS,
};
pub use verdict::{Budget, BudgetSpent, Status, Verdict, Witness};
