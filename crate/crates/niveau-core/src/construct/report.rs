//! Report structures emitted by the construction pipeline.
//!
//! Everything here is plain data with a fixed field order, so serializing a
//! report twice under the same inputs and seed produces identical bytes; the
//! CLI adds its own volatile envelope (timestamps, wall-clock) around these.

use serde::{Deserialize, Serialize};

use crate::verify::Verdict;

/// How a verification stage covered its search space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Mode {
    /// Every pair enumerated; verdicts are proofs.
    Exhaustive,
    /// Randomized probes under a recorded seed; clean runs are evidence.
    Sampled,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Exhaustive => write!(f, "EXHAUSTIVE"),
            Mode::Sampled => write!(f, "SAMPLED"),
        }
    }
}

/// Parameter block of a pipeline run, fully resolved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsRecord {
    /// Slack below one half, as an exact rational string (`"1/10"`).
    pub epsilon: String,
    /// The density target `1/2 - epsilon`, exact rational string.
    pub target_density: String,
    pub levels: usize,
    pub k_seq: Vec<u64>,
    /// Margins `m_j = 3 k_j`.
    pub m_seq: Vec<u64>,
    pub n_seq: Vec<u32>,
    /// Ball specs whose union forms `S`, one canonical encode per level.
    pub s_balls: Vec<String>,
    /// Canonical encode of the full-chain niveau set `A`.
    pub a_spec: String,
    /// Canonical encode of the pushed superset used for the sum-route check.
    pub a_pushed_spec: String,
}

/// Density of one chain prefix, with the level of exactness achieved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelDensity {
    pub level: usize,
    /// Canonical encode of the prefix chain the density refers to.
    pub chain: String,
    /// Exact `count/order` string when the numbers stay readable
    /// (ambient scale <= 6); omitted above that purely for report size.
    pub density_rational: Option<String>,
    /// Decimal rendering; derived from the exact value when `exact`,
    /// otherwise from a certified lower bound.
    pub density_decimal: String,
    /// Certified lower bound on the density, exact rational string. Equals
    /// the true density when `exact`.
    pub density_lower_bound: String,
    /// Whether the density was computed with exact integer arithmetic
    /// (`true`) or bracketed by directed-rounding intervals (`false`).
    pub exact: bool,
    /// Whether the recorded bound certifies `density >= target`.
    pub meets_target: bool,
}

/// One verification stage and its verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedVerdict {
    pub name: String,
    pub verdict: Verdict,
}

/// Sampling configuration, present when any stage ran in sampled mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingRecord {
    pub seed: u64,
    pub trials: u64,
}

/// Consolidated output of the construction pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub schema: String,
    pub library_version: String,
    pub mode: Mode,
    pub params: ParamsRecord,
    pub level_densities: Vec<LevelDensity>,
    /// Cardinality of `A` as a digit string, recorded when the ambient
    /// group is small enough for the number to stay readable.
    pub a_count: Option<String>,
    /// Cardinality of `E = A + (A + ones)`; exactly `2 |A|` once the
    /// translate-disjointness stage holds.
    pub e_count: Option<String>,
    /// `2 * density(A)` as an exact rational string when affordable.
    pub e_density_rational: Option<String>,
    pub e_density_decimal: String,
    pub checks: Vec<NamedVerdict>,
    pub sampling: Option<SamplingRecord>,
    pub warnings: Vec<String>,
}

impl WitnessReport {
    pub const SCHEMA: &'static str = "niveau-witness/1";

    /// True when no stage refuted its claim.
    pub fn all_clean(&self) -> bool {
        use crate::verify::Status;
        self.checks.iter().all(|c| c.verdict.status != Status::Refuted)
    }

    /// True when every stage holds with a completed (exhaustive) search.
    pub fn all_proven(&self) -> bool {
        use crate::verify::Status;
        self.checks.iter().all(|c| c.verdict.status == Status::Proven)
    }
}

/// Consolidated output of the lemma battery.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: String,
    pub library_version: String,
    /// Largest ambient scale the battery enumerated.
    pub n_cap: u32,
    pub checks: Vec<NamedVerdict>,
    pub passed: usize,
    pub failed: usize,
}

impl SuiteReport {
    pub const SCHEMA: &'static str = "niveau-suite/1";

    pub fn all_proven(&self) -> bool {
        self.failed == 0
    }
}
