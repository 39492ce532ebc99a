//! Evidence probes for ball recurrence over odd-prime groups.
//!
//! Whether every translate of the one-centered balls stays chromatically
//! recurrent over `G_p` for odd `p` is an open question.  These probes
//! gather finite evidence: each one fixes a single ball `V(n,k)`, translates
//! it by `g`, symmetrizes the connection, and asks whether the chromatic
//! number of the induced Cayley graph exceeds a color count.  A `REFUTED`
//! row (a proper coloring exists) is evidence about that single ball at that
//! scale, never a resolution of the general question — the question speaks
//! about infinite unions of balls, which no finite probe can decide.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{check_prime, enumerate_group, group_order_under, GroupElement, RandomStream};
use crate::sets::{materialize, HammingBallSpec, SetPredicate};
use crate::verify::{chromatic_exceeds, Budget, CayleyGraph, Status, Verdict};

/// Which translates to probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TranslateRange {
    /// Every element of the group, in canonical index order.
    All,
    /// A fixed number of seeded random draws.
    Sample(u64),
}

/// Largest group for which a full translate scan is attempted; beyond it a
/// requested full scan degrades to seeded sampling with a warning.
pub const MAX_FULL_SCAN: u64 = 1 << 12;

/// Number of sampled translates substituted for an infeasible full scan.
pub const FORCED_SAMPLE: u64 = 20;

/// Outcome of one translate probe.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbeResult {
    pub p: u8,
    pub n: u32,
    pub k: u64,
    pub k_colors: u16,
    /// Canonical encoding of the translate `g`.
    pub translate: String,
    pub verdict: Verdict,
}

/// A batch of probes with aggregate counts and any forced-mode warnings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbeBatch {
    pub rows: Vec<ProbeResult>,
    pub proven: usize,
    pub refuted: usize,
    pub inconclusive: usize,
    pub warnings: Vec<String>,
}

/// Chromatic probe of a single translate `g + V(n,k)`, at any prime.
///
/// The connection set is the symmetrized, zero-free translate of the ball
/// around the all-ones element; the verdict is [`chromatic_exceeds`] at
/// `k_colors`.  This is the code path shared with the modulus-2 translate
/// verifier, so the two can be cross-checked.
pub fn probe_translate(
    p: u8,
    n: u32,
    k: u64,
    k_colors: u16,
    g: &GroupElement,
    budget: &Budget,
) -> Result<Verdict> {
    if g.p() != p || g.n() != n {
        return Err(Error::InvalidParameter(format!(
            "translate lives in p={}, n={}, probe asked for p={p}, n={n}",
            g.p(),
            g.n()
        )));
    }
    let center = g.add(&GroupElement::ones(p, n)?)?;
    let ball = HammingBallSpec::around(center, n, k)?;
    let conn = materialize(&SetPredicate::from_ball(&ball), budget.max_vertices)?;
    let graph = CayleyGraph::new(&conn)?;
    let verdict = chromatic_exceeds(&graph, k_colors, budget)?;
    Ok(verdict.with_param("translate", g.encode()))
}

/// Probes every requested translate of `V(n,k)` over an odd-prime group.
///
/// A full scan is honored only while the group order stays at or below
/// [`MAX_FULL_SCAN`]; past that the batch degrades to [`FORCED_SAMPLE`]
/// seeded draws and records a warning.  A group too large for even a single
/// probe graph (`order > budget.max_vertices`) is a hard error.
pub fn probe_odd_prime(
    p: u8,
    n: u32,
    k: u64,
    k_colors: u16,
    g_range: TranslateRange,
    budget: &Budget,
    rng: &mut RandomStream,
) -> Result<ProbeBatch> {
    check_prime(p)?;
    if p == 2 {
        return Err(Error::InvalidParameter(
            "translate probes target odd primes; the modulus-2 statement has its own verifier"
                .into(),
        ));
    }
    let order = group_order_under(p, n, budget.max_vertices)?;
    let mut warnings = Vec::new();
    let translates: Vec<GroupElement> = match g_range {
        TranslateRange::All => {
            if order <= MAX_FULL_SCAN {
                enumerate_group(p, n, budget.max_vertices)?.collect()
            } else {
                warnings.push(format!(
                    "a full scan of {order} translates exceeds the scan cap {MAX_FULL_SCAN}; \
                     probing {FORCED_SAMPLE} seeded translates instead"
                ));
                draw_translates(p, n, FORCED_SAMPLE, rng)?
            }
        }
        TranslateRange::Sample(count) => draw_translates(p, n, count, rng)?,
    };
    let mut rows = Vec::with_capacity(translates.len());
    let (mut proven, mut refuted, mut inconclusive) = (0, 0, 0);
    for g in &translates {
        let verdict = probe_translate(p, n, k, k_colors, g, budget)?;
        match verdict.status {
            Status::Proven => proven += 1,
            Status::Refuted => refuted += 1,
            Status::Inconclusive => inconclusive += 1,
        }
        rows.push(ProbeResult {
            p,
            n,
            k,
            k_colors,
            translate: g.encode(),
            verdict,
        });
    }
    Ok(ProbeBatch {
        rows,
        proven,
        refuted,
        inconclusive,
        warnings,
    })
}

fn draw_translates(
    p: u8,
    n: u32,
    count: u64,
    rng: &mut RandomStream,
) -> Result<Vec<GroupElement>> {
    (0..count).map(|_| rng.element(p, n)).collect()
}
