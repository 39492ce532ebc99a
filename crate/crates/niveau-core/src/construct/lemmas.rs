//! Exhaustive structural checks for niveau sets at desk scales.
//!
//! Every check here decides a closed claim by complete enumeration or exact
//! arithmetic and reports the outcome as a [`Verdict`]; [`lemma_suite`]
//! bundles the whole battery into a [`SuiteReport`].  The claims are the
//! building blocks the witness pipeline in the parent module relies on:
//! shift bijections between residue classes, stability of niveau sets under
//! small Hamming balls, disjointness and monotonicity in the margin, growth
//! of nested chains, and agreement of the closed-form counts with brute
//! enumeration.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::counting::{binomial, pow2};
use crate::error::{Error, Result};
use crate::group::{enumerate_group, group_order, GroupElement};
use crate::sets::{
    in_block_extension, materialize, ChainLink, FiniteSet, HammingBallSpec, NiveauSpec,
    SetPredicate,
};
use crate::verify::{BudgetSpent, Status, Verdict, Witness};
use crate::DEFAULT_ENUMERATION_CAP;

use super::one_half;
use super::report::{NamedVerdict, SuiteReport};

/// Memoized materializations shared across the battery.
struct Battery {
    cap: u64,
    sets: HashMap<String, Arc<FiniteSet>>,
    balls: HashMap<(u32, u64, u32), Arc<Vec<GroupElement>>>,
}

impl Battery {
    fn new(cap: u64) -> Self {
        Battery {
            cap,
            sets: HashMap::new(),
            balls: HashMap::new(),
        }
    }

    fn set(&mut self, spec: &NiveauSpec) -> Result<Arc<FiniteSet>> {
        let key = spec.encode();
        if let Some(s) = self.sets.get(&key) {
            return Ok(s.clone());
        }
        let set = Arc::new(materialize(&SetPredicate::from_niveau(spec), self.cap)?);
        self.sets.insert(key, set.clone());
        Ok(set)
    }

    /// Elements of the origin-centered radius-`k` ball at scale `n`, embedded
    /// into scale `ambient`.
    fn ball(&mut self, n: u32, k: u64, ambient: u32) -> Result<Arc<Vec<GroupElement>>> {
        let key = (n, k, ambient);
        if let Some(b) = self.balls.get(&key) {
            return Ok(b.clone());
        }
        let spec = HammingBallSpec::origin(2, n, k)?;
        let mat = materialize(&SetPredicate::from_ball(&spec), self.cap)?;
        let mut out = Vec::with_capacity(mat.cardinality() as usize);
        for u in mat.iter_elements() {
            out.push(u.embed(ambient)?);
        }
        let out = Arc::new(out);
        self.balls.insert(key, out.clone());
        Ok(out)
    }
}

fn check(name: impl Into<String>, verdict: Verdict) -> NamedVerdict {
    NamedVerdict {
        name: name.into(),
        verdict,
    }
}

fn exhaustive_pass(instances: u64, work: u64, oracle: &str) -> Verdict {
    Verdict::proven()
        .with_param("instances", instances)
        .with_param("elements_checked", work)
        .with_param("oracle", oracle)
        .with_spent(BudgetSpent {
            nodes: work,
            complete: true,
        })
}

fn fail_note(text: String, work: u64) -> Verdict {
    Verdict::refuted()
        .with_witness(Witness::Note { text })
        .with_spent(BudgetSpent {
            nodes: work,
            complete: true,
        })
}

/// Strictly increasing scale shapes with at least two levels and top scale
/// `<= n_cap`, in deterministic order.
fn chain_shapes(n_cap: u32) -> Vec<Vec<u32>> {
    let scales: Vec<u32> = (1..=n_cap).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << scales.len()) {
        if mask.count_ones() < 2 {
            continue;
        }
        let shape: Vec<u32> = scales
            .iter()
            .copied()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, s)| s)
            .collect();
        out.push(shape);
    }
    out.sort();
    out
}

/// Smallest margin at which a fresh level of width `delta` scales is
/// vacuously empty: the level count can never clear `half + margin`.
fn margin_bound(delta: u32) -> u64 {
    1u64 << (delta - 1)
}

fn deltas(scales: &[u32]) -> Vec<u32> {
    let mut prev = 0;
    scales
        .iter()
        .map(|&s| {
            let d = s - prev;
            prev = s;
            d
        })
        .collect()
}

/// Cartesian product of margin sequences, each level ranging over
/// `lo..=min(margin_bound(delta), hi)`.
fn margin_combos(scales: &[u32], lo: u64, hi: u64) -> Vec<Vec<u64>> {
    let mut combos: Vec<Vec<u64>> = vec![Vec::new()];
    for d in deltas(scales) {
        let top = margin_bound(d).min(hi);
        let mut next = Vec::new();
        for c in &combos {
            for m in lo..=top {
                let mut row = c.clone();
                row.push(m);
                next.push(row);
            }
        }
        combos = next;
    }
    combos
}

fn chain_spec(i: u8, scales: &[u32], margins: &[u64]) -> Result<NiveauSpec> {
    let links = scales
        .iter()
        .zip(margins)
        .map(|(&n, &m)| ChainLink::new(n, m))
        .collect();
    NiveauSpec::new(2, i, links)
}

fn prefix_spec(i: u8, scales: &[u32], margins: &[u64], levels: usize) -> Result<NiveauSpec> {
    chain_spec(i, &scales[..levels], &margins[..levels])
}

/// Same chain with the margin at 0-based level `j` replaced by `m_j`.
fn modified_spec(i: u8, scales: &[u32], margins: &[u64], j: usize, m_j: u64) -> Result<NiveauSpec> {
    let mut out = margins.to_vec();
    out[j] = m_j;
    chain_spec(i, scales, &out)
}

/// Checks `f(g)` lands in `target` for every `g` in `src`; reports the work
/// done and the first violating element index, if any.
fn image_in(
    src: &FiniteSet,
    target: &NiveauSpec,
    f: impl Fn(&GroupElement) -> Result<GroupElement>,
) -> Result<(u64, Option<u64>)> {
    let mut work = 0u64;
    for g in src.iter_elements() {
        work += 1;
        if !target.contains(&f(&g)?)? {
            return Ok((work, Some(g.canonical_index()?)));
        }
    }
    Ok((work, None))
}

/// Checks `g (+ offset) + u` lands in `target` for every `g` in `src` and
/// every `u` in `shifts`; reports the first violating pair of indices.
fn sums_in(
    src: &FiniteSet,
    shifts: &[GroupElement],
    offset: Option<&GroupElement>,
    target: &NiveauSpec,
) -> Result<(u64, Option<(u64, u64)>)> {
    let mut work = 0u64;
    for g in src.iter_elements() {
        let base = match offset {
            Some(o) => g.add(o)?,
            None => g,
        };
        for (ui, u) in shifts.iter().enumerate() {
            work += 1;
            if !target.contains(&base.add(u)?)? {
                return Ok((work, Some((base.canonical_index()?, ui as u64))));
            }
        }
    }
    Ok((work, None))
}

/// Checks `src` and `other` share no element.
fn disjoint_from(src: &FiniteSet, other: &NiveauSpec) -> Result<(u64, Option<u64>)> {
    let mut work = 0u64;
    for g in src.iter_elements() {
        work += 1;
        if other.contains(&g)? {
            return Ok((work, Some(g.canonical_index()?)));
        }
    }
    Ok((work, None))
}

/// Adding the all-ones element maps each single-link residue class onto the
/// next one, bijectively.
fn single_link_shift_bijection(bat: &mut Battery, n_cap: u32) -> Result<NamedVerdict> {
    let name = "single_link_shift_bijection";
    let mut instances = 0u64;
    let mut work = 0u64;
    for n in 1..=n_cap {
        let ones = GroupElement::ones(2, n)?;
        for m in 1..=(1u64 << (n - 1)) {
            for i in 0..2u8 {
                instances += 1;
                let src_spec = NiveauSpec::single(2, i, n, m)?;
                let dst_spec = NiveauSpec::single(2, (i + 1) % 2, n, m)?;
                let src = bat.set(&src_spec)?;
                let dst = bat.set(&dst_spec)?;
                if src.cardinality() != dst.cardinality() {
                    return Ok(check(
                        name,
                        fail_note(
                            format!(
                                "residue classes at scale {n}, margin {m} have sizes {} and {}",
                                src.cardinality(),
                                dst.cardinality()
                            ),
                            work,
                        ),
                    ));
                }
                let (w, viol) = image_in(&src, &dst_spec, |g| g.add(&ones))?;
                work += w;
                if let Some(gi) = viol {
                    return Ok(check(
                        name,
                        fail_note(
                            format!(
                                "element #{gi} of {} leaves {} after the all-ones shift",
                                src_spec.encode(),
                                dst_spec.encode()
                            ),
                            work,
                        ),
                    ));
                }
            }
        }
    }
    Ok(check(
        name,
        exhaustive_pass(instances, work, "exhaustive enumeration with cardinality match"),
    ))
}

/// Adding a radius-`k` ball around the origin keeps a single-link class
/// inside the class with margin lowered by `k`.
fn single_link_ball_addition(bat: &mut Battery, n_cap: u32) -> Result<NamedVerdict> {
    let name = "single_link_ball_addition";
    let mut instances = 0u64;
    let mut vacuous = 0u64;
    let mut work = 0u64;
    for n in 1..=n_cap {
        for m in 1..=(1u64 << (n - 1)) {
            for k in 0..m {
                for i in 0..2u8 {
                    instances += 1;
                    let src_spec = NiveauSpec::single(2, i, n, m)?;
                    let src = bat.set(&src_spec)?;
                    if src.cardinality() == 0 {
                        vacuous += 1;
                        continue;
                    }
                    let ball = bat.ball(n, k, n)?;
                    let target = NiveauSpec::single(2, i, n, m - k)?;
                    let (w, viol) = sums_in(&src, &ball, None, &target)?;
                    work += w;
                    if let Some((gi, ui)) = viol {
                        return Ok(check(
                            name,
                            fail_note(
                                format!(
                                    "element #{gi} of {} plus ball element #{ui} (radius {k}) \
                                     leaves {}",
                                    src_spec.encode(),
                                    target.encode()
                                ),
                                work,
                            ),
                        ));
                    }
                }
            }
        }
    }
    Ok(check(
        name,
        exhaustive_pass(instances, work, "exhaustive pair enumeration")
            .with_param("vacuous_instances", vacuous),
    ))
}

/// Ball addition combined with the all-ones shift lands in the next residue
/// class with margin lowered by `k`.
fn single_link_shifted_ball_addition(bat: &mut Battery, n_cap: u32) -> Result<NamedVerdict> {
    let name = "single_link_shifted_ball_addition";
    let mut instances = 0u64;
    let mut vacuous = 0u64;
    let mut work = 0u64;
    for n in 1..=n_cap {
        let ones = GroupElement::ones(2, n)?;
        for m in 1..=(1u64 << (n - 1)) {
            for k in 0..m {
                for i in 0..2u8 {
                    instances += 1;
                    let src_spec = NiveauSpec::single(2, i, n, m)?;
                    let src = bat.set(&src_spec)?;
                    if src.cardinality() == 0 {
                        vacuous += 1;
                        continue;
                    }
                    let ball = bat.ball(n, k, n)?;
                    let target = NiveauSpec::single(2, (i + 1) % 2, n, m - k)?;
                    let (w, viol) = sums_in(&src, &ball, Some(&ones), &target)?;
                    work += w;
                    if let Some((gi, ui)) = viol {
                        return Ok(check(
                            name,
                            fail_note(
                                format!(
                                    "shifted element #{gi} from {} plus ball element #{ui} \
                                     (radius {k}) leaves {}",
                                    src_spec.encode(),
                                    target.encode()
                                ),
                                work,
                            ),
                        ));
                    }
                }
            }
        }
    }
    Ok(check(
        name,
        exhaustive_pass(instances, work, "exhaustive pair enumeration")
            .with_param("vacuous_instances", vacuous),
    ))
}

/// A single-link class never meets the next residue class, even after the
/// margin of the latter drops by any `k < m`.
fn single_link_margin_disjointness(bat: &mut Battery, n_cap: u32) -> Result<NamedVerdict> {
    let name = "single_link_margin_disjointness";
    let mut instances = 0u64;
    let mut work = 0u64;
    for n in 1..=n_cap {
        for m in 1..=(1u64 << (n - 1)) {
            for k in 0..m {
                for i in 0..2u8 {
                    instances += 1;
                    let src_spec = NiveauSpec::single(2, i, n, m)?;
                    let src = bat.set(&src_spec)?;
                    let other = NiveauSpec::single(2, (i + 1) % 2, n, m - k)?;
                    let (w, viol) = disjoint_from(&src, &other)?;
                    work += w;
                    if let Some(gi) = viol {
                        return Ok(check(
                            name,
                            fail_note(
                                format!(
                                    "element #{gi} lies in both {} and {}",
                                    src_spec.encode(),
                                    other.encode()
                                ),
                                work,
                            ),
                        ));
                    }
                }
            }
        }
    }
    Ok(check(
        name,
        exhaustive_pass(instances, work, "exhaustive enumeration"),
    ))
}

/// Lowering the margin of a single link only enlarges the class.
fn single_link_margin_monotonicity(bat: &mut Battery, n_cap: u32) -> Result<NamedVerdict> {
    let name = "single_link_margin_monotonicity";
    let mut instances = 0u64;
    let mut work = 0u64;
    for n in 1..=n_cap {
        for m in 1..=(1u64 << (n - 1)) {
            for m_low in 1..m {
                for i in 0..2u8 {
                    instances += 1;
                    let src_spec = NiveauSpec::single(2, i, n, m)?;
                    let src = bat.set(&src_spec)?;
                    let target = NiveauSpec::single(2, i, n, m_low)?;
                    let (w, viol) = image_in(&src, &target, |g| Ok(g.clone()))?;
                    work += w;
                    if let Some(gi) = viol {
                        return Ok(check(
                            name,
                            fail_note(
                                format!(
                                    "element #{gi} of {} is missing from the wider class {}",
                                    src_spec.encode(),
                                    target.encode()
                                ),
                                work,
                            ),
                        ));
                    }
                }
            }
        }
    }
    Ok(check(
        name,
        exhaustive_pass(instances, work, "exhaustive enumeration"),
    ))
}

/// The all-ones shift is a bijection between consecutive residue classes of
/// every nested chain.
fn chain_shift_bijection(bat: &mut Battery, n_cap: u32) -> Result<NamedVerdict> {
    let name = "chain_shift_bijection";
    let mut instances = 0u64;
    let mut work = 0u64;
    for shape in chain_shapes(n_cap) {
        let ones = GroupElement::ones(2, *shape.last().unwrap())?;
        for margins in margin_combos(&shape, 1, 3) {
            for i in 0..2u8 {
                instances += 1;
                let src_spec = chain_spec(i, &shape, &margins)?;
                let dst_spec = chain_spec((i + 1) % 2, &shape, &margins)?;
                let src = bat.set(&src_spec)?;
                let dst = bat.set(&dst_spec)?;
                if src.cardinality() != dst.cardinality() {
                    return Ok(check(
                        name,
                        fail_note(
                            format!(
                                "residue classes of {} and {} have sizes {} and {}",
                                src_spec.encode(),
                                dst_spec.encode(),
                                src.cardinality(),
                                dst.cardinality()
                            ),
                            work,
                        ),
                    ));
                }
                let (w, viol) = image_in(&src, &dst_spec, |g| g.add(&ones))?;
                work += w;
                if let Some(gi) = viol {
                    return Ok(check(
                        name,
                        fail_note(
                            format!(
                                "element #{gi} of {} leaves {} after the all-ones shift",
                                src_spec.encode(),
                                dst_spec.encode()
                            ),
                            work,
                        ),
                    ));
                }
            }
        }
    }
    Ok(check(
        name,
        exhaustive_pass(instances, work, "exhaustive enumeration with cardinality match"),
    ))
}

/// Adding a ball drawn at the scale of level `j` keeps a chain class inside
/// the chain whose margin at `j` alone is lowered by the radius.
fn chain_ball_addition(bat: &mut Battery, n_cap: u32) -> Result<NamedVerdict> {
    let name = "chain_ball_addition";
    let mut instances = 0u64;
    let mut vacuous = 0u64;
    let mut work = 0u64;
    for shape in chain_shapes(n_cap) {
        let ambient = *shape.last().unwrap();
        for margins in margin_combos(&shape, 1, 3) {
            for i in 0..2u8 {
                let src_spec = chain_spec(i, &shape, &margins)?;
                let src = bat.set(&src_spec)?;
                for j in 0..shape.len() {
                    for k in 0..margins[j] {
                        instances += 1;
                        if src.cardinality() == 0 {
                            vacuous += 1;
                            continue;
                        }
                        let ball = bat.ball(shape[j], k, ambient)?;
                        let target = modified_spec(i, &shape, &margins, j, margins[j] - k)?;
                        let (w, viol) = sums_in(&src, &ball, None, &target)?;
                        work += w;
                        if let Some((gi, ui)) = viol {
                            return Ok(check(
                                name,
                                fail_note(
                                    format!(
                                        "element #{gi} of {} plus ball element #{ui} (scale {}, \
                                         radius {k}) leaves {}",
                                        src_spec.encode(),
                                        shape[j],
                                        target.encode()
                                    ),
                                    work,
                                ),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(check(
        name,
        exhaustive_pass(instances, work, "exhaustive pair enumeration")
            .with_param("vacuous_instances", vacuous),
    ))
}

/// The shifted variant of [`chain_ball_addition`]: ball plus all-ones lands
/// in the next residue class with the margin at `j` lowered.
fn chain_shifted_ball_addition(bat: &mut Battery, n_cap: u32) -> Result<NamedVerdict> {
    let name = "chain_shifted_ball_addition";
    let mut instances = 0u64;
    let mut vacuous = 0u64;
    let mut work = 0u64;
    for shape in chain_shapes(n_cap) {
        let ambient = *shape.last().unwrap();
        let ones = GroupElement::ones(2, ambient)?;
        for margins in margin_combos(&shape, 1, 3) {
            for i in 0..2u8 {
                let src_spec = chain_spec(i, &shape, &margins)?;
                let src = bat.set(&src_spec)?;
                for j in 0..shape.len() {
                    for k in 0..margins[j] {
                        instances += 1;
                        if src.cardinality() == 0 {
                            vacuous += 1;
                            continue;
                        }
                        let ball = bat.ball(shape[j], k, ambient)?;
                        let target =
                            modified_spec((i + 1) % 2, &shape, &margins, j, margins[j] - k)?;
                        let (w, viol) = sums_in(&src, &ball, Some(&ones), &target)?;
                        work += w;
                        if let Some((gi, ui)) = viol {
                            return Ok(check(
                                name,
                                fail_note(
                                    format!(
                                        "shifted element #{gi} from {} plus ball element #{ui} \
                                         (scale {}, radius {k}) leaves {}",
                                        src_spec.encode(),
                                        shape[j],
                                        target.encode()
                                    ),
                                    work,
                                ),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(check(
        name,
        exhaustive_pass(instances, work, "exhaustive pair enumeration")
            .with_param("vacuous_instances", vacuous),
    ))
}

/// A chain class never meets the next residue class, even after the margin
/// at a single level drops by `k < m_j`.
fn chain_margin_disjointness(bat: &mut Battery, n_cap: u32) -> Result<NamedVerdict> {
    let name = "chain_margin_disjointness";
    let mut instances = 0u64;
    let mut work = 0u64;
    for shape in chain_shapes(n_cap) {
        for margins in margin_combos(&shape, 1, 3) {
            for i in 0..2u8 {
                let src_spec = chain_spec(i, &shape, &margins)?;
                let src = bat.set(&src_spec)?;
                for j in 0..shape.len() {
                    for k in 0..margins[j] {
                        instances += 1;
                        let other =
                            modified_spec((i + 1) % 2, &shape, &margins, j, margins[j] - k)?;
                        let (w, viol) = disjoint_from(&src, &other)?;
                        work += w;
                        if let Some(gi) = viol {
                            return Ok(check(
                                name,
                                fail_note(
                                    format!(
                                        "element #{gi} lies in both {} and {}",
                                        src_spec.encode(),
                                        other.encode()
                                    ),
                                    work,
                                ),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(check(
        name,
        exhaustive_pass(instances, work, "exhaustive enumeration"),
    ))
}

/// Lowering the margin at any single level only enlarges a chain class.
fn chain_margin_monotonicity(bat: &mut Battery, n_cap: u32) -> Result<NamedVerdict> {
    let name = "chain_margin_monotonicity";
    let mut instances = 0u64;
    let mut work = 0u64;
    for shape in chain_shapes(n_cap) {
        for margins in margin_combos(&shape, 1, 3) {
            for i in 0..2u8 {
                let src_spec = chain_spec(i, &shape, &margins)?;
                let src = bat.set(&src_spec)?;
                for j in 0..shape.len() {
                    for m_low in 1..margins[j] {
                        instances += 1;
                        let target = modified_spec(i, &shape, &margins, j, m_low)?;
                        let (w, viol) = image_in(&src, &target, |g| Ok(g.clone()))?;
                        work += w;
                        if let Some(gi) = viol {
                            return Ok(check(
                                name,
                                fail_note(
                                    format!(
                                        "element #{gi} of {} is missing from the wider class {}",
                                        src_spec.encode(),
                                        target.encode()
                                    ),
                                    work,
                                ),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(check(
        name,
        exhaustive_pass(instances, work, "exhaustive enumeration"),
    ))
}

/// Extending a chain by one level keeps every member, provided the fresh
/// level is not vacuously empty (margin below `margin_bound` of its width).
/// Degenerate extensions are skipped and counted: an empty fresh level
/// empties the whole chain and the containment genuinely fails there.
fn chain_level_monotonicity(bat: &mut Battery, n_cap: u32) -> Result<NamedVerdict> {
    let name = "chain_level_monotonicity";
    let mut instances = 0u64;
    let mut skipped = 0u64;
    let mut work = 0u64;
    for shape in chain_shapes(n_cap) {
        for margins in margin_combos(&shape, 1, 3) {
            for i in 0..2u8 {
                for l in 1..shape.len() {
                    let delta = shape[l] - shape[l - 1];
                    if margins[l] >= margin_bound(delta) {
                        skipped += 1;
                        continue;
                    }
                    instances += 1;
                    let src_spec = prefix_spec(i, &shape, &margins, l)?;
                    let src = bat.set(&src_spec)?;
                    let target = prefix_spec(i, &shape, &margins, l + 1)?;
                    let ambient = shape[l];
                    let (w, viol) = image_in(&src, &target, |g| g.embed(ambient))?;
                    work += w;
                    if let Some(gi) = viol {
                        return Ok(check(
                            name,
                            fail_note(
                                format!(
                                    "element #{gi} of {} does not survive extension to {}",
                                    src_spec.encode(),
                                    target.encode()
                                ),
                                work,
                            ),
                        ));
                    }
                }
            }
        }
    }
    Ok(check(
        name,
        exhaustive_pass(instances, work, "exhaustive enumeration")
            .with_param("skipped_degenerate", skipped),
    ))
}

/// Block-extension checks for two-level chains: every extension of a prefix
/// member lands in the chain class, extension sets of distinct prefixes are
/// disjoint, and each extension set has exactly the product size.
fn block_extension_checks(bat: &mut Battery, n_cap: u32) -> Result<Vec<NamedVerdict>> {
    let mut pairs = Vec::new();
    for prev in 1..=2u32.min(n_cap.saturating_sub(2)) {
        for last in (prev + 2)..=n_cap {
            pairs.push((prev, last));
        }
    }

    let mut cont_fail: Option<String> = None;
    let mut disj_fail: Option<String> = None;
    let mut prod_fail: Option<String> = None;
    let mut cont_inst = 0u64;
    let mut disj_inst = 0u64;
    let mut prod_inst = 0u64;
    let mut cont_work = 0u64;
    let mut disj_work = 0u64;

    for &(prev, last) in &pairs {
        let delta = last - prev;
        for m2 in 1..=margin_bound(delta).min(3) {
            let a = NiveauSpec::single(2, 1, delta, m2)?.count();
            let blocks = 1u32 << prev;
            let expected = a.pow(blocks);

            // Disjointness and product size over every prefix element.
            let mut owners: HashMap<u64, u64> = HashMap::new();
            for g in enumerate_group(2, prev, bat.cap)? {
                let g_idx = g.canonical_index()?;
                let mut bracket = 0u64;
                for h in enumerate_group(2, last, bat.cap)? {
                    disj_work += 1;
                    if in_block_extension(&h, &g, m2)? {
                        bracket += 1;
                        let h_idx = h.canonical_index()?;
                        if let Some(o) = owners.insert(h_idx, g_idx) {
                            if disj_fail.is_none() {
                                disj_fail = Some(format!(
                                    "element #{h_idx} at scale {last} extends both #{o} and \
                                     #{g_idx} at scale {prev} (margin {m2})"
                                ));
                            }
                        }
                    }
                }
                prod_inst += 1;
                if BigUint::from(bracket) != expected && prod_fail.is_none() {
                    prod_fail = Some(format!(
                        "extension set of #{g_idx} at scale {prev} (margin {m2}) has {bracket} \
                         elements, expected {expected}"
                    ));
                }
            }
            disj_inst += 1;

            // Containment: members extending a niveau prefix member stay in
            // the two-level chain.
            for m1 in 1..=margin_bound(prev).min(2) {
                for i in 0..2u8 {
                    let src_spec = NiveauSpec::single(2, i, prev, m1)?;
                    let src = bat.set(&src_spec)?;
                    let chain = NiveauSpec::new(
                        2,
                        i,
                        vec![ChainLink::new(prev, m1), ChainLink::new(last, m2)],
                    )?;
                    for g in src.iter_elements() {
                        cont_inst += 1;
                        for h in enumerate_group(2, last, bat.cap)? {
                            cont_work += 1;
                            if in_block_extension(&h, &g, m2)?
                                && !chain.contains(&h)?
                                && cont_fail.is_none()
                            {
                                cont_fail = Some(format!(
                                    "element #{} extends #{} of {} but leaves {}",
                                    h.canonical_index()?,
                                    g.canonical_index()?,
                                    src_spec.encode(),
                                    chain.encode()
                                ));
                            }
                        }
                    }
                }
            }
        }
    }

    let verdict = |fail: Option<String>, inst: u64, work: u64| match fail {
        Some(text) => fail_note(text, work),
        None => exhaustive_pass(inst, work, "exhaustive block-extension scan"),
    };
    Ok(vec![
        check(
            "block_extension_containment",
            verdict(cont_fail, cont_inst, cont_work),
        ),
        check(
            "block_extension_disjointness",
            verdict(disj_fail, disj_inst, disj_work),
        ),
        check(
            "block_extension_product_count",
            verdict(prod_fail, prod_inst, disj_work),
        ),
    ])
}

/// Exact single-link densities increase strictly with the scale and sit
/// within the central-binomial envelope of one half.
pub fn density_progression(margin: u64, n_lo: u32, n_hi: u32) -> Result<Verdict> {
    if n_lo < 1 || n_lo > n_hi {
        return Err(Error::InvalidParameter(format!(
            "density progression needs 1 <= n_lo <= n_hi, got {n_lo}..={n_hi}"
        )));
    }
    let mut prev: Option<BigRational> = None;
    let mut work = 0u64;
    for n in n_lo..=n_hi {
        let d = NiveauSpec::single(2, 1, n, margin)?.density();
        work += 1;
        if let Some(p) = &prev {
            if &d <= p {
                return Ok(fail_note(
                    format!("density does not increase strictly from scale {} to {n}", n - 1),
                    work,
                ));
            }
        }
        let b = 1u64 << n;
        let gap = one_half() - &d;
        let envelope = BigRational::new(
            BigInt::from(2 * margin + 1) * BigInt::from(binomial(b, b / 2)),
            BigInt::from(pow2(b)),
        );
        if gap > envelope {
            return Ok(fail_note(
                format!("gap to one half exceeds the central-binomial envelope at scale {n}"),
                work,
            ));
        }
        prev = Some(d);
    }
    Ok(Verdict::proven()
        .with_param("margin", margin)
        .with_param("scales", format!("{n_lo}..={n_hi}"))
        .with_param("oracle", "exact rational arithmetic")
        .with_spent(BudgetSpent {
            nodes: work,
            complete: true,
        }))
}

/// The count of a two-level chain dominates the prefix count times the
/// block-class count raised to the number of blocks.
fn nested_count_growth() -> Result<NamedVerdict> {
    let name = "nested_count_growth";
    let families = [(2u32, 1u64, 2u64), (4, 3, 6)];
    let mut work = 0u64;
    for (np, mp, mx) in families {
        let prefix_count = NiveauSpec::single(2, 1, np, mp)?.count();
        let blocks = 1u32 << np;
        for delta in 4..=12u32 {
            work += 1;
            let chain = NiveauSpec::new(
                2,
                1,
                vec![ChainLink::new(np, mp), ChainLink::new(np + delta, mx)],
            )?;
            let total = chain.count();
            let a = NiveauSpec::single(2, 1, delta, mx)?.count();
            let bound = &prefix_count * a.pow(blocks);
            if total < bound {
                return Ok(check(
                    name,
                    fail_note(
                        format!(
                            "chain ({np},{mp}),({},{mx}) has a count of {} digits, below \
                             the product bound of {} digits",
                            np + delta,
                            total.to_string().len(),
                            bound.to_string().len()
                        ),
                        work,
                    ),
                ));
            }
        }
    }
    Ok(check(
        name,
        exhaustive_pass(work, work, "exact big-integer counting")
            .with_param("extensions", "4..=12"),
    ))
}

/// Adding a ball around the all-ones element at the scale of level `j` moves
/// a chain class into the next residue class with every margin lowered by
/// its radius, out to `max(j, l)` levels.
fn nested_push_containment(bat: &mut Battery) -> Result<NamedVerdict> {
    let name = "nested_push_containment";
    let scales = [1u32, 4];
    let margins = [1u64, 2];
    let radii = [0u64, 1];
    let pushed: Vec<u64> = margins.iter().zip(&radii).map(|(m, k)| m - k).collect();
    let mut instances = 0u64;
    let mut vacuous = 0u64;
    let mut work = 0u64;
    for i in 0..2u8 {
        for j in 1..=2usize {
            for l in 1..=2usize {
                instances += 1;
                let src_spec = prefix_spec(i, &scales, &margins, l)?;
                let src = bat.set(&src_spec)?;
                if src.cardinality() == 0 {
                    vacuous += 1;
                    continue;
                }
                let r = j.max(l);
                let ambient = scales[r - 1];
                let target = prefix_spec((i + 1) % 2, &scales, &pushed, r)?;
                let ball_spec = HammingBallSpec::ones(2, scales[j - 1], radii[j - 1])?;
                let ball = materialize(&SetPredicate::from_ball(&ball_spec), bat.cap)?;
                for g in src.iter_elements() {
                    let ge = g.embed(ambient)?;
                    for v in ball.iter_elements() {
                        work += 1;
                        let sum = ge.add(&v.embed(ambient)?)?;
                        if !target.contains(&sum)? {
                            return Ok(check(
                                name,
                                fail_note(
                                    format!(
                                        "element #{} of {} pushed by #{} from the ball at \
                                         level {j} leaves {}",
                                        g.canonical_index()?,
                                        src_spec.encode(),
                                        v.canonical_index()?,
                                        target.encode()
                                    ),
                                    work,
                                ),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(check(
        name,
        exhaustive_pass(instances, work, "exhaustive pair enumeration")
            .with_param("vacuous_instances", vacuous)
            .with_param("scales", "(1,4)")
            .with_param("margins", "(1,2)")
            .with_param("radii", "(0,1)"),
    ))
}

/// Deterministic family of specs whose closed-form counts are compared with
/// brute enumeration, both here and in the integration tests.
pub fn enumeration_specs(n_cap: u32) -> Result<Vec<NiveauSpec>> {
    let mut out = Vec::new();
    for i in 0..2u8 {
        for n in 1..=n_cap {
            let top = ((1u64 << (n - 1)) + 1).min(5);
            for m in 0..=top {
                out.push(NiveauSpec::single(2, i, n, m)?);
            }
        }
        for shape in chain_shapes(n_cap) {
            for margins in margin_combos(&shape, 0, 2) {
                out.push(chain_spec(i, &shape, &margins)?);
            }
        }
    }
    Ok(out)
}

/// Closed-form counts agree with brute enumeration on every desk-scale spec.
fn count_matches_enumeration(bat: &mut Battery, n_cap: u32) -> Result<NamedVerdict> {
    let name = "count_matches_enumeration";
    let specs = enumeration_specs(n_cap)?;
    let mut work = 0u64;
    for spec in &specs {
        let set = bat.set(spec)?;
        work += 1;
        if BigUint::from(set.cardinality()) != spec.count() {
            return Ok(check(
                name,
                fail_note(
                    format!(
                        "closed-form count for {} is {}, enumeration found {}",
                        spec.encode(),
                        spec.count(),
                        set.cardinality()
                    ),
                    work,
                ),
            ));
        }
    }
    Ok(check(
        name,
        exhaustive_pass(specs.len() as u64, work, "complete enumeration per spec"),
    ))
}

/// Runs the whole battery with enumeration confined to scales `<= n_cap`.
///
/// Enumeration beyond scale 4 would touch groups of order `2^32` and up, so
/// larger caps are rejected with a cap error rather than attempted.
pub fn lemma_suite(n_cap: u32) -> Result<SuiteReport> {
    if n_cap < 2 {
        return Err(Error::InvalidParameter(
            "the check suite needs n_cap >= 2".into(),
        ));
    }
    if n_cap > 4 {
        let order = if n_cap <= 6 {
            group_order(2, n_cap).to_string()
        } else {
            format!("2^(2^{n_cap})")
        };
        return Err(Error::CapExceeded {
            order,
            cap: DEFAULT_ENUMERATION_CAP,
        });
    }
    let mut bat = Battery::new(DEFAULT_ENUMERATION_CAP);
    let mut checks = Vec::new();
    checks.push(single_link_shift_bijection(&mut bat, n_cap)?);
    checks.push(single_link_ball_addition(&mut bat, n_cap)?);
    checks.push(single_link_shifted_ball_addition(&mut bat, n_cap)?);
    checks.push(single_link_margin_disjointness(&mut bat, n_cap)?);
    checks.push(single_link_margin_monotonicity(&mut bat, n_cap)?);
    checks.push(chain_shift_bijection(&mut bat, n_cap)?);
    checks.push(chain_ball_addition(&mut bat, n_cap)?);
    checks.push(chain_shifted_ball_addition(&mut bat, n_cap)?);
    checks.push(chain_margin_disjointness(&mut bat, n_cap)?);
    checks.push(chain_margin_monotonicity(&mut bat, n_cap)?);
    checks.push(chain_level_monotonicity(&mut bat, n_cap)?);
    checks.extend(block_extension_checks(&mut bat, n_cap)?);
    for m in 1..=3u64 {
        let v = density_progression(m, 3, 12)?;
        checks.push(check(format!("density_progression_margin_{m}"), v));
    }
    checks.push(nested_count_growth()?);
    checks.push(nested_push_containment(&mut bat)?);
    checks.push(count_matches_enumeration(&mut bat, n_cap)?);
    let passed = checks
        .iter()
        .filter(|c| c.verdict.status == Status::Proven)
        .count();
    let failed = checks.len() - passed;
    Ok(SuiteReport {
        schema: SuiteReport::SCHEMA.into(),
        library_version: crate::library_version().into(),
        n_cap,
        checks,
        passed,
        failed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margin_combos_respect_bounds() {
        let combos = margin_combos(&[2, 4], 1, 3);
        assert!(combos.contains(&vec![1, 2]));
        assert!(combos.iter().all(|c| c[0] <= 2 && c[1] <= 2));
        assert_eq!(combos.len(), 4);
        let with_zero = margin_combos(&[1, 3], 0, 2);
        assert!(with_zero.contains(&vec![0, 0]));
        assert!(with_zero.contains(&vec![1, 2]));
        assert_eq!(with_zero.len(), 6);
    }

    #[test]
    fn chain_shapes_cover_the_desk_family() {
        let shapes = chain_shapes(4);
        assert_eq!(shapes.len(), 11);
        assert!(shapes.contains(&vec![2, 4]));
        assert!(shapes.contains(&vec![1, 3, 4]));
        assert!(shapes.contains(&vec![1, 2, 3, 4]));
        assert!(shapes.iter().all(|s| s.len() >= 2));
    }

    #[test]
    fn enumeration_family_is_large_and_deterministic() {
        let specs = enumeration_specs(4).unwrap();
        assert!(specs.len() >= 50, "only {} specs", specs.len());
        let again = enumeration_specs(4).unwrap();
        let a: Vec<String> = specs.iter().map(|s| s.encode()).collect();
        let b: Vec<String> = again.iter().map(|s| s.encode()).collect();
        assert_eq!(a, b);
        assert!(a.contains(&"p=2;i=1;chain=(2,0),(4,1)".to_string()));
    }

    #[test]
    fn density_progression_is_proven_for_small_margins() {
        let v = density_progression(1, 3, 8).unwrap();
        assert_eq!(v.status, Status::Proven);
    }

    #[test]
    fn density_progression_rejects_bad_ranges() {
        assert!(density_progression(1, 5, 3).is_err());
    }

    #[test]
    fn suite_rejects_large_caps_with_a_cap_error() {
        match lemma_suite(10) {
            Err(Error::CapExceeded { order, .. }) => assert_eq!(order, "2^(2^10)"),
            other => panic!("expected a cap error, got {other:?}"),
        }
        assert!(lemma_suite(1).is_err());
    }

    #[test]
    fn suite_at_cap_three_is_all_proven() {
        let report = lemma_suite(3).unwrap();
        assert_eq!(report.failed, 0);
        assert_eq!(report.passed, report.checks.len());
        assert!(report.all_proven());
        assert!(report.checks.len() >= 18);
        let names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
        assert!(names.contains(&"chain_level_monotonicity"));
        assert!(names.contains(&"count_matches_enumeration"));
    }
}
