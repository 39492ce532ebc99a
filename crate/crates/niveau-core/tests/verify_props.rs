//! Agreement tests for the verification layer: the coloring search against a
//! brute-force oracle, the parity shortcut against the generic search,
//! difference checks against Cayley independence, Kneser instances, and
//! certificate replay.

use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::Ratio;
use proptest::prelude::*;

use niveau_core::sets::materialize;
use niveau_core::verify::{
    difference_avoids, is_independent_set, kneser_graph, max_avoiding_density,
    rejection_sampler, replay_explicit_witness, sampled_difference_check, verify_lovasz,
    verify_poincare, verify_translate_claim, CayleyGraph, ExplicitGraph,
};
use niveau_core::verify::{chromatic_exceeds, chromatic_exceeds_explicit};
use niveau_core::{
    Budget, FiniteSet, GroupElement, RandomStream, SetPredicate, Status, Verdict, Witness,
};

fn budget() -> Budget {
    Budget::default()
}

fn graph_on_eight(edges: &[(u32, u32)]) -> ExplicitGraph {
    let labels = (0..8).map(|v| format!("v{v}")).collect();
    ExplicitGraph::from_edges(8, labels, edges.iter().copied()).unwrap()
}

/// Oracle: does a proper `k`-coloring exist? Checked by odometer over all
/// `k^8` assignments, so it is only usable on the tiny graphs below.
fn brute_colorable(g: &ExplicitGraph, k: u16) -> bool {
    let nv = g.vertex_count();
    if nv == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    let mut assign = vec![0u16; nv];
    'next: loop {
        let proper = (0..nv as u32).all(|v| {
            g.neighbors(v)
                .iter()
                .all(|&w| w >= v || assign[w as usize] != assign[v as usize])
        });
        if proper {
            return true;
        }
        for slot in assign.iter_mut() {
            *slot += 1;
            if *slot < k {
                continue 'next;
            }
            *slot = 0;
        }
        return false;
    }
}

fn set_from_indices(p: u8, n: u32, indices: &[u64]) -> FiniteSet {
    let mut set = FiniteSet::empty(p, n, 1 << 20).unwrap();
    for &i in indices {
        set.insert_index(i % set.order());
    }
    set
}

proptest! {
    /// On random 8-vertex graphs the search verdict for `χ > k` matches the
    /// brute-force oracle for every `k` up to 3, the search always completes,
    /// and verdicts are monotone in `k`.
    #[test]
    fn coloring_search_matches_brute_force(
        edges in proptest::collection::vec((0u32..8, 0u32..8), 0..=16)
    ) {
        let g = graph_on_eight(&edges);
        let mut last_refuted = false;
        for k in 0u16..=3 {
            let verdict = chromatic_exceeds_explicit(&g, k, &budget()).unwrap();
            let colorable = brute_colorable(&g, k);
            let expect = if colorable { Status::Refuted } else { Status::Proven };
            prop_assert_eq!(&verdict.status, &expect, "k = {}", k);
            prop_assert!(verdict.budget_spent.complete);
            replay_explicit_witness(&g, &verdict).unwrap();
            // Once k colors suffice, more colors still do.
            prop_assert!(!(last_refuted && verdict.status == Status::Proven));
            last_refuted = verdict.status == Status::Refuted;
        }
    }

    /// At modulus 2 the `χ > 2` question is settled by a parity functional;
    /// the answer must agree with the generic search on the exported graph.
    #[test]
    fn parity_shortcut_agrees_with_generic_search(
        raw in proptest::collection::vec(1u64..256, 1..=10)
    ) {
        let conn = set_from_indices(2, 3, &raw);
        let cayley = CayleyGraph::new(&conn).unwrap();
        let explicit = cayley.to_explicit(&budget()).unwrap();
        for k in [1u16, 2] {
            let shortcut = chromatic_exceeds(&cayley, k, &budget()).unwrap();
            let generic = chromatic_exceeds_explicit(&explicit, k, &budget()).unwrap();
            prop_assert_eq!(&shortcut.status, &generic.status, "k = {}", k);
        }
    }

    /// `difference_avoids` is exactly independence in the Cayley graph of the
    /// (symmetrized, zero-free) connection set.
    #[test]
    fn avoidance_is_cayley_independence(
        a_raw in proptest::collection::vec(0u64..256, 0..=8),
        s_raw in proptest::collection::vec(1u64..256, 1..=6)
    ) {
        let a = set_from_indices(2, 3, &a_raw);
        let cayley = CayleyGraph::new(&set_from_indices(2, 3, &s_raw)).unwrap();
        let pred = SetPredicate::from_finite(
            Arc::new(cayley.connection().clone()),
            "symmetrized connection set",
        );
        let verdict = difference_avoids(&a, &pred).unwrap();
        let independent = is_independent_set(&cayley, &a).unwrap();
        prop_assert_eq!(verdict.status == Status::Proven, independent);
        if verdict.status == Status::Proven {
            prop_assert!(verdict.budget_spent.complete);
        } else {
            let has_pair = matches!(verdict.witness, Some(Witness::Pair { .. }));
            prop_assert!(has_pair, "refutation must carry a pair witness");
        }
    }

    /// With `0 ∈ S` any nonempty set trips on the diagonal immediately.
    #[test]
    fn zero_in_s_refutes_nonempty_sets(
        a_raw in proptest::collection::vec(0u64..256, 1..=8)
    ) {
        let a = set_from_indices(2, 3, &a_raw);
        let s = set_from_indices(2, 3, &[0]);
        let pred = SetPredicate::from_finite(Arc::new(s), "the origin alone");
        let verdict = difference_avoids(&a, &pred).unwrap();
        prop_assert_eq!(&verdict.status, &Status::Refuted);
        if let Some(Witness::Pair { a: x, b: y, difference }) = &verdict.witness {
            prop_assert_eq!(x, y);
            prop_assert_eq!(difference, &GroupElement::zero(2, 3).unwrap().encode());
        } else {
            prop_assert!(false, "expected a pair witness");
        }
    }
}

/// Kneser instances with small binomials: `χ(K(2r+k, r)) = k + 2 > k` must
/// come back `PROVEN` and complete, and every certificate must replay.
#[test]
fn kneser_instances_are_proven_and_replayable() {
    for (r, k) in [(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (2, 3), (3, 1)] {
        let verdict = verify_lovasz(r, k, &budget()).unwrap();
        assert_eq!(verdict.status, Status::Proven, "r = {r}, k = {k}");
        assert!(verdict.budget_spent.complete, "r = {r}, k = {k}");
        let graph = kneser_graph(r, u32::from(k), &budget()).unwrap();
        replay_explicit_witness(&graph, &verdict).unwrap();
    }
}

/// The Kneser bound is sharp: the Petersen graph `K(5, 2)` is 3-colorable,
/// so the `χ > 3` claim is refuted with a proper coloring that replays.
#[test]
fn kneser_bound_is_sharp_on_the_petersen_graph() {
    let petersen = kneser_graph(2, 1, &budget()).unwrap();
    assert_eq!(petersen.vertex_count(), 10);
    let verdict = chromatic_exceeds_explicit(&petersen, 3, &budget()).unwrap();
    assert_eq!(verdict.status, Status::Refuted);
    assert!(matches!(verdict.witness, Some(Witness::ProperColoring { .. })));
    replay_explicit_witness(&petersen, &verdict).unwrap();
}

/// Replay rejects doctored certificates: unknown vertices, broken cliques,
/// and colorings that are short, out of range, or monochromatic on an edge.
#[test]
fn replay_rejects_tampered_certificates() {
    // K4 on the first four of eight vertices.
    let k4 = graph_on_eight(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    let good = chromatic_exceeds_explicit(&k4, 3, &budget()).unwrap();
    assert_eq!(good.status, Status::Proven);
    replay_explicit_witness(&k4, &good).unwrap();

    let clique = |vertices: &[&str]| {
        Verdict::proven().with_witness(Witness::Clique {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
        })
    };
    assert!(replay_explicit_witness(&k4, &clique(&["v0", "v1", "ghost"])).is_err());
    // v4 is isolated, so {v0, v1, v4} is not a clique.
    assert!(replay_explicit_witness(&k4, &clique(&["v0", "v1", "v4"])).is_err());

    let coloring = |colors: u16, assignment: Vec<u16>| {
        Verdict::refuted().with_witness(Witness::ProperColoring { colors, assignment })
    };
    // Path v0 - v1 - v2.
    let path = graph_on_eight(&[(0, 1), (1, 2)]);
    replay_explicit_witness(&path, &coloring(2, vec![0, 1, 0, 0, 0, 0, 0, 0])).unwrap();
    assert!(replay_explicit_witness(&path, &coloring(2, vec![0, 0, 0, 0, 0, 0, 0, 0]))
        .is_err());
    assert!(replay_explicit_witness(&path, &coloring(2, vec![0, 1])).is_err());
    assert!(replay_explicit_witness(&path, &coloring(2, vec![0, 1, 2, 0, 0, 0, 0, 0]))
        .is_err());
}

/// Ball-recurrence instances stay `PROVEN` at small scales, the `k < n`
/// hypothesis is enforced unless relaxed, and the translate form agrees with
/// the origin form at `g = 0`.
#[test]
fn ball_recurrence_small_instances() {
    let proven = verify_poincare(2, 3, 2, false, &budget()).unwrap();
    assert_eq!(proven.status, Status::Proven);
    assert!(proven.budget_spent.complete);

    assert!(verify_poincare(2, 3, 3, false, &budget()).is_err());
    let relaxed = verify_poincare(2, 3, 3, true, &budget()).unwrap();
    assert_eq!(relaxed.status, Status::Proven, "radius 8 ball covers the whole group");

    let origin = GroupElement::zero(2, 3).unwrap();
    let translated = verify_translate_claim(3, 1, &origin, &budget()).unwrap();
    assert_eq!(translated.status, Status::Proven);

    let odd = GroupElement::zero(3, 3).unwrap();
    assert!(verify_translate_claim(3, 1, &odd, &budget()).is_err(), "odd modulus");
    let small = GroupElement::zero(2, 2).unwrap();
    assert!(verify_translate_claim(3, 1, &small, &budget()).is_err(), "scale mismatch");
}

/// Sampling can refute but never prove: a planted violation is found fast,
/// and a genuinely avoiding configuration still only yields `INCONCLUSIVE`.
#[test]
fn sampling_refutes_or_stays_inconclusive() {
    let everything = SetPredicate::from_fn(2, 2, "whole group", |_| Ok(true));
    let mut draw = rejection_sampler(everything, 8);

    // Planted: S is every nonzero element, so any x != y trips.
    let dense = set_from_indices(2, 2, &(1..16).collect::<Vec<_>>());
    let dense_pred = SetPredicate::from_finite(Arc::new(dense), "all nonzero");
    let mut stream = RandomStream::new(9);
    let hit = sampled_difference_check(&mut draw, &dense_pred, 64, &mut stream).unwrap();
    assert_eq!(hit.status, Status::Refuted);
    assert!(matches!(hit.witness, Some(Witness::Pair { .. })));

    // Avoiding: S is empty, so no pair can ever trip — and the checker still
    // refuses to claim a proof.
    let empty = FiniteSet::empty(2, 2, 1 << 10).unwrap();
    let empty_pred = SetPredicate::from_finite(Arc::new(empty), "empty set");
    let mut draw2 = rejection_sampler(
        SetPredicate::from_fn(2, 2, "whole group", |_| Ok(true)),
        8,
    );
    let mut stream2 = RandomStream::new(10);
    let clean = sampled_difference_check(&mut draw2, &empty_pred, 64, &mut stream2).unwrap();
    assert_eq!(clean.status, Status::Inconclusive);

    // The same seed reproduces the same witness pair.
    let mut draw3 = rejection_sampler(
        SetPredicate::from_fn(2, 2, "whole group", |_| Ok(true)),
        8,
    );
    let mut stream3 = RandomStream::new(9);
    let again = sampled_difference_check(&mut draw3, &dense_pred, 64, &mut stream3).unwrap();
    assert_eq!(
        serde_json::to_string(&hit).unwrap(),
        serde_json::to_string(&again).unwrap()
    );
}

/// A rejection sampler over an empty target reports exhaustion rather than
/// spinning forever.
#[test]
fn rejection_sampler_reports_exhaustion() {
    let never = SetPredicate::from_fn(2, 2, "empty target", |_| Ok(false));
    let mut draw = rejection_sampler(never, 16);
    let mut stream = RandomStream::new(1);
    let err = draw(&mut stream).unwrap_err();
    assert!(err.to_string().contains("16"), "unexpected error: {err}");
}

/// Exact independence-number brackets on tiny Cayley graphs: one connection
/// element at scale 2 gives a perfect matching, so half the group avoids.
#[test]
fn density_bracket_is_exact_on_tiny_graphs() {
    let half = Ratio::new(BigUint::from(1u32), BigUint::from(2u32));
    let s = set_from_indices(2, 2, &[5]);
    let interval = max_avoiding_density(&s, None, &budget()).unwrap();
    assert!(interval.exact);
    assert_eq!(interval.lower, half);
    assert_eq!(interval.upper, half);
    assert_eq!(interval.witness.len(), 8);

    // All nonzero differences forbidden: only singletons avoid.
    let complete = set_from_indices(2, 2, &(1..16).collect::<Vec<_>>());
    let one_point = max_avoiding_density(&complete, None, &budget()).unwrap();
    assert!(one_point.exact);
    assert_eq!(one_point.upper, Ratio::new(BigUint::from(1u32), BigUint::from(16u32)));

    // 0 ∈ S: nothing avoids.
    let with_zero = set_from_indices(2, 2, &[0, 5]);
    let nothing = max_avoiding_density(&with_zero, None, &budget()).unwrap();
    assert!(nothing.exact);
    assert_eq!(nothing.upper, Ratio::new(BigUint::from(0u32), BigUint::from(1u32)));
    assert!(nothing.witness.is_empty());

    // The witness indices really form an avoiding set.
    let witness = set_from_indices(2, 2, &interval.witness);
    let cayley = CayleyGraph::new(&s).unwrap();
    assert!(is_independent_set(&cayley, &witness).unwrap());
}

/// The dedicated niveau pair at scale 4: `A₁(4, 3)` avoids the odd-weight
/// ball `V(4, 3)` in its differences; spot-check via the materialized sets.
#[test]
fn niveau_pair_avoids_its_ball() {
    use niveau_core::{HammingBallSpec, NiveauSpec};
    let a_spec = NiveauSpec::parse("p=2;i=1;chain=(4,3)").unwrap();
    let a = materialize(&SetPredicate::from_niveau(&a_spec), 1 << 20).unwrap();
    assert_eq!(a.cardinality(), 2517);
    let ball = HammingBallSpec::ones(2, 4, 3).unwrap();
    let verdict = difference_avoids(&a, &SetPredicate::from_ball(&ball)).unwrap();
    assert_eq!(verdict.status, Status::Proven);
    assert!(verdict.budget_spent.complete);
    assert_eq!(verdict.budget_spent.nodes, 2517 * 2517);
}
