//! Property tests for the group layer: algebraic laws, index round-trips,
//! embeddings, restriction, the Hamming metric, and seeded randomness.

use proptest::prelude::*;

use niveau_core::group::group_order;
use niveau_core::{BinaryString, GroupElement, RandomStream};

/// Modulus, scale, and three raw indices reduced into the group's order.
/// Scales stay at or below 3 so the order (at most 5^8 = 390 625) keeps every
/// case cheap, while still covering multi-level structure.
fn triple() -> impl Strategy<Value = (u8, u32, u64, u64, u64)> {
    (prop_oneof![Just(2u8), Just(3), Just(5)], 0u32..=3).prop_flat_map(|(p, n)| {
        let order = (p as u64).pow(1 << n);
        (Just(p), Just(n), 0..order, 0..order, 0..order)
    })
}

fn elem(p: u8, n: u32, index: u64) -> GroupElement {
    GroupElement::from_index(p, n, index).unwrap()
}

/// Scale and two indices drawn inside `2^(2^n)`, for modulus-2 properties.
fn mod2_pair() -> impl Strategy<Value = (u32, u64, u64)> {
    (0u32..=3).prop_flat_map(|n| {
        let order = 1u64 << (1u64 << n);
        (Just(n), 0..order, 0..order)
    })
}

proptest! {
    #[test]
    fn group_laws_hold((p, n, x, y, z) in triple()) {
        let (a, b, c) = (elem(p, n, x), elem(p, n, y), elem(p, n, z));
        let zero = GroupElement::zero(p, n).unwrap();
        // Associativity, commutativity, identity, inverses.
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(),
                        a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.add(&zero).unwrap(), a.clone());
        prop_assert_eq!(a.add(&a.neg()).unwrap(), zero.clone());
        prop_assert_eq!(a.sub(&b).unwrap(), a.add(&b.neg()).unwrap());
    }

    #[test]
    fn modulus_two_is_elementary_abelian((n, x, y) in mod2_pair()) {
        let a = elem(2, n, x);
        let b = elem(2, n, y);
        let zero = GroupElement::zero(2, n).unwrap();
        prop_assert_eq!(a.add(&a).unwrap(), zero);
        prop_assert_eq!(a.neg(), a.clone());
        // Addition is XOR on canonical indices.
        prop_assert_eq!(a.add(&b).unwrap().canonical_index().unwrap(), x ^ y);
    }

    #[test]
    fn canonical_index_round_trips((p, n, x, _, _) in triple()) {
        let a = elem(p, n, x);
        prop_assert_eq!(a.canonical_index().unwrap(), x);
        prop_assert_eq!(GroupElement::from_index(p, n, x).unwrap(), a);
    }

    #[test]
    fn distance_is_a_metric((p, n, x, y, z) in triple()) {
        let (a, b, c) = (elem(p, n, x), elem(p, n, y), elem(p, n, z));
        let d_ab = a.distance(&b).unwrap();
        prop_assert_eq!(d_ab, a.sub(&b).unwrap().weight());
        prop_assert_eq!(d_ab, b.distance(&a).unwrap());
        prop_assert_eq!(a.distance(&a).unwrap(), 0);
        prop_assert!(a.distance(&c).unwrap() <= d_ab + b.distance(&c).unwrap());
        // Identity of indiscernibles.
        prop_assert_eq!(d_ab == 0, a == b);
    }

    #[test]
    fn weight_counts_nonzero_cells((p, n, x, _, _) in triple()) {
        let a = elem(p, n, x);
        let by_hand = BinaryString::all(n)
            .filter(|tau| a.value_at(tau).unwrap() != 0)
            .count() as u64;
        prop_assert_eq!(a.weight(), by_hand);
    }

    #[test]
    fn level_counts_partition_the_cells((p, n, x, _, _) in triple()) {
        let a = elem(p, n, x);
        let total: u64 = (0..p).map(|i| a.level_count(i).unwrap()).sum();
        prop_assert_eq!(total, a.cells());
        prop_assert_eq!(a.cells() - a.level_count(0).unwrap(), a.weight());
    }

    #[test]
    fn embedding_duplicates_and_truncation_inverts((p, n, x, y, _) in triple()) {
        let a = elem(p, n, x);
        let b = elem(p, n, y);
        for target in n..=(n + 2).min(4) {
            let big = a.embed(target).unwrap();
            let shift = target - n;
            prop_assert_eq!(big.weight(), a.weight() << shift);
            for i in 0..p {
                prop_assert_eq!(big.level_count(i).unwrap(),
                                a.level_count(i).unwrap() << shift);
            }
            // The embedded copy is constant on the duplicated fine scales and
            // truncating undoes the embedding.
            prop_assert!(big.is_constant_on_scale(n).unwrap());
            prop_assert_eq!(big.truncate_to(n).unwrap(), a.clone());
            // Embedding is a group homomorphism.
            let sum_then_embed = a.add(&b).unwrap().embed(target).unwrap();
            let embed_then_sum = big.add(&b.embed(target).unwrap()).unwrap();
            prop_assert_eq!(sum_then_embed, embed_then_sum);
            // Distances scale by the cylinder multiplicity.
            prop_assert_eq!(big.distance(&b.embed(target).unwrap()).unwrap(),
                            a.distance(&b).unwrap() << shift);
        }
    }

    #[test]
    fn restriction_partitions_levels((p, n, x, _, _) in triple()) {
        let a = elem(p, n, x);
        for m in 0..=n {
            for i in 0..p {
                let mut from_blocks = 0u64;
                for tau in BinaryString::all(m) {
                    let block = a.restrict(&tau).unwrap();
                    prop_assert_eq!(block.n(), n - m);
                    prop_assert_eq!(block.level_count(i).unwrap(),
                                    a.level_count_in_block(&tau, i).unwrap());
                    from_blocks += block.level_count(i).unwrap();
                }
                prop_assert_eq!(from_blocks, a.level_count(i).unwrap());
            }
        }
    }

    #[test]
    fn same_seed_reproduces_every_draw(seed in any::<u64>(), (p, n, _, _, _) in triple()) {
        let mut one = RandomStream::new(seed);
        let mut two = RandomStream::new(seed);
        for _ in 0..8 {
            prop_assert_eq!(one.element(p, n).unwrap(), two.element(p, n).unwrap());
        }
        let mut sub_a = one.substream(3);
        let mut sub_b = two.substream(3);
        prop_assert_eq!(sub_a.element(p, n).unwrap(), sub_b.element(p, n).unwrap());
        prop_assert_eq!(sub_a.below(1_000_003), sub_b.below(1_000_003));
    }

    #[test]
    fn bounded_draws_stay_in_range(seed in any::<u64>(), bound in 1u64..1 << 40) {
        let mut stream = RandomStream::new(seed);
        for _ in 0..16 {
            prop_assert!(stream.below(bound) < bound);
        }
    }

    #[test]
    fn random_subsets_are_sorted_and_distinct(
        seed in any::<u64>(), cells in 1u64..=64, raw_k in any::<u64>()
    ) {
        let k = raw_k % (cells + 1);
        let subset = RandomStream::new(seed).subset(cells, k);
        prop_assert_eq!(subset.len() as u64, k);
        prop_assert!(subset.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(subset.iter().all(|&c| c < cells));
    }
}

/// Substreams with distinct indices diverge immediately (fixed seed so the
/// check cannot flake).
#[test]
fn substreams_are_independent() {
    let base = RandomStream::new(41);
    let draws: Vec<Vec<u64>> = (0..5u64)
        .map(|i| {
            let mut sub = base.substream(i);
            (0..6).map(|_| sub.below(u64::MAX)).collect()
        })
        .collect();
    for i in 0..draws.len() {
        for j in (i + 1)..draws.len() {
            assert_ne!(draws[i], draws[j], "substreams {i} and {j} agree");
        }
    }
}

/// The documented cylinder order: coefficient `i` is the value on the string
/// with index `i` (so coefficient 0 sits on `"00"`), and the canonical index
/// reads the coefficient vector as a base-`p` integer, coefficient 0 most
/// significant.
#[test]
fn index_convention_is_big_endian() {
    let g = GroupElement::from_coeffs(2, 2, &[1, 0, 0, 0]).unwrap();
    assert_eq!(g.canonical_index().unwrap(), 0b1000);
    assert_eq!(g.value_at(&"00".parse::<BinaryString>().unwrap()).unwrap(), 1);
    assert_eq!(g.value_at(&"11".parse::<BinaryString>().unwrap()).unwrap(), 0);
    let g3 = GroupElement::from_coeffs(3, 1, &[2, 1]).unwrap();
    assert_eq!(g3.canonical_index().unwrap(), 2 * 3 + 1);
}

/// `group_order` agrees with the scan the enumerator performs.
#[test]
fn group_order_matches_enumeration() {
    use niveau_core::group::enumerate_group;
    for (p, n) in [(2u8, 0u32), (2, 3), (3, 2), (5, 1)] {
        let scanned = enumerate_group(p, n, 1 << 12).unwrap().count();
        assert_eq!(group_order(p, n), num_bigint::BigUint::from(scanned));
    }
}
