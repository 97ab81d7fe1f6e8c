use itertools::Itertools;
use proptest::prelude::*;

use quotdeg_core::indices::{quot_indices_up_to, CompositeIndex, SchubertSymbol};

/// Every element of `I(m,p)` with entries at most `max_entry`.
fn quot_indices_bounded(m: usize, n: u32, max_entry: u32) -> Vec<CompositeIndex> {
    (1..=max_entry)
        .combinations(m)
        .filter_map(|entries| CompositeIndex::new(entries, n).ok())
        .filter(CompositeIndex::is_quot_index)
        .collect()
}

#[test]
fn schubert_round_trip_and_dimension() {
    for n in 2..=6u32 {
        for m in 1..n as usize {
            for columns in (1..=n).combinations(m) {
                for d in 0..=4 {
                    let symbol = SchubertSymbol::new(columns.clone(), d, n).unwrap();
                    let alpha = symbol.to_composite();
                    assert!(alpha.is_quot_index(), "{symbol} -> {alpha}");
                    assert_eq!(alpha.to_schubert().unwrap(), symbol);
                    let weight: i64 = columns
                        .iter()
                        .enumerate()
                        .map(|(l, &c)| i64::from(c) - l as i64 - 1)
                        .sum();
                    assert_eq!(alpha.dimension(), weight + i64::from(n) * i64::from(d));
                    let mu = symbol.partition().unwrap();
                    assert_eq!(
                        mu.size() as i64,
                        (m as i64) * i64::from(n - m as u32) - weight
                    );
                    assert!(mu.parts().iter().all(|&x| x <= n - m as u32));
                }
            }
        }
    }
}

#[test]
fn sequence_order_matches_componentwise_on_quot_indices() {
    for n in 2..=5u32 {
        for m in 1..n as usize {
            let elements = quot_indices_bounded(m, n, 3 * n);
            for a in &elements {
                for b in &elements {
                    assert_eq!(
                        a.leq_sequence(b).unwrap(),
                        a.leq(b).unwrap(),
                        "{a} vs {b} (n = {n})"
                    );
                }
            }
        }
    }
}

#[test]
fn sequence_prefix_is_long_enough() {
    // Compare against a prefix twice as long on the full index set.
    for n in 3..=5u32 {
        for m in 1..n as usize {
            let elements: Vec<_> = (1..=2 * n + 2)
                .combinations(m)
                .filter_map(|e| CompositeIndex::new(e, n).ok())
                .collect();
            for a in &elements {
                for b in &elements {
                    let long = 2 * a.sequence_prefix_len(b);
                    let reference = a
                        .sequence()
                        .zip(b.sequence())
                        .take(long)
                        .all(|(x, y)| x <= y);
                    assert_eq!(a.leq_sequence(b).unwrap(), reference, "{a} vs {b}");
                }
            }
        }
    }
}

#[test]
fn covers_agree_with_brute_force_cover_relation() {
    for n in 2..=5u32 {
        for m in 1..n as usize {
            let p = n - m as u32;
            for alpha in quot_indices_up_to(m, p, 8) {
                let lower: Vec<_> = alpha.lower_set().unwrap().collect();
                let strictly_below =
                    |x: &CompositeIndex, y: &CompositeIndex| x != y && x.leq(y).unwrap();
                for beta in &lower {
                    let brute = strictly_below(beta, &alpha)
                        && !lower
                            .iter()
                            .any(|g| strictly_below(beta, g) && strictly_below(g, &alpha));
                    assert_eq!(alpha.covers(beta).unwrap(), brute, "{alpha} over {beta}");
                }
                let from_covers: Vec<_> = lower
                    .iter()
                    .filter(|beta| alpha.covers(beta).unwrap())
                    .cloned()
                    .collect();
                assert_eq!(alpha.lower_covers(), from_covers, "{alpha}");
                for beta in alpha.lower_covers() {
                    assert_eq!(beta.dimension(), alpha.dimension() - 1);
                }
            }
        }
    }
}

#[test]
fn lower_sets_are_lexicographic_and_complete() {
    for alpha in quot_indices_up_to(3, 3, 10) {
        let lower: Vec<_> = alpha.lower_set().unwrap().collect();
        assert!(lower.windows(2).all(|w| w[0].entries() < w[1].entries()));
        let brute: Vec<_> = quot_indices_bounded(3, 6, *alpha.entries().last().unwrap())
            .into_iter()
            .filter(|b| b.leq(&alpha).unwrap())
            .collect();
        assert_eq!(lower, brute);
    }
}

fn tilde_index(n: u32) -> impl Strategy<Value = CompositeIndex> {
    (1..n as usize)
        .prop_flat_map(move |m| proptest::sample::subsequence((1..=3 * n).collect::<Vec<_>>(), m))
        .prop_filter_map("residue clash", move |entries| {
            CompositeIndex::new(entries, n).ok()
        })
}

fn same_shape_triple() -> impl Strategy<Value = (CompositeIndex, CompositeIndex, CompositeIndex)> {
    (3u32..=6, 1usize..=3).prop_flat_map(|(n, m)| {
        let m = m.min(n as usize - 1);
        let one = proptest::sample::subsequence((1..=3 * n).collect::<Vec<_>>(), m)
            .prop_filter_map("residue clash", move |e| CompositeIndex::new(e, n).ok());
        (one.clone(), one.clone(), one)
    })
}

proptest! {
    #[test]
    fn sequence_order_is_reflexive(alpha in (3u32..=6).prop_flat_map(tilde_index)) {
        prop_assert!(alpha.leq_sequence(&alpha).unwrap());
    }

    #[test]
    fn sequence_order_is_antisymmetric_and_transitive((a, b, c) in same_shape_triple()) {
        if a.leq_sequence(&b).unwrap() && b.leq_sequence(&a).unwrap() {
            prop_assert_eq!(&a, &b);
        }
        if a.leq_sequence(&b).unwrap() && b.leq_sequence(&c).unwrap() {
            prop_assert!(a.leq_sequence(&c).unwrap());
        }
    }

    #[test]
    fn dimension_is_nonnegative(alpha in (3u32..=6).prop_flat_map(tilde_index)) {
        prop_assert!(alpha.dimension() >= 0);
    }
}
