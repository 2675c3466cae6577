use std::collections::BTreeSet;
use std::sync::OnceLock;
use std::time::Instant;

use geobound::graphs::{
    alternating_cycles, canonical_form, count_table, enumerate_regular, one_factorization, FactorGraph, SimpleGraph,
};
use proptest::prelude::*;

mod common;
use common::{count_isomorphisms, factorial, labeled_regular, to_adj, Adj};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn enumeration_matches_brute_force_oracle() {
    let start = Instant::now();
    for n in 5..=8 {
        let labeled = labeled_regular(n);
        let mut reps: Vec<Adj> = Vec::new();
        for g in &labeled {
            if !reps.iter().any(|r| count_isomorphisms(g, r, true) > 0) {
                reps.push(g.clone());
            }
        }
        // orbit–stabilizer: the classes account for every labeled graph
        let orbit_total: usize = reps.iter().map(|r| factorial(n) / count_isomorphisms(r, r, false)).sum();
        assert_eq!(orbit_total, labeled.len(), "n = {n}");

        let found = enumerate_regular(n);
        assert_eq!(found.len(), reps.len(), "n = {n}");
        for g in &found {
            assert!(g.is_regular(4) && g.is_connected());
            let adj = to_adj(g);
            assert_eq!(reps.iter().filter(|r| count_isomorphisms(&adj, r, true) > 0).count(), 1);
        }
    }
    assert!(start.elapsed().as_secs() < 120);
}

#[test]
fn small_counts_and_timing() {
    let start = Instant::now();
    let table = count_table(8);
    let counts: Vec<(usize, usize, usize)> = table.iter().map(|r| (r.n, r.regular, r.factorable)).collect();
    assert_eq!(counts, vec![(5, 1, 0), (6, 1, 1), (7, 2, 0), (8, 6, 6)]);
    assert!(start.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn k5_has_no_factorization() {
    let k5 = SimpleGraph::complete(5).unwrap();
    assert!(one_factorization(&k5).is_none());
}

#[test]
fn factorizations_are_perfect_matchings_with_even_alternating_cycles() {
    for n in [6, 8] {
        for g in enumerate_regular(n) {
            let f = one_factorization(&g).expect("even order graphs here factorize");
            f.validate().unwrap();
            let mut seen = BTreeSet::new();
            for c in 0..4 {
                let class: Vec<(usize, usize)> =
                    f.colored_edges().into_iter().filter(|e| e.2 == c).map(|(a, b, _)| (a, b)).collect();
                assert_eq!(class.len(), n / 2);
                let covered: BTreeSet<usize> = class.iter().flat_map(|&(a, b)| [a, b]).collect();
                assert_eq!(covered.len(), n);
                for e in class {
                    assert!(g.has_edge(e.0, e.1));
                    assert!(seen.insert(e));
                }
            }
            assert_eq!(seen.len(), g.num_edges());
            let cycles = alternating_cycles(&f).unwrap();
            assert!(cycles.iter().all(|c| c.length >= 4 && c.length % 2 == 0));
            // each pair of colors covers all vertices with its cycles
            for a in 1..=4 {
                for b in (a + 1)..=4 {
                    let total: usize = cycles.iter().filter(|c| c.colors == (a, b)).map(|c| c.length).sum();
                    assert_eq!(total, n);
                }
            }
            let text = f.to_text();
            assert_eq!(FactorGraph::parse(&text).unwrap(), f);
        }
    }
}

#[test]
fn odd_orders_never_factorize() {
    for n in [5, 7, 9] {
        assert!(enumerate_regular(n).iter().all(|g| one_factorization(g).is_none()));
    }
}

fn shuffle_pool() -> &'static Vec<SimpleGraph> {
    static POOL: OnceLock<Vec<SimpleGraph>> = OnceLock::new();
    POOL.get_or_init(|| (7..=9).flat_map(enumerate_regular).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_labels(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for g in shuffle_pool() {
            let mut perm: Vec<usize> = (0..g.n()).collect();
            perm.shuffle(&mut rng);
            let h = g.relabel(&perm);
            prop_assert_eq!(canonical_form(&h), canonical_form(g));
            let text = h.to_text();
            prop_assert_eq!(canonical_form(&SimpleGraph::parse(&text).unwrap()), canonical_form(g));
        }
    }
}
