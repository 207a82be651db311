mod common;

use common::{brute_ocn, is_oriented_by_definition};
use ocn_core::coloring::{build_color_graph, verify_oriented_coloring};
use ocn_core::instances::{cycle, paley7, path, random_dag, transitive_tournament};
use ocn_core::oracle::{ocn_decide, ocn_exact};
use ocn_core::{Coloring, Digraph, OcnError};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random oriented graph: each pair gets no arc or one arc in a random direction.
fn random_oriented(n: usize, p: f64, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                arcs.push(if rng.gen_bool(0.5) { (i, j) } else { (j, i) });
            }
        }
    }
    Digraph::from_arcs(n, arcs).unwrap()
}

#[test]
fn small_exact_values() {
    assert_eq!(ocn_exact(&path(2)).unwrap().0, 2);
    assert_eq!(ocn_exact(&path(3)).unwrap().0, 3);
    assert_eq!(ocn_exact(&cycle(4)).unwrap().0, 4);
    assert_eq!(ocn_exact(&cycle(5)).unwrap().0, 5);
    assert_eq!(ocn_exact(&cycle(3)).unwrap().0, 3);
    assert_eq!(ocn_exact(&paley7()).unwrap().0, 7);
    assert_eq!(ocn_exact(&transitive_tournament(6)).unwrap().0, 6);
}

#[test]
fn non_oriented_input_is_rejected() {
    let g = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
    assert!(matches!(ocn_exact(&g), Err(OcnError::NotOriented { .. })));
}

#[test]
fn brute_force_on_fixed_graphs() {
    for n in 1..=7 {
        assert_eq!(brute_ocn(&path(n)), ocn_exact(&path(n)).unwrap().0, "path {n}");
    }
    for n in 3..=7 {
        assert_eq!(brute_ocn(&cycle(n)), ocn_exact(&cycle(n)).unwrap().0, "cycle {n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_matches_brute_force(n in 1usize..=8, p in 0.1f64..0.9, seed in any::<u64>()) {
        let g = random_oriented(n, p, seed);
        let (chi, c) = ocn_exact(&g).unwrap();
        prop_assert_eq!(chi, brute_ocn(&g));
        prop_assert_eq!(c.used_colors(), chi);
        prop_assert!(is_oriented_by_definition(&g, c.as_slice()));
    }

    #[test]
    fn decide_is_monotone(n in 1usize..=7, p in 0.2f64..0.8, seed in any::<u64>()) {
        let g = random_oriented(n, p, seed);
        let chi = ocn_exact(&g).unwrap().0;
        for r in 1..=n {
            prop_assert_eq!(ocn_decide(&g, r).unwrap().is_some(), r >= chi);
        }
    }

    #[test]
    fn verifier_matches_definition(n in 1usize..=7, p in 0.1f64..0.9, seed in any::<u64>(), colors in prop::collection::vec(0usize..4, 7)) {
        let g = random_oriented(n, p, seed);
        let c = Coloring::new(colors[..n].to_vec());
        let ok = verify_oriented_coloring(&g, &c).unwrap().is_none();
        prop_assert_eq!(ok, is_oriented_by_definition(&g, c.as_slice()));
        if ok {
            prop_assert!(build_color_graph(&g, &c).unwrap().is_oriented());
        }
    }

    #[test]
    fn dags_need_at_most_longest_path_plus_one(n in 1usize..=9, p in 0.1f64..0.9, seed in any::<u64>()) {
        let g = random_dag(n, p, seed);
        let chi = ocn_exact(&g).unwrap().0;
        prop_assert!(chi <= g.longest_path_length().unwrap() + 1);
        prop_assert!(chi >= g.und_chromatic_number(20).unwrap());
    }
}
