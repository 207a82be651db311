mod common;

use common::{brute_ocn, is_oriented_by_definition};
use ocn_core::cograph::cograph_ocn;
use ocn_core::coloring::{build_color_graph, transitive_dag_coloring};
use ocn_core::cw_solver::{cw_ocn, cw_ocn_with, cw_states, cw_states_with, CwEngine, CwMode};
use ocn_core::expr::{dico_to_cw2, eval_cw, eval_dico, eval_msp, msp_to_cw7, parse_dico, parse_msp, CwExpr, MspExpr};
use ocn_core::instances::{random_dico, random_msp, random_transitive_dag, EX2, EX3_X1, EX5_X1, EX5_X2, EX6};
use ocn_core::msp_solver::{msp_ocn, msp_ocn_value, paley_coloring, states_ocn, und_3coloring};
use ocn_core::oracle::ocn_exact;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ex5_union() -> MspExpr {
    parse_msp(&format!("({EX5_X1}) | ({EX5_X2})")).unwrap()
}

#[test]
fn worked_examples() {
    assert_eq!(cograph_ocn(&parse_dico(EX2).unwrap()).0, 3);
    assert_eq!(msp_ocn(&parse_msp(EX3_X1).unwrap()).0, 4);
    assert_eq!(msp_ocn_value(&parse_msp(EX5_X1).unwrap()), 4);
    assert_eq!(msp_ocn_value(&parse_msp(EX5_X2).unwrap()), 4);
    assert_eq!(msp_ocn_value(&ex5_union()), 5);
    let g = eval_msp(&ex5_union());
    assert_eq!(ocn_exact(&g).unwrap().0, 5);
}

#[test]
fn twenty_seven_vertex_example_needs_seven_colors() {
    let e = parse_msp(EX6).unwrap();
    let (chi, c) = msp_ocn(&e);
    assert_eq!(chi, 7);
    let g = eval_msp(&e);
    assert!(is_oriented_by_definition(&g, c.as_slice()));
    assert_eq!(ocn_exact(&g).unwrap().0, 7);
}

#[test]
fn twenty_seven_vertex_example_through_clique_width() {
    let cw = msp_to_cw7(&parse_msp(EX6).unwrap());
    assert_eq!(cw_ocn(&cw).unwrap(), 7);
}

#[test]
fn clique_width_examples() {
    let cw = dico_to_cw2(&parse_dico(EX2).unwrap());
    assert_eq!(cw_states(&cw, 3).unwrap().min_used(), Some(3));
    assert!(cw_states(&cw, 2).unwrap().is_empty());
    assert_eq!(cw_ocn(&msp_to_cw7(&parse_msp(EX5_X1).unwrap())).unwrap(), 4);
    assert_eq!(cw_ocn(&CwExpr::create("x", 1)).unwrap(), 1);
    let tt = parse_dico("a > b > c > d").unwrap();
    assert_eq!(cw_ocn(&dico_to_cw2(&tt)).unwrap(), 4);
}

/// A random clique-width expression on `n` vertices with labels `1..=3`.
fn random_cw(n: usize, seed: u64) -> CwExpr {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts: Vec<CwExpr> = (0..n).map(|i| CwExpr::create(format!("x{i}"), rng.gen_range(1..=3))).collect();
    while parts.len() > 1 || rng.gen_bool(0.3) {
        let i = rng.gen_range(0..parts.len());
        let a = rng.gen_range(1..=3);
        let b = (a + rng.gen_range(1..=2) - 1) % 3 + 1;
        match rng.gen_range(0..4) {
            0 | 1 if parts.len() > 1 => {
                let p = parts.swap_remove(i);
                let j = rng.gen_range(0..parts.len());
                let q = parts.swap_remove(j);
                parts.push(CwExpr::union(p, q).unwrap());
            }
            2 => parts[i] = parts[i].clone().add_arcs(a, b),
            _ => parts[i] = parts[i].clone().relabel(a, b),
        }
        if parts.len() == 1 && rng.gen_bool(0.5) {
            break;
        }
    }
    parts.pop().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn msp_engine_matches_brute_force(n in 1usize..=9, seed in any::<u64>()) {
        let e = random_msp(n, seed);
        let g = eval_msp(&e);
        let (chi, c) = msp_ocn(&e);
        prop_assert_eq!(chi, brute_ocn(&g));
        prop_assert_eq!(c.used_colors(), chi);
        prop_assert!(is_oriented_by_definition(&g, c.as_slice()));
    }

    #[test]
    fn color_graph_dp_matches_engine(n in 1usize..=7, seed in any::<u64>()) {
        let e = random_msp(n, seed);
        let (chi, c) = states_ocn(&e);
        prop_assert_eq!(chi, msp_ocn_value(&e));
        prop_assert!(is_oriented_by_definition(&eval_msp(&e), c.as_slice()));
    }

    #[test]
    fn cograph_engine_matches_brute_force(n in 1usize..=9, seed in any::<u64>()) {
        let e = random_dico(n, seed);
        let g = eval_dico(&e);
        let (chi, c) = cograph_ocn(&e);
        prop_assert_eq!(chi, brute_ocn(&g));
        prop_assert_eq!(c.used_colors(), chi);
        prop_assert!(is_oriented_by_definition(&g, c.as_slice()));
    }

    #[test]
    fn paley_and_three_colorings(n in 1usize..=200, seed in any::<u64>()) {
        let e = random_msp(n, seed);
        let g = eval_msp(&e);
        let c = paley_coloring(&e);
        prop_assert!(is_oriented_by_definition(&g, c.as_slice()));
        prop_assert!(c.as_slice().iter().all(|&x| x < 7));
        for (a, b) in build_color_graph(&g, &c).unwrap().arcs {
            prop_assert!([1, 2, 4].contains(&((b + 7 - a) % 7)));
        }
        let u = und_3coloring(&e);
        prop_assert!(u.as_slice().iter().all(|&x| x < 3));
        prop_assert!(g.arcs().all(|(a, b)| u.color(a) != u.color(b)));
    }

    #[test]
    fn transitive_dags(n in 1usize..=10, p in 0.05f64..0.9, seed in any::<u64>()) {
        let g = random_transitive_dag(n, p, seed);
        let c = transitive_dag_coloring(&g).unwrap();
        let k = c.used_colors();
        prop_assert_eq!(k, g.und_clique_number(20).unwrap());
        prop_assert_eq!(k, g.und_chromatic_number(20).unwrap());
        prop_assert_eq!(k, g.longest_path_length().unwrap() + 1);
        prop_assert_eq!(k, brute_ocn(&g));
        prop_assert!(g.arcs().all(|(u, v)| c.color(u) < c.color(v)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn clique_width_engines_agree(n in 1usize..=8, seed in any::<u64>()) {
        let d = random_dico(n, seed);
        let cw = dico_to_cw2(&d);
        let chi = cograph_ocn(&d).0;
        prop_assert_eq!(cw_ocn(&cw).unwrap(), chi);
        prop_assert_eq!(cw_ocn_with(&cw, CwEngine::States(CwMode::Literal)).unwrap().chi, chi);

        let m = random_msp(n, seed);
        let cw = msp_to_cw7(&m);
        let chi = msp_ocn_value(&m);
        prop_assert_eq!(cw_ocn(&cw).unwrap(), chi);
        let lit = cw_ocn_with(&cw, CwEngine::States(CwMode::Literal)).unwrap();
        prop_assert_eq!(lit.chi, chi);
        prop_assert_eq!(cw_ocn_with(&cw, CwEngine::States(CwMode::Canonical)).unwrap().chi, chi);
    }

    #[test]
    fn random_clique_width_expressions(n in 1usize..=7, seed in any::<u64>()) {
        let e = random_cw(n, seed);
        let Ok((g, _)) = eval_cw(&e) else { return Ok(()) };
        let chi = brute_ocn(&g);
        prop_assert_eq!(cw_ocn(&e).unwrap(), chi);
        prop_assert_eq!(cw_ocn_with(&e, CwEngine::States(CwMode::Literal)).unwrap().chi, chi);
    }

    #[test]
    fn state_sets_grow_with_colors(n in 1usize..=6, seed in any::<u64>()) {
        let e = msp_to_cw7(&random_msp(n, seed));
        let mut last: Option<usize> = None;
        for r in 1..=4 {
            let set = cw_states(&e, r).unwrap();
            prop_assert!(set.within_bound(set.max_states));
            let can = cw_states_with(&e, r, CwMode::Canonical).unwrap();
            prop_assert_eq!(can.min_used(), set.min_used());
            if let Some(prev) = last {
                prop_assert!(set.min_used().is_some_and(|u| u <= prev));
            }
            if set.min_used().is_some() {
                last = set.min_used();
            }
        }
    }
}
