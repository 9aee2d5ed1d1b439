use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use reassembly::generate;
use reassembly::oracles;
use reassembly::reductions::{self, LemmaParams};
use reassembly::solvers::{self, Objective, Sense};
use reassembly::{Graph, VertexSet};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn min_bisection_invariant_under_relabeling(seed in any::<u64>(), half in 1usize..=4, p in 0.0f64..1.0) {
        let mut r = rng(seed);
        let g = generate::random_graph(&mut r, 2 * half, p);
        let perm = generate::random_permutation(&mut r, 2 * half);
        let h = g.relabel(&perm).unwrap();
        let before = oracles::min_bisections(&g).unwrap();
        let after = oracles::min_bisections(&h).unwrap();
        prop_assert_eq!(before.value, after.value);
        prop_assert_eq!(before.optima.len(), after.optima.len());
        for b in &before.optima {
            let image = (b.a.map(|v| perm[v]), b.b.map(|v| perm[v]));
            prop_assert!(after.optima.iter().any(|o| (o.a.clone(), o.b.clone()) == image
                || (o.b.clone(), o.a.clone()) == image));
            prop_assert_eq!(b.value(&g), before.value);
        }
    }

    #[test]
    fn clique_cover_witnesses_and_monotonicity(seed in any::<u64>(), n in 1usize..=10, p in 0.0f64..1.0) {
        let g = generate::random_graph(&mut rng(seed), n, p);
        let mut previous = false;
        for k in 1..=n {
            let cover = oracles::clique_cover_exists(&g, k).unwrap();
            if let Some(blocks) = &cover {
                prop_assert!(blocks.len() <= k);
                prop_assert!(oracles::verify_clique_cover(&g, blocks, None));
            }
            prop_assert!(!previous || cover.is_some());
            previous = cover.is_some();
        }
        prop_assert!(previous);
        if n % 4 == 0 {
            if let Some(blocks) = oracles::equal_size_clique_cover4(&g).unwrap() {
                prop_assert!(oracles::verify_clique_cover(&g, &blocks, Some(&[n / 4; 4])));
                prop_assert!(oracles::clique_cover_exists(&g, 4).unwrap().is_some());
            }
        }
    }

    #[test]
    fn fixed_size_witnesses_verify(seed in any::<u64>(), n in 4usize..=9, p in 0.3f64..1.0) {
        let g = generate::random_graph(&mut rng(seed), n, p);
        for sizes in oracles::partitions4(n).unwrap() {
            if let Some(blocks) = oracles::fixed_size_clique_cover4(&g, sizes).unwrap() {
                prop_assert!(oracles::verify_clique_cover(&g, &blocks, Some(&sizes)));
            }
        }
    }

    #[test]
    fn leaf_paths_cover_containing_clusters(seed in any::<u64>(), n in 1usize..16) {
        let t = generate::random_tree(&mut rng(seed), n);
        for v in 0..n {
            let path = t.leaf_path(v).unwrap();
            prop_assert!(path.len() <= t.height() + 1);
            let containing: Vec<&VertexSet> = t.clusters().iter().filter(|c| c.contains(v)).collect();
            prop_assert_eq!(path.len(), containing.len());
            prop_assert!(containing.iter().all(|c| path.contains(c)));
        }
    }

    #[test]
    fn clique_beta_is_tree_independent(seed in any::<u64>(), p in 1u32..=5) {
        let n = 1usize << p;
        let t = generate::random_balanced_tree(&mut rng(seed), n).unwrap();
        let k = Graph::complete(n).unwrap();
        prop_assert_eq!(t.measures(&k).unwrap().beta as u64, solvers::beta_complete_closed_form(n).unwrap());
    }

    #[test]
    fn augment_lands_on_a_power_of_two(seed in any::<u64>(), half in 1usize..=20, p in 0.0f64..1.0) {
        let n = 2 * half;
        let g = generate::random_graph(&mut rng(seed), n, p);
        let ag = reductions::augment(&g).unwrap();
        prop_assert!(ag.graph.n().is_power_of_two());
        prop_assert_eq!(ag.graph.n(), 2 * n.next_power_of_two());
        prop_assert_eq!(ag.r % 2, 0);
        prop_assert_eq!(ag.graph.m(), g.m() + ag.q * (ag.q - 1) + 2 * n * ag.q);
    }

    #[test]
    fn gadget_equivalence(seed in any::<u64>(), n in 4usize..=5, p in 0.0f64..0.8) {
        let g = generate::random_graph(&mut rng(seed), n, p);
        for sizes in oracles::partitions4(n).unwrap() {
            let gadget = reductions::equal_size_gadget(&g, sizes).unwrap();
            for (i, a) in gadget.added.iter().enumerate() {
                prop_assert!(gadget.graph.is_clique(a));
                prop_assert_eq!(a.len(), n - sizes[i]);
                for b in &gadget.added[i + 1..] {
                    prop_assert_eq!(gadget.graph.bridge_count(a, b), 0);
                }
            }
            prop_assert_eq!(
                oracles::fixed_size_clique_cover4(&g, sizes).unwrap().is_some(),
                oracles::equal_size_clique_cover4(&gadget.graph).unwrap().is_some()
            );
        }
    }

    #[test]
    fn greedy_never_beats_the_optimum(seed in any::<u64>(), p in 1u32..=4, density in 0.0f64..1.0) {
        let n = 1usize << p;
        let g = generate::random_graph(&mut rng(seed), n, density);
        for objective in [Objective::Alpha, Objective::Beta] {
            let greedy = solvers::greedy_balanced_heuristic(&g, objective).unwrap();
            let exact = solvers::optimize_balanced(&g, objective, Sense::Minimize).unwrap();
            prop_assert!(greedy.tree.is_balanced());
            prop_assert!(greedy.value >= exact.value);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn lemma_reports_are_consistent(seed in any::<u64>(), lemma in 1u8..=6) {
        let params = LemmaParams { instances: 3, seed, n: Vec::new() };
        let report = reductions::verify_lemma(lemma, &params).unwrap();
        prop_assert_eq!(report.tried, 3);
        prop_assert_eq!(report.passed, report.counterexample.is_none());
        prop_assert_eq!(reductions::verify_lemma(lemma, &params).unwrap(), report);
    }
}

#[test]
fn lemma_batches_from_the_examples() {
    let batch = |lemma, instances, n: &[usize]| {
        reductions::verify_lemma(
            lemma,
            &LemmaParams {
                instances,
                seed: 42,
                n: n.to_vec(),
            },
        )
        .unwrap()
    };
    assert!(batch(1, 20, &[4, 6]).passed);
    assert!(batch(4, 200, &[4, 8]).passed);
    assert!(batch(6, 20, &[8]).passed);
}
