use alpp::answer::Answer;
use alpp::cvd_ell::{
    clique_profile, exchange, f1, f2, mark_vertices, nonterminal_threshold, solve_cvd_ell,
    terminal_threshold, CvdEllReducer,
};
use alpp::generate::{gen_cluster, ClusterParams};
use alpp::graph::Graph;
use alpp::instance::{validate_packing, Instance, Modulator, ModulatorKind, Packing};
use alpp::modulator::cluster_decomposition;
use alpp::oracle::{solve_exact, DEFAULT_CATALOG_CAP};
use alpp::trace::RuleId;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One isolated modulator vertex (id 0) next to a clique of `terminals` terminals followed by
/// `others` non-terminals.
fn lone_clique(terminals: usize, others: usize, ell: usize) -> Instance {
    let n = 1 + terminals + others;
    let mut g = Graph::new(n);
    for u in 1..n {
        for v in u + 1..n {
            g.add_edge(u, v).unwrap();
        }
    }
    Instance::new(
        g,
        1..=terminals,
        ell,
        1,
        Some(Modulator::new(ModulatorKind::Cvd, vec![0])),
    )
    .unwrap()
}

fn corpus(seed: u64, size: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size as u64)
        .map(|i| {
            let params = ClusterParams {
                cliques: rng.gen_range(1..=6),
                max_clique: rng.gen_range(3..=9),
                modulator: rng.gen_range(0..=2),
                attach_prob: rng.gen_range(0.2..0.8),
                terminal_prob: rng.gen_range(0.15..0.6),
                path_order: rng.gen_range(5..=6),
                demand: rng.gen_range(1..=3),
            };
            gen_cluster(&params, seed * 1000 + i).unwrap()
        })
        .collect()
}

#[test]
fn threshold_values_for_one_modulator_vertex() {
    assert_eq!((f1(5, 1), f2(5, 1)), (12, 18));
    assert_eq!(nonterminal_threshold(5, 1), 34);
    assert_eq!(terminal_threshold(5, 1), Some(8));
    assert_eq!(terminal_threshold(2, 1), None);
    for ell in 3..=8 {
        for m in 0..=4 {
            let real = (f1(ell, m) + 1) as f64 * ell as f64 / 2.0 + 1.0;
            let t = nonterminal_threshold(ell, m) as f64;
            assert!(t >= real && t < real + 1.0);
            let real = (f2(ell, m) + ell - 3) as f64 / (ell - 2) as f64 + 1.0;
            let t = terminal_threshold(ell, m).unwrap() as f64;
            assert!(t >= real && t < real + 1.0);
        }
    }
}

#[test]
fn nonterminal_trim_waits_for_its_threshold() {
    // Marking reserves 6 terminals and 6 non-terminals of the clique at l = 5, m = 1.
    let below = lone_clique(6, 6 + 33, 5);
    let mut r = CvdEllReducer::new(&below).unwrap();
    assert_eq!(r.step(), None);
    let at = lone_clique(6, 6 + 34, 5);
    let mut r = CvdEllReducer::new(&at).unwrap();
    assert_eq!(r.step(), Some(RuleId::CvdNonTerminal));
    r.run();
    assert_eq!(r.instance().vertex_count(), 1 + 6 + 6 + 33);
}

#[test]
fn terminal_trim_waits_for_its_threshold() {
    let below = lone_clique(6 + 7, 6 + 2, 5);
    let mut r = CvdEllReducer::new(&below).unwrap();
    assert_eq!(r.step(), None);
    let at = lone_clique(6 + 8, 6 + 2, 5);
    let mut r = CvdEllReducer::new(&at).unwrap();
    assert_eq!(r.step(), Some(RuleId::CvdTerminal));
    // With l - 2 free non-terminals the clique extracts a path instead.
    let roomy = lone_clique(6 + 8, 6 + 3, 5);
    let mut r = CvdEllReducer::new(&roomy).unwrap();
    assert_eq!(r.step(), Some(RuleId::CvdPath));
}

#[test]
fn marks_stay_within_budget_during_reduction() {
    for inst in corpus(91, 40) {
        let mut r = CvdEllReducer::new(&inst).unwrap();
        loop {
            let m = r.modulator().len();
            let ell = r.instance().path_order();
            let marks = r.marks();
            for (q, mk) in r.cliques().iter().zip(&marks.cliques) {
                assert!(mk.marked_in_a.len() <= f1(ell, m));
                assert!(mk.marked_out_a.len() <= f2(ell, m));
                assert!(mk.provenance.keys().all(|v| q.contains(v)));
            }
            if r.step().is_none() {
                break;
            }
        }
        r.check_fixpoint_bounds().unwrap();
    }
}

#[test]
fn every_step_preserves_the_answer() {
    let mut fired = std::collections::BTreeSet::new();
    let mut cases = corpus(92, 40);
    cases.push(lone_clique(8, 9, 5));
    for inst in cases {
        let truth = solve_exact(&inst).unwrap().is_yes();
        let mut r = CvdEllReducer::new(&inst).unwrap();
        let before = r.instance().vertex_count();
        while let Some(rule) = r.step() {
            fired.insert(rule.name());
            assert!(r.instance().vertex_count() < before);
            let now = r.instance();
            let yes = now.demand() == 0 || solve_exact(now).unwrap().is_yes();
            assert_eq!(yes, truth, "after {rule}");
        }
    }
    assert!(
        fired.contains("cvd-path") && fired.contains("cvd-class"),
        "{fired:?}"
    );
}

#[test]
fn solver_matches_exact_and_certificates_validate() {
    for inst in corpus(93, 80) {
        let run = solve_cvd_ell(&inst, DEFAULT_CATALOG_CAP).unwrap();
        let truth = solve_exact(&inst).unwrap();
        assert_eq!(run.answer.is_yes(), truth.is_yes());
        assert!(!matches!(run.answer, Answer::NoProbable));
        if let Some(p) = run.answer.packing() {
            assert!(validate_packing(&inst, p).is_ok());
        }
        // Paths touching the modulator use at most l·m vertices.
        if let Some(p) = truth.packing() {
            let m = inst.modulator().unwrap();
            let touching: usize = p
                .paths
                .iter()
                .filter(|path| path.vertices().iter().any(|v| m.vertices.contains(v)))
                .map(|path| path.len())
                .sum();
            assert!(touching <= inst.path_order() * m.vertices.len());
        }
    }
}

#[test]
fn empty_modulator_with_order_two_counts_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(94);
    for _ in 0..60 {
        let sizes: Vec<usize> = (0..rng.gen_range(1..=4))
            .map(|_| rng.gen_range(1..=5))
            .collect();
        let n: usize = sizes.iter().sum();
        let mut g = Graph::new(n);
        let mut terminals = Vec::new();
        let mut start = 0;
        let mut pairs = 0;
        for &s in &sizes {
            for u in start..start + s {
                for v in u + 1..start + s {
                    g.add_edge(u, v).unwrap();
                }
            }
            let t = rng.gen_range(0..=s);
            terminals.extend(start..start + t);
            pairs += t / 2;
            start += s;
        }
        let k = rng.gen_range(1..=4);
        let inst = Instance::new(
            g,
            terminals,
            2,
            k,
            Some(Modulator::new(ModulatorKind::Cvd, vec![])),
        )
        .unwrap();
        let run = solve_cvd_ell(&inst, DEFAULT_CATALOG_CAP).unwrap();
        assert_eq!(run.answer.is_yes(), pairs >= k);
        assert_eq!(solve_exact(&inst).unwrap().is_yes(), pairs >= k);
    }
}

#[test]
fn profiles_partition_each_clique() {
    for inst in corpus(95, 30) {
        let m = &inst.modulator().unwrap().vertices;
        for q in cluster_decomposition(inst.graph(), m).unwrap() {
            let p = clique_profile(&q, inst.graph(), m, inst.terminal_mask());
            assert_eq!(p.total(), q.len());
        }
    }
}

#[test]
fn random_in_clique_swaps_keep_packings_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(96);
    let mut swaps = 0;
    let mut cases = Vec::new();
    for _ in 0..40 {
        let sizes: Vec<usize> = (0..rng.gen_range(1..=3))
            .map(|_| rng.gen_range(6..=9))
            .collect();
        let n: usize = sizes.iter().sum();
        let mut g = Graph::new(n);
        let mut terminals = Vec::new();
        let mut start = 0;
        for &s in &sizes {
            for u in start..start + s {
                for v in u + 1..start + s {
                    g.add_edge(u, v).unwrap();
                }
            }
            terminals.extend(start..start + 4);
            start += s;
        }
        let ell = rng.gen_range(3..=4);
        cases.push(
            Instance::new(
                g,
                terminals,
                ell,
                2,
                Some(Modulator::new(ModulatorKind::Cvd, vec![])),
            )
            .unwrap(),
        );
    }
    cases.extend(corpus(97, 60));
    for inst in cases {
        let Answer::Yes(packing) = solve_exact(&inst).unwrap() else {
            continue;
        };
        if packing.len() < 2 {
            continue;
        }
        let m = &inst.modulator().unwrap().vertices;
        let cliques = cluster_decomposition(inst.graph(), m).unwrap();
        let clique_of = |v: usize| cliques.iter().position(|q| q.contains(&v));
        for _ in 0..10 {
            let mut idx: Vec<usize> = (0..packing.len()).collect();
            idx.shuffle(&mut rng);
            let (i, j) = (idx[0], idx[1]);
            let inner = |p: &alpp::instance::Path| p.vertices()[1..p.len() - 1].to_vec();
            let (xs, ys) = (inner(&packing.paths[i]), inner(&packing.paths[j]));
            let (Some(&a2), Some(&b2)) = (xs.choose(&mut rng), ys.choose(&mut rng)) else {
                continue;
            };
            if clique_of(a2).is_none() || clique_of(a2) != clique_of(b2) {
                continue;
            }
            let Ok((p1, p2)) = exchange(inst.graph(), &packing.paths[i], &packing.paths[j], a2, b2)
            else {
                continue;
            };
            let mut paths = packing.paths.clone();
            paths[i] = p1;
            paths[j] = p2;
            assert!(validate_packing(&inst, &Packing::new(paths)).is_ok());
            swaps += 1;
        }
    }
    assert!(swaps > 10, "only {swaps} swaps exercised");
}

#[test]
fn marking_without_modulator_reserves_one_per_side() {
    let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3), (0, 3), (1, 3)]).unwrap();
    let inst = Instance::new(
        g,
        [0, 1],
        5,
        1,
        Some(Modulator::new(ModulatorKind::Cvd, vec![])),
    )
    .unwrap();
    let table = mark_vertices(&inst, &[], &[vec![0, 1, 2, 3]]);
    assert_eq!(table.cliques[0].marked_in_a, vec![0]);
    assert_eq!(table.cliques[0].marked_out_a, vec![2]);
}
