use metanet_core::bestest::{self, BestestConfig};
use metanet_core::landscape::{self, mds_embed, vi_matrix};
use metanet_core::metrics::{self, EmiMode, Normalization};
use metanet_core::models::{self, Model};
use metanet_core::neosbm::{self, NeoConfig, NeoModel};
use metanet_core::synthgen::{self, MultiOptimumConfig, SynthConfig};
use metanet_core::{rng, BlockStats, Graph, Partition};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut b = bits.iter();
            for i in 0..n {
                for j in (i + 1)..n {
                    if *b.next().unwrap() {
                        edges.push((i, j));
                    }
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn labels(n: usize, k: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..k, n)
}

fn partition_pair(max_n: usize) -> impl Strategy<Value = (Partition, Partition)> {
    (1..=max_n, 1..=4usize, 1..=4usize).prop_flat_map(|(n, ka, kb)| {
        (labels(n, ka), labels(n, kb)).prop_map(|(a, b)| (Partition::from_assignment(a), Partition::from_assignment(b)))
    })
}

/// Same grouping under a different labeling: group `g` becomes `k-1-g`.
fn relabel(p: &Partition) -> Partition {
    let k = p.k();
    Partition::from_assignment(p.assignment().iter().map(|&g| k - 1 - g).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn metrics_symmetric_and_label_free((u, v) in partition_pair(12)) {
        for f in [
            |a: &Partition, b: &Partition| metrics::nmi(a, b, Normalization::Sqrt).unwrap(),
            |a: &Partition, b: &Partition| metrics::ami(a, b).unwrap(),
            |a: &Partition, b: &Partition| metrics::vi(a, b).unwrap(),
        ] {
            let x = f(&u, &v);
            prop_assert_eq!(x, f(&v, &u));
            prop_assert_eq!(x, f(&relabel(&u), &v));
        }
        let nmi = metrics::nmi(&u, &v, Normalization::Sqrt).unwrap();
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&nmi));
        prop_assert!(metrics::vi(&u, &v).unwrap() >= 0.0);
        prop_assert!(metrics::vi(&u, &u).unwrap().abs() < 1e-12);
    }

    #[test]
    fn vi_triangle_inequality(
        (n, a, b, c) in (1..=10usize).prop_flat_map(|n| (Just(n), labels(n, 4), labels(n, 4), labels(n, 4)))
    ) {
        let _ = n;
        let (a, b, c) = (Partition::from_assignment(a), Partition::from_assignment(b), Partition::from_assignment(c));
        let ab = metrics::vi(&a, &b).unwrap();
        let bc = metrics::vi(&b, &c).unwrap();
        let ac = metrics::vi(&a, &c).unwrap();
        prop_assert!(ac <= ab + bc + 1e-12);
    }

    #[test]
    fn expected_mi_closed_form_matches_brute_force((u, v) in partition_pair(7)) {
        let closed = metrics::expected_mi(&u, &v, EmiMode::ClosedForm).unwrap();
        let brute = metrics::expected_mi(&u, &v, EmiMode::BruteForce).unwrap();
        prop_assert!((closed - brute).abs() < 1e-9, "{} vs {}", closed, brute);
    }

    #[test]
    fn block_stats_identities((g, a) in graph_strategy(15).prop_flat_map(|g| {
        let n = g.n_nodes();
        (Just(g), labels(n, 4))
    })) {
        let p = Partition::from_assignment(a);
        let s = BlockStats::compute(&g, &p).unwrap();
        s.validate().unwrap();
        let k = s.k();
        let total: u64 = (0..k).flat_map(|r| (0..k).map(move |t| (r, t))).map(|(r, t)| s.m(r, t)).sum();
        prop_assert_eq!(total, 2 * g.n_edges() as u64);
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.n_edges());
        for r in 0..k {
            for t in 0..k {
                prop_assert_eq!(s.m(r, t), s.m(t, r));
            }
        }
    }

    #[test]
    fn move_node_matches_recompute(
        (g, a, node_seed, to) in graph_strategy(12).prop_flat_map(|g| {
            let n = g.n_nodes();
            (Just(g), labels(n, 3), 0..n, 0..3usize)
        })
    ) {
        let mut a = a;
        let mut s = BlockStats::from_assignment(&g, &a, 3);
        s.move_node(&g, &a, node_seed, to);
        a[node_seed] = to;
        prop_assert_eq!(s, BlockStats::from_assignment(&g, &a, 3));
    }

    #[test]
    fn entropy_variants_are_consistent((g, a) in graph_strategy(14).prop_flat_map(|g| {
        let n = g.n_nodes();
        (Just(g), labels(n, 3))
    })) {
        prop_assume!(g.n_edges() > 0);
        let p = Partition::from_assignment(a);
        let s = BlockStats::compute(&g, &p).unwrap();
        let rapid = models::bernoulli_entropy_rapid(&s).unwrap();
        let nats = models::sbm_loglik(&s);
        prop_assert!((rapid * std::f64::consts::LN_2 + nats).abs() < 1e-9 * (1.0 + nats.abs()));
        let pairwise = models::bernoulli_loglik_pairwise(&g, &p).unwrap();
        prop_assert!((pairwise - nats).abs() < 1e-9 * (1.0 + nats.abs()));
        prop_assert!(rapid >= -1e-12);
    }

    #[test]
    fn bestest_p_value_in_range_and_deterministic((g, a, seed) in graph_strategy(10).prop_flat_map(|g| {
        let n = g.n_nodes();
        (Just(g), labels(n, 2), any::<u64>())
    })) {
        prop_assume!(g.n_edges() > 0);
        let p = Partition::from_assignment(a);
        let cfg = BestestConfig::new(Model::Sbm, 49, seed);
        let r1 = bestest::run_bestest(&g, &p, &cfg).unwrap();
        let r2 = bestest::run_bestest(&g, &p, &cfg).unwrap();
        prop_assert_eq!(&r1, &r2);
        prop_assert!(r1.p_value > 0.0 && r1.p_value <= 1.0);
        prop_assert!(r1.p_value >= 1.0 / 50.0);
    }

    #[test]
    fn neo_scores_decompose((g, meta, theta) in graph_strategy(7).prop_flat_map(|g| {
        let n = g.n_nodes();
        (Just(g), labels(n, 2), 0.01..0.99f64)
    })) {
        prop_assume!(g.n_edges() > 0);
        let meta = Partition::from_assignment(meta);
        let cfg = NeoConfig { k: Some(2), ..NeoConfig::new(theta) };
        let s = neosbm::exhaustive_neo(&g, &meta, &cfg).unwrap();
        s.check_lock(&meta).unwrap();
        prop_assert_eq!(s.q, s.red.iter().filter(|&&r| r).count());
        prop_assert!((s.l_neo - (s.l_base + s.q as f64 * neosbm::psi(theta))).abs() < 1e-9);
        let full = neosbm::neo_loglik(&g, &s.assignment, &s.red, &meta, &cfg).unwrap();
        let n = g.n_nodes() as f64;
        prop_assert!((full - s.l_neo - n * (1.0 - theta).ln()).abs() < 1e-9);
    }
}

#[test]
fn exhaustive_and_monte_carlo_agree() {
    let g = Graph::from_edges(
        8,
        [(0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6), (6, 7), (4, 7), (3, 4)],
    )
    .unwrap();
    let meta = Partition::from_assignment(vec![0, 0, 0, 0, 1, 1, 1, 1]);
    let exact = bestest::run_bestest(&g, &meta, &BestestConfig::exhaustive(Model::Sbm)).unwrap();
    assert_eq!(exact.null_samples, 70);
    assert!((exact.p_value - 6.0 / 70.0).abs() < 1e-12);
    let n_perm = 20_000;
    let mc = bestest::run_bestest(&g, &meta, &BestestConfig::new(Model::Sbm, n_perm, 3)).unwrap();
    let p = exact.p_value;
    let tol = 3.0 * (p * (1.0 - p) / n_perm as f64).sqrt();
    assert!((mc.p_value - p).abs() < tol, "{} vs {p} (tol {tol})", mc.p_value);
}

#[test]
fn p_value_ignores_log_base_and_dropped_constants() {
    // The sparse entropy is (|E| - Poisson log-likelihood) / ln 2, an
    // order-reversing affine map, so both rank permutations identically.
    let mut r = rng::from_seed(9);
    let (g, truth) = synthgen::gen_two_block(
        &SynthConfig {
            n_nodes: 60,
            epsilon: 0.3,
            mean_degree: 6.0,
        },
        &mut r,
    )
    .unwrap();
    let meta = synthgen::corrupt_metadata(&truth, 0.3, &mut r).unwrap();
    let a = bestest::run_bestest(&g, &meta, &BestestConfig::new(Model::Sbm, 999, 1)).unwrap();
    let b = bestest::run_bestest(&g, &meta, &BestestConfig::new(Model::PoissonSbm, 999, 1)).unwrap();
    let c = bestest::run_bestest(&g, &meta, &BestestConfig::new(Model::SbmSparse, 999, 1)).unwrap();
    assert!(a.p_value > 0.0 && b.p_value > 0.0 && c.p_value > 0.0);
    assert_eq!(b.p_value, c.p_value);
}

#[cfg(feature = "std")]
#[test]
fn results_do_not_depend_on_thread_count() {
    let mut r = rng::from_seed(2);
    let (g, truth) = synthgen::gen_two_block(
        &SynthConfig {
            n_nodes: 80,
            epsilon: 0.5,
            mean_degree: 6.0,
        },
        &mut r,
    )
    .unwrap();
    let cfg = BestestConfig::new(Model::Sbm, 500, 4);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| bestest::run_bestest(&g, &truth, &cfg).unwrap())
    };
    assert_eq!(run(1), run(3));
}

#[test]
fn two_block_densities_within_three_sigma() {
    let cfg = SynthConfig {
        n_nodes: 200,
        epsilon: 0.2,
        mean_degree: 8.0,
    };
    for seed in 0..50 {
        let (g, truth) = synthgen::gen_two_block(&cfg, &mut rng::from_seed(seed)).unwrap();
        let s = BlockStats::compute(&g, &truth).unwrap();
        for r in 0..2 {
            for t in r..2 {
                let pairs = if r == t {
                    let n = s.size(r);
                    n * (n - 1) / 2
                } else {
                    s.size(r) * s.size(t)
                } as f64;
                let edges = if r == t { s.m(r, r) / 2 } else { s.m(r, t) } as f64;
                let w = if r == t { cfg.omega_in() } else { cfg.omega_out() };
                let sd = (pairs * w * (1.0 - w)).sqrt();
                assert!(
                    (edges - pairs * w).abs() <= 3.0 * sd,
                    "seed {seed} block ({r},{t}): {edges} vs {}",
                    pairs * w
                );
            }
        }
    }
}

#[test]
fn generators_are_reproducible() {
    let cfg = MultiOptimumConfig::calibrated();
    let a = synthgen::gen_multi_optimum(&cfg, &mut rng::from_seed(5)).unwrap();
    let b = synthgen::gen_multi_optimum(&cfg, &mut rng::from_seed(5)).unwrap();
    assert_eq!(a.graph, b.graph);
    assert_eq!(a.metadata, b.metadata);
}

#[test]
fn mds_recovers_planar_configurations() {
    let mut r = rng::from_seed(11);
    use rand::Rng;
    for _ in 0..20 {
        let pts: Vec<[f64; 2]> = (0..7)
            .map(|_| [r.random_range(-3.0..3.0), r.random_range(-3.0..3.0)])
            .collect();
        let d: Vec<Vec<f64>> = pts
            .iter()
            .map(|p| {
                pts.iter()
                    .map(|q| ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt())
                    .collect()
            })
            .collect();
        let e = mds_embed(&d).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                let de = ((e[i][0] - e[j][0]).powi(2) + (e[i][1] - e[j][1]).powi(2)).sqrt();
                assert!((de - d[i][j]).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn vi_matrix_is_a_distance_matrix() {
    let parents = [
        Partition::from_assignment(vec![0, 0, 0, 1, 1, 1, 2, 2]),
        Partition::from_assignment(vec![0, 1, 0, 1, 0, 1, 0, 1]),
    ];
    let samples = landscape::crossover_sample(&parents, 12, 3).unwrap();
    let d = vi_matrix(&samples).unwrap();
    for i in 0..d.len() {
        assert_eq!(d[i][i], 0.0);
        for j in 0..d.len() {
            assert_eq!(d[i][j], d[j][i]);
            assert!(d[i][j] >= 0.0);
        }
    }
}

#[test]
fn exhaustive_neo_path_is_monotone() {
    let g = Graph::from_edges(
        8,
        [
            (0, 1),
            (0, 2),
            (1, 2),
            (2, 3),
            (4, 5),
            (4, 6),
            (5, 6),
            (6, 7),
            (3, 7),
            (1, 5),
        ],
    )
    .unwrap();
    let meta = Partition::from_assignment(vec![0, 1, 0, 1, 0, 1, 0, 1]);
    let mut prev = (0usize, f64::NEG_INFINITY);
    for i in 1..20 {
        let cfg = NeoConfig {
            k: Some(2),
            model: NeoModel::Sbm,
            ..NeoConfig::new(i as f64 * 0.05)
        };
        let s = neosbm::exhaustive_neo(&g, &meta, &cfg).unwrap();
        assert!(s.q >= prev.0 && s.l_base >= prev.1 - 1e-9);
        prev = (s.q, s.l_base);
    }
}
