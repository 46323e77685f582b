mod common;

use agree::generators::{
    gen_lfr_like, gen_planted, load_lfr_files, write_lfr_files, GenError, LfrLikeConfig,
    PlantedConfig,
};
use proptest::prelude::*;

#[test]
fn planted_degrees_match_their_targets() {
    let config = PlantedConfig {
        z_out: 3.0,
        ..Default::default()
    };
    let (mut degree, mut inter) = (Vec::new(), Vec::new());
    for seed in 0..200 {
        let b = gen_planted(&PlantedConfig { seed, ..config }).unwrap();
        let g = &b.graph;
        degree.push(2.0 * g.m() as f64 / g.n() as f64);
        let cross = g
            .edges()
            .filter(|&(u, v)| b.truth.label(u) != b.truth.label(v))
            .count();
        inter.push(2.0 * cross as f64 / g.n() as f64);
        assert_eq!(b.truth.community_sizes(), vec![32; 4]);
        assert!(g.validate().is_empty());
    }
    let mean = |xs: &[f64]| xs.iter().sum::<f64>() / xs.len() as f64;
    let std_err = |xs: &[f64]| {
        let m = mean(xs);
        (xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
            / (xs.len() as f64).sqrt()
    };
    assert!(
        (mean(&degree) - 16.0).abs() <= 0.5,
        "mean degree {}",
        mean(&degree)
    );
    assert!(
        (mean(&inter) - 3.0).abs() <= 3.0 * std_err(&inter),
        "mean inter degree {}",
        mean(&inter)
    );
    let intra: Vec<f64> = degree.iter().zip(&inter).map(|(d, o)| d - o).collect();
    // isolated-vertex repair only ever adds edges, so allow that bias upward
    assert!(
        mean(&intra) - 13.0 >= -3.0 * std_err(&intra),
        "mean intra degree {}",
        mean(&intra)
    );
    assert!(
        mean(&intra) - 13.0 <= 3.0 * std_err(&intra) + 0.05,
        "mean intra degree {}",
        mean(&intra)
    );
}

#[test]
fn planted_rejects_impossible_mixing() {
    let err = gen_planted(&PlantedConfig {
        z_out: 20.0,
        ..Default::default()
    })
    .unwrap_err();
    assert!(
        matches!(err, GenError::Config(ref m) if m.contains("z_out")),
        "{err}"
    );
    assert!(gen_planted(&PlantedConfig {
        n: 130,
        ..Default::default()
    })
    .is_err());
}

fn small_lfr(mu: f64, seed: u64) -> LfrLikeConfig {
    LfrLikeConfig {
        n: 500,
        mu,
        avg_degree: 15.0,
        max_degree: 30,
        seed,
        ..Default::default()
    }
}

#[test]
fn lfr_without_mixing_keeps_edges_inside() {
    for seed in 0..5 {
        let b = gen_lfr_like(&small_lfr(0.0, seed)).unwrap();
        assert_eq!(b.inter_edge_fraction(), 0.0, "seed {seed}");
    }
}

#[test]
fn lfr_mixing_is_close_to_mu() {
    for seed in 0..20 {
        let b = gen_lfr_like(&small_lfr(0.3, seed)).unwrap();
        let f = b.inter_edge_fraction();
        assert!((0.25..=0.35).contains(&f), "seed {seed}: {f}");
    }
}

#[test]
fn lfr_respects_bounds() {
    let config = small_lfr(0.2, 3);
    let b = gen_lfr_like(&config).unwrap();
    assert!(b.graph.max_degree() <= config.max_degree);
    assert!(b.graph.validate().is_empty());
    for size in b.truth.community_sizes() {
        assert!(
            (config.min_community..=config.max_community).contains(&size),
            "size {size}"
        );
    }
    let mean = 2.0 * b.graph.m() as f64 / b.graph.n() as f64;
    assert!(
        (mean - config.avg_degree).abs() <= 0.15 * config.avg_degree,
        "mean degree {mean}"
    );
}

#[test]
fn lfr_rejects_bad_configs() {
    assert!(gen_lfr_like(&LfrLikeConfig {
        mu: 1.2,
        ..Default::default()
    })
    .is_err());
    assert!(gen_lfr_like(&LfrLikeConfig {
        max_degree: 10,
        ..Default::default()
    })
    .is_err());
    assert!(gen_lfr_like(&LfrLikeConfig {
        min_community: 60,
        ..Default::default()
    })
    .is_err());
}

#[test]
fn lfr_files_round_trip() {
    let b = gen_lfr_like(&small_lfr(0.2, 9)).unwrap();
    let (mut net, mut com) = (Vec::new(), Vec::new());
    write_lfr_files(&b, &mut net, &mut com).unwrap();
    let loaded = load_lfr_files(net.as_slice(), com.as_slice()).unwrap();
    assert_eq!(loaded.bench.graph.m(), b.graph.m());
    for (u, v) in b.graph.edges() {
        let x = loaded.remap.internal(u as u64 + 1).unwrap();
        let y = loaded.remap.internal(v as u64 + 1).unwrap();
        assert!(loaded.bench.graph.has_edge(x, y));
    }
    let back: Vec<usize> = b
        .graph
        .vertices()
        .map(|v| {
            loaded
                .bench
                .truth
                .label(loaded.remap.internal(v as u64 + 1).unwrap())
        })
        .collect();
    assert!(agree::Partition::from_labels(back).same_grouping(&b.truth));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn generators_are_deterministic(seed in any::<u64>()) {
        let p = PlantedConfig { seed, ..Default::default() };
        prop_assert_eq!(gen_planted(&p).unwrap(), gen_planted(&p).unwrap());
        let l = small_lfr(0.2, seed);
        prop_assert_eq!(gen_lfr_like(&l).unwrap(), gen_lfr_like(&l).unwrap());
    }

    #[test]
    fn benchmark_files_reload(seed in any::<u64>()) {
        let b = gen_planted(&PlantedConfig { seed, ..Default::default() }).unwrap();
        let (mut edges, mut truth) = (Vec::new(), Vec::new());
        b.write(&mut edges, &mut truth).unwrap();
        let loaded = agree::io::load_edge_list(edges.as_slice(), agree::io::LoadOptions::strict()).unwrap();
        prop_assert_eq!(loaded.graph.m(), b.graph.m());
        let labels = agree::io::read_labels(truth.as_slice()).unwrap();
        prop_assert_eq!(labels.len(), b.graph.n());
    }
}
