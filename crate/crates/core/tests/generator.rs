use rainbow_cactus::decomposition::Classification;
use rainbow_cactus::generator::{generate, GenSpec, InvalidSpec};
use rainbow_cactus::Analysis;

fn spec(seed: u64) -> GenSpec {
    GenSpec {
        seed,
        target_vertices: 25,
        cycle_lengths: vec![3, 5, 7],
        pendant_probability: 0.3,
    }
}

#[test]
fn same_seed_same_edge_list() {
    for seed in 0..20 {
        assert_eq!(
            generate(&spec(seed)).unwrap().to_string(),
            generate(&spec(seed)).unwrap().to_string()
        );
    }
    assert_ne!(
        generate(&spec(1)).unwrap().to_string(),
        generate(&spec(2)).unwrap().to_string()
    );
}

#[test]
fn thousand_seeds_never_rejected() {
    for seed in 0..1000 {
        let mut s = spec(seed);
        s.target_vertices = 2 + (seed as usize % 40);
        s.pendant_probability = (seed % 5) as f64 / 4.0;
        let g = generate(&s).unwrap();
        assert!(g.vertex_count() >= s.target_vertices);
        let an = Analysis::new(g);
        assert!(
            an.classification.is_odd_cactus(),
            "seed {seed}: {:?}",
            an.classification
        );
    }
}

#[test]
fn certain_pendants_give_a_tree() {
    let mut s = spec(7);
    s.pendant_probability = 1.0;
    s.cycle_lengths.clear();
    let g = generate(&s).unwrap();
    assert_eq!(g.vertex_count(), 25);
    assert_eq!(Analysis::new(g).classification, Classification::Tree);
}

#[test]
fn minimum_target_gives_one_block() {
    let mut s = spec(3);
    s.target_vertices = 2;
    s.pendant_probability = 1.0;
    assert_eq!(generate(&s).unwrap().edge_count(), 1);
    s.pendant_probability = 0.0;
    s.cycle_lengths = vec![3];
    assert_eq!(generate(&s).unwrap().edge_count(), 3);
}

#[test]
fn bad_specs() {
    let with = |f: fn(&mut GenSpec)| {
        let mut s = spec(0);
        f(&mut s);
        generate(&s).unwrap_err()
    };
    assert_eq!(
        with(|s| s.cycle_lengths = vec![3, 4]),
        InvalidSpec::EvenCycle(4)
    );
    assert_eq!(
        with(|s| s.cycle_lengths = vec![1]),
        InvalidSpec::ShortCycle(1)
    );
    assert_eq!(
        with(|s| s.cycle_lengths.clear()),
        InvalidSpec::EmptyDistribution
    );
    assert_eq!(
        with(|s| s.target_vertices = 1),
        InvalidSpec::TooFewVertices(1)
    );
    assert_eq!(
        with(|s| s.pendant_probability = 1.5),
        InvalidSpec::Probability(1.5)
    );
}
