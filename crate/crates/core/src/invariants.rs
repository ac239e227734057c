//! Cross-module property checks on single instances, plus the seeded
//! instance family the self-test draws from.

use std::collections::BTreeSet;
use std::fmt;

use crate::analysis::Analysis;
use crate::antipodal::{
    enumerate_segments_with, Element, SegmentCatalog, SegmentClass, TrailOrder,
};
use crate::decomposition::{leaf_blocks, Classification};
use crate::generator::{generate, GenSpec};
use crate::graph::{all_shortest_paths, unique_shortest_path};
use crate::oracle::{
    brute_force_src, check_distinct_black_colors, strong_rainbow_colorings, verify_strong_rainbow,
};
use crate::partition::{build_canonical_partition, Shade};
use crate::solver::{src_formula, FormulaStats, Solver};

/// Largest `n` for which every pair's shortest paths are enumerated.
pub const GEODETIC_CHECK_MAX_N: usize = 30;
/// Largest `n` for which both verification routes are compared.
pub const HINT_AGREEMENT_MAX_N: usize = 14;
/// Largest `m` for which the brute-force oracle runs.
pub const BRUTE_FORCE_MAX_M: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantFailure {
    pub invariant: &'static str,
    pub detail: String,
}

impl fmt::Display for InvariantFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.invariant, self.detail)
    }
}

fn fail<T>(invariant: &'static str, detail: impl Into<String>) -> Result<T, InvariantFailure> {
    Err(InvariantFailure {
        invariant,
        detail: detail.into(),
    })
}

fn ensure(
    cond: bool,
    invariant: &'static str,
    detail: impl FnOnce() -> String,
) -> Result<(), InvariantFailure> {
    if cond {
        Ok(())
    } else {
        fail(invariant, detail())
    }
}

pub fn check_odd_cactus(an: &Analysis) -> Result<(), InvariantFailure> {
    ensure(an.classification.is_odd_cactus(), "classification", || {
        format!("classified as {:?}", an.classification)
    })
}

pub fn check_partition_valid(an: &Analysis) -> Result<(), InvariantFailure> {
    let p = match an.canonical_partition() {
        Ok(p) => p,
        // Odd cycles have no canonical partition; nothing to check.
        Err(_) if matches!(an.classification, Classification::OddCycle(_)) => return Ok(()),
        Err(e) => return fail("partition_valid", e.to_string()),
    };
    let report = an.validate(&p).map_err(|e| InvariantFailure {
        invariant: "partition_valid",
        detail: e.to_string(),
    })?;
    match report.first_failure() {
        None => Ok(()),
        Some(c) => fail(
            "partition_valid",
            format!("property {} fails at {:?}", c.property, c.witness),
        ),
    }
}

fn opposite(an: &Analysis, cycle: usize, x: Element) -> Option<Element> {
    match x {
        Element::Edge(e) => an.antipodes.opposite_vertex(e).map(Element::Vertex),
        Element::Vertex(v) => an
            .antipodes
            .opposite_edge(&an.decomposition, cycle, v)
            .map(Element::Edge),
    }
}

/// Per cycle, S1 and S4 segments correspond one-to-one under the antipodal
/// map, as do S2 and S3.
pub fn check_segment_pairing(an: &Analysis, cat: &SegmentCatalog) -> Result<(), InvariantFailure> {
    for (b, _) in an.decomposition.cycles() {
        let segs: Vec<_> = cat.in_cycle(b).collect();
        let count = |c| segs.iter().filter(|s| s.class == c).count();
        ensure(
            count(SegmentClass::S1) == count(SegmentClass::S4)
                && count(SegmentClass::S2) == count(SegmentClass::S3),
            "segment_pairing",
            || format!("block {b}: class counts are unbalanced"),
        )?;
        for seg in &segs {
            let image: Option<BTreeSet<Element>> =
                seg.elements.iter().map(|&x| opposite(an, b, x)).collect();
            let Some(image) = image else {
                return fail(
                    "segment_pairing",
                    format!("block {b}: element without antipode"),
                );
            };
            let matched = segs.iter().any(|t| {
                t.class == seg.class.antipodal()
                    && t.elements.iter().copied().collect::<BTreeSet<_>>() == image
            });
            ensure(matched, "segment_pairing", || {
                format!(
                    "block {b}: image of {:?} is not a {:?} segment",
                    seg.elements,
                    seg.class.antipodal()
                )
            })?;
        }
    }
    Ok(())
}

/// Per cycle, segment vertices with the cut vertices partition the vertex
/// set, and segment edges with the `E_ant` edges partition the edge set.
pub fn check_segment_cover(an: &Analysis, cat: &SegmentCatalog) -> Result<(), InvariantFailure> {
    let d = &an.decomposition;
    for (b, block) in d.cycles() {
        if d.cut_vertices_of(b).next().is_none() {
            continue;
        }
        let mut vertices: Vec<usize> = cat.in_cycle(b).flat_map(|s| s.vertices()).collect();
        vertices.extend(
            block
                .vertices
                .iter()
                .copied()
                .filter(|&v| d.is_cut_vertex(v)),
        );
        let mut edges: Vec<usize> = cat.in_cycle(b).flat_map(|s| s.edges()).collect();
        edges.extend(
            block
                .edges
                .iter()
                .copied()
                .filter(|&e| an.antipodes.is_e_ant(e)),
        );
        vertices.sort_unstable();
        edges.sort_unstable();
        let mut want_v = block.vertices.clone();
        let mut want_e = block.edges.clone();
        want_v.sort_unstable();
        want_e.sort_unstable();
        ensure(vertices == want_v, "segment_cover", || {
            format!("block {b}: vertices {vertices:?}")
        })?;
        ensure(edges == want_e, "segment_cover", || {
            format!("block {b}: edges {edges:?}")
        })?;
    }
    Ok(())
}

/// Holds for trees and for cacti with more than one block.
pub fn check_parity(an: &Analysis) -> Result<(), InvariantFailure> {
    if matches!(an.classification, Classification::OddCycle(_)) {
        return Ok(());
    }
    let stats = FormulaStats::of(an);
    ensure(stats.numerator() % 2 == 0, "parity", || {
        format!("{stats:?} gives an odd numerator")
    })
}

pub fn check_leaf_blocks_black(an: &Analysis) -> Result<(), InvariantFailure> {
    let Ok(p) = an.canonical_partition() else {
        return Ok(());
    };
    for b in leaf_blocks(&an.decomposition) {
        let block = &an.decomposition.blocks[b];
        ensure(
            block.edges.iter().any(|&e| p.edge(e) == Shade::Black),
            "leaf_block_black",
            || format!("leaf block {b} has no black edge"),
        )?;
    }
    Ok(())
}

pub fn check_geodetic(an: &Analysis) -> Result<(), InvariantFailure> {
    let g = &an.graph;
    for u in 0..g.vertex_count() {
        for v in u + 1..g.vertex_count() {
            let paths = all_shortest_paths(g, u, v).map_err(|e| InvariantFailure {
                invariant: "geodetic",
                detail: e.to_string(),
            })?;
            ensure(paths.len() == 1, "geodetic", || {
                format!(
                    "{} shortest paths between {} and {}",
                    paths.len(),
                    g.label(u),
                    g.label(v)
                )
            })?;
        }
    }
    Ok(())
}

/// No shortest path holds a cycle edge together with its antipodal vertex.
pub fn check_no_edge_with_antipode(an: &Analysis) -> Result<(), InvariantFailure> {
    let g = &an.graph;
    for u in 0..g.vertex_count() {
        for v in u + 1..g.vertex_count() {
            let path = unique_shortest_path(g, u, v).map_err(|e| InvariantFailure {
                invariant: "edge_antipode_path",
                detail: e.to_string(),
            })?;
            for &e in &path.edges {
                if let Some(w) = an.antipodes.opposite_vertex(e) {
                    ensure(!path.vertices.contains(&w), "edge_antipode_path", || {
                        format!(
                            "path {}..{} holds edge {} and its antipode",
                            g.label(u),
                            g.label(v),
                            g.edge_key(e)
                        )
                    })?;
                }
            }
        }
    }
    Ok(())
}

pub fn check_formula_matches_partition(an: &Analysis, src: usize) -> Result<(), InvariantFailure> {
    let Ok(p) = an.canonical_partition() else {
        return Ok(());
    };
    ensure(p.black_edge_count() == src, "black_edge_count", || {
        format!("{} black edges, formula gives {src}", p.black_edge_count())
    })
}

/// The catalog and partition depend on where and in which direction each
/// cycle is walked only through labels that the counts ignore.
pub fn check_orientation_independence(an: &Analysis) -> Result<(), InvariantFailure> {
    let base = an.segments.counts();
    let base_black = an.canonical_partition().ok().map(|p| p.black_edge_count());
    let base_src = src_formula(an).ok();
    let max_cuts = an
        .decomposition
        .cycles()
        .map(|(b, _)| an.decomposition.cut_vertices_of(b).count())
        .max()
        .unwrap_or(0)
        .max(1);
    for reversed in [false, true] {
        for start_rank in 0..max_cuts {
            let order = TrailOrder {
                reversed,
                start_rank,
            };
            let cat = enumerate_segments_with(&an.decomposition, &an.antipodes, order);
            let c = cat.counts();
            ensure(
                c.s1 + c.s4 == base.s1 + base.s4
                    && c.s2 + c.s3 == base.s2 + base.s3
                    && c.s1 == base.s1,
                "orientation",
                || format!("{order:?} gives {c:?}, canonical {base:?}"),
            )?;
            let alt = Analysis {
                segments: cat,
                ..an.clone()
            };
            ensure(src_formula(&alt).ok() == base_src, "orientation", || {
                format!("{order:?} changes src")
            })?;
            let black = build_canonical_partition(
                &alt.graph,
                &alt.decomposition,
                alt.classification,
                &alt.segments,
            )
            .ok()
            .map(|p| p.black_edge_count());
            ensure(black == base_black, "orientation", || {
                format!("{order:?} changes |E_B|")
            })?;
            check_segment_pairing(&alt, &alt.segments)?;
        }
    }
    Ok(())
}

/// Runs `solver` and checks its answer against the formula and the oracle.
pub fn check_solver(
    an: &Analysis,
    solver: &dyn Solver,
    src: usize,
) -> Result<(), InvariantFailure> {
    let sol = solver.solve(an).map_err(|e| InvariantFailure {
        invariant: "solver",
        detail: format!("{}: {e}", solver.name()),
    })?;
    ensure(sol.src == src, "solver", || {
        format!("{} reports {}, formula {src}", solver.name(), sol.src)
    })?;
    let Some(c) = sol.coloring else {
        return Ok(());
    };
    ensure(c.k() as usize == src, "coloring_size", || {
        format!("{} colors, formula {src}", c.k())
    })?;
    let out = verify_strong_rainbow(&an.graph, &c, true).map_err(|e| InvariantFailure {
        invariant: "verification",
        detail: e.to_string(),
    })?;
    if let Some(w) = out.witness {
        let g = &an.graph;
        let labels: Vec<u64> = w.path.vertices.iter().map(|&v| g.label(v)).collect();
        return fail(
            "verification",
            format!(
                "no rainbow path {}..{}: {labels:?} repeats color {}",
                g.label(w.u),
                g.label(w.v),
                w.repeated_color
            ),
        );
    }
    if an.graph.vertex_count() <= HINT_AGREEMENT_MAX_N {
        let slow = verify_strong_rainbow(&an.graph, &c, false)
            .map(|o| o.ok)
            .unwrap_or(false);
        ensure(slow, "verification_routes", || {
            "exhaustive route disagrees".into()
        })?;
    }
    if let Ok(p) = an.canonical_partition() {
        ensure(
            check_distinct_black_colors(&p, &c),
            "distinct_black_colors",
            || "two black edges share a color".into(),
        )?;
    }
    Ok(())
}

/// Brute force agrees with the formula, and every optimal coloring it can
/// find gives black edges distinct colors.
pub fn check_brute_force(an: &Analysis, src: usize) -> Result<(), InvariantFailure> {
    let g = &an.graph;
    let found = brute_force_src(g, BRUTE_FORCE_MAX_M).map_err(|e| InvariantFailure {
        invariant: "brute_force",
        detail: e.to_string(),
    })?;
    ensure(found.src == src, "brute_force", || {
        format!("exhaustive {}, formula {src}", found.src)
    })?;
    let Ok(p) = an.canonical_partition() else {
        return Ok(());
    };
    let all = strong_rainbow_colorings(g, src, BRUTE_FORCE_MAX_M).expect("size checked above");
    ensure(
        all.iter().all(|c| check_distinct_black_colors(&p, c)),
        "distinct_black_colors",
        || "an optimal coloring repeats a black color".into(),
    )
}

/// Every check that applies at this size, in a fixed order.
pub fn check_instance(an: &Analysis, solver: &dyn Solver) -> Result<(), InvariantFailure> {
    check_odd_cactus(an)?;
    let src = src_formula(an).map_err(|e| InvariantFailure {
        invariant: "formula",
        detail: e.to_string(),
    })?;
    check_partition_valid(an)?;
    check_segment_pairing(an, &an.segments)?;
    check_segment_cover(an, &an.segments)?;
    check_parity(an)?;
    check_leaf_blocks_black(an)?;
    check_formula_matches_partition(an, src)?;
    if an.graph.vertex_count() <= GEODETIC_CHECK_MAX_N {
        check_geodetic(an)?;
        check_no_edge_with_antipode(an)?;
    }
    check_orientation_independence(an)?;
    check_solver(an, solver, src)?;
    if an.graph.edge_count() <= BRUTE_FORCE_MAX_M {
        check_brute_force(an, src)?;
    }
    Ok(())
}

/// The generator parameters used for `seed` in the self-test, chosen so the
/// result has at most `max_n` vertices.
pub fn selftest_spec(seed: u64, max_n: usize) -> GenSpec {
    let max_n = max_n.max(2);
    let lengths: Vec<usize> = [3, 3, 5, 5, 7, 9]
        .into_iter()
        .filter(|&l| l <= max_n)
        .collect();
    let longest = lengths.iter().copied().max().unwrap_or(2);
    let hi = (max_n + 2).saturating_sub(longest).max(2);
    // A cheap mix so neighbouring seeds vary in every parameter.
    let h = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17);
    let target = 2 + (h % (hi as u64 - 1)) as usize;
    let pendant_probability = [0.0, 0.2, 0.35, 0.5, 0.8][(h >> 32) as usize % 5];
    GenSpec {
        seed,
        target_vertices: target,
        pendant_probability: if lengths.is_empty() {
            1.0
        } else {
            pendant_probability
        },
        cycle_lengths: lengths,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedFailure {
    pub seed: u64,
    pub failure: InvariantFailure,
}

pub fn check_seed(seed: u64, max_n: usize, solver: &dyn Solver) -> Result<(), SeedFailure> {
    let g = generate(&selftest_spec(seed, max_n)).expect("self-test specs are valid");
    check_instance(&Analysis::new(g), solver).map_err(|failure| SeedFailure { seed, failure })
}
