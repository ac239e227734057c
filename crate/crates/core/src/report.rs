//! Serializable reports in raw vertex labels, and DOT rendering.

use std::fmt::Write as _;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::analysis::Analysis;
use crate::antipodal::{SegmentClass, SegmentCounts};
use crate::coloring::EdgeColoring;
use crate::decomposition::{Classification, Rejection};
use crate::graph::{EdgeId, Graph};
use crate::partition::Shade;
use crate::solver::{src_formula, FormulaStats, SrcCase, SrcResult};

pub const PALETTE_ENV: &str = "RAINBOW_CACTUS_PALETTE";

pub const DEFAULT_PALETTE: [&str; 12] = [
    "red",
    "blue",
    "green3",
    "orange",
    "purple",
    "cyan3",
    "magenta",
    "gold3",
    "brown",
    "navy",
    "deeppink",
    "darkgreen",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsReport {
    pub cut_edges: usize,
    pub s1_count: usize,
    pub e_ant: usize,
}

impl From<FormulaStats> for StatsReport {
    fn from(s: FormulaStats) -> Self {
        StatsReport {
            cut_edges: s.cut_edges,
            s1_count: s.s1_count,
            e_ant: s.e_ant,
        }
    }
}

/// Edge key `"min,max"` to color, in edge-id order.
pub type ColorMap = IndexMap<String, u32>;

pub fn color_map(g: &Graph, c: &EdgeColoring) -> ColorMap {
    (0..g.edge_count())
        .map(|e| (g.edge_key(e), c.color(e)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringReport {
    pub n: usize,
    pub m: usize,
    pub src: usize,
    pub case: SrcCase,
    pub stats: StatsReport,
    pub coloring: ColorMap,
}

impl ColoringReport {
    pub fn new(g: &Graph, res: &SrcResult) -> Self {
        ColoringReport {
            n: g.vertex_count(),
            m: g.edge_count(),
            src: res.src,
            case: res.case,
            stats: res.stats.into(),
            coloring: color_map(g, &res.coloring),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentReport {
    pub cycle: usize,
    pub class: SegmentClass,
    pub vertices: Vec<u64>,
    pub edges: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentSummary {
    pub counts: SegmentCounts,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segments: Option<Vec<SegmentReport>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub black_vertices: Vec<u64>,
    pub black_edges: Vec<String>,
    pub white_vertices: Vec<u64>,
    pub white_edges: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub classification: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rejection: Option<Rejection>,
    pub n: usize,
    pub m: usize,
    pub cut_vertices: Vec<u64>,
    pub cut_edges: Vec<String>,
    pub e_ant: Vec<String>,
    pub segments: SegmentSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub src: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<StatsReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<ColorMap>,
}

fn edge_keys(g: &Graph, edges: impl IntoIterator<Item = EdgeId>) -> Vec<String> {
    edges.into_iter().map(|e| g.edge_key(e)).collect()
}

impl AnalysisReport {
    /// `full` adds the segment list and the canonical partition. A coloring
    /// is attached only when supplied.
    pub fn new(an: &Analysis, full: bool, coloring: Option<&EdgeColoring>) -> Self {
        let g = &an.graph;
        let d = &an.decomposition;
        let rejection = match an.classification {
            Classification::Rejected(r) => Some(r),
            _ => None,
        };
        let src = src_formula(an).ok();
        let segments = full.then(|| {
            an.segments
                .segments
                .iter()
                .map(|s| SegmentReport {
                    cycle: s.cycle,
                    class: s.class,
                    vertices: s.vertices().map(|v| g.label(v)).collect(),
                    edges: edge_keys(g, s.edges()),
                })
                .collect()
        });
        let partition = if full {
            an.canonical_partition().ok().map(|p| PartitionReport {
                black_vertices: p.black_vertices().map(|v| g.label(v)).collect(),
                black_edges: edge_keys(g, p.black_edges()),
                white_vertices: p.white_vertices().map(|v| g.label(v)).collect(),
                white_edges: edge_keys(g, p.white_edges()),
            })
        } else {
            None
        };
        AnalysisReport {
            classification: an.classification.tag().to_string(),
            rejection,
            n: g.vertex_count(),
            m: g.edge_count(),
            cut_vertices: d.cut_vertices.iter().map(|&v| g.label(v)).collect(),
            cut_edges: edge_keys(g, d.cut_edges.iter().copied()),
            e_ant: edge_keys(g, an.antipodes.e_ant().iter().copied()),
            segments: SegmentSummary {
                counts: an.segments.counts(),
                segments,
            },
            src,
            stats: src.map(|_| FormulaStats::of(an).into()),
            partition,
            coloring: coloring.map(|c| color_map(g, c)),
        }
    }
}

/// Palette from `RAINBOW_CACTUS_PALETTE` (comma separated), else the default.
pub fn palette_from_env() -> Vec<String> {
    std::env::var(PALETTE_ENV)
        .ok()
        .map(|s| parse_palette(&s))
        .filter(|p| !p.is_empty())
        .unwrap_or_else(|| DEFAULT_PALETTE.iter().map(|s| s.to_string()).collect())
}

pub fn parse_palette(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|c| !c.is_empty())
        .map(String::from)
        .collect()
}

pub fn render_dot(g: &Graph, c: &EdgeColoring, palette: &[String]) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "  {};", g.label(v));
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let col = c.color(e);
        let name = &palette[(col as usize - 1) % palette.len()];
        let _ = writeln!(
            out,
            "  {} -- {} [label=\"{col}\", color=\"{name}\"];",
            g.label(u),
            g.label(v)
        );
    }
    out.push_str("}\n");
    out
}

/// Canonical partition drawn with black elements in black and white ones in grey.
pub fn render_partition_dot(g: &Graph, vertices: &[Shade], edges: &[Shade]) -> String {
    let pick = |s: Shade| if s == Shade::Black { "black" } else { "gray70" };
    let mut out = String::from("graph G {\n");
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "  {} [color=\"{}\"];", g.label(v), pick(vertices[v]));
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let _ = writeln!(
            out,
            "  {} -- {} [color=\"{}\"];",
            g.label(u),
            g.label(v),
            pick(edges[e])
        );
    }
    out.push_str("}\n");
    out
}

/// Reads a coloring map back onto the edges of `g`.
pub fn coloring_from_map(g: &Graph, map: &ColorMap) -> Result<Vec<u32>, String> {
    let mut colors = vec![0u32; g.edge_count()];
    for (key, &color) in map {
        let (a, b) = key
            .split_once(',')
            .ok_or_else(|| format!("edge key {key:?} is not \"u,v\""))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| format!("edge key {key:?} has a non-integer endpoint"))
        };
        let (a, b) = (parse(a)?, parse(b)?);
        let lookup = |l: u64| {
            g.vertex_of_label(l)
                .ok_or_else(|| format!("vertex {l} is not in the graph"))
        };
        let e = g
            .edge_between(lookup(a)?, lookup(b)?)
            .ok_or_else(|| format!("edge {key} is not in the graph"))?;
        if color == 0 {
            return Err(format!("edge {key} has color 0"));
        }
        colors[e] = color;
    }
    if let Some(e) = colors.iter().position(|&c| c == 0) {
        return Err(format!("edge {} has no color", g.edge_key(e)));
    }
    Ok(colors)
}
