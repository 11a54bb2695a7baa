//! Exact counts of neighbors, bipartite edges, and hinges inside vertex
//! subsets, with the pseudo-randomness deviation bounds they satisfy.
//!
//! A hinge is an ordered triple (u, v, w) whose two edges uv, vw carry
//! prescribed colors; u = w is allowed, matching the ordered-triple count
//! whose main term is (d/n)²|E|³. All counts are exact integers; the bound
//! sides are evaluated in floating point, by default with the certified
//! λ = 2√q rather than the measured spectrum.

use crate::bits::{intersect_count, VertexSet};
use crate::field::FieldElement;
use crate::geometry::Point;
use crate::graph::{DistanceGraph, RegularColoring};
use crate::report::BoundReport;
use crate::Result;
use crate::Error;

/// Σ_{v∈V} (|N_B(v)| - (d/n)|B|)² ≤ (λ²/n)|B|(n - |B|).
///
/// The left side is exact: it is Σ (n·|N_B(v)| - d·|B|)² / n², accumulated
/// in integers before one final division.
pub fn neighbor_variance(g: &DistanceGraph, b: &VertexSet, lambda: f64) -> BoundReport {
    let n = g.n();
    debug_assert_eq!(b.universe(), n);
    let d = g.valency() as i128;
    let bsize = b.len() as i128;
    let mut num: i128 = 0;
    for v in 0..n {
        let nb = intersect_count(g.neighbors(v), b.words()) as i128;
        let dev = (n as i128) * nb - d * bsize;
        num += dev * dev;
    }
    let nf = n as f64;
    let lhs = num as f64 / (nf * nf);
    let rhs = lambda * lambda / nf * bsize as f64 * (nf - bsize as f64);
    BoundReport::new("neighbor_variance", lhs, rhs)
}

/// Ordered pairs (u, v) with u ∈ B, v ∈ C, uv an edge.
pub fn bipartite_edge_count(g: &DistanceGraph, b: &VertexSet, c: &VertexSet) -> u64 {
    debug_assert_eq!(b.universe(), g.n());
    debug_assert_eq!(c.universe(), g.n());
    b.iter()
        .map(|u| intersect_count(g.neighbors(u), c.words()) as u64)
        .sum()
}

/// |e(B, C) - (d/n)|B||C|| ≤ λ√(|B||C|), the mixing bound.
pub fn mixing_edges(
    g: &DistanceGraph,
    b: &VertexSet,
    c: &VertexSet,
    lambda: f64,
) -> BoundReport {
    let n = g.n() as f64;
    let e = bipartite_edge_count(g, b, c) as f64;
    let bs = b.len() as f64;
    let cs = c.len() as f64;
    let lhs = (e - g.valency() as f64 / n * bs * cs).abs();
    let rhs = lambda * (bs * cs).sqrt();
    BoundReport::new("mixing_edges", lhs, rhs)
}

/// Exact count of ordered triples (u, v, w) ∈ E³ with uv colored r and vw
/// colored b: Σ_{v∈E} |N_E^r(v)|·|N_E^b(v)|. u = w is allowed.
pub fn colored_hinges(
    col: &RegularColoring,
    r: FieldElement,
    b: FieldElement,
    e: &VertexSet,
) -> Result<u64> {
    let gr = col.color_class(r)?;
    let gb = col.color_class(b)?;
    debug_assert_eq!(e.universe(), gr.n());
    Ok(e.iter()
        .map(|v| {
            let nr = intersect_count(gr.neighbors(v), e.words()) as u64;
            let nb = intersect_count(gb.neighbors(v), e.words()) as u64;
            nr * nb
        })
        .sum())
}

/// The two-color hinge deviation bound:
/// |e_{r,b}(E) - (d/n)²|E|³| ≤ 2(λd/n)|E|² + λ²|E|.
///
/// When the two color classes disagree on valency the main term becomes
/// (d_r·d_b/n²)|E|³ with max(d_r, d_b) in the error term; that case is an
/// extension of the common-valency statement and is labeled as such.
/// Distance colorings of a fixed form always share one valency.
pub fn verify_hinge_bound(
    col: &RegularColoring,
    r: FieldElement,
    b: FieldElement,
    e: &VertexSet,
    lambda: f64,
) -> Result<BoundReport> {
    let count = colored_hinges(col, r, b, e)? as f64;
    let d_r = col.color_class(r)?.valency() as f64;
    let d_b = col.color_class(b)?.valency() as f64;
    let n = col.n() as f64;
    let size = e.len() as f64;
    let (label, main, d_err) = if d_r == d_b {
        ("colored_hinges", (d_r / n) * (d_r / n) * size.powi(3), d_r)
    } else {
        (
            "colored_hinges_mixed_valency_extension",
            d_r * d_b / (n * n) * size.powi(3),
            d_r.max(d_b),
        )
    };
    let lhs = (count - main).abs();
    let rhs = 2.0 * lambda * d_err / n * size * size + lambda * lambda * size;
    Ok(BoundReport::new(label, lhs, rhs))
}

/// Ordered paths of length two inside E on a single graph:
/// Σ_{v∈E} |N_E(v)|², the one-color hinge count.
pub fn paths2(g: &DistanceGraph, e: &VertexSet) -> u64 {
    debug_assert_eq!(e.universe(), g.n());
    e.iter()
        .map(|v| {
            let k = intersect_count(g.neighbors(v), e.words()) as u64;
            k * k
        })
        .sum()
}

/// |p₂(E) - (d/n)²|E|³| ≤ 2(λd/n)|E|² + λ²|E| on one graph.
pub fn verify_paths2_bound(g: &DistanceGraph, e: &VertexSet, lambda: f64) -> BoundReport {
    let count = paths2(g, e) as f64;
    let d = g.valency() as f64;
    let n = g.n() as f64;
    let size = e.len() as f64;
    let lhs = (count - (d / n) * (d / n) * size.powi(3)).abs();
    let rhs = 2.0 * lambda * d / n * size * size + lambda * lambda * size;
    BoundReport::new("paths2", lhs, rhs)
}

/// |{(x, y, z) ∈ E³ : ‖x-y‖ = a, ‖x-z‖ = b}| — the hinge count pivoted on
/// the first coordinate. Identical to [`colored_hinges`] with colors (a, b)
/// once the pivot is renamed; the deviation bound with the certified
/// λ = 2√q is re-checked on every call since its failure would mean a
/// counting bug.
pub fn hinge_triple_count(
    col: &RegularColoring,
    e: &VertexSet,
    a: FieldElement,
    b: FieldElement,
) -> Result<u64> {
    let count = colored_hinges(col, a, b, e)?;
    let claim = crate::graph::lambda_bound(col.field().q());
    let report = verify_hinge_bound(col, a, b, e, claim)?;
    assert!(
        report.pass,
        "hinge deviation bound violated: lhs={} rhs={}",
        report.lhs, report.rhs
    );
    Ok(count)
}

/// Measured relative deviation of the hinge count from its main term,
/// paired with the relative deviation ceiling:
/// ( |count/((d_a d_b/n²)|E|³) - 1| , (2λd/n·|E|² + λ²|E|) / ((d_a d_b/n²)|E|³) ).
pub fn hinge_relative_deviation(
    col: &RegularColoring,
    e: &VertexSet,
    a: FieldElement,
    b: FieldElement,
    lambda: f64,
) -> Result<(f64, f64)> {
    let count = colored_hinges(col, a, b, e)? as f64;
    let d_a = col.color_class(a)?.valency() as f64;
    let d_b = col.color_class(b)?.valency() as f64;
    let n = col.n() as f64;
    let size = e.len() as f64;
    let main = d_a * d_b / (n * n) * size.powi(3);
    let err = 2.0 * lambda * d_a.max(d_b) / n * size * size + lambda * lambda * size;
    Ok(((count / main - 1.0).abs(), err / main))
}

/// Pinned hinges: |N_E^a(x)|·|N_E^b(x)| for a fixed pin x.
pub fn pinned_hinges(
    col: &RegularColoring,
    x: Point,
    e: &VertexSet,
    a: FieldElement,
    b: FieldElement,
) -> Result<u64> {
    let ga = col.color_class(a)?;
    let gb = col.color_class(b)?;
    let v = x.index(col.field());
    let na = intersect_count(ga.neighbors(v), e.words()) as u64;
    let nb = intersect_count(gb.neighbors(v), e.words()) as u64;
    Ok(na * nb)
}

/// The pin x ∈ E maximizing [`pinned_hinges`]; pigeonhole guarantees the
/// value is at least hinge_triple_count / |E|. Ties break to the lowest
/// vertex index.
pub fn best_pin(
    col: &RegularColoring,
    e: &VertexSet,
    a: FieldElement,
    b: FieldElement,
) -> Result<(Point, u64)> {
    if e.is_empty() {
        return Err(Error::EmptySet);
    }
    let ga = col.color_class(a)?;
    let gb = col.color_class(b)?;
    let mut best: Option<(usize, u64)> = None;
    for v in e.iter() {
        let na = intersect_count(ga.neighbors(v), e.words()) as u64;
        let nb = intersect_count(gb.neighbors(v), e.words()) as u64;
        let val = na * nb;
        if best.map_or(true, |(_, b0)| val > b0) {
            best = Some((v, val));
        }
    }
    let (v, val) = best.unwrap();
    Ok((Point::from_index(col.field(), v), val))
}
