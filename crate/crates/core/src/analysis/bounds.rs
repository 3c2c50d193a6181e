//! Sufficient conditions for colorability of `r`-uniform bi-hypergraphs
//! from the local lemma, plus the handshake degree bound.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::BiHypergraph;

/// Tolerance for comparisons against real-valued thresholds.
pub const EPSILON: f64 = 1e-9;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Conclusion {
    Colorable,
    /// Colorable using at most `colors` colors.
    ColorableWithin { colors: usize },
    NoConclusion,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    /// `measured < threshold`
    Less,
    /// `measured <= threshold`
    AtMost,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct BoundReport {
    pub bound: &'static str,
    pub r: usize,
    pub measured: usize,
    pub threshold: f64,
    pub comparison: Comparison,
    pub satisfied: bool,
    pub conclusion: Conclusion,
}

impl BoundReport {
    fn new(
        bound: &'static str,
        r: usize,
        measured: usize,
        threshold: f64,
        comparison: Comparison,
        on_success: Conclusion,
    ) -> BoundReport {
        let x = measured as f64;
        let satisfied = match comparison {
            Comparison::Less => x < threshold - EPSILON,
            Comparison::AtMost => x <= threshold + EPSILON,
        };
        BoundReport {
            bound,
            r,
            measured,
            threshold,
            comparison,
            satisfied,
            conclusion: if satisfied {
                on_success
            } else {
                Conclusion::NoConclusion
            },
        }
    }
}

fn check_uniform(h: &BiHypergraph, r: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("uniformity must be at least 2, got {r}")));
    }
    match h.edges().iter().find(|e| e.len() != r) {
        Some(e) => Err(Error::NotUniform {
            r,
            edge: e.vertices().to_vec(),
        }),
        None => Ok(()),
    }
}

/// `(r-1)^(r-1)`
fn power(r: usize) -> f64 {
    ((r - 1) as f64).powi(r as i32 - 1)
}

/// Colorable when there are fewer than `(r-1)^(r-1)` edges.
pub fn lll_size_bound(h: &BiHypergraph, r: usize) -> Result<BoundReport> {
    check_uniform(h, r)?;
    Ok(BoundReport::new(
        "size",
        r,
        h.size(),
        power(r),
        Comparison::Less,
        Conclusion::Colorable,
    ))
}

/// Largest number of other edges meeting a single edge.
pub fn max_edge_incidence(h: &BiHypergraph) -> usize {
    let sets = h.edge_sets();
    sets.iter()
        .enumerate()
        .map(|(i, &e)| {
            sets.iter()
                .enumerate()
                .filter(|&(j, &f)| i != j && e.intersects(f))
                .count()
        })
        .max()
        .unwrap_or(0)
}

/// Colorable with at most `r - 1` colors when every edge meets fewer than
/// `(r-1)^(r-1)/e - 1` other edges.
pub fn lll_incidence_bound(h: &BiHypergraph, r: usize) -> Result<BoundReport> {
    check_uniform(h, r)?;
    Ok(BoundReport::new(
        "incidence",
        r,
        max_edge_incidence(h),
        power(r) / std::f64::consts::E - 1.0,
        Comparison::Less,
        Conclusion::ColorableWithin { colors: r - 1 },
    ))
}

/// Colorable when every degree is at most `((r-1)^(r-1)/e - 2)/r`.
pub fn degree_bound(h: &BiHypergraph, r: usize) -> Result<BoundReport> {
    check_uniform(h, r)?;
    let max_degree = h.degrees().into_iter().max().unwrap_or(0);
    Ok(BoundReport::new(
        "degree",
        r,
        max_degree,
        (power(r) / std::f64::consts::E - 2.0) / r as f64,
        Comparison::AtMost,
        Conclusion::Colorable,
    ))
}

pub fn all_bounds(h: &BiHypergraph, r: usize) -> Result<Vec<BoundReport>> {
    Ok(vec![
        lll_size_bound(h, r)?,
        lll_incidence_bound(h, r)?,
        degree_bound(h, r)?,
    ])
}

/// A vertex of minimum degree; its degree never exceeds `floor(r m / n)`.
pub fn handshake_min_degree(h: &BiHypergraph, r: usize) -> Result<(usize, usize)> {
    check_uniform(h, r)?;
    let degrees = h.degrees();
    let (v, &d) = degrees
        .iter()
        .enumerate()
        .min_by_key(|&(_, d)| *d)
        .ok_or_else(|| Error::InvalidParameter("hypergraph has no vertices".into()))?;
    assert!(d <= r * h.size() / h.n(), "handshake bound violated");
    Ok((v, d))
}
