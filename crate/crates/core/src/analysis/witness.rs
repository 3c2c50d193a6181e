//! Colorings read off vertex partitions.

use crate::bitset::VertexSet;
use crate::coloring::Coloring;
use crate::constructions::k_subsets;
use crate::error::{Error, Result};
use crate::hypergraph::BiHypergraph;

/// Outcome of checking a partition against the independent-parts rule.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PartitionCheck {
    /// Coloring each part with its own color is proper.
    Proper(Coloring),
    /// Part `part` contains the whole of `edge`.
    DependentPart { part: usize, edge: Vec<usize> },
    /// `edge` meets `parts` parts, which is not fewer than its size.
    TooManyParts { edge: Vec<usize>, parts: usize },
}

impl PartitionCheck {
    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            PartitionCheck::Proper(c) => Some(c),
            _ => None,
        }
    }

    pub fn into_coloring(self) -> Option<Coloring> {
        match self {
            PartitionCheck::Proper(c) => Some(c),
            _ => None,
        }
    }
}

fn part_sets(n: usize, parts: &[Vec<usize>]) -> Result<Vec<VertexSet>> {
    Coloring::from_parts(n, parts)?;
    Ok(parts.iter().map(|p| p.iter().copied().collect()).collect())
}

/// If every part is independent and every edge meets fewer parts than its
/// size, coloring part `i` with color `i` is proper.
pub fn partition_witness(h: &BiHypergraph, parts: &[Vec<usize>]) -> Result<PartitionCheck> {
    let sets = part_sets(h.n(), parts)?;
    for (i, &p) in sets.iter().enumerate() {
        if let Some(e) = h.edges().iter().find(|e| e.set().is_subset(p)) {
            return Ok(PartitionCheck::DependentPart {
                part: i,
                edge: e.vertices().to_vec(),
            });
        }
    }
    for e in h.edges() {
        let touched = sets.iter().filter(|p| p.intersects(e.set())).count();
        if touched >= e.len() {
            return Ok(PartitionCheck::TooManyParts {
                edge: e.vertices().to_vec(),
                parts: touched,
            });
        }
    }
    let c = Coloring::from_parts(h.n(), parts)?;
    debug_assert!(crate::coloring::is_proper(h, &c).unwrap());
    Ok(PartitionCheck::Proper(c))
}

fn min_edge_size(h: &BiHypergraph) -> usize {
    h.edges().iter().map(|e| e.len()).min().unwrap_or(usize::MAX)
}

/// At most `r - 1` independent parts always give a proper coloring.
pub fn few_parts_witness(h: &BiHypergraph, parts: &[Vec<usize>]) -> Result<PartitionCheck> {
    let r = min_edge_size(h);
    if r != usize::MAX && parts.len() + 1 > r {
        return Err(Error::Precondition(format!(
            "{} parts is more than r - 1 = {}",
            parts.len(),
            r - 1
        )));
    }
    partition_witness(h, parts)
}

/// Partition into independent parts plus one singleton part `{w}`, where
/// every edge through `w` misses some other part.
pub fn singleton_part_witness(
    h: &BiHypergraph,
    parts: &[Vec<usize>],
    w: usize,
) -> Result<PartitionCheck> {
    if !parts.iter().any(|p| p.as_slice() == [w]) {
        return Err(Error::Precondition(format!("{{{w}}} is not one of the parts")));
    }
    partition_witness(h, parts)
}

/// On `2r` vertices: looks for a split into two complementary `r`-sets,
/// neither of which is an edge, and returns the induced 2-coloring.
/// Splits are tried in lexicographic order of the half containing vertex 0.
pub fn complement_pair_witness(h: &BiHypergraph) -> Result<Option<Coloring>> {
    let n = h.n();
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::Precondition(format!("need 2r vertices, got {n}")));
    }
    let r = n / 2;
    if let Some(e) = h.edges().iter().find(|e| e.len() != r) {
        return Err(Error::NotUniform {
            r,
            edge: e.vertices().to_vec(),
        });
    }
    let edges: Vec<VertexSet> = h.edge_sets();
    let full = VertexSet::full(n);
    let mut found = None;
    k_subsets(n - 1, r - 1, &mut |rest: VertexSet| {
        if found.is_some() {
            return;
        }
        let half: VertexSet = std::iter::once(0).chain(rest.iter().map(|v| v + 1)).collect();
        let other = full.difference(half);
        if !edges.contains(&half) && !edges.contains(&other) {
            found = Some(half);
        }
    });
    Ok(found.map(|half| Coloring::from_labels((0..n).map(|v| half.contains(v)))))
}
