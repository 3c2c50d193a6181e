//! Vertex identification `H·uv` of two non-adjacent vertices.

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, MixedHypergraph};

#[derive(Clone, Debug, Serialize)]
pub struct Identification {
    #[serde(skip)]
    pub quotient: MixedHypergraph,
    /// `map[old] = new`; `u` and `v` share an image.
    pub map: Vec<usize>,
    /// Members that collapsed onto an already present member.
    pub merged_duplicates: usize,
    /// Members dropped because they came to contain another member of the
    /// same family.
    pub dropped_supersets: usize,
}

impl Identification {
    /// Pulls a coloring of the quotient back to the original vertices.
    pub fn lift(&self, c: &Coloring) -> Result<Coloring> {
        if c.len() != self.quotient.n() {
            return Err(Error::LengthMismatch {
                expected: self.quotient.n(),
                got: c.len(),
            });
        }
        Ok(Coloring::from_labels(self.map.iter().map(|&w| c.color(w))))
    }
}

/// Merges `u` and `v` into the vertex `min(u, v)`; vertices above
/// `max(u, v)` shift down by one.
pub fn identify(h: &MixedHypergraph, u: usize, v: usize) -> Result<Identification> {
    let n = h.n();
    for x in [u, v] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    if u == v {
        return Err(Error::Precondition("cannot identify a vertex with itself".into()));
    }
    if h.is_adjacent(u, v)? {
        return Err(Error::Precondition(format!("vertices {u} and {v} are adjacent")));
    }
    let (keep, gone) = (u.min(v), u.max(v));
    let map: Vec<usize> = (0..n)
        .map(|x| match x {
            x if x == gone => keep,
            x if x > gone => x - 1,
            x => x,
        })
        .collect();
    let mut merged_duplicates = 0;
    let mut dropped_supersets = 0;
    let mut rewrite = |family: &[Edge]| -> Vec<VertexSet> {
        let mut sets: Vec<VertexSet> = family
            .iter()
            .map(|e| e.vertices().iter().map(|&x| map[x]).collect())
            .collect();
        sets.sort_unstable();
        let before = sets.len();
        sets.dedup();
        merged_duplicates += before - sets.len();
        let minimal: Vec<VertexSet> = sets
            .iter()
            .copied()
            .filter(|&s| !sets.iter().any(|&t| t != s && t.is_subset(s)))
            .collect();
        dropped_supersets += sets.len() - minimal.len();
        minimal
    };
    let c = rewrite(h.c_edges());
    let d = rewrite(h.d_edges());
    let mut quotient = MixedHypergraph::from_sets(n - 1, &c, &d)?;
    if let Some(labels) = h.labels() {
        let mut l: Vec<String> = Vec::with_capacity(n - 1);
        for x in 0..n {
            if x == keep {
                l.push(format!("{}~{}", labels[u.min(v)], labels[u.max(v)]));
            } else if x != gone {
                l.push(labels[x].clone());
            }
        }
        quotient = quotient.with_labels(l)?;
    }
    Ok(Identification {
        quotient,
        map,
        merged_duplicates,
        dropped_supersets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{decide_colorable, is_proper};

    #[test]
    fn isolated_vertices_merge() {
        let h = MixedHypergraph::new(5, vec![vec![0, 1, 2]], vec![vec![0, 1, 2]]).unwrap();
        let id = identify(&h, 3, 4).unwrap();
        assert_eq!(id.quotient.n(), 4);
        assert_eq!(id.quotient.c_edges(), h.c_edges());
        assert_eq!(id.map, vec![0, 1, 2, 3, 3]);
    }

    #[test]
    fn adjacent_pair_is_refused() {
        let h = MixedHypergraph::new(4, vec![], vec![vec![0, 1, 2]]).unwrap();
        assert!(matches!(identify(&h, 0, 2), Err(Error::Precondition(_))));
        assert!(identify(&h, 0, 0).is_err());
        assert!(identify(&h, 0, 9).is_err());
    }

    #[test]
    fn duplicates_and_supersets_are_recorded() {
        // {0,2,3} and {1,2,3} collapse; {0,4} becomes a subset of the image of {1,3,4}.
        let h = MixedHypergraph::new(
            5,
            vec![],
            vec![vec![0, 2, 3], vec![1, 2, 3], vec![0, 4], vec![1, 3, 4]],
        )
        .unwrap();
        let id = identify(&h, 0, 1).unwrap();
        assert_eq!(id.merged_duplicates, 1);
        assert_eq!(id.dropped_supersets, 1);
        assert_eq!(id.quotient.d_edges().len(), 2);
    }

    #[test]
    fn lift_is_proper() {
        let h = MixedHypergraph::new(
            6,
            vec![vec![0, 1, 2], vec![3, 4, 5]],
            vec![vec![0, 1, 2], vec![3, 4, 5], vec![1, 3]],
        )
        .unwrap();
        let id = identify(&h, 0, 3).unwrap();
        let verdict = decide_colorable(&id.quotient);
        let lifted = id.lift(verdict.witness.as_ref().unwrap()).unwrap();
        assert!(is_proper(&h, &lifted).unwrap());
    }
}
