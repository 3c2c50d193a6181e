//! Colorings and the proper-coloring predicates.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::MixedHypergraph;

/// A vertex coloring with labels normalized to first-occurrence order:
/// scanning vertices `0..n`, each new label is the number of labels seen
/// before it. Two colorings are equal iff they induce the same partition.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", try_from = "Vec<u32>")]
pub struct Coloring {
    colors: Vec<u32>,
    num_colors: usize,
}

impl Coloring {
    /// Normalizes arbitrary labels.
    pub fn from_labels<I>(labels: I) -> Coloring
    where
        I: IntoIterator,
        I::Item: std::hash::Hash + Eq,
    {
        let mut seen = HashMap::new();
        let colors: Vec<u32> = labels
            .into_iter()
            .map(|l| {
                let next = seen.len() as u32;
                *seen.entry(l).or_insert(next)
            })
            .collect();
        Coloring {
            colors,
            num_colors: seen.len(),
        }
    }

    /// Partition view: `parts[i]` is the `i`-th color class, ascending.
    pub fn from_parts(n: usize, parts: &[Vec<usize>]) -> Result<Coloring> {
        let mut labels = vec![usize::MAX; n];
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if labels[v] != usize::MAX {
                    return Err(Error::NotPartition(format!("vertex {v} in two parts")));
                }
                labels[v] = i;
            }
        }
        if let Some(v) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::NotPartition(format!("vertex {v} not covered")));
        }
        Ok(Coloring::from_labels(labels))
    }

    #[inline]
    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    #[inline]
    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    #[inline]
    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    /// Color classes in label order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_colors];
        for (v, &c) in self.colors.iter().enumerate() {
            out[c as usize].push(v);
        }
        out
    }

    /// Number of distinct colors on `edge`.
    pub fn distinct_on(&self, edge: &[usize]) -> Result<usize> {
        if let Some(&v) = edge.iter().find(|&&v| v >= self.colors.len()) {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.colors.len(),
            });
        }
        if self.num_colors <= 64 {
            let mask = edge
                .iter()
                .fold(0u64, |m, &v| m | 1u64 << self.colors[v]);
            Ok(mask.count_ones() as usize)
        } else {
            let mut cs: Vec<u32> = edge.iter().map(|&v| self.colors[v]).collect();
            cs.sort_unstable();
            cs.dedup();
            Ok(cs.len())
        }
    }
}

impl From<Coloring> for Vec<u32> {
    fn from(c: Coloring) -> Vec<u32> {
        c.colors
    }
}

impl TryFrom<Vec<u32>> for Coloring {
    type Error = String;
    fn try_from(v: Vec<u32>) -> std::result::Result<Self, String> {
        let c = Coloring::from_labels(v.iter().copied());
        if c.colors != v {
            return Err(format!("coloring {v:?} is not normalized"));
        }
        Ok(c)
    }
}

/// A co-edge is properly colored iff it is not rainbow: `|f(e)| < |e|`.
pub fn is_properly_colored_c(edge: &[usize], c: &Coloring) -> Result<bool> {
    Ok(c.distinct_on(edge)? < edge.len())
}

/// An edge is properly colored iff it is not monochromatic: `|f(e)| > 1`.
/// Singleton edges can never be properly colored.
pub fn is_properly_colored_d(edge: &[usize], c: &Coloring) -> Result<bool> {
    Ok(c.distinct_on(edge)? > 1)
}

/// Every co-edge and every edge of `h` is properly colored by `c`.
pub fn is_proper(h: &MixedHypergraph, c: &Coloring) -> Result<bool> {
    if c.len() != h.n() {
        return Err(Error::LengthMismatch {
            expected: h.n(),
            got: c.len(),
        });
    }
    for e in h.c_edges() {
        if !is_properly_colored_c(e.vertices(), c)? {
            return Ok(false);
        }
    }
    for e in h.d_edges() {
        if !is_properly_colored_d(e.vertices(), c)? {
            return Ok(false);
        }
    }
    Ok(true)
}
