//! Naive reference decision procedure: walk every set partition of the
//! vertices as a restricted growth string and test it directly. Shares no
//! code with the backtracking engine.

use std::time::Instant;

use super::{Status, Verdict};
use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::hypergraph::MixedHypergraph;

/// Largest order the oracle accepts; Bell(12) is about 4.2 million.
pub const ORACLE_MAX_VERTICES: usize = 12;

fn distinct(edge: &[usize], labels: &[usize]) -> usize {
    let mut seen: Vec<usize> = edge.iter().map(|&v| labels[v]).collect();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

fn proper(h: &MixedHypergraph, labels: &[usize]) -> bool {
    h.c_edges()
        .iter()
        .all(|e| distinct(e.vertices(), labels) < e.len())
        && h.d_edges()
            .iter()
            .all(|e| distinct(e.vertices(), labels) > 1)
}

/// Advances `a` to the next restricted growth string of the same length.
/// Returns false once the last string (`0, 1, ..., n-1`) has been passed.
fn next_rgs(a: &mut [usize]) -> bool {
    let n = a.len();
    for i in (1..n).rev() {
        let bound = a[..i].iter().max().copied().unwrap_or(0) + 1;
        if a[i] < bound {
            a[i] += 1;
            for x in &mut a[i + 1..] {
                *x = 0;
            }
            return true;
        }
    }
    false
}

/// Same contract as [`super::decide_colorable`], by exhaustive partition
/// enumeration with no pruning.
pub fn brute_force_oracle(h: &MixedHypergraph) -> Result<Verdict> {
    let n = h.n();
    if n > ORACLE_MAX_VERTICES {
        return Err(Error::TooLarge {
            n,
            limit: ORACLE_MAX_VERTICES,
        });
    }
    let start = Instant::now();
    let mut labels = vec![0usize; n];
    let mut nodes = 0u64;
    loop {
        nodes += 1;
        if proper(h, &labels) {
            return Ok(Verdict {
                status: Status::Colorable,
                witness: Some(Coloring::from_labels(labels)),
                nodes_explored: nodes,
                elapsed: start.elapsed(),
            });
        }
        if !next_rgs(&mut labels) {
            break;
        }
    }
    Ok(Verdict {
        status: Status::Uncolorable,
        witness: None,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
    })
}

/// Every proper coloring, by the same naive walk. Test support.
pub fn brute_force_colorings(h: &MixedHypergraph) -> Result<Vec<Coloring>> {
    let n = h.n();
    if n > ORACLE_MAX_VERTICES {
        return Err(Error::TooLarge {
            n,
            limit: ORACLE_MAX_VERTICES,
        });
    }
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    loop {
        if proper(h, &labels) {
            out.push(Coloring::from_labels(labels.iter().copied()));
        }
        if !next_rgs(&mut labels) {
            return Ok(out);
        }
    }
}
