//! Structural predicates: minimality, `K(5,3,3)` containment,
//! 2-edge-connectivity, and the identification-ladder inequality.

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::VertexSet;
use crate::coloring::Coloring;
use crate::constructions::k_subsets;
use crate::hypergraph::{BiHypergraph, MixedHypergraph};
use crate::solver::decide_colorable;

/// True iff `n >= floor(r m / (n + 1)) (r - 1) + 1`: every member of
/// `BiHyp(n+1, r, m)` then has two non-adjacent vertices, so colorability
/// at order `n` and size `<= m` carries over to order `n + 1`.
pub fn reduction_applies(n: u64, r: u64, m: u64) -> bool {
    n > (r * m / (n + 1)) * (r.saturating_sub(1))
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalityCertificate {
    pub minimal: bool,
    pub uncolorable: bool,
    /// For each edge in storage order, a proper coloring of `H - e` when one
    /// was found.
    pub deletion_witnesses: Vec<Option<Coloring>>,
}

impl MinimalityCertificate {
    /// Edges whose deletion leaves an uncolorable instance.
    pub fn critical_failures(&self) -> Vec<usize> {
        self.deletion_witnesses
            .iter()
            .enumerate()
            .filter(|(_, w)| w.is_none())
            .map(|(i, _)| i)
            .collect()
    }
}

/// Uncolorable, with every single-edge deletion colorable. Deletions are
/// solved in parallel on the current rayon pool.
pub fn is_minimal_uncolorable(h: &BiHypergraph) -> MinimalityCertificate {
    let uncolorable = !decide_colorable(h).is_colorable();
    if !uncolorable {
        return MinimalityCertificate {
            minimal: false,
            uncolorable,
            deletion_witnesses: Vec::new(),
        };
    }
    let deletion_witnesses: Vec<Option<Coloring>> = (0..h.size())
        .into_par_iter()
        .map(|i| decide_colorable(&h.delete_edge_at(i)).witness)
        .collect();
    MinimalityCertificate {
        minimal: deletion_witnesses.iter().all(Option::is_some),
        uncolorable,
        deletion_witnesses,
    }
}

/// A 5-set of vertices all of whose ten triples are edges.
pub fn contains_k533(h: &BiHypergraph) -> Option<Vec<usize>> {
    let triples: Vec<VertexSet> = h.edge_sets().into_iter().filter(|e| e.len() == 3).collect();
    if triples.len() < 10 {
        return None;
    }
    let mut found = None;
    k_subsets(h.n(), 5, &mut |s: VertexSet| {
        if found.is_none() && triples.iter().filter(|t| t.is_subset(s)).count() == 10 {
            found = Some(s.to_vec());
        }
    });
    found
}

fn connected_without(n: usize, members: &[VertexSet], skip: Option<usize>) -> bool {
    if n == 0 {
        return true;
    }
    let mut reached = VertexSet::singleton(0);
    loop {
        let mut next = reached;
        for (i, &e) in members.iter().enumerate() {
            if Some(i) != skip && e.intersects(next) {
                next = next.union(e);
            }
        }
        if next == reached {
            return reached == VertexSet::full(n);
        }
        reached = next;
    }
}

/// Connected on the co-occurrence graph (two vertices adjacent iff they
/// share a member of `C ∪ D`).
pub fn is_connected(h: &MixedHypergraph) -> bool {
    let members: Vec<VertexSet> = h.members().iter().map(|e| e.set()).collect();
    connected_without(h.n(), &members, None)
}

/// Connected on the co-occurrence graph, and still connected after deleting
/// any one member of `C ∪ D`.
pub fn is_two_edge_connected(h: &MixedHypergraph) -> bool {
    let members: Vec<VertexSet> = h.members().iter().map(|e| e.set()).collect();
    connected_without(h.n(), &members, None)
        && (0..members.len()).all(|i| connected_without(h.n(), &members, Some(i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{make_knlm, make_muc};

    fn k(n: usize) -> BiHypergraph {
        BiHypergraph::try_from(make_knlm(n, 3, 3).unwrap()).unwrap()
    }

    #[test]
    fn ladder_inequality() {
        assert!(reduction_applies(7, 3, 9));
        assert!(!reduction_applies(6, 3, 9));
        assert!(reduction_applies(49, 4, 209));
        assert!((7..=100).all(|n| reduction_applies(n, 3, 9)));
    }

    #[test]
    fn minimality_of_complete_triple_systems() {
        let c = is_minimal_uncolorable(&k(5));
        assert!(c.minimal && c.uncolorable);
        assert_eq!(c.deletion_witnesses.len(), 10);
        let c = is_minimal_uncolorable(&k(6));
        assert!(c.uncolorable && !c.minimal);
        assert!(!c.critical_failures().is_empty());
        assert!(!is_minimal_uncolorable(&k(4)).minimal);
    }

    #[test]
    fn k533_detection() {
        assert!(contains_k533(&k(6)).is_some());
        assert_eq!(contains_k533(&k(5)), Some(vec![0, 1, 2, 3, 4]));
        assert!(contains_k533(&make_muc(6).unwrap()).is_none());
        let nine = k(5).delete_edge_at(0);
        assert!(contains_k533(&nine).is_none());
    }

    #[test]
    fn two_edge_connectivity() {
        assert!(is_two_edge_connected(&k(5)));
        let one = BiHypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(!is_two_edge_connected(&one));
        let two = BiHypergraph::new(6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert!(!is_two_edge_connected(&two));
    }
}
