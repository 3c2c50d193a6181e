//! Canonical forms: the lexicographically least sorted edge list over all
//! vertex relabelings, with edges compared as bit masks.
//!
//! Labels are assigned in increasing order `0, 1, ...`. Once labels
//! `0..t` are placed, every edge inside them has its image fixed, and in
//! mask order those images are exactly the initial segment of the final
//! list that lies below `1 << t`. Branches whose segment already loses to
//! the best list are cut. Vertices interchangeable by a transposition
//! automorphism are only tried once per level.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::hypergraph::MixedHypergraph;

/// Largest order accepted by the permutation search.
pub const CANON_MAX_VERTICES: usize = 12;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub n: usize,
    /// Common edge size, if all edges agree.
    pub r: Option<usize>,
    #[serde(with = "edge_lists")]
    pub edges: Vec<VertexSet>,
    pub hash: String,
}

mod edge_lists {
    use super::VertexSet;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(edges: &[VertexSet], s: S) -> Result<S::Ok, S::Error> {
        let lists: Vec<Vec<usize>> = edges.iter().map(|e| e.to_vec()).collect();
        lists.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<VertexSet>, D::Error> {
        let lists = Vec::<Vec<usize>>::deserialize(d)?;
        Ok(lists.into_iter().map(|l| l.into_iter().collect()).collect())
    }
}

impl CanonicalForm {
    /// Wraps an edge list that is already canonical.
    pub fn from_canonical(n: usize, edges: Vec<VertexSet>) -> CanonicalForm {
        let r = edges.first().map(|e| e.len());
        let r = r.filter(|&r| edges.iter().all(|e| e.len() == r));
        let hash = content_hash(n, &edges);
        CanonicalForm { n, r, edges, hash }
    }
}

/// SHA-256 over `n` and the edge masks, hex encoded.
pub fn content_hash(n: usize, edges: &[VertexSet]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(format!("n={n};"));
    for e in edges {
        hasher.update(format!("{:x},", e.bits()));
    }
    hex::encode(hasher.finalize())
}

/// Canonical form of the member family `C ∪ D` of a bi-hypergraph.
pub fn canonical_form(h: &MixedHypergraph) -> Result<CanonicalForm> {
    if !h.is_bi() {
        return Err(Error::NotBiHypergraph);
    }
    let edges: Vec<VertexSet> = h.c_edges().iter().map(|e| e.set()).collect();
    let (canon, _) = canonical_labeling(h.n(), &edges)?;
    Ok(CanonicalForm::from_canonical(h.n(), canon))
}

/// Least relabeled edge list and a permutation `perm[old] = new` reaching it.
pub fn canonical_labeling(n: usize, edges: &[VertexSet]) -> Result<(Vec<VertexSet>, Vec<usize>)> {
    if n > CANON_MAX_VERTICES {
        return Err(Error::TooLarge {
            n,
            limit: CANON_MAX_VERTICES,
        });
    }
    let mut search = Search::new(n, edges, None);
    search.run(0);
    let best = search.best.expect("the search visits at least one leaf");
    Ok((best, search.best_perm))
}

/// True iff `edges` (sorted ascending) is its own canonical form.
pub fn is_canonical(n: usize, edges: &[VertexSet]) -> bool {
    assert!(n <= CANON_MAX_VERTICES, "canonical search limited to {CANON_MAX_VERTICES} vertices");
    debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
    let mut search = Search::new(n, edges, Some(edges.to_vec()));
    search.run(0);
    !search.found_smaller
}

struct Search {
    n: usize,
    edges: Vec<VertexSet>,
    incident: Vec<Vec<usize>>,
    /// Representative of each vertex's twin class.
    twin_rep: Vec<usize>,
    label: Vec<usize>,
    assigned: VertexSet,
    image: Vec<u64>,
    remaining: Vec<usize>,
    prefix: Vec<u64>,
    best: Option<Vec<VertexSet>>,
    best_perm: Vec<usize>,
    /// Only look for something smaller than `best`; stop when found.
    test_only: bool,
    found_smaller: bool,
}

impl Search {
    fn new(n: usize, edges: &[VertexSet], best: Option<Vec<VertexSet>>) -> Search {
        let mut incident = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for v in e.iter() {
                incident[v].push(i);
            }
        }
        Search {
            n,
            edges: edges.to_vec(),
            incident,
            twin_rep: twin_representatives(n, edges),
            label: vec![usize::MAX; n],
            assigned: VertexSet::EMPTY,
            image: vec![0; edges.len()],
            remaining: edges.iter().map(|e| e.len()).collect(),
            prefix: Vec::with_capacity(edges.len()),
            test_only: best.is_some(),
            best,
            best_perm: (0..n).collect(),
            found_smaller: false,
        }
    }

    /// Compares the fixed prefix against the part of `best` below `1 << t`.
    fn compare(&self, t: usize) -> Ordering {
        let Some(best) = &self.best else {
            return Ordering::Less;
        };
        let limit = if t >= 64 { u64::MAX } else { (1u64 << t) - 1 };
        let bt = best.partition_point(|e| e.bits() <= limit);
        for (a, b) in self.prefix.iter().zip(&best[..bt]) {
            match a.cmp(&b.bits()) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        // A shorter fixed segment means the next edge of this branch lies at
        // or above `1 << t`, after the corresponding edge of `best`.
        bt.cmp(&self.prefix.len())
    }

    fn run(&mut self, t: usize) {
        if t == self.n {
            self.leaf();
            return;
        }
        let mut tried = VertexSet::EMPTY;
        for x in 0..self.n {
            if self.assigned.contains(x) || tried.contains(self.twin_rep[x]) {
                continue;
            }
            tried.insert(self.twin_rep[x]);
            let mark = self.prefix.len();
            self.place(x, t);
            let ord = self.compare(t + 1);
            if ord == Ordering::Less && self.test_only {
                self.found_smaller = true;
            } else if ord != Ordering::Greater {
                self.run(t + 1);
            }
            self.unplace(x, t, mark);
            if self.found_smaller {
                return;
            }
        }
    }

    fn place(&mut self, x: usize, t: usize) {
        self.label[x] = t;
        self.assigned.insert(x);
        let start = self.prefix.len();
        for &i in &self.incident[x] {
            self.image[i] |= 1 << t;
            self.remaining[i] -= 1;
            if self.remaining[i] == 0 {
                self.prefix.push(self.image[i]);
            }
        }
        self.prefix[start..].sort_unstable();
    }

    fn unplace(&mut self, x: usize, t: usize, mark: usize) {
        for &i in &self.incident[x] {
            self.image[i] &= !(1 << t);
            self.remaining[i] += 1;
        }
        self.prefix.truncate(mark);
        self.assigned.remove(x);
        self.label[x] = usize::MAX;
    }

    fn leaf(&mut self) {
        // Isolated vertices contribute no edges; every edge is fixed here.
        debug_assert_eq!(self.prefix.len(), self.edges.len());
        let better = match &self.best {
            None => true,
            Some(best) => self
                .prefix
                .iter()
                .copied()
                .lt(best.iter().map(|e| e.bits())),
        };
        if better {
            if self.test_only {
                self.found_smaller = true;
                return;
            }
            self.best = Some(self.prefix.iter().map(|&b| VertexSet::from_bits(b)).collect());
            self.best_perm = self.label.clone();
        }
    }
}

/// `rep[v]` is the least vertex `u` such that swapping `u` and `v` maps the
/// edge family onto itself.
fn twin_representatives(n: usize, edges: &[VertexSet]) -> Vec<usize> {
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    let swap = |e: VertexSet, x: usize, y: usize| -> VertexSet {
        match (e.contains(x), e.contains(y)) {
            (true, false) => {
                let mut f = e;
                f.remove(x);
                f.insert(y);
                f
            }
            (false, true) => {
                let mut f = e;
                f.remove(y);
                f.insert(x);
                f
            }
            _ => e,
        }
    };
    let mut rep: Vec<usize> = (0..n).collect();
    for y in 0..n {
        for x in 0..y {
            if rep[x] != x {
                continue;
            }
            let twins = sorted
                .iter()
                .all(|&e| sorted.binary_search(&swap(e, x, y)).is_ok());
            if twins {
                rep[y] = x;
                break;
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{make_fano, make_hk, make_knlm};
    use crate::hypergraph::BiHypergraph;

    fn sets(h: &BiHypergraph) -> Vec<VertexSet> {
        h.edge_sets()
    }

    /// Minimum over all `n!` permutations, for comparison.
    fn brute_min(n: usize, edges: &[VertexSet]) -> Vec<VertexSet> {
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<VertexSet>> = None;
        loop {
            let mut img: Vec<VertexSet> = edges
                .iter()
                .map(|e| e.iter().map(|v| perm[v]).collect())
                .collect();
            img.sort_unstable();
            if best.as_ref().is_none_or(|b| img < *b) {
                best = Some(img);
            }
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        best.unwrap()
    }

    #[test]
    fn matches_brute_force_on_constructions() {
        for h in [make_hk(2).unwrap(), make_fano()] {
            let e = sets(&h);
            let (canon, perm) = canonical_labeling(h.n(), &e).unwrap();
            assert_eq!(canon, brute_min(h.n(), &e));
            let mut img: Vec<VertexSet> =
                e.iter().map(|s| s.iter().map(|v| perm[v]).collect()).collect();
            img.sort_unstable();
            assert_eq!(img, canon);
        }
    }

    #[test]
    fn symmetric_inputs_are_fast() {
        let k = BiHypergraph::try_from(make_knlm(12, 3, 3).unwrap()).unwrap();
        let f = canonical_form(&k).unwrap();
        assert_eq!(f.edges.len(), 220);
        assert_eq!(f.r, Some(3));
        let empty = BiHypergraph::new(12, vec![]).unwrap();
        assert!(canonical_form(&empty).unwrap().edges.is_empty());
        assert!(canonical_form(&BiHypergraph::new(13, vec![]).unwrap()).is_err());
    }

    #[test]
    fn block_swap_of_h2_is_invisible() {
        let h = make_hk(2).unwrap();
        let swapped = h.relabel(&[3, 4, 5, 0, 1, 2]).unwrap();
        assert_eq!(canonical_form(&h).unwrap(), canonical_form(&swapped).unwrap());
    }

    #[test]
    fn canonicity_test() {
        let first: Vec<VertexSet> = vec![[0, 1, 2].into_iter().collect()];
        assert!(is_canonical(4, &first));
        let other: Vec<VertexSet> = vec![[1, 2, 3].into_iter().collect()];
        assert!(!is_canonical(4, &other));
        let h = make_hk(2).unwrap();
        let (canon, _) = canonical_labeling(6, &sets(&h)).unwrap();
        assert!(is_canonical(6, &canon));
    }

    #[test]
    fn twins() {
        let k = make_knlm(5, 3, 3).unwrap();
        let e: Vec<VertexSet> = k.c_edges().iter().map(|e| e.set()).collect();
        assert_eq!(twin_representatives(5, &e), vec![0; 5]);
        let h = make_hk(2).unwrap();
        assert_eq!(twin_representatives(6, &sets(&h)), vec![0, 1, 2, 3, 4, 5]);
    }
}
