//! Seeded random instance generators for property tests and sampled checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bitset::VertexSet;
use crate::hypergraph::{BiHypergraph, MixedHypergraph};

fn random_subset(rng: &mut impl Rng, n: usize, size: usize) -> VertexSet {
    let mut all: Vec<usize> = (0..n).collect();
    all.partial_shuffle(rng, size);
    all[..size].iter().copied().collect()
}

/// Adds `s` unless it is comparable with (or equal to) a member already there.
fn push_sperner(family: &mut Vec<VertexSet>, s: VertexSet) -> bool {
    if family.iter().any(|&t| t.is_subset(s) || s.is_subset(t)) {
        return false;
    }
    family.push(s);
    true
}

fn random_family(rng: &mut impl Rng, n: usize, attempts: usize, max_size: usize) -> Vec<VertexSet> {
    let mut family = Vec::new();
    for _ in 0..attempts {
        let size = rng.gen_range(1..=max_size.min(n));
        push_sperner(&mut family, random_subset(rng, n, size));
    }
    family
}

fn sparse_family(rng: &mut impl Rng, n: usize, attempts: usize, max_size: usize) -> Vec<VertexSet> {
    random_family(rng, n, attempts, max_size)
        .into_iter()
        .filter(|s| s.len() >= 2 || rng.gen_bool(0.05))
        .collect()
}

/// Mixed hypergraph on `1..=max_n` vertices; half the time a bi-hypergraph.
/// Edge sizes are mostly at least 2 so that instances are not trivially
/// uncolorable.
pub fn random_mixed(rng: &mut impl Rng, max_n: usize) -> MixedHypergraph {
    let n = rng.gen_range(1..=max_n);
    let attempts = rng.gen_range(0..=2 * n + 2);
    let max_size = if rng.gen_bool(0.1) { n } else { n.min(4) };
    let c = sparse_family(rng, n, attempts, max_size);
    let d = if rng.gen_bool(0.5) {
        c.clone()
    } else {
        sparse_family(rng, n, attempts, max_size)
    };
    MixedHypergraph::from_sets(n, &c, &d).expect("families are Sperner")
}

/// `m` distinct random `r`-subsets of `0..n` (fewer if `m > C(n, r)`).
pub fn random_uniform(rng: &mut impl Rng, n: usize, r: usize, m: usize) -> BiHypergraph {
    let mut sets: Vec<VertexSet> = Vec::with_capacity(m);
    let mut misses = 0;
    while sets.len() < m && misses < 1000 {
        let s = random_subset(rng, n, r);
        if sets.contains(&s) {
            misses += 1;
        } else {
            sets.push(s);
        }
    }
    BiHypergraph::from_sets(n, &sets).expect("uniform families are Sperner")
}

/// Random `r`-uniform instance in which every edge meets at most
/// `max_incidence` other edges; edges are added greedily until `m` edges or
/// no progress.
pub fn random_bounded_incidence(
    rng: &mut impl Rng,
    n: usize,
    r: usize,
    max_incidence: usize,
    m: usize,
) -> BiHypergraph {
    let mut sets: Vec<VertexSet> = Vec::new();
    let mut incidence: Vec<usize> = Vec::new();
    let mut misses = 0;
    while sets.len() < m && misses < 200 {
        let s = random_subset(rng, n, r);
        let meets: Vec<usize> = (0..sets.len()).filter(|&i| sets[i].intersects(s)).collect();
        let ok = !sets.contains(&s)
            && meets.len() <= max_incidence
            && meets.iter().all(|&i| incidence[i] < max_incidence);
        if !ok {
            misses += 1;
            continue;
        }
        for &i in &meets {
            incidence[i] += 1;
        }
        sets.push(s);
        incidence.push(meets.len());
    }
    BiHypergraph::from_sets(n, &sets).expect("uniform families are Sperner")
}

/// Random mixed hypergraph together with a non-adjacent pair `u < v`.
/// Members containing both endpoints are discarded after generation.
pub fn random_with_non_adjacent_pair(
    rng: &mut impl Rng,
    max_n: usize,
) -> (MixedHypergraph, usize, usize) {
    let max_n = max_n.max(2);
    loop {
        let h = random_mixed(rng, max_n);
        if h.n() < 2 {
            continue;
        }
        let u = rng.gen_range(0..h.n());
        let mut v = rng.gen_range(0..h.n() - 1);
        if v >= u {
            v += 1;
        }
        let pair: VertexSet = [u, v].into_iter().collect();
        let keep = |family: &[crate::Edge]| -> Vec<VertexSet> {
            family
                .iter()
                .map(|e| e.set())
                .filter(|s| !pair.is_subset(*s))
                .collect()
        };
        let g = MixedHypergraph::from_sets(h.n(), &keep(h.c_edges()), &keep(h.d_edges()))
            .expect("subfamilies of Sperner families are Sperner");
        return (g, u.min(v), u.max(v));
    }
}

/// A uniformly random permutation of `0..n`.
pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::max_edge_incidence;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let h = random_mixed(&mut rng, 7);
            assert!(h.n() >= 1 && h.n() <= 7);
            let u = random_uniform(&mut rng, 9, 4, 12);
            assert_eq!(u.uniformity(), Some(4));
            let b = random_bounded_incidence(&mut rng, 12, 4, 8, 30);
            assert!(max_edge_incidence(&b) <= 8);
            let (g, x, y) = random_with_non_adjacent_pair(&mut rng, 7);
            assert!(!g.is_adjacent(x, y).unwrap());
        }
    }

    #[test]
    fn seeds_reproduce() {
        let a = random_mixed(&mut ChaCha8Rng::seed_from_u64(3), 7);
        let b = random_mixed(&mut ChaCha8Rng::seed_from_u64(3), 7);
        assert_eq!(a, b);
    }
}
