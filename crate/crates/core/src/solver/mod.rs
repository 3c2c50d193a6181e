//! Exact colorability by backtracking over normalized colorings.
//!
//! Properness depends only on the partition of the vertices into color
//! classes, and a partition of `n` vertices has at most `n` classes, so it
//! suffices to search colorings where each vertex (in search order) takes a
//! label no larger than one plus the largest label used so far. Each
//! partition is visited exactly once.

mod oracle;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use oracle::{brute_force_colorings, brute_force_oracle, ORACLE_MAX_VERTICES};

use crate::bitset::VertexSet;
use crate::coloring::{is_proper, Coloring};
use crate::hypergraph::MixedHypergraph;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Colorable,
    Uncolorable,
}

impl Status {
    pub fn is_colorable(self) -> bool {
        self == Status::Colorable
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Colorable => "colorable",
            Status::Uncolorable => "uncolorable",
        }
    }
}

/// Outcome of a colorability decision.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub status: Status,
    /// Present iff `status` is colorable; always a proper coloring.
    pub witness: Option<Coloring>,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

#[derive(Serialize, Deserialize)]
struct VerdictJson {
    status: Status,
    witness: Option<Coloring>,
    nodes: u64,
    ms: u64,
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        VerdictJson {
            status: self.status,
            witness: self.witness.clone(),
            nodes: self.nodes_explored,
            ms: self.elapsed.as_millis() as u64,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = VerdictJson::deserialize(d)?;
        Ok(Verdict {
            status: v.status,
            witness: v.witness,
            nodes_explored: v.nodes,
            elapsed: Duration::from_millis(v.ms),
        })
    }
}

impl Verdict {
    pub fn is_colorable(&self) -> bool {
        self.status.is_colorable()
    }
}

/// Upper chromatic number with an attaining coloring; `value` is `None`
/// exactly when the hypergraph is uncolorable.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChiBar {
    pub value: Option<usize>,
    pub witness: Option<Coloring>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolveOptions {
    /// Only consider colorings with at most this many colors.
    pub max_colors: Option<usize>,
}

/// A consistency check that fires when the last vertex of a member (in
/// search order) receives its color.
#[derive(Clone, Debug)]
struct Check {
    others: Vec<usize>,
    len: usize,
    co_edge: bool,
    edge: bool,
}

/// Static description of an instance for the engine.
#[derive(Clone, Debug)]
struct Problem {
    n: usize,
    order: Vec<usize>,
    ending: Vec<Vec<Check>>,
    /// Some member can never be properly colored.
    trivially_uncolorable: bool,
}

impl Problem {
    fn new(h: &MixedHypergraph, order: Vec<usize>) -> Problem {
        let n = h.n();
        let mut pos = vec![0; n];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        // Merge C and D so a bi-edge is a single check carrying both flags.
        let mut members: Vec<(VertexSet, bool, bool)> = Vec::new();
        for e in h.c_edges() {
            members.push((e.set(), true, false));
        }
        for e in h.d_edges() {
            match h.c_edges().binary_search(e) {
                Ok(i) => members[i].2 = true,
                Err(_) => members.push((e.set(), false, true)),
            }
        }
        let mut trivially_uncolorable = false;
        let mut ending = vec![Vec::new(); n];
        for (set, co_edge, edge) in members {
            let len = set.len();
            if len == 1 || (co_edge && edge && len == 2) {
                trivially_uncolorable = true;
            }
            let last = set.iter().max_by_key(|&v| pos[v]).expect("nonempty");
            ending[pos[last]].push(Check {
                others: set.iter().filter(|&v| v != last).collect(),
                len,
                co_edge,
                edge,
            });
        }
        Problem {
            n,
            order,
            ending,
            trivially_uncolorable,
        }
    }
}

/// Vertices by descending degree, ties broken by index.
fn degree_order(h: &MixedHypergraph) -> Vec<usize> {
    let deg = h.degrees();
    let mut order: Vec<usize> = (0..h.n()).collect();
    order.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b)));
    order
}

/// Iterative depth-first search yielding complete proper colorings (raw
/// labels indexed by vertex, normalized in search order).
struct Engine {
    problem: Problem,
    limit: usize,
    exact: Option<usize>,
    colors: Vec<u8>,
    used_at: Vec<usize>,
    pending: Vec<u64>,
    depth: usize,
    started: bool,
    done: bool,
    nodes: u64,
}

impl Engine {
    fn new(problem: Problem, max_colors: Option<usize>, exact: Option<usize>) -> Engine {
        let n = problem.n;
        let limit = max_colors.unwrap_or(n).min(n).min(64);
        let limit = exact.map_or(limit, |k| k.min(limit));
        let done = problem.trivially_uncolorable || exact.is_some_and(|k| k > limit);
        Engine {
            problem,
            limit,
            exact,
            colors: vec![0; n],
            used_at: vec![0; n + 1],
            pending: vec![0; n],
            depth: 0,
            started: false,
            done,
            nodes: 0,
        }
    }

    fn candidates(&self, depth: usize) -> u64 {
        if self.limit == 0 {
            return 0;
        }
        let used = self.used_at[depth];
        let top = used.min(self.limit - 1);
        let mut allowed = if top >= 63 {
            u64::MAX
        } else {
            (1u64 << (top + 1)) - 1
        };
        for chk in &self.problem.ending[depth] {
            let seen = chk
                .others
                .iter()
                .fold(0u64, |m, &w| m | 1u64 << self.colors[w]);
            let k = seen.count_ones() as usize;
            if chk.edge && k == 1 {
                allowed &= !seen;
            }
            if chk.co_edge && k + 1 == chk.len {
                allowed &= seen;
            }
        }
        allowed
    }

    fn current(&self) -> Vec<u32> {
        self.colors.iter().map(|&c| c as u32).collect()
    }
}

impl Iterator for Engine {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let n = self.problem.n;
        if !self.started {
            self.started = true;
            if n == 0 {
                self.done = true;
                return self.exact.is_none_or(|k| k == 0).then(Vec::new);
            }
            self.depth = 0;
            self.pending[0] = self.candidates(0);
        }
        loop {
            let d = self.depth;
            if self.pending[d] == 0 {
                if d == 0 {
                    self.done = true;
                    return None;
                }
                self.depth -= 1;
                continue;
            }
            let x = self.pending[d].trailing_zeros() as usize;
            self.pending[d] &= self.pending[d] - 1;
            self.nodes += 1;
            self.colors[self.problem.order[d]] = x as u8;
            let used = self.used_at[d].max(x + 1);
            if d + 1 == n {
                if self.exact.is_none_or(|k| used == k) {
                    return Some(self.current());
                }
                continue;
            }
            if let Some(k) = self.exact {
                if used + (n - d - 1) < k {
                    continue;
                }
            }
            self.used_at[d + 1] = used;
            self.depth = d + 1;
            self.pending[d + 1] = self.candidates(d + 1);
        }
    }
}

/// Decides colorability with default options.
pub fn decide_colorable(h: &MixedHypergraph) -> Verdict {
    decide_colorable_with(h, SolveOptions::default())
}

pub fn decide_colorable_with(h: &MixedHypergraph, opts: SolveOptions) -> Verdict {
    let start = Instant::now();
    let mut engine = Engine::new(Problem::new(h, degree_order(h)), opts.max_colors, None);
    let witness = engine.next().map(Coloring::from_labels);
    if let Some(w) = &witness {
        assert!(
            is_proper(h, w).unwrap_or(false),
            "solver produced an improper witness"
        );
    }
    Verdict {
        status: if witness.is_some() {
            Status::Colorable
        } else {
            Status::Uncolorable
        },
        witness,
        nodes_explored: engine.nodes,
        elapsed: start.elapsed(),
    }
}

/// Finds a proper coloring using exactly `k` colors.
pub fn find_coloring_with_exactly(h: &MixedHypergraph, k: usize) -> Option<Coloring> {
    let mut engine = Engine::new(Problem::new(h, degree_order(h)), None, Some(k));
    let w = engine.next().map(Coloring::from_labels)?;
    debug_assert!(is_proper(h, &w).unwrap_or(false) && w.num_colors() == k);
    Some(w)
}

/// Streams every proper coloring (each vertex partition once) using at most
/// `max_colors` colors, in lexicographic order of the normalized label
/// vectors.
pub fn enumerate_proper_colorings(
    h: &MixedHypergraph,
    max_colors: Option<usize>,
) -> impl Iterator<Item = Coloring> {
    let order = (0..h.n()).collect();
    Engine::new(Problem::new(h, order), max_colors, None).map(Coloring::from_labels)
}

/// Maximum number of colors over all proper colorings.
///
/// Searches for a surjective `k`-coloring for `k = n, n-1, ...` and stops at
/// the first success; the lower end is the color count of the decision
/// witness.
pub fn upper_chromatic_number(h: &MixedHypergraph) -> ChiBar {
    let base = decide_colorable(h);
    let Some(base_witness) = base.witness else {
        return ChiBar {
            value: None,
            witness: None,
        };
    };
    let floor = base_witness.num_colors();
    for k in (floor + 1..=h.n()).rev() {
        if let Some(w) = find_coloring_with_exactly(h, k) {
            return ChiBar {
                value: Some(k),
                witness: Some(w),
            };
        }
    }
    ChiBar {
        value: Some(floor),
        witness: Some(base_witness),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::BiHypergraph;

    fn complete3(n: usize) -> BiHypergraph {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    edges.push(vec![a, b, c]);
                }
            }
        }
        BiHypergraph::new(n, edges).unwrap()
    }

    #[test]
    fn complete_triple_systems() {
        assert!(decide_colorable(&complete3(4)).is_colorable());
        let v = decide_colorable(&complete3(5));
        assert_eq!(v.status, Status::Uncolorable);
        assert!(v.witness.is_none());
    }

    #[test]
    fn small_edges_shortcut() {
        let h = BiHypergraph::new(3, vec![vec![0, 1]]).unwrap();
        let v = decide_colorable(&h);
        assert_eq!(v.status, Status::Uncolorable);
        assert_eq!(v.nodes_explored, 0);
        let h = MixedHypergraph::new(3, vec![vec![0]], vec![]).unwrap();
        assert!(!decide_colorable(&h).is_colorable());
        let h = MixedHypergraph::new(3, vec![], vec![vec![2]]).unwrap();
        assert!(!decide_colorable(&h).is_colorable());
        // A lone size-2 co-edge just forces equality.
        let h = MixedHypergraph::new(3, vec![vec![0, 1]], vec![vec![1, 2]]).unwrap();
        assert!(decide_colorable(&h).is_colorable());
    }

    #[test]
    fn co_edge_coloring_count() {
        // All partitions of {0,1,2} except the all-singleton one.
        let h = MixedHypergraph::new(3, vec![vec![0, 1, 2]], vec![]).unwrap();
        let all: Vec<_> = enumerate_proper_colorings(&h, None).collect();
        assert_eq!(all.len(), 4);
        let labels: Vec<Vec<u32>> = all.iter().map(|c| c.colors().to_vec()).collect();
        let mut sorted = labels.clone();
        sorted.sort();
        assert_eq!(labels, sorted);
    }

    #[test]
    fn enumeration_respects_max_colors() {
        let h = MixedHypergraph::empty(4).unwrap();
        assert_eq!(enumerate_proper_colorings(&h, None).count(), 15);
        // Stirling numbers S(4,1) + S(4,2) = 1 + 7.
        assert_eq!(enumerate_proper_colorings(&h, Some(2)).count(), 8);
        assert_eq!(enumerate_proper_colorings(&h, Some(0)).count(), 0);
    }

    #[test]
    fn empty_vertex_set() {
        let h = MixedHypergraph::empty(0).unwrap();
        assert!(decide_colorable(&h).is_colorable());
        assert_eq!(enumerate_proper_colorings(&h, None).count(), 1);
        assert_eq!(upper_chromatic_number(&h).value, Some(0));
    }

    #[test]
    fn chibar_values() {
        assert_eq!(upper_chromatic_number(&complete3(4)).value, Some(2));
        assert_eq!(upper_chromatic_number(&complete3(5)).value, None);
        let empty = MixedHypergraph::empty(3).unwrap();
        let cb = upper_chromatic_number(&empty);
        assert_eq!(cb.value, Some(3));
        assert_eq!(cb.witness.unwrap().num_colors(), 3);
        // Isolated vertices each add a color.
        let h = BiHypergraph::new(5, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(upper_chromatic_number(&h).value, Some(4));
    }

    #[test]
    fn max_colors_restricts_the_decision() {
        // A single 4-edge needs 2 or 3 colors; one color is not enough.
        let h = BiHypergraph::new(4, vec![vec![0, 1, 2, 3]]).unwrap();
        let opts = SolveOptions {
            max_colors: Some(1),
        };
        assert!(!decide_colorable_with(&h, opts).is_colorable());
        let opts = SolveOptions {
            max_colors: Some(2),
        };
        assert!(decide_colorable_with(&h, opts).is_colorable());
    }

    #[test]
    fn verdict_json_shape() {
        let v = decide_colorable(&complete3(4));
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["status"], "colorable");
        assert!(json["witness"].is_array());
        assert!(json["nodes"].is_u64());
        assert!(json["ms"].is_u64());
        let back: Verdict = serde_json::from_value(json).unwrap();
        assert_eq!(back.witness, v.witness);
    }
}
