//! Mixed hypergraphs `(V, C, D)` and bi-hypergraphs (`C = D`).

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

/// One member of `C` or `D`: a sorted vertex list plus its bit-set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    vertices: Vec<usize>,
    set: VertexSet,
}

impl Edge {
    /// Builds an edge on `n` vertices, rejecting empty, out-of-range and
    /// repeated-vertex inputs. Vertex order in `vertices` is irrelevant.
    pub fn new(vertices: &[usize], n: usize) -> Result<Edge> {
        if vertices.is_empty() {
            return Err(Error::EmptyEdge);
        }
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        if let Some(&v) = sorted.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertex(vertices.to_vec()));
        }
        let set = sorted.iter().copied().collect();
        Ok(Edge {
            vertices: sorted,
            set,
        })
    }

    pub(crate) fn from_set(set: VertexSet) -> Edge {
        debug_assert!(!set.is_empty());
        Edge {
            vertices: set.to_vec(),
            set,
        }
    }

    #[inline]
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    #[inline]
    pub fn set(&self) -> VertexSet {
        self.set
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.set.contains(v)
    }
}

impl Ord for Edge {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertices.cmp(&other.vertices)
    }
}

impl PartialOrd for Edge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.vertices).finish()
    }
}

/// Sorts, dedups and checks the Sperner property of one family.
fn normalize_family(mut edges: Vec<Edge>, family: &'static str) -> Result<Vec<Edge>> {
    edges.sort();
    edges.dedup();
    for (i, a) in edges.iter().enumerate() {
        for b in &edges[i + 1..] {
            let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
            if small.set.is_subset(big.set) {
                return Err(Error::NotSperner {
                    family,
                    sub: small.vertices.clone(),
                    sup: big.vertices.clone(),
                });
            }
        }
    }
    Ok(edges)
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::TooManyVertices {
            n,
            limit: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

/// A mixed hypergraph on vertices `0..n` with co-edges `C` and edges `D`.
///
/// Both families are Sperner, duplicate-free and kept sorted, so derived
/// structural equality compares `(n, C, D)`. Display labels do not take
/// part in equality.
#[derive(Clone)]
pub struct MixedHypergraph {
    n: usize,
    c_edges: Vec<Edge>,
    d_edges: Vec<Edge>,
    labels: Option<Vec<String>>,
}

impl PartialEq for MixedHypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.c_edges == other.c_edges && self.d_edges == other.d_edges
    }
}

impl Eq for MixedHypergraph {}

impl fmt::Debug for MixedHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MixedHypergraph")
            .field("n", &self.n)
            .field("c_edges", &self.c_edges)
            .field("d_edges", &self.d_edges)
            .finish()
    }
}

impl MixedHypergraph {
    pub fn new(n: usize, c_edges: Vec<Vec<usize>>, d_edges: Vec<Vec<usize>>) -> Result<Self> {
        check_order(n)?;
        let c = c_edges
            .iter()
            .map(|e| Edge::new(e, n))
            .collect::<Result<Vec<_>>>()?;
        let d = d_edges
            .iter()
            .map(|e| Edge::new(e, n))
            .collect::<Result<Vec<_>>>()?;
        Self::from_edges(n, c, d)
    }

    pub fn from_edges(n: usize, c_edges: Vec<Edge>, d_edges: Vec<Edge>) -> Result<Self> {
        check_order(n)?;
        for e in c_edges.iter().chain(&d_edges) {
            if let Some(&v) = e.vertices.last() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
        }
        Ok(MixedHypergraph {
            n,
            c_edges: normalize_family(c_edges, "co-edge")?,
            d_edges: normalize_family(d_edges, "edge")?,
            labels: None,
        })
    }

    /// Builds from bit-sets; used on hot paths where inputs are known valid
    /// apart from the Sperner check.
    pub fn from_sets(n: usize, c_sets: &[VertexSet], d_sets: &[VertexSet]) -> Result<Self> {
        let to_edges = |sets: &[VertexSet]| -> Result<Vec<Edge>> {
            sets.iter()
                .map(|&s| {
                    if s.is_empty() {
                        Err(Error::EmptyEdge)
                    } else {
                        Ok(Edge::from_set(s))
                    }
                })
                .collect()
        };
        Self::from_edges(n, to_edges(c_sets)?, to_edges(d_sets)?)
    }

    /// Hypergraph with no co-edges and no edges.
    pub fn empty(n: usize) -> Result<Self> {
        Self::from_edges(n, Vec::new(), Vec::new())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn c_edges(&self) -> &[Edge] {
        &self.c_edges
    }

    #[inline]
    pub fn d_edges(&self) -> &[Edge] {
        &self.d_edges
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Attaches display names; one per vertex.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn is_bi(&self) -> bool {
        self.c_edges == self.d_edges
    }

    /// The distinct vertex sets of `C ∪ D`, each once.
    pub fn members(&self) -> Vec<&Edge> {
        let mut out: Vec<&Edge> = self.c_edges.iter().collect();
        for e in &self.d_edges {
            if self.c_edges.binary_search(e).is_err() {
                out.push(e);
            }
        }
        out
    }

    /// Size of `C ∪ D` counted without repetition (for a bi-hypergraph, `|E|`).
    pub fn num_members(&self) -> usize {
        self.members().len()
    }

    /// Common size of every member of `C ∪ D`, if there is one.
    pub fn uniformity(&self) -> Option<usize> {
        let mut it = self.c_edges.iter().chain(&self.d_edges).map(Edge::len);
        let r = it.next()?;
        it.all(|s| s == r).then_some(r)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Distinct members of `C ∪ D` containing `v`.
    pub fn incident_edges(&self, v: usize) -> Result<Vec<&Edge>> {
        self.check_vertex(v)?;
        Ok(self.members().into_iter().filter(|e| e.contains(v)).collect())
    }

    /// `N(v)`: vertices sharing some member of `C ∪ D` with `v`.
    pub fn neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        let mut nb = VertexSet::EMPTY;
        for e in self.c_edges.iter().chain(&self.d_edges) {
            if e.contains(v) {
                nb = nb.union(e.set);
            }
        }
        nb.remove(v);
        Ok(nb)
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        Ok(self.incident_edges(v)?.len())
    }

    /// Degrees of all vertices, counting each distinct member once.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in self.members() {
            for &v in e.vertices() {
                deg[v] += 1;
            }
        }
        deg
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(v)?;
        Ok(u != v && self.neighborhood(u)?.contains(v))
    }

    /// Pairs `u < v` that never share a member of `C ∪ D`.
    pub fn non_adjacent_pairs(&self) -> Vec<(usize, usize)> {
        let nbs: Vec<VertexSet> = (0..self.n)
            .map(|v| self.neighborhood(v).expect("in range"))
            .collect();
        let mut out = Vec::new();
        for (u, nb) in nbs.iter().enumerate() {
            for v in u + 1..self.n {
                if !nb.contains(v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn vertex_set(&self, s: &[usize]) -> Result<VertexSet> {
        let mut set = VertexSet::EMPTY;
        for &v in s {
            self.check_vertex(v)?;
            set.insert(v);
        }
        Ok(set)
    }

    /// True iff no member of `C ∪ D` lies entirely inside `s`.
    pub fn is_independent(&self, s: &[usize]) -> Result<bool> {
        let set = self.vertex_set(s)?;
        Ok(self.is_independent_set(set))
    }

    pub fn is_independent_set(&self, set: VertexSet) -> bool {
        !self
            .c_edges
            .iter()
            .chain(&self.d_edges)
            .any(|e| e.set.is_subset(set))
    }

    /// `H − e`: removes `e` from every family that contains it.
    pub fn delete_edge(&self, e: &[usize]) -> Result<MixedHypergraph> {
        let edge = Edge::new(e, self.n)?;
        let c_pos = self.c_edges.binary_search(&edge).ok();
        let d_pos = self.d_edges.binary_search(&edge).ok();
        if c_pos.is_none() && d_pos.is_none() {
            return Err(Error::EdgeNotFound(edge.vertices));
        }
        let mut out = self.clone();
        if let Some(i) = c_pos {
            out.c_edges.remove(i);
        }
        if let Some(i) = d_pos {
            out.d_edges.remove(i);
        }
        Ok(out)
    }

    /// Sub-hypergraph induced by `s`. Returns the new graph and the
    /// order-preserving map from new vertex index to old vertex index.
    pub fn induced(&self, s: &[usize]) -> Result<(MixedHypergraph, Vec<usize>)> {
        let set = self.vertex_set(s)?;
        let map: Vec<usize> = set.to_vec();
        let mut new_index = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            new_index[v] = i;
        }
        let project = |family: &[Edge]| -> Vec<Edge> {
            family
                .iter()
                .filter(|e| e.set.is_subset(set))
                .map(|e| Edge::from_set(e.vertices.iter().map(|&v| new_index[v]).collect()))
                .collect()
        };
        let mut g = MixedHypergraph::from_edges(
            map.len(),
            project(&self.c_edges),
            project(&self.d_edges),
        )?;
        if let Some(labels) = &self.labels {
            g.labels = Some(map.iter().map(|&v| labels[v].clone()).collect());
        }
        Ok((g, map))
    }

    /// Renames vertex `v` to `perm[v]`; `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Result<MixedHypergraph> {
        if perm.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: perm.len(),
            });
        }
        let mut seen = VertexSet::EMPTY;
        for &p in perm {
            if p >= self.n || seen.contains(p) {
                return Err(Error::InvalidParameter(format!(
                    "{perm:?} is not a permutation of 0..{}",
                    self.n
                )));
            }
            seen.insert(p);
        }
        let map = |family: &[Edge]| -> Vec<Edge> {
            family
                .iter()
                .map(|e| Edge::from_set(e.vertices.iter().map(|&v| perm[v]).collect()))
                .collect()
        };
        let mut g = MixedHypergraph::from_edges(self.n, map(&self.c_edges), map(&self.d_edges))?;
        if let Some(labels) = &self.labels {
            let mut l = vec![String::new(); self.n];
            for (v, &p) in perm.iter().enumerate() {
                l[p] = labels[v].clone();
            }
            g.labels = Some(l);
        }
        Ok(g)
    }
}

/// A mixed hypergraph whose co-edge and edge families coincide.
///
/// Dereferences to the underlying [`MixedHypergraph`]; its size is `|E|`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiHypergraph(MixedHypergraph);

impl BiHypergraph {
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        check_order(n)?;
        let e = edges
            .iter()
            .map(|e| Edge::new(e, n))
            .collect::<Result<Vec<_>>>()?;
        Self::from_edges(n, e)
    }

    pub fn from_edges(n: usize, edges: Vec<Edge>) -> Result<Self> {
        let g = MixedHypergraph::from_edges(n, edges.clone(), edges)?;
        Ok(BiHypergraph(g))
    }

    pub fn from_sets(n: usize, sets: &[VertexSet]) -> Result<Self> {
        Ok(BiHypergraph(MixedHypergraph::from_sets(n, sets, sets)?))
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        self.0.c_edges()
    }

    /// `|E|`.
    #[inline]
    pub fn size(&self) -> usize {
        self.edges().len()
    }

    pub fn edge_sets(&self) -> Vec<VertexSet> {
        self.edges().iter().map(Edge::set).collect()
    }

    pub fn as_mixed(&self) -> &MixedHypergraph {
        &self.0
    }

    pub fn into_mixed(self) -> MixedHypergraph {
        self.0
    }

    pub fn with_labels(self, labels: Vec<String>) -> Result<Self> {
        Ok(BiHypergraph(self.0.with_labels(labels)?))
    }

    pub fn delete_edge(&self, e: &[usize]) -> Result<BiHypergraph> {
        Ok(BiHypergraph(self.0.delete_edge(e)?))
    }

    pub fn delete_edge_at(&self, index: usize) -> BiHypergraph {
        let mut g = self.0.clone();
        g.c_edges.remove(index);
        g.d_edges.remove(index);
        BiHypergraph(g)
    }

    pub fn induced(&self, s: &[usize]) -> Result<(BiHypergraph, Vec<usize>)> {
        let (g, map) = self.0.induced(s)?;
        Ok((BiHypergraph(g), map))
    }

    pub fn relabel(&self, perm: &[usize]) -> Result<BiHypergraph> {
        Ok(BiHypergraph(self.0.relabel(perm)?))
    }
}

impl Deref for BiHypergraph {
    type Target = MixedHypergraph;
    fn deref(&self) -> &MixedHypergraph {
        &self.0
    }
}

impl TryFrom<MixedHypergraph> for BiHypergraph {
    type Error = Error;
    fn try_from(g: MixedHypergraph) -> Result<Self> {
        if g.is_bi() {
            Ok(BiHypergraph(g))
        } else {
            Err(Error::NotBiHypergraph)
        }
    }
}

impl From<BiHypergraph> for MixedHypergraph {
    fn from(b: BiHypergraph) -> Self {
        b.0
    }
}
