//! Generators for the named families: complete mixed hypergraphs
//! `K(n,l,m)`, the chain `H_k`, the Fano plane, and the minimal
//! uncolorable chain surgeries for every order `n >= 6`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::hypergraph::{BiHypergraph, Edge, MixedHypergraph};

/// Vertex `v_{i,j}` of the chain: block `i >= 1`, slot `j` in `1..=5`
/// where slots 4 and 5 alias slots 1 and 2.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ChainIndex {
    pub block: usize,
    pub slot: usize,
}

impl ChainIndex {
    pub fn new(block: usize, slot: usize) -> ChainIndex {
        assert!(block >= 1, "blocks are numbered from 1");
        assert!((1..=5).contains(&slot), "slot {slot} outside 1..=5");
        ChainIndex { block, slot }
    }

    /// Slot with the wraparound resolved, in `1..=3`.
    pub fn resolved_slot(self) -> usize {
        (self.slot - 1) % 3 + 1
    }

    /// Dense vertex index `3(i-1) + (j-1)`.
    pub fn flatten(self) -> usize {
        3 * (self.block - 1) + self.resolved_slot() - 1
    }

    pub fn label(self) -> String {
        format!("v{},{}", self.block, self.resolved_slot())
    }
}

fn v(block: usize, slot: usize) -> usize {
    ChainIndex::new(block, slot).flatten()
}

fn triple(a: usize, b: usize, c: usize) -> VertexSet {
    [a, b, c].into_iter().collect()
}

fn block(i: usize) -> VertexSet {
    triple(v(i, 1), v(i, 2), v(i, 3))
}

/// Edge sets of `H_k`, in construction order without duplicates.
fn chain_edges(k: usize) -> Vec<VertexSet> {
    let mut edges: Vec<VertexSet> = Vec::with_capacity(7 * k - 6);
    let push = |e: VertexSet, edges: &mut Vec<VertexSet>| {
        if !edges.contains(&e) {
            edges.push(e);
        }
    };
    for q in 1..k {
        push(block(q), &mut edges);
        push(block(q + 1), &mut edges);
        for j in 1..=3 {
            for t in 1..=2 {
                push(triple(v(q + 1, j), v(q, j), v(q, j + t)), &mut edges);
            }
        }
    }
    edges
}

fn chain_labels(k: usize, extra: &[&str]) -> Vec<String> {
    let mut labels: Vec<String> = (1..=k)
        .flat_map(|i| (1..=3).map(move |j| ChainIndex::new(i, j).label()))
        .collect();
    labels.extend(extra.iter().map(|s| s.to_string()));
    labels
}

fn build(n: usize, edges: &[VertexSet], labels: Vec<String>) -> BiHypergraph {
    BiHypergraph::from_sets(n, edges)
        .and_then(|h| h.with_labels(labels))
        .expect("construction yields a valid bi-hypergraph")
}

/// `K(n,l,m)`: all `l`-subsets of `[n]` as co-edges, all `m`-subsets as
/// edges.
pub fn make_knlm(n: usize, l: usize, m: usize) -> Result<MixedHypergraph> {
    if l == 0 || m == 0 || l > n || m > n {
        return Err(Error::InvalidParameter(format!(
            "K(n,l,m) needs 1 <= l,m <= n, got n={n}, l={l}, m={m}"
        )));
    }
    let subsets = |size: usize| -> Vec<Edge> {
        let mut out = Vec::new();
        k_subsets(n, size, &mut |s| out.push(Edge::from_set(s)));
        out
    };
    MixedHypergraph::from_edges(n, subsets(l), subsets(m))
}

/// Calls `f` on every `k`-subset of `0..n`.
pub fn k_subsets(n: usize, k: usize, f: &mut impl FnMut(VertexSet)) {
    fn rec(start: usize, n: usize, k: usize, acc: VertexSet, f: &mut impl FnMut(VertexSet)) {
        if k == 0 {
            f(acc);
            return;
        }
        for x in start..=n - k {
            let mut next = acc;
            next.insert(x);
            rec(x + 1, n, k - 1, next, f);
        }
    }
    if k <= n {
        rec(0, n, k, VertexSet::EMPTY, f);
    }
}

/// The chain bi-hypergraph `H_k` on `3k` vertices with `7k - 6` edges.
pub fn make_hk(k: usize) -> Result<BiHypergraph> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("H_k needs k >= 2, got {k}")));
    }
    Ok(build(3 * k, &chain_edges(k), chain_labels(k, &[])))
}

/// Fano plane: 7 points, 7 lines, every two lines meeting in one point.
pub fn make_fano() -> BiHypergraph {
    const LINES: [[usize; 3]; 7] = [
        [4, 5, 6],
        [0, 1, 4],
        [1, 3, 6],
        [0, 2, 6],
        [0, 3, 5],
        [2, 3, 4],
        [1, 2, 5],
    ];
    let edges: Vec<VertexSet> = LINES.iter().map(|l| l.iter().copied().collect()).collect();
    let labels = (1..=7).map(|i| format!("p{i}")).collect();
    build(7, &edges, labels)
}

fn remove(edges: &mut Vec<VertexSet>, e: VertexSet) {
    let before = edges.len();
    edges.retain(|&x| x != e);
    debug_assert_eq!(before, edges.len() + 1, "edge to remove was absent");
}

/// `n = 6k`: drop the last block triple, close the chain back to `V_1`.
pub fn make_muc_6k(k: usize) -> Result<BiHypergraph> {
    check_k(k)?;
    let last = 2 * k;
    let mut edges = chain_edges(last);
    remove(&mut edges, block(last));
    for j in 1..=3 {
        edges.push(triple(v(1, j), v(last, j + 1), v(last, j + 2)));
    }
    Ok(build(6 * k, &edges, chain_labels(last, &[])))
}

/// `n = 6k + 3`.
pub fn make_muc_6k3(k: usize) -> Result<BiHypergraph> {
    check_k(k)?;
    let last = 2 * k + 1;
    let mut edges = chain_edges(last);
    remove(&mut edges, block(last));
    for j in 1..=3 {
        edges.push(triple(v(1, j), v(last, j), v(last, j + 1)));
    }
    Ok(build(6 * k + 3, &edges, chain_labels(last, &[])))
}

/// `n = 6k + 1`: one new vertex tied to both ends of `H_{2k}`.
pub fn make_muc_6k1(k: usize) -> Result<BiHypergraph> {
    check_k(k)?;
    let last = 2 * k;
    let x = 3 * last;
    let mut edges = chain_edges(last);
    for j in 1..=3 {
        edges.push(triple(x, v(1, j), v(last, j + 1)));
    }
    Ok(build(6 * k + 1, &edges, chain_labels(last, &["v"])))
}

/// `n = 6k + 4`.
pub fn make_muc_6k4(k: usize) -> Result<BiHypergraph> {
    check_k(k)?;
    let last = 2 * k + 1;
    let x = 3 * last;
    let mut edges = chain_edges(last);
    remove(&mut edges, block(1));
    for i in 1..=2 {
        edges.push(triple(x, v(last, i), v(last, i + 1)));
    }
    for j in 1..=3 {
        edges.push(triple(x, v(1, j), v(last, j)));
    }
    Ok(build(6 * k + 4, &edges, chain_labels(last, &["v"])))
}

/// `n = 6k + 2`: two new vertices `u`, `v` replacing the first block triple.
pub fn make_muc_6k2(k: usize) -> Result<BiHypergraph> {
    check_k(k)?;
    let last = 2 * k;
    let (x, y) = (3 * last, 3 * last + 1);
    let mut edges = chain_edges(last);
    remove(&mut edges, block(1));
    edges.push(triple(x, v(1, 1), v(1, 2)));
    edges.push(triple(y, v(1, 2), v(1, 3)));
    for j in 1..=2 {
        edges.push(triple(x, v(1, j), v(last, 3 - j)));
        edges.push(triple(y, v(1, j + 1), v(last, 4 - j)));
    }
    Ok(build(6 * k + 2, &edges, chain_labels(last, &["u", "v"])))
}

/// `n = 6k + 5`.
pub fn make_muc_6k5(k: usize) -> Result<BiHypergraph> {
    check_k(k)?;
    let last = 2 * k + 1;
    let (x, y) = (3 * last, 3 * last + 1);
    let mut edges = chain_edges(last);
    remove(&mut edges, block(1));
    edges.push(triple(x, v(1, 1), v(1, 2)));
    edges.push(triple(y, v(1, 2), v(1, 3)));
    for j in 1..=2 {
        edges.push(triple(x, v(1, j), v(last, j)));
        edges.push(triple(y, v(1, j + 1), v(last, j + 1)));
    }
    Ok(build(6 * k + 5, &edges, chain_labels(last, &["u", "v"])))
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::InvalidParameter("k must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Minimal uncolorable 3-uniform bi-hypergraph of order `n >= 6`, chosen by
/// `n mod 6`.
pub fn make_muc(n: usize) -> Result<BiHypergraph> {
    if n < 6 {
        return Err(Error::InvalidParameter(format!(
            "minimal uncolorable constructions start at n = 6, got {n}"
        )));
    }
    let k = n / 6;
    match n % 6 {
        0 => make_muc_6k(k),
        1 => make_muc_6k1(k),
        2 => make_muc_6k2(k),
        3 => make_muc_6k3(k),
        4 => make_muc_6k4(k),
        _ => make_muc_6k5(k),
    }
}

/// Size of [`make_muc`]`(n)` predicted from its residue class.
pub fn muc_size(n: usize) -> Option<usize> {
    if n < 6 {
        return None;
    }
    let k = n / 6;
    Some(match n % 6 {
        0 => 14 * k - 4,
        1 => 14 * k - 3,
        2 => 14 * k - 1,
        3 => 14 * k + 3,
        4 => 14 * k + 5,
        _ => 14 * k + 6,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "knlm")]
    Knlm,
    #[serde(rename = "hk")]
    Hk,
    #[serde(rename = "fano")]
    Fano,
    /// Dispatches on `n mod 6`.
    #[serde(rename = "muc")]
    Muc,
    #[serde(rename = "muc-even")]
    MucEven,
    #[serde(rename = "muc-odd")]
    MucOdd,
    #[serde(rename = "muc-plus1")]
    MucPlus1,
    #[serde(rename = "muc-plus4")]
    MucPlus4,
    #[serde(rename = "muc-plus2")]
    MucPlus2,
    #[serde(rename = "muc-plus5")]
    MucPlus5,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Knlm,
        Family::Hk,
        Family::Fano,
        Family::Muc,
        Family::MucEven,
        Family::MucOdd,
        Family::MucPlus1,
        Family::MucPlus4,
        Family::MucPlus2,
        Family::MucPlus5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Knlm => "knlm",
            Family::Hk => "hk",
            Family::Fano => "fano",
            Family::Muc => "muc",
            Family::MucEven => "muc-even",
            Family::MucOdd => "muc-odd",
            Family::MucPlus1 => "muc-plus1",
            Family::MucPlus4 => "muc-plus4",
            Family::MucPlus2 => "muc-plus2",
            Family::MucPlus5 => "muc-plus5",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family `{s}`")))
    }
}

/// A family name plus the parameters it needs. Also serves as the
/// provenance record of generated instances.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

impl ConstructionSpec {
    pub fn new(family: Family) -> Self {
        ConstructionSpec {
            family,
            n: None,
            l: None,
            m: None,
            k: None,
        }
    }

    pub fn knlm(n: usize, l: usize, m: usize) -> Self {
        ConstructionSpec {
            n: Some(n),
            l: Some(l),
            m: Some(m),
            ..Self::new(Family::Knlm)
        }
    }

    pub fn hk(k: usize) -> Self {
        ConstructionSpec {
            k: Some(k),
            ..Self::new(Family::Hk)
        }
    }

    pub fn muc(n: usize) -> Self {
        ConstructionSpec {
            n: Some(n),
            ..Self::new(Family::Muc)
        }
    }

    fn need(&self, value: Option<usize>, name: &str) -> Result<usize> {
        value.ok_or_else(|| {
            Error::InvalidParameter(format!("family {} needs parameter {name}", self.family))
        })
    }

    pub fn generate(&self) -> Result<MixedHypergraph> {
        let bi = |b: BiHypergraph| b.into_mixed();
        Ok(match self.family {
            Family::Knlm => make_knlm(
                self.need(self.n, "n")?,
                self.need(self.l, "l")?,
                self.need(self.m, "m")?,
            )?,
            Family::Hk => bi(make_hk(self.need(self.k, "k")?)?),
            Family::Fano => bi(make_fano()),
            Family::Muc => bi(make_muc(self.need(self.n, "n")?)?),
            Family::MucEven => bi(make_muc_6k(self.need(self.k, "k")?)?),
            Family::MucOdd => bi(make_muc_6k3(self.need(self.k, "k")?)?),
            Family::MucPlus1 => bi(make_muc_6k1(self.need(self.k, "k")?)?),
            Family::MucPlus4 => bi(make_muc_6k4(self.need(self.k, "k")?)?),
            Family::MucPlus2 => bi(make_muc_6k2(self.need(self.k, "k")?)?),
            Family::MucPlus5 => bi(make_muc_6k5(self.need(self.k, "k")?)?),
        })
    }
}
