//! Parallel sweeps over the orderly generation tree.

use std::collections::HashSet;
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{is_connected, is_minimal_uncolorable};
use crate::bitset::VertexSet;
use crate::coloring::Coloring;
use crate::enumeration::canon::{content_hash, CANON_MAX_VERTICES};
use crate::enumeration::orderly::OrderlyTree;
use crate::enumeration::store::{now, SweepMeta, VerdictRecord, VerdictStore, TOOL_VERSION};
use crate::error::{Error, Result};
use crate::hypergraph::BiHypergraph;
use crate::solver::{decide_colorable, Status};

/// Structural restriction applied to completed instances before the
/// predicate is evaluated. The generation tree itself is never pruned.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filter {
    /// Every vertex lies in at least this many edges. Not a sound reduction:
    /// excluded instances are simply not examined.
    MinDegree(usize),
    /// Every two vertices share an edge. Sound for colorability: a
    /// non-adjacent pair can be identified, and a coloring of the smaller
    /// instance lifts back.
    AllPairsAdjacent,
    /// The co-occurrence graph is connected. Sound for colorability: an
    /// instance is colorable iff each component is.
    Connected,
}

impl Filter {
    pub fn accepts(&self, h: &BiHypergraph) -> bool {
        match *self {
            Filter::MinDegree(d) => h.degrees().iter().all(|&x| x >= d),
            Filter::AllPairsAdjacent => h.non_adjacent_pairs().is_empty(),
            Filter::Connected => is_connected(h),
        }
    }

    /// Whether excluding instances is backed by a reduction rather than
    /// being a heuristic.
    pub fn is_sound_reduction(&self) -> bool {
        !matches!(self, Filter::MinDegree(_))
    }

    pub fn tag(&self) -> String {
        match self {
            Filter::MinDegree(d) => format!("mindeg{d}"),
            Filter::AllPairsAdjacent => "adjacent".into(),
            Filter::Connected => "connected".into(),
        }
    }
}

type CustomFn = dyn Fn(&BiHypergraph) -> bool + Send + Sync;

/// Property checked on every class that passes the filters.
#[derive(Clone)]
pub enum Predicate {
    /// Holds iff the instance is colorable.
    Colorable,
    /// Holds unless the instance is minimal uncolorable.
    NotMinimalUncolorable,
    Custom { name: String, f: Arc<CustomFn> },
}

impl Predicate {
    pub fn custom(name: impl Into<String>, f: impl Fn(&BiHypergraph) -> bool + Send + Sync + 'static) -> Self {
        Predicate::Custom {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Predicate::Colorable => "colorable",
            Predicate::NotMinimalUncolorable => "not-minimal-uncolorable",
            Predicate::Custom { name, .. } => name,
        }
    }

    pub fn from_name(name: &str) -> Result<Predicate> {
        match name {
            "colorable" => Ok(Predicate::Colorable),
            "not-minimal-uncolorable" => Ok(Predicate::NotMinimalUncolorable),
            _ => Err(Error::InvalidParameter(format!("unknown predicate `{name}`"))),
        }
    }
}

impl fmt::Debug for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub n: usize,
    pub r: usize,
    pub min_edges: usize,
    pub max_edges: usize,
    pub filters: Vec<Filter>,
    pub predicate: Predicate,
    /// Number of work buckets the frontier is dealt into.
    pub shards: usize,
    /// Edge count at which the generation tree is cut into subtrees.
    pub shard_depth: usize,
    /// Worker threads; `None` uses the ambient rayon pool.
    pub jobs: Option<usize>,
    /// Wall-clock limit; exceeding it yields an incomplete summary.
    pub budget: Option<Duration>,
}

impl SweepSpec {
    /// All edge counts `0..=max_edges`, colorability predicate, no filters.
    pub fn new(n: usize, r: usize, max_edges: usize) -> SweepSpec {
        SweepSpec {
            n,
            r,
            min_edges: 0,
            max_edges,
            filters: Vec::new(),
            predicate: Predicate::Colorable,
            shards: 16,
            shard_depth: 3,
            jobs: None,
            budget: None,
        }
    }

    pub fn with_filter(mut self, f: Filter) -> Self {
        self.filters.push(f);
        self
    }

    /// Directory-safe name determined by the instance space, filters and
    /// predicate (not by sharding or worker count).
    pub fn id(&self) -> String {
        let mut id = format!(
            "n{}-r{}-m{}-{}",
            self.n, self.r, self.min_edges, self.max_edges
        );
        for f in &self.filters {
            id.push('-');
            id.push_str(&f.tag());
        }
        id.push('-');
        id.push_str(
            &self
                .predicate
                .name()
                .chars()
                .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
                .collect::<String>(),
        );
        id
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.n > CANON_MAX_VERTICES {
            return bad(format!("sweeps support n <= {CANON_MAX_VERTICES}, got {}", self.n));
        }
        if self.r == 0 || self.r > self.n {
            return bad(format!("need 1 <= r <= n, got r = {} and n = {}", self.r, self.n));
        }
        let available = binomial(self.n, self.r);
        if self.max_edges > available {
            return bad(format!(
                "at most C({}, {}) = {available} edges exist, asked for up to {}",
                self.n, self.r, self.max_edges
            ));
        }
        if self.min_edges > self.max_edges {
            return bad(format!("min_edges {} > max_edges {}", self.min_edges, self.max_edges));
        }
        if self.shards == 0 {
            return bad("need at least one shard".into());
        }
        Ok(())
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SweepSummary {
    pub sweep_id: String,
    pub n: usize,
    pub r: usize,
    pub min_edges: usize,
    pub max_edges: usize,
    pub filters: Vec<Filter>,
    pub predicate: String,
    /// Isomorphism classes per edge count (index = edge count), before
    /// filtering.
    pub classes_by_size: Vec<usize>,
    /// Classes that passed the filters and were evaluated.
    pub evaluated: usize,
    pub uncolorable: usize,
    /// Edge lists of classes where the predicate failed, sorted.
    pub counterexamples: Vec<Vec<Vec<usize>>>,
    pub complete: bool,
    pub elapsed_ms: u64,
    /// Records newly written to the store.
    pub persisted: usize,
}

impl SweepSummary {
    pub fn total_classes(&self) -> usize {
        self.classes_by_size.iter().sum()
    }

    /// Complete and without counterexamples.
    pub fn held(&self) -> bool {
        self.complete && self.counterexamples.is_empty()
    }

    pub fn meta(&self) -> SweepMeta {
        SweepMeta {
            sweep_id: self.sweep_id.clone(),
            n: self.n,
            r: self.r,
            min_edges: self.min_edges,
            max_edges: self.max_edges,
            filters: self.filters.clone(),
            predicate: self.predicate.clone(),
            classes_by_size: self.classes_by_size.clone(),
            evaluated: self.evaluated,
            counterexamples: self.counterexamples.len(),
            complete: self.complete,
            elapsed_ms: self.elapsed_ms,
            tool_version: TOOL_VERSION.into(),
        }
    }
}

/// A sweep error, with the summary gathered before it when there is one.
#[derive(Debug, thiserror::Error)]
#[error("{error}")]
pub struct SweepFailure {
    pub summary: Option<Box<SweepSummary>>,
    #[source]
    pub error: Error,
}

impl From<Error> for SweepFailure {
    fn from(error: Error) -> Self {
        SweepFailure {
            summary: None,
            error,
        }
    }
}

/// One evaluated class.
#[derive(Clone, Debug)]
struct Evaluated {
    edges: Vec<VertexSet>,
    status: Status,
    witness: Option<Coloring>,
    holds: bool,
}

#[derive(Default)]
struct Partial {
    classes_by_size: Vec<usize>,
    evaluated: Vec<Evaluated>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        if self.classes_by_size.len() < other.classes_by_size.len() {
            self.classes_by_size.resize(other.classes_by_size.len(), 0);
        }
        for (i, c) in other.classes_by_size.into_iter().enumerate() {
            self.classes_by_size[i] += c;
        }
        self.evaluated.extend(other.evaluated);
        self
    }
}

fn evaluate(spec: &SweepSpec, node: &[VertexSet]) -> Option<Evaluated> {
    let h = BiHypergraph::from_sets(spec.n, node).expect("generated lists are valid");
    if !spec.filters.iter().all(|f| f.accepts(&h)) {
        return None;
    }
    let verdict = decide_colorable(&h);
    let holds = match &spec.predicate {
        Predicate::Colorable => verdict.is_colorable(),
        Predicate::NotMinimalUncolorable => {
            verdict.is_colorable() || !is_minimal_uncolorable(&h).minimal
        }
        Predicate::Custom { f, .. } => f(&h),
    };
    Some(Evaluated {
        edges: node.to_vec(),
        status: verdict.status,
        witness: verdict.witness,
        holds,
    })
}

struct Visitor<'a> {
    spec: &'a SweepSpec,
    start: Instant,
    abort: &'a AtomicBool,
    out: Partial,
}

impl Visitor<'_> {
    fn visit(&mut self, node: &[VertexSet]) -> bool {
        if let Some(budget) = self.spec.budget {
            if self.start.elapsed() > budget {
                self.abort.store(true, Ordering::Relaxed);
            }
        }
        if self.abort.load(Ordering::Relaxed) {
            return false;
        }
        let m = node.len();
        if m >= self.spec.min_edges && m <= self.spec.max_edges {
            if self.out.classes_by_size.len() <= m {
                self.out.classes_by_size.resize(m + 1, 0);
            }
            self.out.classes_by_size[m] += 1;
            if let Some(e) = evaluate(self.spec, node) {
                self.out.evaluated.push(e);
            }
        }
        true
    }
}

/// Enumerates every isomorphism class in the sweep's range, evaluates the
/// predicate on those passing the filters, and (given a store) persists one
/// record per evaluated class. Results do not depend on `shards` or `jobs`.
pub fn run_sweep(
    spec: &SweepSpec,
    store: Option<&mut VerdictStore>,
) -> std::result::Result<SweepSummary, SweepFailure> {
    spec.validate()?;
    let start = Instant::now();
    let abort = AtomicBool::new(false);
    let tree = OrderlyTree::new(spec.n, spec.r, spec.max_edges);
    let depth = spec.shard_depth.min(spec.max_edges);
    let (inner, frontier) = tree.split(depth);

    let mut main = Visitor {
        spec,
        start,
        abort: &abort,
        out: Partial::default(),
    };
    for node in &inner {
        main.visit(node);
    }
    let mut buckets: Vec<Vec<Vec<VertexSet>>> = vec![Vec::new(); spec.shards];
    for (i, root) in frontier.into_iter().enumerate() {
        buckets[i % spec.shards].push(root);
    }
    let work = || -> Vec<Partial> {
        buckets
            .into_par_iter()
            .map(|bucket| {
                let mut v = Visitor {
                    spec,
                    start,
                    abort: &abort,
                    out: Partial::default(),
                };
                for root in bucket {
                    if !tree.walk(root, &mut |node| v.visit(node)) {
                        break;
                    }
                }
                v.out
            })
            .collect()
    };
    let parts = match spec.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?
            .install(work),
        None => work(),
    };
    let mut total = parts.into_iter().fold(main.out, Partial::merge);
    total
        .evaluated
        .sort_by(|a, b| (a.edges.len(), &a.edges).cmp(&(b.edges.len(), &b.edges)));
    if total.classes_by_size.len() < spec.max_edges + 1 {
        total.classes_by_size.resize(spec.max_edges + 1, 0);
    }

    let sweep_id = spec.id();
    let hashes: Vec<String> = total
        .evaluated
        .iter()
        .map(|e| content_hash(spec.n, &e.edges))
        .collect();
    let mut seen = HashSet::with_capacity(hashes.len());
    let lists = |edges: &[VertexSet]| -> Vec<Vec<usize>> { edges.iter().map(|e| e.to_vec()).collect() };
    let mut summary = SweepSummary {
        sweep_id: sweep_id.clone(),
        n: spec.n,
        r: spec.r,
        min_edges: spec.min_edges,
        max_edges: spec.max_edges,
        filters: spec.filters.clone(),
        predicate: spec.predicate.name().to_string(),
        classes_by_size: total.classes_by_size,
        evaluated: total.evaluated.len(),
        uncolorable: total
            .evaluated
            .iter()
            .filter(|e| e.status == Status::Uncolorable)
            .count(),
        counterexamples: total
            .evaluated
            .iter()
            .filter(|e| !e.holds)
            .map(|e| lists(&e.edges))
            .collect(),
        complete: !abort.load(Ordering::Relaxed),
        elapsed_ms: start.elapsed().as_millis() as u64,
        persisted: 0,
    };
    if let Some(dup) = hashes.iter().find(|h| !seen.insert(h.as_str())) {
        return Err(SweepFailure {
            summary: Some(Box::new(summary)),
            error: Error::Contradiction(format!("class {dup} generated twice")),
        });
    }
    if let Some(store) = store {
        let timestamp = now();
        let records: Vec<VerdictRecord> = total
            .evaluated
            .into_iter()
            .zip(hashes)
            .map(|(e, hash)| VerdictRecord {
                hash,
                n: spec.n,
                r: Some(spec.r),
                edges: lists(&e.edges),
                provenance: sweep_id.clone(),
                status: e.status,
                witness: e.witness,
                holds: e.holds,
                timestamp,
                tool_version: TOOL_VERSION.into(),
            })
            .collect();
        let persisted = store
            .append(&sweep_id, &records)
            .and_then(|written| store.write_meta(&summary.meta()).map(|_| written));
        match persisted {
            Ok(written) => summary.persisted = written,
            Err(error) => {
                return Err(SweepFailure {
                    summary: Some(Box::new(summary)),
                    error,
                })
            }
        }
    }
    Ok(summary)
}

/// Every class in the sweep's edge range that passes its filters, in
/// generation order (sequential; the predicate is ignored).
pub fn enumerate_bihypergraphs(spec: &SweepSpec) -> Result<impl Iterator<Item = BiHypergraph>> {
    spec.validate()?;
    let spec = spec.clone();
    let tree = OrderlyTree::new(spec.n, spec.r, spec.max_edges);
    let mut stack: Vec<Vec<VertexSet>> = vec![Vec::new()];
    Ok(std::iter::from_fn(move || {
        while let Some(node) = stack.pop() {
            let mut kids = tree.children(&node);
            kids.reverse();
            stack.extend(kids);
            if node.len() < spec.min_edges {
                continue;
            }
            let h = BiHypergraph::from_sets(spec.n, &node).expect("generated lists are valid");
            if spec.filters.iter().all(|f| f.accepts(&h)) {
                return Some(h);
            }
        }
        None
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_and_validation() {
        let spec = SweepSpec::new(7, 3, 9).with_filter(Filter::AllPairsAdjacent);
        assert_eq!(spec.id(), "n7-r3-m0-9-adjacent-colorable");
        assert!(SweepSpec::new(4, 3, 5).validate().is_err());
        assert!(SweepSpec::new(4, 3, 4).validate().is_ok());
        assert!(SweepSpec::new(13, 3, 1).validate().is_err());
        assert_eq!(binomial(7, 3), 35);
    }

    #[test]
    fn small_sweeps() {
        let s = run_sweep(&SweepSpec::new(4, 3, 4), None).unwrap();
        assert_eq!(s.classes_by_size, vec![1, 1, 1, 1, 1]);
        assert!(s.held());
        let s = run_sweep(&SweepSpec::new(5, 3, 10), None).unwrap();
        assert_eq!(s.uncolorable, 1);
        assert_eq!(s.counterexamples.len(), 1);
        assert_eq!(s.counterexamples[0].len(), 10);
        let mut spec = SweepSpec::new(5, 3, 10);
        spec.predicate = Predicate::NotMinimalUncolorable;
        assert_eq!(run_sweep(&spec, None).unwrap().counterexamples.len(), 1);
    }

    #[test]
    fn enumeration_yields_each_class_once() {
        let spec = SweepSpec::new(5, 3, 2);
        let all: Vec<BiHypergraph> = enumerate_bihypergraphs(&spec).unwrap().collect();
        assert_eq!(all.len(), 4);
        let spec = SweepSpec::new(4, 3, 4);
        assert_eq!(enumerate_bihypergraphs(&spec).unwrap().count(), 5);
    }

    #[test]
    fn filters() {
        let k = BiHypergraph::new(4, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        assert!(!Filter::AllPairsAdjacent.accepts(&k));
        assert!(Filter::Connected.accepts(&k));
        assert!(!Filter::MinDegree(2).accepts(&k));
        assert!(!Filter::MinDegree(0).is_sound_reduction());
    }
}
