//! The verification suite: nine claims, each checked exactly and timed.

use std::collections::HashSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use anyhow::{bail, ensure, Context, Result};
use bihyp::analysis::{
    contains_k533, identify, is_minimal_uncolorable, is_two_edge_connected, lll_incidence_bound,
    lll_size_bound, max_edge_incidence,
};
use bihyp::constructions::{k_subsets, make_hk, make_knlm, make_muc};
use bihyp::enumeration::{
    m3_sweep_specs, run_sweep, verify_m3, CertificateStatus, SweepSpec, VerdictStore,
};
use bihyp::random::{random_bounded_incidence, random_mixed, random_uniform, random_with_non_adjacent_pair};
use bihyp::solver::{decide_colorable_with, SolveOptions};
use bihyp::{
    brute_force_oracle, decide_colorable, enumerate_proper_colorings, is_proper, BiHypergraph,
    Coloring, VertexSet,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Pass,
    Fail,
    Skip,
    /// Checked on a reduced range only.
    Partial,
}

impl ClaimStatus {
    pub fn label(self) -> &'static str {
        match self {
            ClaimStatus::Pass => "PASS",
            ClaimStatus::Fail => "FAIL",
            ClaimStatus::Skip => "SKIP",
            ClaimStatus::Partial => "PARTIAL",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub id: u32,
    pub name: &'static str,
    pub status: ClaimStatus,
    pub details: String,
    pub elapsed_ms: u64,
    pub limit_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: SuiteKind,
    pub seed: u64,
    pub claims: Vec<ClaimResult>,
}

impl SuiteResult {
    /// Every claim that ran passed; skipped claims do not count against.
    pub fn passed(&self) -> bool {
        self.claims
            .iter()
            .all(|c| matches!(c.status, ClaimStatus::Pass | ClaimStatus::Skip))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteKind {
    /// Everything except the two exhaustive sweeps.
    Quick,
    /// All claims.
    Full,
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub kind: SuiteKind,
    pub seed: u64,
    /// Where sweep records go; a temporary directory when absent.
    pub store_dir: Option<PathBuf>,
    /// Wall-clock allowance for the order-7 sweep before falling back to
    /// fewer edges.
    pub sweep_budget: Duration,
    /// Only run these claims (all when empty).
    pub only: Vec<u32>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            kind: SuiteKind::Full,
            seed: 0x5eed,
            store_dir: None,
            sweep_budget: Duration::from_secs(60 * 60),
            only: Vec::new(),
        }
    }
}

struct Claim {
    id: u32,
    name: &'static str,
    limit: Duration,
    sweep: bool,
    run: fn(&Env) -> Result<(ClaimStatus, String)>,
}

struct Env {
    seed: u64,
    store_dir: PathBuf,
    sweep_budget: Duration,
}

impl Env {
    fn rng(&self, claim: u32) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ (u64::from(claim) << 32))
    }
}

const CLAIMS: [Claim; 9] = [
    Claim {
        id: 1,
        name: "K(n,3,3) is uncolorable exactly for n >= 5 (n = 3..8)",
        limit: Duration::from_secs(10),
        sweep: false,
        run: complete_threshold,
    },
    Claim {
        id: 2,
        name: "K(5,3,3) is minimal uncolorable",
        limit: Duration::from_secs(10),
        sweep: false,
        run: k533_minimal,
    },
    Claim {
        id: 3,
        name: "minimal uncolorable constructions for n = 6..17",
        limit: Duration::from_secs(600),
        sweep: false,
        run: constructions,
    },
    Claim {
        id: 4,
        name: "colorings of H_2 and parity on H_3, H_4",
        limit: Duration::from_secs(60),
        sweep: false,
        run: chain_colorings,
    },
    Claim {
        id: 5,
        name: "order 6 with at most 9 edges is always colorable",
        limit: Duration::from_secs(900),
        sweep: true,
        run: order_six_sweep,
    },
    Claim {
        id: 6,
        name: "order 7 sweep and the m(3) = 10 certificate",
        limit: Duration::from_secs(3600),
        sweep: true,
        run: order_seven_certificate,
    },
    Claim {
        id: 7,
        name: "local-lemma bounds: exhaustive at r = 3, sampled at r = 4",
        limit: Duration::from_secs(600),
        sweep: false,
        run: local_lemma_checks,
    },
    Claim {
        id: 8,
        name: "solver agrees with the brute-force oracle on 10,000 instances",
        limit: Duration::from_secs(300),
        sweep: false,
        run: oracle_agreement,
    },
    Claim {
        id: 9,
        name: "identification lifts colorings on 10,000 instances",
        limit: Duration::from_secs(300),
        sweep: false,
        run: identification_lift,
    },
];

/// Runs the suite, calling `report` after each claim.
pub fn run_suite(opts: &SuiteOptions, mut report: impl FnMut(&ClaimResult)) -> Result<SuiteResult> {
    let _temp;
    let store_dir = match &opts.store_dir {
        Some(d) => d.clone(),
        None => {
            let t = tempfile::tempdir().context("creating a temporary store")?;
            let path = t.path().to_path_buf();
            _temp = t;
            path
        }
    };
    let ctx = Env {
        seed: opts.seed,
        store_dir,
        sweep_budget: opts.sweep_budget,
    };
    let mut claims = Vec::new();
    for claim in &CLAIMS {
        if !opts.only.is_empty() && !opts.only.contains(&claim.id) {
            continue;
        }
        let start = Instant::now();
        let (mut status, mut details) = if claim.sweep && opts.kind == SuiteKind::Quick {
            (ClaimStatus::Skip, "exhaustive sweep; run with the full suite".to_string())
        } else {
            match (claim.run)(&ctx) {
                Ok(outcome) => outcome,
                Err(e) => (ClaimStatus::Fail, format!("{e:#}")),
            }
        };
        let elapsed = start.elapsed();
        if elapsed > claim.limit && status != ClaimStatus::Skip {
            status = ClaimStatus::Fail;
            details = format!("{details}; took {elapsed:?}, limit {:?}", claim.limit);
        }
        let result = ClaimResult {
            id: claim.id,
            name: claim.name,
            status,
            details,
            elapsed_ms: elapsed.as_millis() as u64,
            limit_ms: claim.limit.as_millis() as u64,
        };
        report(&result);
        claims.push(result);
    }
    Ok(SuiteResult {
        suite: opts.kind,
        seed: opts.seed,
        claims,
    })
}

fn pass(details: String) -> Result<(ClaimStatus, String)> {
    Ok((ClaimStatus::Pass, details))
}

fn bi(h: bihyp::MixedHypergraph) -> Result<BiHypergraph> {
    Ok(BiHypergraph::try_from(h)?)
}

fn complete_threshold(_: &Env) -> Result<(ClaimStatus, String)> {
    let mut seen = Vec::new();
    for n in 3..=8 {
        let h = make_knlm(n, 3, 3)?;
        let verdict = decide_colorable(&h);
        let oracle = brute_force_oracle(&h)?;
        ensure!(verdict.status == oracle.status, "n = {n}: solver and oracle disagree");
        ensure!(
            verdict.is_colorable() == (n < 5),
            "n = {n}: got {}",
            verdict.status.as_str()
        );
        seen.push(format!("{n}:{}", verdict.status.as_str()));
    }
    pass(seen.join(" "))
}

fn check_minimal(h: &BiHypergraph) -> Result<()> {
    let cert = is_minimal_uncolorable(h);
    ensure!(cert.uncolorable, "instance is colorable");
    ensure!(cert.minimal, "deleting edges {:?} leaves it uncolorable", cert.critical_failures());
    for (i, w) in cert.deletion_witnesses.iter().enumerate() {
        let w = w.as_ref().expect("minimal");
        ensure!(is_proper(&h.delete_edge_at(i), w)?, "deletion witness {i} is not proper");
    }
    Ok(())
}

fn k533_minimal(_: &Env) -> Result<(ClaimStatus, String)> {
    let h = bi(make_knlm(5, 3, 3)?)?;
    check_minimal(&h)?;
    ensure!(!brute_force_oracle(&h)?.is_colorable(), "oracle finds a coloring");
    for i in 0..h.size() {
        ensure!(
            brute_force_oracle(&h.delete_edge_at(i))?.is_colorable(),
            "oracle: deletion {i} uncolorable"
        );
    }
    pass("uncolorable; all 10 single-edge deletions colorable (solver and oracle)".into())
}

fn constructions(_: &Env) -> Result<(ClaimStatus, String)> {
    // Sizes from evaluating the six residue-class formulas at k = 1, 2.
    const SIZES: [usize; 12] = [10, 11, 13, 17, 19, 20, 24, 25, 27, 31, 33, 34];
    for (n, &size) in (6..=17).zip(SIZES.iter()) {
        let h = make_muc(n)?;
        ensure!(h.n() == n, "n = {n}: order {}", h.n());
        ensure!(h.size() == size, "n = {n}: size {} instead of {size}", h.size());
        check_minimal(&h).with_context(|| format!("n = {n}"))?;
        if n <= 10 {
            ensure!(!brute_force_oracle(&h)?.is_colorable(), "n = {n}: oracle finds a coloring");
        }
        ensure!(contains_k533(&h).is_none(), "n = {n}: contains K(5,3,3)");
        ensure!(is_two_edge_connected(&h), "n = {n}: not 2-edge-connected");
        ensure!(3 * size <= 7 * n - 12, "n = {n}: size {size} above 7n/3 - 4");
    }
    pass(format!("orders 6..17 with sizes {SIZES:?}; each minimal uncolorable"))
}

/// The pattern of a proper coloring of `H_2`: the slot `z` whose color in
/// block 1 is shared with the other two slots of block 2.
fn h2_pattern(c: &Coloring) -> Option<usize> {
    let col = |i: usize, j: usize| c.color(3 * (i - 1) + (j - 1));
    (1..=3).find(|&z| {
        let (j1, j2) = match z {
            1 => (2, 3),
            2 => (1, 3),
            _ => (1, 2),
        };
        let a = col(1, j1);
        let b = col(1, z);
        a != b
            && col(1, j2) == a
            && col(2, z) == a
            && col(2, j1) == b
            && col(2, j2) == b
    })
}

fn chain_colorings(_: &Env) -> Result<(ClaimStatus, String)> {
    let h2 = make_hk(2)?;
    let all: Vec<Coloring> = enumerate_proper_colorings(&h2, None).collect();
    ensure!(all.len() == 3, "H_2 has {} proper colorings", all.len());
    let mut slots = HashSet::new();
    for c in &all {
        let z = h2_pattern(c).with_context(|| format!("{:?} breaks the pattern", c.colors()))?;
        slots.insert(z);
    }
    ensure!(slots.len() == 3, "patterns repeat: {slots:?}");
    let mut counts = Vec::new();
    for k in [3, 4] {
        let h = make_hk(k)?;
        let mut count = 0;
        for c in enumerate_proper_colorings(&h, None) {
            count += 1;
            for i1 in 0..k {
                for i2 in (i1 + 2..k).step_by(2) {
                    for j in 0..3 {
                        ensure!(
                            c.color(3 * i1 + j) == c.color(3 * i2 + j),
                            "H_{k}: parity fails for {:?}",
                            c.colors()
                        );
                    }
                }
            }
        }
        ensure!(count > 0, "H_{k} has no proper coloring");
        counts.push(format!("H_{k}: {count}"));
    }
    pass(format!("H_2: 3 colorings, one per slot; parity on {}", counts.join(", ")))
}

fn open_store(ctx: &Env) -> Result<VerdictStore> {
    VerdictStore::open(&ctx.store_dir).context("opening the verdict store")
}

/// Least sorted image of an edge list over every permutation of `0..n`.
fn oracle_form(n: usize, edges: &[VertexSet]) -> Vec<u64> {
    fn rec(n: usize, edges: &[VertexSet], perm: &mut Vec<usize>, used: u64, best: &mut Option<Vec<u64>>) {
        if perm.len() == n {
            let mut img: Vec<u64> = edges
                .iter()
                .map(|e| e.iter().fold(0u64, |m, v| m | 1 << perm[v]))
                .collect();
            img.sort_unstable();
            if best.as_ref().is_none_or(|b| img < *b) {
                *best = Some(img);
            }
            return;
        }
        for x in 0..n {
            if used >> x & 1 == 0 {
                perm.push(x);
                rec(n, edges, perm, used | 1 << x, best);
                perm.pop();
            }
        }
    }
    let mut best = None;
    rec(n, edges, &mut Vec::new(), 0, &mut best);
    best.unwrap_or_default()
}

/// Classes per edge count from listing every edge subset and deduplicating.
fn naive_class_counts(n: usize, max_edges: usize) -> Vec<usize> {
    let mut triples = Vec::new();
    k_subsets(n, 3, &mut |s| triples.push(s));
    let mut seen = HashSet::new();
    let mut counts = vec![0; max_edges + 1];
    for mask in 0u64..1 << triples.len() {
        if mask.count_ones() as usize > max_edges {
            continue;
        }
        let edges: Vec<VertexSet> = (0..triples.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| triples[i])
            .collect();
        if seen.insert(oracle_form(n, &edges)) {
            counts[edges.len()] += 1;
        }
    }
    counts
}

fn order_six_sweep(ctx: &Env) -> Result<(ClaimStatus, String)> {
    let mut store = open_store(ctx)?;
    let mut notes = Vec::new();
    for spec in m3_sweep_specs(true).into_iter().take(3) {
        let summary = run_sweep(&spec, Some(&mut store))?;
        let naive = naive_class_counts(spec.n, spec.max_edges);
        ensure!(
            summary.classes_by_size == naive,
            "n = {}: classes {:?}, naive oracle {:?}",
            spec.n,
            summary.classes_by_size,
            naive
        );
        ensure!(summary.held(), "n = {}: uncolorable class found", spec.n);
        notes.push(format!("n={}: {:?}", spec.n, summary.classes_by_size));
    }
    let spec = SweepSpec::new(6, 3, 9);
    let summary = run_sweep(&spec, Some(&mut store))?;
    ensure!(summary.complete, "sweep incomplete");
    ensure!(
        summary.uncolorable == 0,
        "{} uncolorable classes, e.g. {:?}",
        summary.uncolorable,
        summary.counterexamples.first()
    );
    pass(format!(
        "n=6: {} classes {:?}, 0 uncolorable; naive cross-check {}",
        summary.total_classes(),
        summary.classes_by_size,
        notes.join(" ")
    ))
}

fn order_seven_certificate(ctx: &Env) -> Result<(ClaimStatus, String)> {
    let mut store = open_store(ctx)?;
    let full = m3_sweep_specs(true);
    for spec in &full[..4] {
        ensure!(run_sweep(spec, Some(&mut store))?.held(), "sweep {} failed", spec.id());
    }
    let mut seven = full[4].clone();
    seven.budget = Some(ctx.sweep_budget);
    let summary = run_sweep(&seven, Some(&mut store))?;
    ensure!(summary.uncolorable == 0, "order 7: uncolorable {:?}", summary.counterexamples);
    let note = if summary.complete {
        format!(
            "n=7 adjacent sweep: {} classes, {} all-pairs-adjacent, 0 uncolorable",
            summary.total_classes(),
            summary.evaluated
        )
    } else {
        let fallback = &m3_sweep_specs(false)[4];
        let s = run_sweep(fallback, Some(&mut store))?;
        ensure!(s.held(), "fallback sweep failed");
        format!("budget exceeded; n=7 checked only up to {} edges", fallback.max_edges)
    };
    let cert = verify_m3(&store)?;
    let status = match cert.status {
        CertificateStatus::Verified => ClaimStatus::Pass,
        CertificateStatus::Partial => ClaimStatus::Partial,
        CertificateStatus::Failed => {
            let bad: Vec<&str> = cert.steps.iter().filter(|s| !s.ok).map(|s| s.name.as_str()).collect();
            bail!("certificate failed at {bad:?}");
        }
    };
    Ok((status, format!("{note}; certificate {:?} with {} steps", cert.status, cert.steps.len())))
}

fn local_lemma_checks(ctx: &Env) -> Result<(ClaimStatus, String)> {
    let spec = SweepSpec::new(9, 3, 3);
    let summary = run_sweep(&spec, None)?;
    ensure!(summary.held(), "a 3-edge instance is uncolorable: {:?}", summary.counterexamples);

    let mut rng = ctx.rng(7);
    for i in 0..1000 {
        let n = rng.gen_range(4..=14);
        let m = rng.gen_range(0..=26);
        let h = random_uniform(&mut rng, n, 4, m);
        ensure!(lll_size_bound(&h, 4)?.satisfied, "sample {i}: size bound not met");
        ensure!(decide_colorable(&h).is_colorable(), "sample {i} uncolorable: {h:?}");
    }
    let mut edges_seen = 0;
    for i in 0..1000 {
        let n = rng.gen_range(4..=16);
        let m = rng.gen_range(1..=30);
        let h = random_bounded_incidence(&mut rng, n, 4, 8, m);
        ensure!(max_edge_incidence(&h) <= 8, "sample {i}: incidence too high");
        ensure!(lll_incidence_bound(&h, 4)?.satisfied, "sample {i}: incidence bound not met");
        let v = decide_colorable_with(&h, SolveOptions { max_colors: Some(3) });
        ensure!(v.is_colorable(), "sample {i}: no coloring with 3 colors: {h:?}");
        edges_seen += h.size();
    }
    pass(format!(
        "r=3: {} classes with <= 3 edges on 9 vertices, all colorable; r=4: 1000 size samples \
         colorable, 1000 incidence samples ({edges_seen} edges total) 3-colorable",
        summary.total_classes()
    ))
}

fn oracle_agreement(ctx: &Env) -> Result<(ClaimStatus, String)> {
    let mut rng = ctx.rng(8);
    let (mut bi, mut mixed, mut colorable) = (0, 0, 0);
    for i in 0..10_000 {
        let h = random_mixed(&mut rng, 7);
        let fast = decide_colorable(&h);
        let slow = brute_force_oracle(&h)?;
        ensure!(fast.status == slow.status, "instance {i} disagrees: {h:?}");
        if let Some(w) = &fast.witness {
            ensure!(is_proper(&h, w)?, "instance {i}: improper witness");
            colorable += 1;
        }
        if h.is_bi() {
            bi += 1;
        } else {
            mixed += 1;
        }
    }
    ensure!(bi > 0 && mixed > 0, "sample lacks variety: {bi} bi, {mixed} mixed");
    ensure!(colorable > 0 && colorable < 10_000, "sample has only one status");
    pass(format!(
        "10000 agree ({bi} bi-hypergraphs, {mixed} with C != D; {colorable} colorable)"
    ))
}

fn identification_lift(ctx: &Env) -> Result<(ClaimStatus, String)> {
    let mut rng = ctx.rng(9);
    let mut lifted = 0;
    for i in 0..10_000 {
        let (h, u, v) = random_with_non_adjacent_pair(&mut rng, 7);
        let id = identify(&h, u, v)?;
        if let Some(w) = decide_colorable(&id.quotient).witness {
            let c = id.lift(&w)?;
            ensure!(is_proper(&h, &c)?, "instance {i}: lifted coloring is not proper");
            lifted += 1;
        }
    }
    ensure!(lifted > 0, "no colorable quotient in the sample");
    pass(format!("{lifted} of 10000 quotients colorable; every lift proper"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naive_counts_at_order_five() {
        assert_eq!(naive_class_counts(5, 10), vec![1, 1, 2, 4, 6, 6, 6, 4, 2, 1, 1]);
        assert_eq!(naive_class_counts(4, 4), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn h2_patterns_are_recognized() {
        // z = 3: v11 v12 v23 share a, v21 v22 v13 share b.
        let c = Coloring::from_labels([0, 0, 1, 1, 1, 0]);
        assert_eq!(h2_pattern(&c), Some(3));
        assert_eq!(h2_pattern(&Coloring::from_labels([0, 0, 1, 1, 1, 1])), None);
    }

    #[test]
    fn quick_suite_skips_sweeps() {
        let opts = SuiteOptions {
            kind: SuiteKind::Quick,
            only: vec![1, 5],
            ..SuiteOptions::default()
        };
        let result = run_suite(&opts, |_| {}).unwrap();
        assert_eq!(result.claims.len(), 2);
        assert_eq!(result.claims[0].status, ClaimStatus::Pass);
        assert_eq!(result.claims[1].status, ClaimStatus::Skip);
        assert!(result.passed());
    }
}
