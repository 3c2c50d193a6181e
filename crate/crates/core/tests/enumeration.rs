use std::collections::HashSet;

use bihyp::constructions::k_subsets;
use bihyp::enumeration::*;
use bihyp::random::{random_permutation, random_uniform};
use bihyp::{BiHypergraph, Error, Status, VertexSet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Least sorted image over all permutations, by Heap's algorithm.
fn oracle_form(n: usize, edges: &[VertexSet]) -> Vec<u64> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u64>> = None;
    let mut consider = |p: &[usize]| {
        let mut img: Vec<u64> = edges
            .iter()
            .map(|e| e.iter().fold(0u64, |m, v| m | 1 << p[v]))
            .collect();
        img.sort_unstable();
        if best.as_ref().is_none_or(|b| img < *b) {
            best = Some(img);
        }
    };
    let mut c = vec![0usize; n];
    consider(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            consider(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best.unwrap()
}

/// Classes per edge count by listing every edge subset and deduplicating.
fn naive_counts(n: usize, r: usize, max_edges: usize) -> Vec<usize> {
    let mut all = Vec::new();
    k_subsets(n, r, &mut |s| all.push(s));
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut counts = vec![0; max_edges + 1];
    for mask in 0u64..1 << all.len() {
        if mask.count_ones() as usize > max_edges {
            continue;
        }
        let edges: Vec<VertexSet> = (0..all.len()).filter(|&i| mask >> i & 1 == 1).map(|i| all[i]).collect();
        if seen.insert(oracle_form(n, &edges)) {
            counts[edges.len()] += 1;
        }
    }
    counts
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn forms_agree_with_exhaustive_search(seed in any::<u64>(), n in 3usize..=7, m in 0usize..=10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_uniform(&mut rng, n, 3, m);
        let form = canonical_form(&h).unwrap();
        let masks: Vec<u64> = form.edges.iter().map(|e| e.bits()).collect();
        prop_assert_eq!(&masks, &oracle_form(n, &h.edge_sets()));
        let g = h.relabel(&random_permutation(&mut rng, n)).unwrap();
        prop_assert_eq!(&canonical_form(&g).unwrap(), &form);
        let other = random_uniform(&mut rng, n, 3, m);
        let same = oracle_form(n, &other.edge_sets()) == masks;
        prop_assert_eq!(canonical_form(&other).unwrap() == form, same);
    }
}

#[test]
fn class_counts_match_naive_dedup() {
    for (n, max) in [(3, 1), (4, 4), (5, 10), (6, 4)] {
        let summary = run_sweep(&SweepSpec::new(n, 3, max), None).unwrap();
        assert_eq!(summary.classes_by_size, naive_counts(n, 3, max), "n = {n}");
    }
    assert_eq!(run_sweep(&SweepSpec::new(4, 3, 4), None).unwrap().total_classes(), 5);
    assert_eq!(run_sweep(&SweepSpec::new(5, 3, 2), None).unwrap().total_classes(), 4);
    let r4 = run_sweep(&SweepSpec::new(6, 4, 3), None).unwrap();
    assert_eq!(r4.classes_by_size, naive_counts(6, 4, 3));
}

#[test]
fn summaries_do_not_depend_on_sharding() {
    let mut base = SweepSpec::new(6, 3, 9);
    let reference = run_sweep(&base, None).unwrap();
    for (shards, depth, jobs) in [(1, 0, 1), (4, 2, 2), (16, 3, 4), (16, 5, 3)] {
        base.shards = shards;
        base.shard_depth = depth;
        base.jobs = Some(jobs);
        let s = run_sweep(&base, None).unwrap();
        assert_eq!(s.classes_by_size, reference.classes_by_size);
        assert_eq!(s.evaluated, reference.evaluated);
        assert_eq!(s.counterexamples, reference.counterexamples);
    }
}

#[test]
fn sweeps_find_no_small_uncolorable_instances() {
    for spec in [SweepSpec::new(5, 3, 9), SweepSpec::new(6, 3, 9)] {
        let s = run_sweep(&spec, None).unwrap();
        assert!(s.held());
        assert_eq!(s.uncolorable, 0);
    }
    let k5 = run_sweep(&SweepSpec::new(5, 3, 10), None).unwrap();
    assert_eq!(k5.counterexamples.len(), 1);
}

#[test]
fn adjacency_filter_loses_nothing_at_small_sizes() {
    let all = run_sweep(&SweepSpec::new(7, 3, 6), None).unwrap();
    let adjacent = run_sweep(&SweepSpec::new(7, 3, 6).with_filter(Filter::AllPairsAdjacent), None).unwrap();
    assert_eq!(all.counterexamples, adjacent.counterexamples);
    assert!(all.counterexamples.is_empty());
    assert!(adjacent.evaluated < all.evaluated);
    assert_eq!(all.classes_by_size, adjacent.classes_by_size);
}

#[test]
fn enumeration_is_isomorph_free() {
    let spec = SweepSpec::new(6, 3, 6);
    let mut seen = HashSet::new();
    for h in enumerate_bihypergraphs(&spec).unwrap() {
        assert!(seen.insert(canonical_form(&h).unwrap().hash));
    }
    assert_eq!(seen.len(), run_sweep(&spec, None).unwrap().total_classes());
    assert!(run_sweep(&SweepSpec::new(4, 3, 5), None).is_err());
}

fn fill_store(store: &mut VerdictStore) {
    for spec in m3_sweep_specs(true) {
        let s = run_sweep(&spec, Some(store)).unwrap();
        assert!(s.held());
    }
}

#[test]
fn certificate_from_a_full_store() {
    let dir = tempfile::tempdir().unwrap();
    let mut store = VerdictStore::open(dir.path()).unwrap();
    fill_store(&mut store);
    let cert = verify_m3(&store).unwrap();
    assert_eq!(cert.status, CertificateStatus::Verified, "{cert:#?}");
    // Rerunning a sweep appends nothing new and keeps the certificate.
    let again = run_sweep(&SweepSpec::new(6, 3, 9), Some(&mut store)).unwrap();
    assert_eq!(again.persisted, 0);
    assert_eq!(verify_m3(&VerdictStore::open(dir.path()).unwrap()).unwrap().status, CertificateStatus::Verified);
}

#[test]
fn certificate_needs_every_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let mut store = VerdictStore::open(dir.path()).unwrap();
    for spec in m3_sweep_specs(true).into_iter().take(4) {
        run_sweep(&spec, Some(&mut store)).unwrap();
    }
    assert!(matches!(verify_m3(&store), Err(Error::IncompleteCertificate(_))));
    run_sweep(&m3_sweep_specs(false)[4], Some(&mut store)).unwrap();
    assert_eq!(verify_m3(&store).unwrap().status, CertificateStatus::Partial);
}

#[test]
fn tampered_records_are_caught() {
    let dir = tempfile::tempdir().unwrap();
    let mut store = VerdictStore::open(dir.path()).unwrap();
    fill_store(&mut store);
    let id = SweepSpec::new(6, 3, 9).id();
    let path = dir.path().join(&id).join("records.jsonl");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let mut rec: VerdictRecord = serde_json::from_str(&lines[100]).unwrap();
    assert_eq!(rec.status, Status::Colorable);
    rec.status = Status::Uncolorable;
    rec.witness = None;
    lines[100] = serde_json::to_string(&rec).unwrap();
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();
    let store = VerdictStore::open(dir.path()).unwrap();
    assert!(matches!(verify_m3(&store), Err(Error::Contradiction(_))));
}

#[test]
fn forms_of_named_instances() {
    let k5 = BiHypergraph::try_from(bihyp::make_knlm(5, 3, 3).unwrap()).unwrap();
    let perm = [3, 0, 4, 1, 2];
    assert_eq!(canonical_form(&k5).unwrap(), canonical_form(&k5.relabel(&perm).unwrap()).unwrap());
    let h2 = bihyp::make_hk(2).unwrap();
    assert_ne!(canonical_form(&h2).unwrap(), canonical_form(&bihyp::make_muc(6).unwrap()).unwrap());
}
