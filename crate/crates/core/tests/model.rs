use bihyp::{is_proper, Coloring, Error, MixedHypergraph, VertexSet};
use proptest::prelude::*;

fn family(n: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    prop::collection::vec(prop::collection::btree_set(0..n, 1..=n.min(4)), 0..8)
        .prop_map(|sets| sets.into_iter().map(|s| s.into_iter().collect()).collect())
}

fn is_sperner(sets: &[Vec<usize>]) -> bool {
    let sets: Vec<VertexSet> = sets.iter().map(|s| s.iter().copied().collect()).collect();
    sets.iter().enumerate().all(|(i, a)| {
        sets.iter()
            .enumerate()
            .all(|(j, b)| i == j || a == b || !a.is_subset(*b))
    })
}

fn sperner_instance() -> impl Strategy<Value = (MixedHypergraph, Vec<u32>)> {
    (1usize..=7)
        .prop_flat_map(|n| (Just(n), family(n), family(n), prop::collection::vec(0u32..4, n)))
        .prop_filter_map("non-Sperner", |(n, c, d, labels)| {
            MixedHypergraph::new(n, c, d).ok().map(|h| (h, labels))
        })
}

proptest! {
    #[test]
    fn construction_accepts_exactly_sperner_families(n in 1usize..=6, c in family(6), d in family(6)) {
        let c: Vec<Vec<usize>> = c.into_iter().filter(|e| e.iter().all(|&v| v < n)).collect();
        let d: Vec<Vec<usize>> = d.into_iter().filter(|e| e.iter().all(|&v| v < n)).collect();
        let ok = is_sperner(&c) && is_sperner(&d);
        match MixedHypergraph::new(n, c, d) {
            Ok(_) => prop_assert!(ok),
            Err(Error::NotSperner { .. }) => prop_assert!(!ok),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn properness_ignores_label_names((h, labels) in sperner_instance(), shift in 1u32..10) {
        let c = Coloring::from_labels(labels.iter().copied());
        let renamed = Coloring::from_labels(labels.iter().map(|&l| (l * 7 + shift) % 31));
        prop_assert_eq!(is_proper(&h, &c).unwrap(), is_proper(&h, &renamed).unwrap());
    }

    #[test]
    fn adding_a_member_only_removes_colorings((h, labels) in sperner_instance(), extra in family(7)) {
        let c = Coloring::from_labels(labels.iter().copied());
        for e in extra.into_iter().filter(|e| e.iter().all(|&v| v < h.n())) {
            let lists = |f: &[bihyp::Edge]| -> Vec<Vec<usize>> { f.iter().map(|x| x.vertices().to_vec()).collect() };
            let mut c_more = lists(h.c_edges());
            c_more.push(e.clone());
            let mut d_more = lists(h.d_edges());
            d_more.push(e.clone());
            if let Ok(bigger) = MixedHypergraph::new(h.n(), c_more, lists(h.d_edges())) {
                if is_proper(&bigger, &c).unwrap() {
                    prop_assert!(is_proper(&h, &c).unwrap());
                }
            }
            if let Ok(bigger) = MixedHypergraph::new(h.n(), lists(h.c_edges()), d_more) {
                if is_proper(&bigger, &c).unwrap() {
                    prop_assert!(is_proper(&h, &c).unwrap());
                }
            }
        }
    }

    #[test]
    fn induced_subgraphs_compose((h, _) in sperner_instance(), s_bits in any::<u8>(), t_bits in any::<u8>()) {
        let s: Vec<usize> = (0..h.n()).filter(|&v| s_bits >> v & 1 == 1).collect();
        let (hs, map_s) = h.induced(&s).unwrap();
        let t: Vec<usize> = (0..hs.n()).filter(|&v| t_bits >> v & 1 == 1).collect();
        let (hst, _) = hs.induced(&t).unwrap();
        let image: Vec<usize> = t.iter().map(|&v| map_s[v]).collect();
        let (direct, _) = h.induced(&image).unwrap();
        prop_assert_eq!(hst, direct);
    }
}

#[test]
fn induced_examples() {
    let h2 = bihyp::make_hk(2).unwrap();
    let (v1, map) = h2.induced(&[0, 1, 2]).unwrap();
    assert_eq!(map, vec![0, 1, 2]);
    assert_eq!(v1.size(), 1);
    let k6 = bihyp::make_knlm(6, 3, 3).unwrap();
    let (sub, _) = k6.induced(&[0, 2, 3, 4, 5]).unwrap();
    assert_eq!(sub, bihyp::make_knlm(5, 3, 3).unwrap());
    let k5 = bihyp::make_knlm(5, 3, 3).unwrap();
    assert_eq!(k5.delete_edge(&[0, 1, 2]).unwrap().num_members(), 9);
    assert!(matches!(k5.delete_edge(&[0, 1]), Err(Error::EdgeNotFound(_))));
}

#[test]
fn neighborhoods_of_named_instances() {
    let h2 = bihyp::make_hk(2).unwrap();
    assert_eq!(h2.degree(0).unwrap(), 5);
    assert!(h2.is_independent(&[0, 1, 5]).unwrap());
    assert!(bihyp::make_fano().degrees().iter().all(|&d| d == 3));
    let lone = MixedHypergraph::new(4, vec![vec![0, 1, 2]], vec![]).unwrap();
    assert_eq!(lone.degree(3).unwrap(), 0);
    assert!(lone.neighborhood(3).unwrap().is_empty());
    assert!(lone.degree(4).is_err());
    let k5 = bihyp::make_knlm(5, 3, 3).unwrap();
    assert!(k5.is_independent(&[1, 4]).unwrap());
    assert!(!k5.is_independent(&[1, 2, 4]).unwrap());
}
