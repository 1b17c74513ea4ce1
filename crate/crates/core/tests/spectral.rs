use ihss::algebra::{ChainComplex, IntMatrix, Ring};
use ihss::corpus;
use ihss::perverse::Perversity;
use ihss::spectral::*;

fn analyze(name: &str, p: &[i64]) -> NeighborhoodAnalysis {
    let space = corpus::get(name).unwrap();
    let a = analyze_corpus_space(&space, &Perversity::new(p.to_vec()).unwrap(), Ring::Rationals).unwrap();
    assert!(a.full.pass(), "{name}: page laws {:?}", a.full.laws);
    assert!(a.deleted.pass(), "{name}: deleted page laws {:?}", a.deleted.laws);
    assert!(a.d1_full.pass && a.d1_deleted.pass, "{name}: d1 {:?}", a.d1_full);
    assert!(a.e2_full.pass, "{name}: e2 {:?}", a.e2_full);
    assert!(a.e2_deleted.pass, "{name}: deleted e2 {:?}", a.e2_deleted);
    assert!(a.map.pass, "{name}: map {:?} pattern {}", a.map.rows, a.map.stalk_pattern);
    assert!(a.e1_decomposition.iter().all(|r| r.pass), "{name}: e1 {:?}", a.e1_decomposition);
    assert!(a.preimages_match && a.abutment_matches_ih, "{name}");
    a
}

#[test]
fn trivial_filtration_is_one_column() {
    let circle = ChainComplex::from_matrices(Ring::Rationals, 3, &[IntMatrix::from_i64(3, 3, &[-1, -1, 0, 1, 0, -1, 0, 1, 1])]).unwrap();
    let ss = compute_pages(&FilteredChainComplex::trivial(circle.clone())).unwrap();
    assert_eq!(ss.last_page(), 1);
    assert_eq!((ss.dim(1, 0, 0), ss.dim(1, 0, 1)), (1, 1));
    assert!(ss.pass());
    // Vertex 0 in F_0, everything else in F_1.
    let f = FilteredChainComplex::new(circle, vec![vec![0, 1, 1], vec![1, 1, 1]]).unwrap();
    let ss = compute_pages(&f).unwrap();
    assert!(ss.pass());
    assert_eq!(ss.dim(2, 0, 0) + ss.dim(2, 1, 0), 2);
    assert!(d1_cross_check(&f).unwrap().pass);
    assert!(compute_pages(&FilteredChainComplex::trivial(
        ChainComplex::from_matrices(Ring::Integers, 1, &[]).unwrap()
    ))
    .is_err());
}

#[test]
fn cone_on_circle() {
    let a = analyze("cone_s1", &[0, 0, 0]);
    assert_eq!(a.full.last_page(), 1);
    assert_eq!(a.full.dim(1, 0, 0), 1);
    assert_eq!(a.ih_deleted.bettis(), vec![1, 1]);
}

#[test]
fn pinched_torus_neighborhood() {
    let a = analyze("pinched_torus", &[0, 0, 0]);
    assert_eq!(a.ih_deleted.bettis(), vec![2, 2]);
}

#[test]
fn trivial_bundle_collapses() {
    let a = analyze("s1_x_cone_t2", &[0, 0, 0, 0, 0]);
    for (p, q, d) in [(0, 0, 1), (0, 1, 2), (1, 0, 1), (1, 1, 2)] {
        assert_eq!(a.full.dim(2, p, q), d, "E2({p},{q})");
    }
    assert!(a.full.collapses_at(2));
    assert_eq!(a.ih_neighborhood.bettis(), vec![1, 3, 2, 0, 0]);
    assert_eq!(a.ih_deleted.bettis(), vec![1, 3, 3, 1]);
}

#[test]
fn twisted_bundle() {
    let a = analyze("twisted_cone_bundle", &[0, 0, 0, 0]);
    assert_eq!(a.full.dim(2, 0, 0), 1);
    assert_eq!(a.full.dim(2, 1, 0), 1);
    assert_eq!(a.full.page(2).unwrap().cells.len(), 2);
    assert_eq!(a.ih_neighborhood.bettis(), vec![1, 1, 0, 0]);
}

#[test]
fn d1_is_nontrivial_on_bundles() {
    for name in ["s1_x_cone_t2", "twisted_cone_bundle"] {
        let space = corpus::get(name).unwrap();
        let sf = skeletal_filtration(&space.space, 1, &Perversity::zero(space.space.n()), Ring::Rationals).unwrap();
        let r = d1_cross_check(&sf.full.filtered).unwrap();
        assert!(r.pass);
        assert!(r.rows.iter().any(|row| !row.d1.is_zero()), "{name}: {:?}", r.rows);
        assert!(sf.preimages_match());
        assert_eq!(sf.pieces(1).len(), 3);
    }
}

#[test]
fn upper_perversity_map_pattern() {
    let a = analyze("s1_x_cone_t2", &[0, 0, 0, 1, 1]);
    for row in &a.map.rows {
        assert_eq!(row.below_threshold, row.q == 0);
    }
    assert_eq!(a.ih_neighborhood.bettis(), vec![1, 1, 0, 0, 0]);
}

#[test]
fn point_bases() {
    analyze("cone_t2", &[0, 0, 0, 0]);
    analyze("cone_t2", &[0, 0, 0, 1]);
    let a = analyze("susp_t2", &[0, 0, 0, 0]);
    assert_eq!(a.full.dim(1, 0, 0), 2);
}

#[test]
fn prime_field_pages() {
    let space = corpus::get("twisted_cone_bundle").unwrap();
    let a = analyze_corpus_space(&space, &Perversity::zero(3), Ring::PrimeField(2)).unwrap();
    assert!(a.pass(), "{}", a.to_json());
    // Coinvariants and invariants of the swap stay one-dimensional over F_2.
    assert_eq!(a.full.dim(2, 0, 0), 1);
}
