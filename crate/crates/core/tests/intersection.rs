use std::collections::HashMap;

use ihss::perverse::{intersection_homology, relative_intersection_homology, FilteredComplex, Perversity};
use ihss::simplicial::{SimplicialComplex, Subcomplex};
use ihss::Ring;

fn torus7() -> SimplicialComplex {
    let mut t = Vec::new();
    for i in 0..7 {
        t.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        t.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    SimplicialComplex::close(t).unwrap()
}

fn circle() -> SimplicialComplex {
    SimplicialComplex::close([vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
}

#[test]
fn cone_on_circle() {
    let c = FilteredComplex::unfiltered(circle()).cone();
    let h = intersection_homology(&c, &Perversity::zero(2), Ring::Integers).unwrap();
    assert_eq!(h.bettis(), vec![1, 0, 0]);
}

#[test]
fn cone_on_torus() {
    let c = FilteredComplex::unfiltered(torus7()).cone();
    let p0 = Perversity::new(vec![0, 0, 0, 0]).unwrap();
    let p1 = Perversity::new(vec![0, 0, 0, 1]).unwrap();
    assert_eq!(intersection_homology(&c, &p0, Ring::Integers).unwrap().bettis(), vec![1, 2, 0, 0]);
    assert_eq!(intersection_homology(&c, &p1, Ring::Integers).unwrap().bettis(), vec![1, 0, 0, 0]);
}

#[test]
fn cone_rel_base() {
    let c = FilteredComplex::unfiltered(circle()).cone();
    let base = Subcomplex::from_predicate(c.complex(), |s| !s.contains_vertex(3));
    let h = relative_intersection_homology(&c, &base, &Perversity::zero(2), Ring::Integers).unwrap();
    assert_eq!(h.bettis(), vec![0, 0, 1]);
}

#[test]
fn suspension_of_torus() {
    // Two cones on the torus glued along it.
    let t = torus7();
    let mut gens = Vec::new();
    for s in t.maximal_simplices() {
        for apex in [7, 8] {
            let mut v = s.vertices().to_vec();
            v.push(apex);
            gens.push(v);
        }
    }
    let k = SimplicialComplex::close(gens).unwrap();
    let levels: HashMap<usize, usize> = [(7, 0), (8, 0)].into_iter().collect();
    let fc = FilteredComplex::from_levels(k, 3, &levels).unwrap();
    let p0 = Perversity::new(vec![0, 0, 0, 0]).unwrap();
    let p1 = Perversity::new(vec![0, 0, 0, 1]).unwrap();
    assert_eq!(intersection_homology(&fc, &p0, Ring::Integers).unwrap().bettis(), vec![1, 2, 0, 1]);
    assert_eq!(intersection_homology(&fc, &p1, Ring::Integers).unwrap().bettis(), vec![1, 0, 2, 1]);
}

#[test]
fn corpus_golden_values() {
    for space in ihss::corpus::all() {
        for g in &space.golden {
            let q = intersection_homology(&space.space, &g.perversity(), Ring::Rationals).unwrap();
            assert_eq!(q.bettis(), g.bettis, "{} {:?}", space.name, g.perversity);
            let z = intersection_homology(&space.space, &g.perversity(), Ring::Integers).unwrap();
            assert_eq!(z.bettis(), g.bettis, "{} over Z", space.name);
            for (d, t) in &g.torsion {
                let t: Vec<num_bigint::BigInt> = t.iter().map(|&x| x.into()).collect();
                assert_eq!(z.torsion(*d), t.as_slice());
            }
        }
    }
}
