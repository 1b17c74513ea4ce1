//! Stars, links and derived neighborhoods.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::subdivision::{barycentric_subdivision, Subdivision};
use super::{Simplex, SimplicialComplex, Subcomplex};
use crate::error::{Error, Result};

/// Closed star and link of a subcomplex.
pub fn star_link(k: &SimplicialComplex, a: &Subcomplex) -> (Subcomplex, Subcomplex) {
    let av = a.vertices(k);
    let mut star: HashSet<Simplex> = HashSet::new();
    for s in k.all_simplices() {
        if s.vertices().iter().any(|v| av.contains(v)) && !star.contains(s) {
            star.extend(s.faces());
        }
    }
    let star_sub = Subcomplex::from_predicate(k, |s| star.contains(s));
    let link_sub = Subcomplex::from_predicate(k, |s| star.contains(s) && s.vertices().iter().all(|v| !av.contains(v)));
    (star_sub, link_sub)
}

/// Closed derived neighborhood `N` of a full subcomplex `Y` of `K`, built in
/// the first derived subdivision.
///
/// Simplices of `sd K` are flags `t_0 < ... < t_k` of simplices of `K`; `N`
/// consists of the flags with `t_0` meeting `Y`, the frontier of those flags
/// none of whose members lies in `Y`. The retraction sends `b(t)` to
/// `b(t n Y)`.
#[derive(Clone, Debug)]
pub struct RegularNeighborhood {
    /// The complex that was subdivided (`K`, or `sd K` when `Y` was not full).
    pub ambient: SimplicialComplex,
    /// `Y` as a subcomplex of `ambient`.
    pub base: Subcomplex,
    /// Present when `K` had to be subdivided once to make `Y` full.
    pub presubdivision: Option<Subdivision>,
    /// `sd ambient`.
    pub subdivision: Subdivision,
    /// The neighborhood, with vertex ids of `sd ambient`.
    pub complex: SimplicialComplex,
    /// `sd Y` inside `N`.
    pub base_in_n: Subcomplex,
    /// Link of `sd Y` inside `N`.
    pub frontier: Subcomplex,
    /// Vertex map `N -> sd Y`.
    pub retraction: HashMap<usize, usize>,
    base_vertices: BTreeSet<usize>,
}

impl RegularNeighborhood {
    /// `t n Y` for a simplex `t` of the ambient complex.
    pub fn meet(&self, t: &Simplex) -> Option<Simplex> {
        t.restrict(|v| self.base_vertices.contains(&v))
    }

    /// Filtration degree of a simplex of `N`: `dim(t_top n Y)`, the dimension
    /// of the smallest simplex of `Y` whose subdivision contains its image.
    pub fn degree(&self, s: &Simplex) -> usize {
        let top = self.subdivision.carrier_of(s);
        self.meet(top).expect("neighborhood flags meet Y").dim()
    }

    /// Image of a simplex of `N` under the retraction (a simplex of `sd Y`).
    pub fn retract(&self, s: &Simplex) -> Simplex {
        let v: BTreeSet<usize> = s.vertices().iter().map(|x| self.retraction[x]).collect();
        Simplex::from_sorted(v.into_iter().collect())
    }

    /// Carrier in `Y` of a simplex of `N`.
    pub fn base_carrier(&self, s: &Simplex) -> Simplex {
        self.meet(self.subdivision.carrier_of(s)).expect("neighborhood flags meet Y")
    }

    /// `J^s`: simplices of `N` with filtration degree at most `s`.
    pub fn skeletal_preimage(&self, s: usize) -> Subcomplex {
        Subcomplex::from_predicate(&self.complex, |x| self.degree(x) <= s)
    }

    /// The piece over a simplex `alpha` of `Y` and its boundary part:
    /// simplices whose base carrier is a face of `alpha` (resp. a proper face).
    pub fn piece(&self, alpha: &Simplex) -> (Subcomplex, Subcomplex) {
        let whole = Subcomplex::from_predicate(&self.complex, |x| self.base_carrier(x).is_face_of(alpha));
        let bd = Subcomplex::from_predicate(&self.complex, |x| {
            let c = self.base_carrier(x);
            c.is_face_of(alpha) && c != *alpha
        });
        (whole, bd)
    }

    /// Vertices of `Y` in the ambient complex.
    pub fn base_vertices(&self) -> &BTreeSet<usize> {
        &self.base_vertices
    }
}

/// Derived neighborhood of `y` in `k`; subdivides once first if `y` is not full.
pub fn regular_neighborhood(k: &SimplicialComplex, y: &Subcomplex) -> Result<RegularNeighborhood> {
    y.validate(k).map_err(|e| Error::NotSubcomplex(format!("base: {e}")))?;
    if y.is_empty() {
        return Err(Error::NotSubcomplex("base is empty".into()));
    }
    let (ambient, base, presubdivision) = if y.is_full(k) {
        (k.clone(), y.clone(), None)
    } else {
        let sd = barycentric_subdivision(k);
        let base = Subcomplex::from_predicate(&sd.complex, |s| {
            sd.flag(s).iter().all(|t| y.contains_simplex(k, t))
        });
        (sd.complex.clone(), base, Some(sd))
    };
    let base_vertices = base.vertices(&ambient);
    let subdivision = barycentric_subdivision(&ambient);
    let meets = |t: &Simplex| t.vertices().iter().any(|v| base_vertices.contains(v));
    let inside = |t: &Simplex| t.vertices().iter().all(|v| base_vertices.contains(v));
    let mut members: HashSet<Simplex> = HashSet::new();
    for s in subdivision.complex.all_simplices() {
        if meets(&subdivision.carrier[s.vertices()[0]]) {
            members.insert(s.clone());
        }
    }
    let complex = SimplicialComplex::from_closed_set(members);
    let base_in_n = Subcomplex::from_predicate(&complex, |s| subdivision.flag(s).iter().all(|t| inside(t)));
    let frontier = Subcomplex::from_predicate(&complex, |s| subdivision.flag(s).iter().all(|t| !inside(t)));
    let mut retraction = HashMap::new();
    for v in complex.vertices() {
        let t = &subdivision.carrier[v];
        let m = t.restrict(|x| base_vertices.contains(&x)).expect("vertex of N meets Y");
        let b = subdivision.barycenter(&ambient, &m).expect("face of K");
        retraction.insert(v, b);
    }
    Ok(RegularNeighborhood {
        ambient,
        base,
        presubdivision,
        subdivision,
        complex,
        base_in_n,
        frontier,
        retraction,
        base_vertices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_and_link_of_a_vertex() {
        let k = SimplicialComplex::close([vec![0, 1, 2]]).unwrap();
        let a = Subcomplex::generated(&k, &[Simplex::vertex(0)]).unwrap();
        let (star, link) = star_link(&k, &a);
        assert_eq!(star, Subcomplex::whole(&k));
        assert_eq!(link.to_complex(&k).f_vector(), vec![2, 1]);
    }

    #[test]
    fn neighborhood_of_a_cone_point() {
        // Cone on a triangle boundary with apex 3.
        let k = SimplicialComplex::close([vec![0, 1, 3], vec![1, 2, 3], vec![0, 2, 3]]).unwrap();
        let y = Subcomplex::generated(&k, &[Simplex::vertex(3)]).unwrap();
        let n = regular_neighborhood(&k, &y).unwrap();
        assert_eq!(n.complex.euler_characteristic(), 1);
        let f = n.frontier.to_complex(&n.complex);
        assert_eq!(f.f_vector(), vec![6, 6]);
        for v in n.base_in_n.vertices(&n.complex) {
            assert_eq!(n.retraction[&v], v);
        }
        assert!(n.frontier.intersection(&n.base_in_n).is_empty());
    }
}
