//! First barycentric subdivision.

use std::collections::HashSet;

use super::{Simplex, SimplicialComplex};

/// `sd K` together with the carrier of each new vertex.
///
/// New vertex ids enumerate the simplices of `K` by dimension and then in
/// canonical order, so a flag `t_0 < ... < t_k` is already sorted.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    /// `carrier[v]`: the simplex of `K` whose barycenter is vertex `v`.
    pub carrier: Vec<Simplex>,
    offsets: Vec<usize>,
}

impl Subdivision {
    /// Id of the barycenter of a simplex of `K`.
    pub fn barycenter(&self, original: &SimplicialComplex, s: &Simplex) -> Option<usize> {
        original.index_of(s).map(|i| self.offsets[s.dim()] + i)
    }

    /// Barycenter id from a `(dimension, index)` pair of `K`.
    pub fn barycenter_at(&self, d: usize, i: usize) -> usize {
        self.offsets[d] + i
    }

    /// Flag of carriers for a simplex of `sd K`.
    pub fn flag(&self, s: &Simplex) -> Vec<&Simplex> {
        s.vertices().iter().map(|&v| &self.carrier[v]).collect()
    }

    /// Carrier of a simplex of `sd K`: the largest simplex of its flag.
    pub fn carrier_of(&self, s: &Simplex) -> &Simplex {
        &self.carrier[*s.vertices().last().expect("nonempty")]
    }
}

pub fn barycentric_subdivision(k: &SimplicialComplex) -> Subdivision {
    let mut offsets = Vec::with_capacity(k.levels());
    let mut carrier = Vec::with_capacity(k.len());
    for d in 0..k.levels() {
        offsets.push(carrier.len());
        carrier.extend(k.simplices(d).iter().cloned());
    }
    let id = |s: &Simplex| offsets[s.dim()] + k.index_of(s).expect("face of a simplex of K");
    let mut all: HashSet<Simplex> = HashSet::new();
    for top in k.maximal_simplices() {
        // Every ordering of the vertices gives one maximal flag.
        let verts = top.vertices().to_vec();
        let mut perm: Vec<usize> = (0..verts.len()).collect();
        loop {
            let mut flag = Vec::with_capacity(verts.len());
            let mut prefix = Vec::with_capacity(verts.len());
            for &p in &perm {
                prefix.push(verts[p]);
                let mut sorted = prefix.clone();
                sorted.sort_unstable();
                flag.push(id(&Simplex::from_sorted(sorted)));
            }
            let full = Simplex::from_sorted(flag);
            if !all.contains(&full) {
                for f in full.faces() {
                    all.insert(f);
                }
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    Subdivision { complex: SimplicialComplex::from_closed_set(all), carrier, offsets }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_and_circle() {
        let e = SimplicialComplex::close([vec![0, 1]]).unwrap();
        let sd = barycentric_subdivision(&e);
        assert_eq!(sd.complex.f_vector(), vec![3, 2]);
        let c = SimplicialComplex::close([vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(barycentric_subdivision(&c).complex.f_vector(), vec![6, 6]);
        let t = SimplicialComplex::close([vec![0, 1, 2]]).unwrap();
        let s = barycentric_subdivision(&t);
        assert_eq!(s.complex.f_vector(), vec![7, 12, 6]);
        assert_eq!(s.complex.euler_characteristic(), 1);
    }
}
