//! Finite abstract simplicial complexes and subcomplexes.

mod constructions;
mod neighborhood;
mod subdivision;

pub use constructions::{cone_complex, mapping_torus, prism_decomposition, product_with_circle, PrismSimplex};
pub use neighborhood::{regular_neighborhood, star_link, RegularNeighborhood};
pub use subdivision::{barycentric_subdivision, Subdivision};

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::{ChainComplex, Ring};
use crate::error::{Error, Result};

/// A simplex: a strictly increasing list of vertex identifiers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Sorts the vertices; fails on repeats or an empty list.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidConstruction("empty simplex".into()));
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(vertices));
        }
        Ok(Simplex(vertices))
    }

    /// Caller guarantees the vertices are strictly increasing.
    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertex(v: usize) -> Self {
        Simplex(vec![v])
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Facet opposite vertex position `j` (requires dim >= 1).
    pub fn facet(&self, j: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(j);
        Simplex(v)
    }

    /// Facets with their boundary signs `(-1)^j`.
    pub fn facets(&self) -> impl Iterator<Item = (i64, Simplex)> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |j| (if j % 2 == 0 { 1 } else { -1 }, self.facet(j)))
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let k = self.0.len();
        let mut out = Vec::with_capacity((1usize << k) - 1);
        for mask in 1u64..(1u64 << k) {
            let v: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i]).collect();
            out.push(Simplex(v));
        }
        out
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }

    /// Face spanned by the vertices satisfying `keep`, if any.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Option<Simplex> {
        let v: Vec<usize> = self.0.iter().copied().filter(|&x| keep(x)).collect();
        (!v.is_empty()).then_some(Simplex(v))
    }
}

impl std::fmt::Display for Simplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A finite simplicial complex with simplices in canonical (lexicographic)
/// order within each dimension.
#[derive(Clone, Debug, Default)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<Simplex>>,
    index: HashMap<Simplex, usize>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Smallest complex containing the generators.
    pub fn close<I, V>(generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: Into<Vec<usize>>,
    {
        let mut all: HashSet<Simplex> = HashSet::new();
        for g in generators {
            let s = Simplex::new(g.into())?;
            if all.contains(&s) {
                continue;
            }
            for f in s.faces() {
                all.insert(f);
            }
        }
        Ok(Self::from_closed_set(all))
    }

    /// Complex from a set already closed under faces.
    pub(crate) fn from_closed_set(all: HashSet<Simplex>) -> Self {
        let top = all.iter().map(Simplex::dim).max();
        let mut simplices: Vec<Vec<Simplex>> = match top {
            Some(t) => vec![Vec::new(); t + 1],
            None => Vec::new(),
        };
        for s in all {
            let d = s.dim();
            simplices[d].push(s);
        }
        for level in &mut simplices {
            level.sort_unstable();
        }
        let mut index = HashMap::new();
        for level in &simplices {
            for (i, s) in level.iter().enumerate() {
                index.insert(s.clone(), i);
            }
        }
        SimplicialComplex { simplices, index }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Dimension, or `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    /// Number of dimension levels (dimension plus one).
    pub fn levels(&self) -> usize {
        self.simplices.len()
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.simplices.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().flatten()
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    pub fn simplex(&self, d: usize, i: usize) -> &Simplex {
        &self.simplices[d][i]
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.simplices(0).iter().map(|s| s.0[0]).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().enumerate().map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) }).sum()
    }

    /// Simplices that are not a face of any other simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: HashSet<&Simplex> = HashSet::new();
        for level in self.simplices.iter().skip(1) {
            for s in level {
                for (_, f) in s.facets() {
                    if let Some(i) = self.index_of(&f) {
                        covered.insert(&self.simplices[f.dim()][i]);
                    }
                }
            }
        }
        self.all_simplices().filter(|s| !covered.contains(s)).cloned().collect()
    }

    /// Signed facet indices of the simplex `(d, i)`.
    pub fn boundary_of(&self, d: usize, i: usize) -> Vec<(usize, i64)> {
        if d == 0 {
            return Vec::new();
        }
        let mut out: Vec<(usize, i64)> = self.simplices[d][i]
            .facets()
            .map(|(sign, f)| (self.index_of(&f).expect("closed under faces"), sign))
            .collect();
        out.sort_unstable();
        out
    }

    /// Simplicial chain complex in the canonical bases.
    pub fn chain_complex(&self, ring: Ring) -> ChainComplex {
        let ranks = self.f_vector();
        let boundaries = (0..self.levels())
            .map(|d| {
                (0..self.count(d))
                    .map(|i| self.boundary_of(d, i).into_iter().map(|(r, s)| (r, BigInt::from(s))).collect())
                    .collect()
            })
            .collect();
        ChainComplex::new_unchecked(ring, ranks, boundaries).expect("simplicial boundary has valid shape")
    }

    /// Relabel vertices through an injective map.
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Result<Self> {
        Self::close(self.maximal_simplices().into_iter().map(|s| s.0.iter().map(|&v| map(v)).collect::<Vec<_>>()))
    }

    /// Union with another complex on the same vertex namespace.
    pub fn union(&self, other: &SimplicialComplex) -> Self {
        let all: HashSet<Simplex> = self.all_simplices().chain(other.all_simplices()).cloned().collect();
        Self::from_closed_set(all)
    }

    /// Connected components as vertex sets, ordered by least vertex.
    pub fn components(&self) -> Vec<BTreeSet<usize>> {
        let verts = self.vertices();
        let pos: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for e in self.simplices(1) {
            let a = find(&mut parent, pos[&e.0[0]]);
            let b = find(&mut parent, pos[&e.0[1]]);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: HashMap<usize, BTreeSet<usize>> = HashMap::new();
        for (i, &v) in verts.iter().enumerate() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().insert(v);
        }
        let mut out: Vec<BTreeSet<usize>> = groups.into_values().collect();
        out.sort();
        out
    }
}

/// A subcomplex of a fixed parent complex, stored as membership flags
/// aligned with the parent's canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcomplex {
    members: Vec<Vec<bool>>,
}

impl Subcomplex {
    pub fn empty(parent: &SimplicialComplex) -> Self {
        Subcomplex { members: parent.simplices.iter().map(|l| vec![false; l.len()]).collect() }
    }

    pub fn whole(parent: &SimplicialComplex) -> Self {
        Subcomplex { members: parent.simplices.iter().map(|l| vec![true; l.len()]).collect() }
    }

    /// Closure of the generators inside `parent`.
    pub fn generated(parent: &SimplicialComplex, generators: &[Simplex]) -> Result<Self> {
        let mut sub = Self::empty(parent);
        for g in generators {
            if !parent.contains(g) {
                return Err(Error::UnknownSimplex(g.0.clone()));
            }
            for f in g.faces() {
                let i = parent.index_of(&f).expect("closed under faces");
                sub.members[f.dim()][i] = true;
            }
        }
        Ok(sub)
    }

    /// Full subcomplex on a vertex set.
    pub fn full(parent: &SimplicialComplex, vertices: &BTreeSet<usize>) -> Self {
        Self::from_predicate(parent, |s| s.0.iter().all(|v| vertices.contains(v)))
    }

    /// Simplices satisfying a predicate; the caller guarantees face-closure.
    pub fn from_predicate(parent: &SimplicialComplex, pred: impl Fn(&Simplex) -> bool) -> Self {
        Subcomplex { members: parent.simplices.iter().map(|l| l.iter().map(&pred).collect()).collect() }
    }

    pub fn contains(&self, d: usize, i: usize) -> bool {
        self.members.get(d).and_then(|l| l.get(i)).copied().unwrap_or(false)
    }

    pub fn contains_simplex(&self, parent: &SimplicialComplex, s: &Simplex) -> bool {
        parent.index_of(s).is_some_and(|i| self.contains(s.dim(), i))
    }

    /// Indices of member simplices in dimension `d`.
    pub fn indices(&self, d: usize) -> Vec<usize> {
        self.members.get(d).map(|l| l.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect()).unwrap_or_default()
    }

    pub fn is_empty(&self) -> bool {
        self.members.iter().all(|l| l.iter().all(|m| !m))
    }

    pub fn count(&self, d: usize) -> usize {
        self.members.get(d).map_or(0, |l| l.iter().filter(|&&m| m).count())
    }

    /// Check closure under faces.
    pub fn validate(&self, parent: &SimplicialComplex) -> Result<()> {
        for d in 1..parent.levels() {
            for i in self.indices(d) {
                for (_, f) in parent.simplices[d][i].facets() {
                    if !self.contains_simplex(parent, &f) {
                        return Err(Error::NotSubcomplex(format!("{} lacks face {}", parent.simplices[d][i], f)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn vertices(&self, parent: &SimplicialComplex) -> BTreeSet<usize> {
        self.indices(0).into_iter().map(|i| parent.simplices[0][i].0[0]).collect()
    }

    /// Dimension of the subcomplex (`None` when empty).
    pub fn dimension(&self) -> Option<usize> {
        (0..self.members.len()).rev().find(|&d| self.members[d].iter().any(|&m| m))
    }

    /// Full means every parent simplex spanned by member vertices is a member.
    pub fn is_full(&self, parent: &SimplicialComplex) -> bool {
        let v = self.vertices(parent);
        parent.all_simplices().all(|s| !s.0.iter().all(|x| v.contains(x)) || self.contains_simplex(parent, s))
    }

    pub fn to_complex(&self, parent: &SimplicialComplex) -> SimplicialComplex {
        let all: HashSet<Simplex> =
            (0..parent.levels()).flat_map(|d| self.indices(d).into_iter().map(move |i| parent.simplices[d][i].clone())).collect();
        SimplicialComplex::from_closed_set(all)
    }

    pub fn union(&self, other: &Subcomplex) -> Subcomplex {
        Subcomplex {
            members: self.members.iter().zip(&other.members).map(|(a, b)| a.iter().zip(b).map(|(x, y)| *x || *y).collect()).collect(),
        }
    }

    pub fn intersection(&self, other: &Subcomplex) -> Subcomplex {
        Subcomplex {
            members: self.members.iter().zip(&other.members).map(|(a, b)| a.iter().zip(b).map(|(x, y)| *x && *y).collect()).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &Subcomplex) -> bool {
        self.members.iter().zip(&other.members).all(|(a, b)| a.iter().zip(b).all(|(x, y)| !*x || *y))
    }

    /// Membership flags per dimension.
    pub fn flags(&self) -> &[Vec<bool>] {
        &self.members
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_a_triangle() {
        let k = SimplicialComplex::close([vec![0, 1, 2]]).unwrap();
        assert_eq!(k.f_vector(), vec![3, 3, 1]);
        assert_eq!(k.simplices(1)[1].vertices(), &[0, 2]);
        assert!(SimplicialComplex::close(Vec::<Vec<usize>>::new()).unwrap().is_empty());
        assert!(matches!(SimplicialComplex::close([vec![0, 0]]), Err(Error::DuplicateVertex(_))));
    }

    #[test]
    fn subcomplex_checks() {
        let k = SimplicialComplex::close([vec![0, 1, 2]]).unwrap();
        let b = Subcomplex::from_predicate(&k, |s| s.dim() < 2);
        assert!(b.validate(&k).is_ok());
        assert!(!b.is_full(&k));
        let e = Subcomplex::generated(&k, &[Simplex::new(vec![0, 1]).unwrap()]).unwrap();
        assert!(e.is_full(&k));
        assert_eq!(e.to_complex(&k).f_vector(), vec![2, 1]);
    }
}
