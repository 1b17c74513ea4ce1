//! Filtered simplicial complexes with full skeleta.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::simplicial::{
    barycentric_subdivision, cone_complex, mapping_torus, regular_neighborhood, RegularNeighborhood, Simplex,
    SimplicialComplex, Subcomplex, Subdivision,
};

/// A simplicial complex with a filtration `X_0 <= ... <= X_n` by full
/// subcomplexes, stored as the level of each vertex: the least `i` with the
/// vertex in `X_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    complex: SimplicialComplex,
    n: usize,
    level: HashMap<usize, usize>,
    subdivided: bool,
}

impl FilteredComplex {
    /// Filtration from vertex levels (missing vertices get level `n`).
    pub fn from_levels(complex: SimplicialComplex, n: usize, levels: &HashMap<usize, usize>) -> Result<Self> {
        let mut level = HashMap::new();
        for v in complex.vertices() {
            let l = levels.get(&v).copied().unwrap_or(n);
            if l > n {
                return Err(Error::Filtration(format!("vertex {v} has level {l} above the formal dimension {n}")));
            }
            level.insert(v, l);
        }
        if let Some(d) = complex.dimension() {
            if d > n {
                return Err(Error::Filtration(format!("complex of dimension {d} exceeds formal dimension {n}")));
            }
        }
        Ok(FilteredComplex { complex, n, level, subdivided: false })
    }

    /// Trivial filtration of formal dimension `dim K`.
    pub fn unfiltered(complex: SimplicialComplex) -> Self {
        let n = complex.dimension().unwrap_or(0);
        Self::from_levels(complex, n, &HashMap::new()).expect("trivial filtration is valid")
    }

    /// Filtration from skeleta `X_0, ..., X_{n-1}` (`X_n` is everything).
    ///
    /// If some skeleton is not full, the complex is subdivided once; the
    /// subdivided skeleta are full and [`was_subdivided`](Self::was_subdivided)
    /// records it.
    pub fn from_skeleta(complex: SimplicialComplex, n: usize, skeleta: &[Subcomplex]) -> Result<Self> {
        if skeleta.len() > n {
            return Err(Error::Filtration(format!("{} skeleta for formal dimension {n}", skeleta.len())));
        }
        for (i, s) in skeleta.iter().enumerate() {
            s.validate(&complex).map_err(|e| Error::Filtration(format!("X_{i}: {e}")))?;
            if i > 0 && !skeleta[i - 1].is_subset_of(s) {
                return Err(Error::Nesting(format!("X_{} is not contained in X_{i}", i - 1)));
            }
        }
        let level_of = |s: &Simplex| skeleta.iter().position(|x| x.contains_simplex(&complex, s)).unwrap_or(n);
        if skeleta.iter().all(|s| s.is_full(&complex)) {
            let levels = complex.vertices().into_iter().map(|v| (v, level_of(&Simplex::vertex(v)))).collect();
            return Self::from_levels(complex, n, &levels);
        }
        let sd = barycentric_subdivision(&complex);
        let levels = (0..sd.carrier.len()).map(|v| (v, level_of(&sd.carrier[v]))).collect();
        let mut f = Self::from_levels(sd.complex, n, &levels)?;
        f.subdivided = true;
        Ok(f)
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Formal dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn was_subdivided(&self) -> bool {
        self.subdivided
    }

    pub fn vertex_level(&self, v: usize) -> usize {
        self.level[&v]
    }

    pub fn levels(&self) -> &HashMap<usize, usize> {
        &self.level
    }

    /// Least `i` with `s` in `X_i`.
    pub fn simplex_level(&self, s: &Simplex) -> usize {
        s.vertices().iter().map(|v| self.level[v]).max().expect("nonempty simplex")
    }

    /// `X_i` as a subcomplex.
    pub fn skeleton(&self, i: usize) -> Subcomplex {
        Subcomplex::from_predicate(&self.complex, |s| self.simplex_level(s) <= i)
    }

    /// Vertices of `X_i`.
    pub fn skeleton_vertices(&self, i: usize) -> BTreeSet<usize> {
        self.level.iter().filter(|(_, &l)| l <= i).map(|(&v, _)| v).collect()
    }

    /// No stratum of codimension one.
    pub fn is_pseudomanifold_filtration(&self) -> bool {
        self.n == 0 || self.level.values().all(|&l| l + 1 != self.n)
    }

    /// Least `i` with `X_i` nonempty below the top, if any.
    pub fn bottom_level(&self) -> Option<usize> {
        self.level.values().copied().filter(|&l| l < self.n).min()
    }

    /// Subdivide once; barycenters inherit the level of their carrier.
    pub fn subdivide(&self) -> (FilteredComplex, Subdivision) {
        let sd = barycentric_subdivision(&self.complex);
        let levels = (0..sd.carrier.len()).map(|v| (v, self.simplex_level(&sd.carrier[v]))).collect();
        let mut f = Self::from_levels(sd.complex.clone(), self.n, &levels).expect("levels inherited");
        f.subdivided = self.subdivided;
        (f, sd)
    }

    /// Closed cone: the apex is `X_0` and `X_{i+1}` is the cone on `X_i`.
    pub fn cone(&self) -> FilteredComplex {
        let apex = self.complex.vertices().last().map_or(0, |v| v + 1);
        let complex = cone_complex(&self.complex, apex).expect("fresh apex");
        let mut levels: HashMap<usize, usize> = self.level.iter().map(|(&v, &l)| (v, l + 1)).collect();
        levels.insert(apex, 0);
        let mut f = Self::from_levels(complex, self.n + 1, &levels).expect("cone levels");
        f.subdivided = self.subdivided;
        f
    }

    /// Apex of a complex built by [`cone`](Self::cone): its largest vertex.
    pub fn cone_apex(&self) -> usize {
        self.complex.vertices().last().copied().unwrap_or(0)
    }

    /// Mapping torus of a level-preserving automorphism (identity gives the
    /// product with a circle); each stratum is crossed with the circle.
    pub fn mapping_torus(&self, phi: &HashMap<usize, usize>, m: usize) -> Result<(FilteredComplex, HashMap<usize, usize>)> {
        for (v, w) in phi {
            if self.level.get(v) != self.level.get(w) {
                return Err(Error::NotStratumPreserving(format!("vertex {v} and its image {w} lie in different strata")));
            }
        }
        let (complex, projection) = mapping_torus(&self.complex, phi, m)?;
        let verts = self.complex.vertices();
        let nv = verts.len();
        let levels =
            (0..m).flat_map(|j| verts.iter().enumerate().map(move |(i, v)| (j * nv + i, *v))).map(|(id, v)| (id, self.level[&v] + 1)).collect();
        Ok((Self::from_levels(complex, self.n + 1, &levels)?, projection))
    }

    pub fn product_with_circle(&self, m: usize) -> Result<(FilteredComplex, HashMap<usize, usize>)> {
        let id: HashMap<usize, usize> = self.complex.vertices().into_iter().map(|v| (v, v)).collect();
        self.mapping_torus(&id, m)
    }

    /// Disjoint union; the second complex's vertices are shifted past the first.
    pub fn disjoint_union(&self, other: &FilteredComplex) -> Result<FilteredComplex> {
        if self.n != other.n {
            return Err(Error::Filtration("formal dimensions differ".into()));
        }
        let shift = self.complex.vertices().last().map_or(0, |v| v + 1);
        let moved = other.complex.relabel(|v| v + shift)?;
        let complex = self.complex.union(&moved);
        let mut levels = self.level.clone();
        for (&v, &l) in &other.level {
            levels.insert(v + shift, l);
        }
        Self::from_levels(complex, self.n, &levels)
    }

    /// A subcomplex with the inherited filtration and the same formal dimension.
    pub fn restrict(&self, sub: &Subcomplex) -> FilteredComplex {
        let complex = sub.to_complex(&self.complex);
        let levels = complex.vertices().into_iter().map(|v| (v, self.level[&v])).collect();
        FilteredComplex { complex, n: self.n, level: levels, subdivided: self.subdivided }
    }

    /// Derived neighborhood of the skeleton `X_i` with inherited strata.
    pub fn neighborhood(&self, base_level: usize) -> Result<FilteredNeighborhood> {
        let base = self.skeleton(base_level);
        let rn = regular_neighborhood(&self.complex, &base)?;
        let sd = &rn.subdivision;
        let levels = rn.complex.vertices().into_iter().map(|v| (v, self.simplex_level(&sd.carrier[v]))).collect();
        let n_complex = FilteredComplex::from_levels(rn.complex.clone(), self.n, &levels)?;
        let frontier = n_complex.restrict(&rn.frontier);
        Ok(FilteredNeighborhood { base_level, neighborhood: n_complex, frontier, data: rn })
    }
}

/// A derived neighborhood of a skeleton with its strata, frontier and retraction.
#[derive(Clone, Debug)]
pub struct FilteredNeighborhood {
    pub base_level: usize,
    /// `N` with the strata of the ambient space.
    pub neighborhood: FilteredComplex,
    /// The frontier (link of the base) with inherited strata.
    pub frontier: FilteredComplex,
    pub data: RegularNeighborhood,
}

impl FilteredNeighborhood {
    /// Filtration degree of a simplex of `N` (dimension of its base carrier).
    pub fn degree(&self, s: &Simplex) -> usize {
        self.data.degree(s)
    }

    /// Dimension of the base.
    pub fn base_dimension(&self) -> usize {
        self.data.base.dimension().unwrap_or(0)
    }

    /// The base as a complex (a subcomplex of the ambient space).
    pub fn base_complex(&self) -> SimplicialComplex {
        self.data.base.to_complex(&self.data.ambient)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_full_skeleton_triggers_subdivision() {
        let k = SimplicialComplex::close([vec![0, 1, 2]]).unwrap();
        // X_0 = the two endpoints of an edge: full. X_1 = that edge: full.
        let x0 = Subcomplex::generated(&k, &[Simplex::vertex(0), Simplex::vertex(1)]).unwrap();
        let f = FilteredComplex::from_skeleta(k.clone(), 2, &[x0]).unwrap();
        assert!(f.was_subdivided());
        let v = Subcomplex::generated(&k, &[Simplex::vertex(0)]).unwrap();
        let e = Subcomplex::generated(&k, &[Simplex::new(vec![0, 1]).unwrap()]).unwrap();
        let g = FilteredComplex::from_skeleta(k, 2, &[v, e]).unwrap();
        assert!(!g.was_subdivided());
        assert_eq!(g.vertex_level(0), 0);
        assert_eq!(g.vertex_level(1), 1);
        assert_eq!(g.vertex_level(2), 2);
    }

    #[test]
    fn cone_levels() {
        let s1 = SimplicialComplex::close([vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let c = FilteredComplex::unfiltered(s1).cone();
        assert_eq!(c.n(), 2);
        assert_eq!(c.vertex_level(3), 0);
        assert_eq!(c.cone_apex(), 3);
        assert_eq!(c.vertex_level(0), 2);
        assert!(c.is_pseudomanifold_filtration());
        assert_eq!(c.bottom_level(), Some(0));
    }
}
