//! Simplicial maps and the maps they induce on intersection homology.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::{FilteredComplex, IntersectionChains, IcOptions, Perversity};
use crate::algebra::matrix::SparseVec;
use crate::algebra::{induced_homology_map, ChainMap, HomologyMap, ReducedHomology, Ring};
use crate::error::{Error, Result};
use crate::simplicial::{Simplex, SimplicialComplex};

/// A simplicial map given by its vertex map, validated against both complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    vertex_map: HashMap<usize, usize>,
}

impl SimplicialMap {
    pub fn new(source: &SimplicialComplex, target: &SimplicialComplex, vertex_map: HashMap<usize, usize>) -> Result<Self> {
        for v in source.vertices() {
            if !vertex_map.contains_key(&v) {
                return Err(Error::InvalidConstruction(format!("vertex {v} has no image")));
            }
        }
        let f = SimplicialMap { vertex_map };
        for s in source.all_simplices() {
            let img = f.image(s);
            if !target.contains(&img) {
                return Err(Error::InvalidConstruction(format!("image of {s} is not a simplex of the target")));
            }
        }
        Ok(f)
    }

    pub fn vertex_map(&self) -> &HashMap<usize, usize> {
        &self.vertex_map
    }

    pub fn apply_vertex(&self, v: usize) -> usize {
        self.vertex_map[&v]
    }

    /// The image simplex (possibly of lower dimension).
    pub fn image(&self, s: &Simplex) -> Simplex {
        let mut v: Vec<usize> = s.vertices().iter().map(|x| self.vertex_map[x]).collect();
        v.sort_unstable();
        v.dedup();
        Simplex::new(v).expect("nonempty")
    }

    /// Signed image: `None` when the map collapses `s`, otherwise the image and
    /// the sign of the permutation sorting the image vertices.
    pub fn signed_image(&self, s: &Simplex) -> Option<(i64, Simplex)> {
        let mut v: Vec<usize> = s.vertices().iter().map(|x| self.vertex_map[x]).collect();
        let mut sign = 1i64;
        // Insertion sort counting transpositions.
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((sign, Simplex::new(v).expect("distinct vertices")))
    }

    /// Stratum-preserving with respect to two filtrations of the same formal
    /// dimension: every vertex keeps its level. Simplices then keep theirs,
    /// so strata go to strata of the same codimension.
    pub fn check_stratum_preserving(&self, source: &FilteredComplex, target: &FilteredComplex) -> Result<()> {
        if source.n() != target.n() {
            return Err(Error::NotStratumPreserving(format!(
                "formal dimensions {} and {} differ",
                source.n(),
                target.n()
            )));
        }
        for v in source.complex().vertices() {
            let w = self.vertex_map[&v];
            if source.vertex_level(v) != target.vertex_level(w) {
                return Err(Error::NotStratumPreserving(format!(
                    "vertex {v} at level {} maps to {w} at level {}",
                    source.vertex_level(v),
                    target.vertex_level(w)
                )));
            }
        }
        Ok(())
    }
}

/// Image of a simplicial `d`-chain (indices into `source.simplices(d)`) as a
/// chain on `target.simplices(d)`; collapsed simplices go to zero.
pub fn simplicial_chain_image(
    f: &SimplicialMap,
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    d: usize,
    chain: &SparseVec<BigInt>,
) -> SparseVec<BigInt> {
    let mut acc: HashMap<usize, BigInt> = HashMap::new();
    for (i, a) in chain {
        if let Some((sign, img)) = f.signed_image(source.simplex(d, *i)) {
            let j = target.index_of(&img).expect("validated map");
            *acc.entry(j).or_default() += a * sign;
        }
    }
    let mut out: SparseVec<BigInt> = acc.into_iter().filter(|(_, v)| *v != BigInt::from(0)).collect();
    out.sort_by_key(|(i, _)| *i);
    out
}

/// The chain map `IC(source) -> IC(target)` in the chosen IC bases.
pub fn ic_chain_map(f: &SimplicialMap, source: &IntersectionChains, target: &IntersectionChains, src: &SimplicialComplex, tgt: &SimplicialComplex) -> Result<ChainMap> {
    if source.stalk_rank != 1 || target.stalk_rank != 1 {
        return Err(Error::InvalidConstruction("induced maps need constant coefficients".into()));
    }
    let mut columns = Vec::with_capacity(source.basis.len());
    for (d, basis) in source.basis.iter().enumerate() {
        let mut cols = Vec::with_capacity(basis.len());
        for b in basis {
            let img = simplicial_chain_image(f, src, tgt, d, b);
            cols.push(target.coordinates(d, &img).ok_or(Error::NotAllowable(d))?);
        }
        columns.push(cols);
    }
    Ok(ChainMap::new(columns))
}

/// Maps `IH_d(source) -> IH_d(target)` in every degree induced by a
/// stratum-preserving simplicial map.
pub fn induced_ih_map(
    f: &SimplicialMap,
    source: &FilteredComplex,
    target: &FilteredComplex,
    p: &Perversity,
    ring: Ring,
) -> Result<Vec<HomologyMap>> {
    f.check_stratum_preserving(source, target)?;
    let ic_s = IntersectionChains::build(source, p, &IcOptions::new(ring))?;
    let ic_t = IntersectionChains::build(target, p, &IcOptions::new(ring))?;
    let map = ic_chain_map(f, &ic_s, &ic_t, source.complex(), target.complex())?;
    map.check(&ic_s.chain, &ic_t.chain)?;
    let hs = ReducedHomology::new(&ic_s.chain);
    let ht = ReducedHomology::new(&ic_t.chain);
    (0..hs.len()).map(|d| induced_homology_map(&map, &hs, &ht, d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_images() {
        let k = SimplicialComplex::close([vec![0, 1, 2]]).unwrap();
        let swap = SimplicialMap::new(&k, &k, [(0, 1), (1, 0), (2, 2)].into_iter().collect()).unwrap();
        assert_eq!(swap.signed_image(&Simplex::new(vec![0, 1, 2]).unwrap()).unwrap().0, -1);
        let collapse = SimplicialMap::new(&k, &k, [(0, 0), (1, 0), (2, 2)].into_iter().collect()).unwrap();
        assert!(collapse.signed_image(&Simplex::new(vec![0, 1]).unwrap()).is_none());
        let bad = SimplicialMap::new(&k, &SimplicialComplex::close([vec![0, 1]]).unwrap(), [(0, 0), (1, 1), (2, 2)].into_iter().collect());
        assert!(bad.is_err());
    }
}
