//! Cones, prisms, products with a circle and mapping tori.

use std::collections::{HashMap, HashSet};

use super::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// Closed cone with the given apex id (must not be a vertex of `k`).
pub fn cone_complex(k: &SimplicialComplex, apex: usize) -> Result<SimplicialComplex> {
    if k.contains(&Simplex::vertex(apex)) {
        return Err(Error::InvalidConstruction(format!("apex {apex} is already a vertex")));
    }
    let mut gens: Vec<Vec<usize>> = vec![vec![apex]];
    for s in k.maximal_simplices() {
        let mut v = s.vertices().to_vec();
        gens.push(v.clone());
        v.push(apex);
        gens.push(v);
    }
    SimplicialComplex::close(gens)
}

/// One simplex of the staircase triangulation of `Delta^i x I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrismSimplex {
    pub sign: i64,
    /// `(layer, index)`: layer 0 is `v`, layer 1 is `w`.
    pub vertices: Vec<(u8, usize)>,
}

/// The `i + 1` simplices `[v_0..v_l, w_l..w_i]` with signs `(-1)^l`.
pub fn prism_decomposition(i: usize) -> Vec<PrismSimplex> {
    (0..=i)
        .map(|l| {
            let mut vertices: Vec<(u8, usize)> = (0..=l).map(|k| (0, k)).collect();
            vertices.extend((l..=i).map(|k| (1, k)));
            PrismSimplex { sign: if l % 2 == 0 { 1 } else { -1 }, vertices }
        })
        .collect()
}

/// `K x S^1` from `m` stacked prism layers.
///
/// Vertex `(v, j)` gets id `j * |V| + position(v)`. Returns the complex and
/// the projection of each new vertex to the `m`-gon.
pub fn product_with_circle(k: &SimplicialComplex, m: usize) -> Result<(SimplicialComplex, HashMap<usize, usize>)> {
    let verts = k.vertices();
    mapping_torus(k, &verts.iter().map(|&v| (v, v)).collect(), m)
}

/// Mapping torus of a simplicial automorphism `phi` with `m` layers: layers
/// `j -> j+1` are trivial for `j < m-1`, the closing layer glues through `phi`.
pub fn mapping_torus(
    k: &SimplicialComplex,
    phi: &HashMap<usize, usize>,
    m: usize,
) -> Result<(SimplicialComplex, HashMap<usize, usize>)> {
    if m < 3 {
        return Err(Error::InvalidConstruction(format!("circle needs at least 3 layers, got {m}")));
    }
    let verts = k.vertices();
    let pos: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    // phi must be a bijection on vertices sending simplices to simplices.
    let mut image: HashSet<usize> = HashSet::new();
    for &v in &verts {
        let w = *phi.get(&v).ok_or_else(|| Error::InvalidConstruction(format!("map undefined at vertex {v}")))?;
        if !pos.contains_key(&w) || !image.insert(w) {
            return Err(Error::InvalidConstruction("map is not a bijection on vertices".into()));
        }
    }
    for s in k.all_simplices() {
        let img = Simplex::new(s.vertices().iter().map(|v| phi[v]).collect())?;
        if !k.contains(&img) {
            return Err(Error::InvalidConstruction(format!("image of {s} is not a simplex")));
        }
    }
    let nv = verts.len();
    let id = |v: usize, layer: usize| layer * nv + pos[&v];
    let mut gens: Vec<Vec<usize>> = Vec::new();
    for s in k.maximal_simplices() {
        let sv = s.vertices();
        for j in 0..m {
            for l in 0..sv.len() {
                let mut g: Vec<usize> = sv[..=l].iter().map(|&v| id(v, j)).collect();
                if j + 1 < m {
                    g.extend(sv[l..].iter().map(|&v| id(v, j + 1)));
                } else {
                    g.extend(sv[l..].iter().map(|&v| id(phi[&v], 0)));
                }
                gens.push(g);
            }
        }
    }
    let complex = SimplicialComplex::close(gens)?;
    let projection = (0..m).flat_map(|j| (0..nv).map(move |i| (j * nv + i, j))).collect();
    Ok((complex, projection))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{homology, Ring};

    #[test]
    fn prism_signs() {
        let p = prism_decomposition(1);
        assert_eq!(p[0], PrismSimplex { sign: 1, vertices: vec![(0, 0), (1, 0), (1, 1)] });
        assert_eq!(p[1], PrismSimplex { sign: -1, vertices: vec![(0, 0), (0, 1), (1, 1)] });
        assert_eq!(prism_decomposition(0), vec![PrismSimplex { sign: 1, vertices: vec![(0, 0), (1, 0)] }]);
    }

    #[test]
    fn products_and_tori() {
        let pt = SimplicialComplex::close([vec![0]]).unwrap();
        let (c, _) = product_with_circle(&pt, 5).unwrap();
        assert_eq!(c.f_vector(), vec![5, 5]);
        let e = SimplicialComplex::close([vec![0, 1]]).unwrap();
        let (a, _) = product_with_circle(&e, 4).unwrap();
        assert_eq!(a.count(2), 8);
        assert_eq!(homology(&a.chain_complex(Ring::Integers)).bettis(), vec![1, 1, 0]);
        let two = SimplicialComplex::close([vec![0], vec![1]]).unwrap();
        let swap: HashMap<usize, usize> = [(0, 1), (1, 0)].into_iter().collect();
        let (t, _) = mapping_torus(&two, &swap, 3).unwrap();
        assert_eq!(t.f_vector(), vec![6, 6]);
        assert_eq!(t.components().len(), 1);
        assert!(product_with_circle(&pt, 2).is_err());
    }
}
