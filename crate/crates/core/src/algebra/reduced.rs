//! Homology with explicit generators for large complexes: unit pairs are
//! eliminated first and generators are computed on the residual complex,
//! then carried back by the inclusion of the equivalence.

use num_bigint::BigInt;

use super::chain::{ChainComplex, ChainMap};
use super::exact::{subquotient_basis, Ambient, HomologyBasis, ModuleMap, Span};
use super::matrix::{IntMatrix, Matrix, SparseVec};
use super::morse::{reduce, Reduced};
use super::ring::{Integers, Pid, PrimeField, Ring};
use crate::error::{Error, Result};
use crate::with_pid;

#[derive(Clone, Debug)]
enum Engine {
    Lattice(Reduced<BigInt>, Vec<HomologyBasis<BigInt>>),
    Field(PrimeField, Reduced<u64>, Vec<HomologyBasis<u64>>),
}

/// Homology of a chain complex with generators and a coordinate map.
#[derive(Clone, Debug)]
pub struct ReducedHomology {
    ring: Ring,
    engine: Engine,
}

fn bases<P: Pid>(pid: &P, r: &Reduced<P::Elem>, rational: bool) -> Vec<HomologyBasis<P::Elem>> {
    let amb = Ambient { pid, ranks: &r.ranks, boundaries: &r.boundaries, rational };
    (0..r.ranks.len()).map(|d| subquotient_basis(&amb, &Span::All, &Span::Zero, d)).collect()
}

fn lift(pid: &PrimeField, v: &SparseVec<BigInt>) -> SparseVec<u64> {
    super::matrix::sparse_from_entries(pid, v.iter().map(|(i, x)| (*i, pid.from_int(x))).collect())
}

fn lower(v: &SparseVec<u64>) -> SparseVec<BigInt> {
    v.iter().map(|(i, x)| (*i, BigInt::from(*x))).collect()
}

impl ReducedHomology {
    pub fn new(c: &ChainComplex) -> Self {
        let engine = match c.ring() {
            Ring::PrimeField(p) => {
                let f = PrimeField::new(p);
                let b = c.boundaries_in(&f);
                let r = reduce(&f, c.ranks(), &b, None);
                let h = bases(&f, &r, false);
                Engine::Field(f, r, h)
            }
            ring => {
                let r = reduce(&Integers, c.ranks(), c.boundaries(), None);
                let h = bases(&Integers, &r, ring == Ring::Rationals);
                Engine::Lattice(r, h)
            }
        };
        ReducedHomology { ring: c.ring(), engine }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Number of degrees.
    pub fn len(&self) -> usize {
        match &self.engine {
            Engine::Lattice(_, h) => h.len(),
            Engine::Field(_, _, h) => h.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Orders of the generators in degree `d` (`None` = free).
    pub fn orders(&self, d: usize) -> Vec<Option<BigInt>> {
        match &self.engine {
            Engine::Lattice(_, h) => h.get(d).map_or_else(Vec::new, |b| b.orders.clone()),
            Engine::Field(_, _, h) => h.get(d).map_or_else(Vec::new, |b| vec![None; b.len()]),
        }
    }

    pub fn rank(&self, d: usize) -> usize {
        self.orders(d).iter().filter(|o| o.is_none()).count()
    }

    /// Generator cycles in the original complex.
    pub fn generators(&self, d: usize) -> Vec<SparseVec<BigInt>> {
        match &self.engine {
            Engine::Lattice(r, h) => {
                h.get(d).map_or_else(Vec::new, |b| b.generators.iter().map(|g| r.include(&Integers, d, g)).collect())
            }
            Engine::Field(f, r, h) => h
                .get(d)
                .map_or_else(Vec::new, |b| b.generators.iter().map(|g| lower(&r.include(f, d, g))).collect()),
        }
    }

    /// Coordinates of the class of a cycle; `None` if `z` is not a cycle.
    pub fn class_of(&self, d: usize, z: &SparseVec<BigInt>) -> Option<Vec<BigInt>> {
        match &self.engine {
            Engine::Lattice(r, h) => h.get(d)?.coordinates(&Integers, &r.project(&Integers, d, z)),
            Engine::Field(f, r, h) => {
                let c = h.get(d)?.coordinates(f, &r.project(f, d, &lift(f, z)))?;
                Some(c.into_iter().map(BigInt::from).collect())
            }
        }
    }
}

/// A homomorphism between homology groups in one degree, in the generators
/// of two [`ReducedHomology`] objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyMap {
    pub ring: Ring,
    pub degree: usize,
    pub source_orders: Vec<Option<BigInt>>,
    pub target_orders: Vec<Option<BigInt>>,
    pub matrix: IntMatrix,
}

impl HomologyMap {
    fn module_map<P: Pid>(&self, pid: &P) -> ModuleMap<P::Elem> {
        let conv = |o: &Option<BigInt>| o.as_ref().map(|x| pid.from_int(x));
        ModuleMap {
            source_orders: self.source_orders.iter().map(conv).collect(),
            target_orders: self.target_orders.iter().map(conv).collect(),
            matrix: self.matrix.map(|x| pid.from_int(x)),
        }
    }

    pub fn is_zero(&self) -> bool {
        with_pid!(self.ring, |pid| self.module_map(&pid).is_zero(&pid))
    }

    pub fn is_isomorphism(&self) -> bool {
        with_pid!(self.ring, |pid| self.module_map(&pid).is_isomorphism(&pid))
    }

    /// `self o first`, with torsion coordinates reduced.
    pub fn compose(&self, first: &HomologyMap) -> HomologyMap {
        let matrix = with_pid!(self.ring, |pid| {
            let m = self.module_map(&pid).compose(&pid, &first.module_map(&pid)).matrix;
            m.map(|x| pid.to_int(x).expect("integral entry"))
        });
        HomologyMap {
            ring: self.ring,
            degree: self.degree,
            source_orders: first.source_orders.clone(),
            target_orders: self.target_orders.clone(),
            matrix,
        }
    }

    /// Equal as homomorphisms (entries compared in the ring).
    pub fn same_map(&self, other: &HomologyMap) -> bool {
        self.source_orders == other.source_orders
            && self.target_orders == other.target_orders
            && with_pid!(self.ring, |pid| self.module_map(&pid).matrix == other.module_map(&pid).matrix)
    }

    /// Rank of the map on free parts (over a field: its rank).
    pub fn rank(&self) -> usize {
        let free_rows: Vec<usize> = (0..self.target_orders.len()).filter(|&i| self.target_orders[i].is_none()).collect();
        let free_cols: Vec<usize> = (0..self.source_orders.len()).filter(|&j| self.source_orders[j].is_none()).collect();
        with_pid!(self.ring, |pid| {
            let rows = free_rows.iter().map(|&i| free_cols.iter().map(|&j| pid.from_int(self.matrix.get(i, j))).collect()).collect();
            let m = Matrix::from_rows(rows, free_cols.len());
            super::snf::smith_normal_form_in(&pid, &m).rank
        })
    }
}

/// Map induced on homology in degree `d` by a chain map.
pub fn induced_homology_map(
    f: &ChainMap,
    source: &ReducedHomology,
    target: &ReducedHomology,
    d: usize,
) -> Result<HomologyMap> {
    if source.ring != target.ring {
        return Err(Error::InvalidRing("source and target rings differ".into()));
    }
    let gens = source.generators(d);
    let target_orders = target.orders(d);
    let mut matrix = IntMatrix::zeros(target_orders.len(), gens.len());
    for (j, g) in gens.iter().enumerate() {
        let c = target.class_of(d, &f.apply(d, g)).ok_or(Error::NotChainMap(d))?;
        for (i, v) in c.into_iter().enumerate() {
            matrix.set(i, j, v);
        }
    }
    Ok(HomologyMap { ring: source.ring, degree: d, source_orders: source.orders(d), target_orders, matrix })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_of_a_circle() {
        let c = ChainComplex::from_matrices(Ring::Integers, 3, &[IntMatrix::from_i64(3, 3, &[-1, -1, 0, 1, 0, -1, 0, 1, 1])])
            .unwrap();
        let h = ReducedHomology::new(&c);
        assert_eq!(h.rank(0), 1);
        assert_eq!(h.rank(1), 1);
        let g = &h.generators(1)[0];
        assert!(c.apply_boundary(1, g).is_empty());
        let twice: SparseVec<BigInt> = g.iter().map(|(i, x)| (*i, x * 2)).collect();
        assert_eq!(h.class_of(1, &twice).unwrap()[0].magnitude(), &2u32.into());
        let id = ChainMap::identity(&c);
        let m = induced_homology_map(&id, &h, &h, 1).unwrap();
        assert!(m.is_isomorphism());
    }
}
