//! Finitely generated free chain complexes and chain maps.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::matrix::{apply_columns, IntMatrix, Matrix, SparseVec};
use super::ring::{Integers, Pid, Ring};
use crate::error::{Error, Result};
use crate::with_lattice_ring;

/// A chain complex `C_top -> ... -> C_0` of free modules with chosen bases.
///
/// Entries are stored as integers; over `F_p` they are kept reduced to `0..p`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex {
    ring: Ring,
    ranks: Vec<usize>,
    /// `boundaries[d][j]` is the boundary of basis element `j` of `C_d`.
    boundaries: Vec<Vec<SparseVec<BigInt>>>,
}

impl ChainComplex {
    /// Build and validate a complex; fails unless `d o d = 0`.
    pub fn new(ring: Ring, ranks: Vec<usize>, boundaries: Vec<Vec<SparseVec<BigInt>>>) -> Result<Self> {
        let c = Self::new_unchecked(ring, ranks, boundaries)?;
        c.check_square_zero()?;
        Ok(c)
    }

    /// Build a complex, checking only shapes.
    pub fn new_unchecked(ring: Ring, ranks: Vec<usize>, boundaries: Vec<Vec<SparseVec<BigInt>>>) -> Result<Self> {
        if boundaries.len() != ranks.len() {
            return Err(Error::Dimension(format!(
                "{} boundary maps for {} chain groups",
                boundaries.len(),
                ranks.len()
            )));
        }
        let mut normalized = Vec::with_capacity(boundaries.len());
        for (d, bd) in boundaries.into_iter().enumerate() {
            if bd.len() != ranks[d] {
                return Err(Error::Dimension(format!("degree {d}: {} columns for rank {}", bd.len(), ranks[d])));
            }
            let mut cols = Vec::with_capacity(bd.len());
            for col in bd {
                let mut entries: Vec<(usize, BigInt)> = Vec::with_capacity(col.len());
                for (i, v) in col {
                    if d == 0 || i >= ranks[d - 1] {
                        return Err(Error::Dimension(format!("degree {d}: row index {i} out of range")));
                    }
                    entries.push((i, ring.normalize(&v)));
                }
                cols.push(super::matrix::sparse_from_entries(&Integers, entries));
            }
            normalized.push(cols);
        }
        if let Ring::PrimeField(p) = ring {
            let p = BigInt::from(p);
            for bd in &mut normalized {
                for col in bd.iter_mut() {
                    for (_, v) in col.iter_mut() {
                        *v = num_integer::Integer::mod_floor(&*v, &p);
                    }
                    col.retain(|(_, v)| *v != BigInt::from(0));
                }
            }
        }
        Ok(ChainComplex { ring, ranks, boundaries: normalized })
    }

    /// Complex given by dense integer matrices `d_1, ..., d_top`.
    pub fn from_matrices(ring: Ring, rank0: usize, matrices: &[IntMatrix]) -> Result<Self> {
        let mut ranks = vec![rank0];
        let mut boundaries = vec![vec![Vec::new(); rank0]];
        for (k, m) in matrices.iter().enumerate() {
            if m.rows() != ranks[k] {
                return Err(Error::Dimension(format!("d_{} has {} rows, expected {}", k + 1, m.rows(), ranks[k])));
            }
            ranks.push(m.cols());
            boundaries.push(m.to_sparse_columns(&Integers));
        }
        Self::new(ring, ranks, boundaries)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, d: usize) -> usize {
        self.ranks.get(d).copied().unwrap_or(0)
    }

    /// Number of chain groups (top degree plus one).
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    /// Columns of `d_d`; empty for degrees out of range.
    pub fn boundary(&self, d: usize) -> &[SparseVec<BigInt>] {
        self.boundaries.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn boundaries(&self) -> &[Vec<SparseVec<BigInt>>] {
        &self.boundaries
    }

    pub fn boundary_matrix(&self, d: usize) -> IntMatrix {
        let rows = if d == 0 { 0 } else { self.rank(d - 1) };
        Matrix::from_sparse_columns(&Integers, rows, self.boundary(d))
    }

    /// Boundaries converted to the elements of `pid`.
    pub fn boundaries_in<P: Pid>(&self, pid: &P) -> Vec<Vec<SparseVec<P::Elem>>> {
        self.boundaries
            .iter()
            .map(|bd| {
                bd.iter()
                    .map(|col| {
                        col.iter()
                            .map(|(i, v)| (*i, pid.from_int(v)))
                            .filter(|(_, v)| !pid.is_zero(v))
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks.iter().enumerate().map(|(d, &r)| if d % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
    }

    fn check_square_zero(&self) -> Result<()> {
        with_lattice_ring!(self.ring, |pid| {
            let b = self.boundaries_in(&pid);
            for d in 2..b.len() {
                for col in &b[d] {
                    if !apply_columns(&pid, &b[d - 1], col).is_empty() {
                        return Err(Error::NotAComplex(d));
                    }
                }
            }
            Ok(())
        })
    }

    /// Apply `d_d` to a chain of degree `d`.
    pub fn apply_boundary(&self, d: usize, chain: &SparseVec<BigInt>) -> SparseVec<BigInt> {
        if d == 0 {
            return Vec::new();
        }
        let out = apply_columns(&Integers, self.boundary(d), chain);
        self.normalize_chain(out)
    }

    /// Reduce coefficients according to the ring.
    pub fn normalize_chain(&self, chain: SparseVec<BigInt>) -> SparseVec<BigInt> {
        match self.ring {
            Ring::PrimeField(p) => {
                let p = BigInt::from(p);
                chain
                    .into_iter()
                    .map(|(i, v)| (i, num_integer::Integer::mod_floor(&v, &p)))
                    .filter(|(_, v)| *v != BigInt::from(0))
                    .collect()
            }
            _ => chain,
        }
    }

    /// Subcomplex spanned by a boundary-stable set of basis elements,
    /// re-indexed in increasing order. Fails if the set is not stable.
    /// Quotient by the span of the basis elements not in `keep`, which must
    /// be a subcomplex (not checked): boundary entries outside `keep` are dropped.
    pub fn quotient_by_complement(&self, keep: &[Vec<usize>]) -> Result<ChainComplex> {
        let mut index: Vec<Vec<Option<usize>>> = self.ranks.iter().map(|&n| vec![None; n]).collect();
        let mut kept: Vec<Vec<usize>> = Vec::with_capacity(self.ranks.len());
        for d in 0..self.ranks.len() {
            let mut k: Vec<usize> = keep.get(d).cloned().unwrap_or_default();
            k.sort_unstable();
            k.dedup();
            if k.last().is_some_and(|&j| j >= self.ranks[d]) {
                return Err(Error::Dimension(format!("basis index out of range in degree {d}")));
            }
            for (new, &old) in k.iter().enumerate() {
                index[d][old] = Some(new);
            }
            kept.push(k);
        }
        let boundaries = (0..self.ranks.len())
            .map(|d| {
                kept[d]
                    .iter()
                    .map(|&j| {
                        self.boundaries[d][j].iter().filter_map(|(i, v)| index[d - 1][*i].map(|ni| (ni, v.clone()))).collect()
                    })
                    .collect()
            })
            .collect();
        let ranks = kept.iter().map(Vec::len).collect();
        ChainComplex::new(self.ring, ranks, boundaries)
    }

    pub fn basis_subcomplex(&self, keep: &[Vec<usize>]) -> Result<(ChainComplex, Vec<Vec<usize>>)> {
        let mut index: Vec<Vec<Option<usize>>> = self.ranks.iter().map(|&n| vec![None; n]).collect();
        let mut kept: Vec<Vec<usize>> = Vec::with_capacity(self.ranks.len());
        for d in 0..self.ranks.len() {
            let mut k: Vec<usize> = keep.get(d).cloned().unwrap_or_default();
            k.sort_unstable();
            k.dedup();
            for (new, &old) in k.iter().enumerate() {
                index[d][old] = Some(new);
            }
            kept.push(k);
        }
        let mut boundaries = Vec::with_capacity(self.ranks.len());
        for d in 0..self.ranks.len() {
            let mut cols = Vec::with_capacity(kept[d].len());
            for &j in &kept[d] {
                let mut col = Vec::new();
                for (i, v) in &self.boundaries[d][j] {
                    match index[d - 1][*i] {
                        Some(ni) => col.push((ni, v.clone())),
                        None => return Err(Error::NotBoundaryStable(d)),
                    }
                }
                cols.push(col);
            }
            boundaries.push(cols);
        }
        let ranks = kept.iter().map(Vec::len).collect();
        Ok((ChainComplex { ring: self.ring, ranks, boundaries }, kept))
    }
}

/// A degree-preserving homomorphism between chain complexes.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    /// `columns[d][j]`: image of basis element `j` of the source in degree `d`.
    pub columns: Vec<Vec<SparseVec<BigInt>>>,
}

impl ChainMap {
    pub fn new(columns: Vec<Vec<SparseVec<BigInt>>>) -> Self {
        ChainMap { columns }
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let columns = c.ranks().iter().map(|&n| (0..n).map(|j| vec![(j, BigInt::from(1))]).collect()).collect();
        ChainMap { columns }
    }

    pub fn apply(&self, d: usize, chain: &SparseVec<BigInt>) -> SparseVec<BigInt> {
        match self.columns.get(d) {
            Some(cols) => apply_columns(&Integers, cols, chain),
            None => Vec::new(),
        }
    }

    /// Check shapes and `d f = f d` in every degree.
    pub fn check(&self, source: &ChainComplex, target: &ChainComplex) -> Result<()> {
        for d in 0..source.len() {
            let cols = self.columns.get(d).map(Vec::as_slice).unwrap_or(&[]);
            if cols.len() != source.rank(d) {
                return Err(Error::Dimension(format!("chain map degree {d}: {} columns", cols.len())));
            }
            for col in cols {
                if col.iter().any(|(i, _)| *i >= target.rank(d)) {
                    return Err(Error::Dimension(format!("chain map degree {d}: row out of range")));
                }
            }
            if d == 0 {
                continue;
            }
            for (j, col) in cols.iter().enumerate() {
                let lhs = target.apply_boundary(d, &target.normalize_chain(col.clone()));
                let rhs = self.apply(d - 1, source.boundary(d).get(j).unwrap_or(&Vec::new()));
                if lhs != target.normalize_chain(rhs) {
                    return Err(Error::NotChainMap(d));
                }
            }
        }
        Ok(())
    }

    /// `self o other`.
    pub fn compose(&self, other: &ChainMap) -> ChainMap {
        let columns = other
            .columns
            .iter()
            .enumerate()
            .map(|(d, cols)| cols.iter().map(|c| self.apply(d, c)).collect())
            .collect();
        ChainMap { columns }
    }
}

/// Homology of one degree: free rank plus torsion coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub degree: usize,
    pub betti: usize,
    #[serde(with = "super::serde_int::vec")]
    pub torsion: Vec<BigInt>,
}

/// Homology in every degree of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyResult {
    pub ring: Ring,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyResult {
    pub fn bettis(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    pub fn betti(&self, d: usize) -> usize {
        self.groups.get(d).map_or(0, |g| g.betti)
    }

    pub fn torsion(&self, d: usize) -> &[BigInt] {
        self.groups.get(d).map_or(&[], |g| g.torsion.as_slice())
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.iter().all(|g| g.torsion.is_empty())
    }

    /// Human-readable form of degree `d`, e.g. `Z^2 + Z/2`.
    pub fn describe(&self, d: usize) -> String {
        let Some(g) = self.groups.get(d) else { return "0".into() };
        let base = match self.ring {
            Ring::Integers => "Z".to_string(),
            Ring::Rationals => "Q".to_string(),
            Ring::PrimeField(p) => format!("F{p}"),
        };
        let mut parts = Vec::new();
        match g.betti {
            0 => {}
            1 => parts.push(base.clone()),
            b => parts.push(format!("{base}^{b}")),
        }
        for t in &g.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl std::fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (d, _) in self.groups.iter().enumerate() {
            writeln!(f, "H_{d} = {}", self.describe(d))?;
        }
        Ok(())
    }
}
