//! The allowability predicate and the intersection chain complex.
//!
//! `IC_i` is spanned by the allowable `i`-simplices all of whose facets are
//! allowable ("good") together with a saturated basis of the kernel of the
//! map sending the remaining allowable simplices to the non-allowable part of
//! their boundary.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::{FilteredComplex, Perversity};
use crate::algebra::lattice::{kernel_indexed, Submodule};
use crate::algebra::matrix::{sparse_from_entries, SparseVec};
use crate::algebra::ring::{Integers, Pid, PrimeField};
use crate::algebra::{homology, ChainComplex, HomologyResult, IntMatrix, Ring};
use crate::error::{Error, Result};
use crate::simplicial::{Simplex, Subcomplex};

/// `dim(s n X_{n-k}) <= dim s - k + p(k)` for every `k >= 2`.
pub fn allowable(fc: &FilteredComplex, s: &Simplex, p: &Perversity) -> Result<bool> {
    if !fc.complex().contains(s) {
        return Err(Error::UnknownSimplex(s.vertices().to_vec()));
    }
    Ok(allowable_unchecked(fc, s, p))
}

pub(crate) fn allowable_unchecked(fc: &FilteredComplex, s: &Simplex, p: &Perversity) -> bool {
    let n = fc.n();
    let i = s.dim() as i64;
    let levels: Vec<usize> = s.vertices().iter().map(|v| fc.vertex_level(*v)).collect();
    for k in 2..=n {
        let count = levels.iter().filter(|&&l| l <= n - k).count() as i64;
        if count > 0 && count - 1 > i - k as i64 + p.value(k) {
            return false;
        }
    }
    true
}

/// Allowability of every simplex, per dimension in canonical order.
pub fn allowability_table(fc: &FilteredComplex, p: &Perversity) -> Vec<Vec<bool>> {
    let k = fc.complex();
    (0..k.levels()).map(|d| k.simplices(d).iter().map(|s| allowable_unchecked(fc, s, p)).collect()).collect()
}

/// Transport of stalks for local coefficients.
pub trait Transport {
    fn rank(&self) -> usize;
    /// Matrix carrying the stalk at the barycenter of `from` to that of `to`
    /// (`to` a face of `from`); the stalk basis is fixed per simplex.
    fn transport(&self, from: &Simplex, to: &Simplex) -> Result<IntMatrix>;
}

/// Coefficient system for intersection chains.
#[derive(Clone, Copy)]
pub enum Coefficients<'a> {
    Constant,
    Local(&'a dyn Transport),
}

/// Options for [`IntersectionChains::build`].
#[derive(Clone, Copy)]
pub struct IcOptions<'a> {
    pub ring: Ring,
    pub coefficients: Coefficients<'a>,
    /// Filtration degree of each simplex; the basis is then adapted to the
    /// filtration by subcomplexes `{degree <= s}`.
    pub degree: Option<&'a dyn Fn(&Simplex) -> usize>,
}

impl<'a> IcOptions<'a> {
    pub fn new(ring: Ring) -> Self {
        IcOptions { ring, coefficients: Coefficients::Constant, degree: None }
    }
}

#[derive(Clone, Debug)]
enum KernelData {
    Lattice(Submodule<BigInt>),
    Field(PrimeField, Submodule<u64>),
}

/// Per-degree bookkeeping for expressing chains in the IC basis.
#[derive(Clone, Debug)]
struct DegreeData {
    /// cell -> position among good basis elements
    good: HashMap<usize, usize>,
    /// cell -> position among bad cells
    bad: HashMap<usize, usize>,
    kernel: KernelData,
    good_count: usize,
}

/// The intersection chain complex of a filtered complex with chosen basis.
#[derive(Clone, Debug)]
pub struct IntersectionChains {
    pub perversity: Perversity,
    pub ring: Ring,
    /// Stalk rank (1 for constant coefficients).
    pub stalk_rank: usize,
    /// The complex in the IC basis.
    pub chain: ChainComplex,
    /// `basis[d][j]`: basis element as a chain on cells `simplex * stalk_rank + a`.
    pub basis: Vec<Vec<SparseVec<BigInt>>>,
    pub allowable: Vec<Vec<bool>>,
    /// Filtration degree of each basis element, when requested.
    pub degrees: Option<Vec<Vec<usize>>>,
    /// Twisted boundary of all allowable cells: `cell_boundary[d][cell]`.
    cell_boundary: Vec<HashMap<usize, SparseVec<BigInt>>>,
    data: Vec<DegreeData>,
}

pub fn intersection_chain_complex(fc: &FilteredComplex, p: &Perversity, ring: Ring) -> Result<IntersectionChains> {
    IntersectionChains::build(fc, p, &IcOptions::new(ring))
}

pub fn intersection_homology(fc: &FilteredComplex, p: &Perversity, ring: Ring) -> Result<HomologyResult> {
    Ok(homology(&intersection_chain_complex(fc, p, ring)?.chain))
}

/// `IH(F, A)`: homology of `IC(F) / IC(A)` where `IC(A) = IC(F) n C(A)`.
pub fn relative_intersection_homology(
    fc: &FilteredComplex,
    a: &Subcomplex,
    p: &Perversity,
    ring: Ring,
) -> Result<HomologyResult> {
    a.validate(fc.complex())?;
    let k = fc.complex();
    let deg = |s: &Simplex| usize::from(!a.contains_simplex(k, s));
    let opts = IcOptions { ring, coefficients: Coefficients::Constant, degree: Some(&deg) };
    let ic = IntersectionChains::build(fc, p, &opts)?;
    let keep = ic.degree_at_least(1);
    Ok(homology(&ic.chain.quotient_by_complement(&keep)?))
}

fn check_perversity(fc: &FilteredComplex, p: &Perversity) -> Result<()> {
    if p.n() < fc.n() {
        return Err(Error::Perversity {
            k: fc.n(),
            reason: format!("perversity covers dimension {} but the space has formal dimension {}", p.n(), fc.n()),
        });
    }
    Ok(())
}

impl IntersectionChains {
    pub fn build(fc: &FilteredComplex, p: &Perversity, opts: &IcOptions<'_>) -> Result<Self> {
        check_perversity(fc, p)?;
        match opts.ring {
            Ring::Integers | Ring::Rationals => build_in(&Integers, fc, p, opts),
            Ring::PrimeField(q) => build_in(&PrimeField::new(q), fc, p, opts),
        }
    }

    pub fn homology(&self) -> HomologyResult {
        homology(&self.chain)
    }

    /// Number of cells (simplices times stalk rank) in degree `d`.
    pub fn cell_count(&self, d: usize) -> usize {
        self.allowable.get(d).map_or(0, |a| a.len() * self.stalk_rank)
    }

    /// Basis indices whose filtration degree is at least `s` (per degree).
    pub fn degree_at_least(&self, s: usize) -> Vec<Vec<usize>> {
        let degrees = self.degrees.as_ref().expect("built with filtration degrees");
        degrees.iter().map(|ds| ds.iter().enumerate().filter(|(_, &x)| x >= s).map(|(j, _)| j).collect()).collect()
    }

    /// Basis indices with filtration degree at most `s`.
    pub fn degree_at_most(&self, s: usize) -> Vec<Vec<usize>> {
        let degrees = self.degrees.as_ref().expect("built with filtration degrees");
        degrees.iter().map(|ds| ds.iter().enumerate().filter(|(_, &x)| x <= s).map(|(j, _)| j).collect()).collect()
    }

    /// Twisted boundary of a chain of allowable cells.
    pub fn cell_chain_boundary(&self, d: usize, chain: &SparseVec<BigInt>) -> Result<SparseVec<BigInt>> {
        if d == 0 {
            return Ok(Vec::new());
        }
        let mut entries = Vec::new();
        for (c, a) in chain {
            let bd = self.cell_boundary[d].get(c).ok_or(Error::NotAllowable(d))?;
            for (i, v) in bd {
                entries.push((*i, a * v));
            }
        }
        Ok(self.chain.normalize_chain(sparse_from_entries(&Integers, entries)))
    }

    /// Coordinates in the IC basis of a chain on cells; `None` if it is not
    /// an intersection chain.
    pub fn coordinates(&self, d: usize, chain: &SparseVec<BigInt>) -> Option<SparseVec<BigInt>> {
        let chain = self.chain.normalize_chain(chain.clone());
        let data = self.data.get(d)?;
        let mut out = Vec::new();
        let mut bad_part = Vec::new();
        for (c, v) in &chain {
            if let Some(&g) = data.good.get(c) {
                out.push((g, v.clone()));
            } else if let Some(&b) = data.bad.get(c) {
                bad_part.push((b, v.clone()));
            } else {
                return None;
            }
        }
        bad_part.sort_by_key(|(i, _)| *i);
        if !bad_part.is_empty() {
            let coords: SparseVec<BigInt> = match &data.kernel {
                KernelData::Lattice(sub) => sub.coordinates(&Integers, &bad_part)?,
                KernelData::Field(f, sub) => {
                    let v: SparseVec<u64> = bad_part.iter().map(|(i, x)| (*i, f.from_int(x))).collect();
                    sub.coordinates(f, &v)?.into_iter().map(|(i, x)| (i, BigInt::from(x))).collect()
                }
            };
            out.extend(coords.into_iter().map(|(i, x)| (data.good_count + i, x)));
        }
        out.sort_by_key(|(i, _)| *i);
        Some(out)
    }
}

struct Cells {
    /// allowable simplex index -> twisted boundary entries `(facet, sign, matrix)`
    boundary: HashMap<usize, Vec<(usize, i64, Option<IntMatrix>)>>,
}

fn build_in<P: Pid>(pid: &P, fc: &FilteredComplex, p: &Perversity, opts: &IcOptions<'_>) -> Result<IntersectionChains> {
    let k = fc.complex();
    let levels = k.levels();
    let r = match opts.coefficients {
        Coefficients::Constant => 1,
        Coefficients::Local(t) => t.rank(),
    };
    let allowed = allowability_table(fc, p);
    let degree_of = |s: &Simplex| opts.degree.map_or(0, |f| f(s));

    // Twisted boundary data of allowable simplices.
    let mut cells: Vec<Cells> = Vec::with_capacity(levels);
    for d in 0..levels {
        let mut boundary = HashMap::new();
        for (i, s) in k.simplices(d).iter().enumerate() {
            if !allowed[d][i] {
                continue;
            }
            let mut entries = Vec::new();
            for (sign, f) in s.facets() {
                let fi = k.index_of(&f).expect("closed under faces");
                let m = match opts.coefficients {
                    Coefficients::Constant => None,
                    Coefficients::Local(t) => Some(t.transport(s, &f)?),
                };
                entries.push((fi, sign, m));
            }
            boundary.insert(i, entries);
        }
        cells.push(Cells { boundary });
    }
    let cell_col = |d: usize, cell: usize| -> SparseVec<P::Elem> {
        let (si, a) = (cell / r, cell % r);
        let mut entries = Vec::new();
        for (fi, sign, m) in &cells[d].boundary[&si] {
            match m {
                None => entries.push((fi * r, pid.from_int(&BigInt::from(*sign)))),
                Some(m) => {
                    for b in 0..r {
                        let x = m.get(b, a) * sign;
                        entries.push((fi * r + b, pid.from_int(&x)));
                    }
                }
            }
        }
        sparse_from_entries(pid, entries)
    };

    let mut basis: Vec<Vec<SparseVec<P::Elem>>> = Vec::with_capacity(levels);
    let mut degrees: Vec<Vec<usize>> = Vec::with_capacity(levels);
    let mut data: Vec<DegreeData> = Vec::with_capacity(levels);
    let mut kernels: Vec<Submodule<P::Elem>> = Vec::with_capacity(levels);
    let mut kernel_gens: Vec<Vec<SparseVec<P::Elem>>> = Vec::with_capacity(levels);
    for d in 0..levels {
        let simplices = k.simplices(d);
        let is_good = |i: usize| {
            allowed[d][i] && (d == 0 || cells[d].boundary[&i].iter().all(|(fi, _, _)| allowed[d - 1][*fi]))
        };
        let mut good_cells = Vec::new();
        let mut bad_simplices: Vec<usize> = Vec::new();
        for i in 0..simplices.len() {
            if !allowed[d][i] {
                continue;
            }
            if is_good(i) {
                good_cells.extend((0..r).map(|a| i * r + a));
            } else {
                bad_simplices.push(i);
            }
        }
        bad_simplices.sort_by_key(|&i| (degree_of(&simplices[i]), i));
        let bad_cells: Vec<usize> = bad_simplices.iter().flat_map(|&i| (0..r).map(move |a| i * r + a)).collect();
        // Projection of the boundary of bad cells onto non-allowable cells.
        let columns: Vec<SparseVec<P::Elem>> = bad_cells
            .iter()
            .map(|&c| cell_col(d, c).into_iter().filter(|(row, _)| d > 0 && !allowed[d - 1][row / r]).collect())
            .collect();
        let kernel_vectors = kernel_indexed(pid, columns);
        let mut b: Vec<SparseVec<P::Elem>> = good_cells.iter().map(|&c| vec![(c, pid.one())]).collect();
        let mut deg: Vec<usize> = good_cells.iter().map(|&c| degree_of(&simplices[c / r])).collect();
        for (j, v) in &kernel_vectors {
            let chain = sparse_from_entries(pid, v.iter().map(|(pos, x)| (bad_cells[*pos], x.clone())).collect());
            b.push(chain);
            deg.push(degree_of(&simplices[bad_cells[*j] / r]));
        }
        let gens: Vec<SparseVec<P::Elem>> = kernel_vectors.into_iter().map(|(_, v)| v).collect();
        let sub = Submodule::new(pid, gens.clone());
        kernel_gens.push(gens);
        data.push(DegreeData {
            good: good_cells.iter().enumerate().map(|(g, &c)| (c, g)).collect(),
            bad: bad_cells.iter().enumerate().map(|(pos, &c)| (c, pos)).collect(),
            kernel: KernelData::Lattice(Submodule::new(&Integers, Vec::new())),
            good_count: good_cells.len(),
        });
        kernels.push(sub);
        basis.push(b);
        degrees.push(deg);
    }

    // Boundary in the IC basis.
    let mut ic_boundaries: Vec<Vec<SparseVec<P::Elem>>> = Vec::with_capacity(levels);
    for d in 0..levels {
        let mut cols = Vec::with_capacity(basis[d].len());
        for b in &basis[d] {
            if d == 0 {
                cols.push(Vec::new());
                continue;
            }
            let mut entries = Vec::new();
            for (c, a) in b {
                for (row, v) in cell_col(d, *c) {
                    entries.push((row, pid.mul(a, &v)));
                }
            }
            let bd = sparse_from_entries(pid, entries);
            let mut out = Vec::new();
            let mut bad_part = Vec::new();
            for (c, v) in bd {
                if let Some(&g) = data[d - 1].good.get(&c) {
                    out.push((g, v));
                } else if let Some(&pos) = data[d - 1].bad.get(&c) {
                    bad_part.push((pos, v));
                } else {
                    return Err(Error::NotBoundaryStable(d));
                }
            }
            bad_part.sort_by_key(|(i, _)| *i);
            if !bad_part.is_empty() {
                let coords = kernels[d - 1].coordinates(pid, &bad_part).ok_or(Error::NotBoundaryStable(d))?;
                out.extend(coords.into_iter().map(|(i, x)| (data[d - 1].good_count + i, x)));
            }
            out.sort_by_key(|(i, _)| *i);
            cols.push(out);
        }
        ic_boundaries.push(cols);
    }

    let to_int = |v: &SparseVec<P::Elem>| -> SparseVec<BigInt> {
        v.iter().map(|(i, x)| (*i, pid.to_int(x).expect("integral entry"))).collect()
    };
    let ranks: Vec<usize> = basis.iter().map(Vec::len).collect();
    let boundaries: Vec<Vec<SparseVec<BigInt>>> = ic_boundaries.iter().map(|l| l.iter().map(to_int).collect()).collect();
    let chain = ChainComplex::new_unchecked(opts.ring, ranks, boundaries)?;
    let basis_int: Vec<Vec<SparseVec<BigInt>>> = basis.iter().map(|l| l.iter().map(to_int).collect()).collect();
    let cell_boundary: Vec<HashMap<usize, SparseVec<BigInt>>> = (0..levels)
        .map(|d| {
            let mut m = HashMap::new();
            if d > 0 {
                for &si in cells[d].boundary.keys() {
                    for a in 0..r {
                        m.insert(si * r + a, to_int(&cell_col(d, si * r + a)));
                    }
                }
            }
            m
        })
        .collect();
    // Keep kernel data for later coordinate queries.
    for (d, gens) in kernel_gens.iter().enumerate() {
        data[d].kernel = kernel_data(opts.ring, gens.iter().map(to_int).collect());
    }
    Ok(IntersectionChains {
        perversity: p.clone(),
        ring: opts.ring,
        stalk_rank: r,
        chain,
        basis: basis_int,
        allowable: allowed,
        degrees: opts.degree.map(|_| degrees),
        cell_boundary,
        data,
    })
}

fn kernel_data(ring: Ring, gens: Vec<SparseVec<BigInt>>) -> KernelData {
    match ring {
        Ring::PrimeField(q) => {
            let f = PrimeField::new(q);
            let g = gens.iter().map(|v| sparse_from_entries(&f, v.iter().map(|(i, x)| (*i, f.from_int(x))).collect())).collect();
            KernelData::Field(f, Submodule::new(&f, g))
        }
        _ => KernelData::Lattice(Submodule::new(&Integers, gens)),
    }
}
