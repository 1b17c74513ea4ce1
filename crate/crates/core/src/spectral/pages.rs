//! Pages of the spectral sequence of a finite increasing filtration of a
//! chain complex, over a field.
//!
//! With `F_p` spanned by the basis elements of filtration degree at most `p`,
//! `Z^r_p = {x in F_p : dx in F_{p-r}}` and
//! `E^r_p = Z^r_p / (Z^{r-1}_{p-1} + d Z^{r-1}_{p+r-1})`.
//! Everything runs on a filtered Morse reduction of the complex: unit pairs of
//! equal filtration degree are cancelled, which is a filtered chain homotopy
//! equivalence and leaves every page unchanged.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::exact::{connecting_map, subquotient_basis, Ambient, Span};
use crate::algebra::lattice::{kernel, reduce_columns, Submodule};
use crate::algebra::matrix::{apply_columns, Matrix, SparseVec};
use crate::algebra::morse::{reduce, Reduced};
use crate::algebra::ring::{Integers, Pid, PrimeField, Rationals};
use crate::algebra::snf::smith_normal_form_in;
use crate::algebra::{ChainComplex, ChainMap, Ring};
use crate::error::{Error, Result};
use crate::perverse::IntersectionChains;

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// A chain complex with a filtration degree on every basis element such that
/// the spans `F_s` of elements of degree at most `s` are subcomplexes.
#[derive(Clone, Debug)]
pub struct FilteredChainComplex {
    chain: ChainComplex,
    degrees: Vec<Vec<usize>>,
}

impl FilteredChainComplex {
    pub fn new(chain: ChainComplex, degrees: Vec<Vec<usize>>) -> Result<Self> {
        if degrees.len() != chain.len() || (0..chain.len()).any(|d| degrees[d].len() != chain.rank(d)) {
            return Err(Error::Filtration("one filtration degree per basis element is required".into()));
        }
        for d in 1..chain.len() {
            for (j, col) in chain.boundary(d).iter().enumerate() {
                if let Some((i, _)) = col.iter().find(|(i, _)| degrees[d - 1][*i] > degrees[d][j]) {
                    return Err(Error::Filtration(format!(
                        "boundary of element {j} in degree {d} (filtration {}) meets element {i} of filtration {}",
                        degrees[d][j],
                        degrees[d - 1][*i]
                    )));
                }
            }
        }
        Ok(FilteredChainComplex { chain, degrees })
    }

    /// The one-step filtration `F_0 = C`.
    pub fn trivial(chain: ChainComplex) -> Self {
        let degrees = chain.ranks().iter().map(|&n| vec![0; n]).collect();
        FilteredChainComplex { chain, degrees }
    }

    /// Intersection chains built with filtration degrees.
    pub fn from_ic(ic: &IntersectionChains) -> Result<Self> {
        let degrees = ic.degrees.clone().ok_or_else(|| Error::Filtration("intersection chains carry no degrees".into()))?;
        Self::new(ic.chain.clone(), degrees)
    }

    pub fn chain(&self) -> &ChainComplex {
        &self.chain
    }

    pub fn ring(&self) -> Ring {
        self.chain.ring()
    }

    pub fn degrees(&self) -> &[Vec<usize>] {
        &self.degrees
    }

    /// Largest filtration degree in use (0 for an empty complex).
    pub fn max_degree(&self) -> usize {
        self.degrees.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Basis indices of `F_s`, per chain degree.
    pub fn span(&self, s: i64) -> Vec<Vec<usize>> {
        self.degrees
            .iter()
            .map(|ds| ds.iter().enumerate().filter(|(_, &x)| (x as i64) <= s).map(|(j, _)| j).collect())
            .collect()
    }
}

/// A matrix over `Q` (or residues of a prime field), row-major, entries as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<String>,
}

impl FieldMatrix {
    fn from_matrix<P: Pid>(pid: &P, m: &Matrix<P::Elem>) -> Self {
        let data = (0..m.rows())
            .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
            .map(|(i, j)| pid.to_rational(m.get(i, j)).to_string())
            .collect();
        FieldMatrix { rows: m.rows(), cols: m.cols(), data }
    }

    pub fn get(&self, i: usize, j: usize) -> BigRational {
        self.data[i * self.cols + j].parse().expect("matrix entries are rationals")
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x == "0")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageCell {
    pub p: usize,
    pub q: usize,
    pub dim: usize,
}

/// `d^r: E^r_{p,q} -> E^r_{p-r, q+r-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Differential {
    pub r: usize,
    pub p: usize,
    pub q: usize,
    pub rank: usize,
    pub matrix: FieldMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Page {
    pub page: usize,
    /// Nonzero cells only.
    pub cells: Vec<PageCell>,
    /// Differentials between nonzero cells.
    pub differentials: Vec<Differential>,
}

/// Graded dimensions of the induced filtration on `H_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbutmentRow {
    pub degree: usize,
    /// `dim F_p H / F_{p-1} H` for `p = 0..=max_p`.
    pub dims_by_p: Vec<usize>,
    pub homology: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageLaws {
    pub d_squared_zero: bool,
    /// `dim E^{r+1} = dim ker d^r - dim im d^r` at every cell.
    pub next_page_is_homology: bool,
    /// No cell with `q < 0`.
    pub first_quadrant: bool,
    /// `E^infinity` matches the graded filtered homology and the total homology.
    pub abutment: bool,
}

impl PageLaws {
    pub fn pass(&self) -> bool {
        self.d_squared_zero && self.next_page_is_homology && self.first_quadrant && self.abutment
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralSequence {
    pub schema_version: u32,
    pub ring: Ring,
    /// Largest filtration degree; pages run from 1 to `max_p + 1 = r_max`.
    pub max_p: usize,
    /// Ranks of the filtered reduction the pages were computed on.
    pub reduced_ranks: Vec<usize>,
    pub pages: Vec<Page>,
    pub abutment: Vec<AbutmentRow>,
    pub laws: PageLaws,
}

impl SpectralSequence {
    pub fn page(&self, r: usize) -> Option<&Page> {
        self.pages.iter().find(|pg| pg.page == r)
    }

    pub fn dim(&self, r: usize, p: usize, q: usize) -> usize {
        self.page(r).and_then(|pg| pg.cells.iter().find(|c| c.p == p && c.q == q)).map_or(0, |c| c.dim)
    }

    pub fn last_page(&self) -> usize {
        self.pages.last().map_or(1, |pg| pg.page)
    }

    /// `dim E^infinity_{p,q}`.
    pub fn e_infinity(&self, p: usize, q: usize) -> usize {
        self.dim(self.last_page(), p, q)
    }

    /// Largest `q` with a nonzero cell on page 1.
    pub fn max_q(&self) -> usize {
        self.page(1).map_or(0, |pg| pg.cells.iter().map(|c| c.q).max().unwrap_or(0))
    }

    /// Differential `d^r` out of `(p, q)`, when both ends are nonzero.
    pub fn differential(&self, r: usize, p: usize, q: usize) -> Option<&Differential> {
        self.page(r)?.differentials.iter().find(|d| d.p == p && d.q == q)
    }

    /// Whether every `d^r` with `r >= from` vanishes.
    pub fn collapses_at(&self, from: usize) -> bool {
        self.pages.iter().filter(|pg| pg.page >= from).all(|pg| pg.differentials.iter().all(|d| d.rank == 0))
    }

    pub fn pass(&self) -> bool {
        self.laws.pass()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Dispatch on a field ring.
macro_rules! with_field {
    ($ring:expr, |$pid:ident| $body:expr) => {
        match $ring {
            Ring::Rationals => {
                let $pid = Rationals;
                $body
            }
            Ring::PrimeField(q) => {
                let $pid = PrimeField::new(q);
                $body
            }
            Ring::Integers => Err(Error::NotAField("Z (spectral sequence pages need a field)".into())),
        }
    };
}

/// One cell `E^r_p` in one chain degree: representatives and a solver for
/// coordinates modulo the denominator.
struct Cell<E> {
    reps: Vec<SparseVec<E>>,
    solver: Submodule<E>,
}

/// The filtered complex reduced over `P` with the maps back to the original.
struct Engine<P: Pid> {
    pid: P,
    stages: Vec<Reduced<P::Elem>>,
    ranks: Vec<usize>,
    boundaries: Vec<Vec<SparseVec<P::Elem>>>,
    degrees: Vec<Vec<usize>>,
    max_p: usize,
}

/// All pages of one spectral sequence, in the engine's field.
struct Pages<P: Pid> {
    engine: Engine<P>,
    /// `cells[r - 1][p][n]`.
    cells: Vec<Vec<Vec<Cell<P::Elem>>>>,
    /// `diffs[r - 1][p][n]`: matrix of `d^r` out of `E^r_p` in chain degree `n`.
    diffs: Vec<Vec<Vec<Option<Matrix<P::Elem>>>>>,
}

impl<P: Pid> Engine<P> {
    fn new(pid: P, f: &FilteredChainComplex) -> Self {
        // Unit pairs over Z stay units in every field; a second pass over the
        // field cancels the remaining invertible pivots.
        let over_z = reduce(&Integers, f.chain.ranks(), f.chain.boundaries(), Some(&f.degrees));
        let converted = over_z.convert(&pid, |x| pid.from_int(x));
        let degrees = converted.degrees.clone().expect("filtered reduction keeps degrees");
        let over_field = reduce(&pid, &converted.ranks, &converted.boundaries, Some(&degrees));
        let degrees = over_field.degrees.clone().expect("filtered reduction keeps degrees");
        Engine {
            ranks: over_field.ranks.clone(),
            boundaries: over_field.boundaries.clone(),
            degrees,
            max_p: f.max_degree(),
            stages: vec![converted, over_field],
            pid,
        }
    }

    fn len(&self) -> usize {
        self.ranks.len()
    }

    fn project(&self, n: usize, v: &SparseVec<P::Elem>) -> SparseVec<P::Elem> {
        self.stages.iter().fold(v.clone(), |v, s| s.project(&self.pid, n, &v))
    }

    fn include(&self, n: usize, v: &SparseVec<P::Elem>) -> SparseVec<P::Elem> {
        self.stages.iter().rev().fold(v.clone(), |v, s| s.include(&self.pid, n, &v))
    }

    fn boundary(&self, n: usize, v: &SparseVec<P::Elem>) -> SparseVec<P::Elem> {
        if n == 0 || n >= self.len() {
            return Vec::new();
        }
        apply_columns(&self.pid, &self.boundaries[n], v)
    }

    /// Basis of `Z^r_p` in chain degree `n` (`r = None`: cycles in `F_p`).
    fn z(&self, r: Option<usize>, p: i64, n: usize) -> Vec<SparseVec<P::Elem>> {
        if p < 0 || n >= self.len() {
            return Vec::new();
        }
        let els: Vec<usize> = (0..self.ranks[n]).filter(|&j| self.degrees[n][j] as i64 <= p).collect();
        let floor = r.map_or(i64::MIN, |r| p - r as i64);
        let cols = els
            .iter()
            .map(|&j| {
                if n == 0 {
                    return Vec::new();
                }
                self.boundaries[n][j].iter().filter(|(i, _)| self.degrees[n - 1][*i] as i64 > floor).cloned().collect()
            })
            .collect();
        kernel(&self.pid, cols).into_iter().map(|k| k.into_iter().map(|(pos, x)| (els[pos], x)).collect()).collect()
    }

    fn cell(&self, r: usize, p: usize, n: usize) -> Cell<P::Elem> {
        let p = p as i64;
        let z = self.z(Some(r), p, n);
        let mut denom = self.z(Some(r - 1), p - 1, n);
        for y in self.z(Some(r - 1), p + r as i64 - 1, n + 1) {
            let b = self.boundary(n + 1, &y);
            if !b.is_empty() {
                denom.push(b);
            }
        }
        let k = denom.len();
        let mut cols = denom.clone();
        cols.extend(z.iter().cloned());
        let red = reduce_columns(&self.pid, cols, false);
        let reps: Vec<SparseVec<P::Elem>> =
            z.into_iter().enumerate().filter(|(j, _)| !red.reduced[k + j].is_empty()).map(|(_, v)| v).collect();
        let mut gens = reps.clone();
        gens.extend(denom);
        Cell { solver: Submodule::new(&self.pid, gens), reps }
    }

    /// Dimension of `F_p H_n` (image of the homology of `F_p`).
    fn filtered_homology(&self, p: i64, n: usize) -> usize {
        let mut bounds: Vec<SparseVec<P::Elem>> = Vec::new();
        if n + 1 < self.len() {
            for j in 0..self.ranks[n + 1] {
                let b = self.boundary(n + 1, &vec![(j, self.pid.one())]);
                if !b.is_empty() {
                    bounds.push(b);
                }
            }
        }
        let b = Submodule::new(&self.pid, bounds.clone()).rank();
        let mut gens = bounds;
        gens.extend(self.z(None, p, n));
        Submodule::new(&self.pid, gens).rank() - b
    }
}

impl<E> Cell<E> {
    fn dim(&self) -> usize {
        self.reps.len()
    }
}

fn coordinates<P: Pid>(pid: &P, cell: &Cell<P::Elem>, v: &SparseVec<P::Elem>) -> Option<Vec<P::Elem>> {
    let c = cell.solver.coordinates(pid, v)?;
    let mut out = vec![pid.zero(); cell.dim()];
    for (i, x) in c {
        if i < out.len() {
            out[i] = x;
        }
    }
    Some(out)
}

fn rank_of<P: Pid>(pid: &P, m: &Matrix<P::Elem>) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        0
    } else {
        smith_normal_form_in(pid, m).rank
    }
}

impl<P: Pid> Pages<P> {
    fn compute(pid: P, f: &FilteredChainComplex) -> Result<Self> {
        let engine = Engine::new(pid, f);
        let r_max = engine.max_p + 1;
        let mut cells = Vec::with_capacity(r_max);
        let mut diffs = Vec::with_capacity(r_max);
        for r in 1..=r_max {
            let page: Vec<Vec<Cell<P::Elem>>> =
                (0..=engine.max_p).map(|p| (0..engine.len()).map(|n| engine.cell(r, p, n)).collect()).collect();
            let mut d_page = Vec::with_capacity(page.len());
            for p in 0..=engine.max_p {
                let mut row = Vec::with_capacity(engine.len());
                for n in 0..engine.len() {
                    if p < r || n == 0 {
                        row.push(None);
                        continue;
                    }
                    let target = &page[p - r][n - 1];
                    let mut m = Matrix::zeros_in(&engine.pid, target.dim(), page[p][n].dim());
                    for (j, x) in page[p][n].reps.iter().enumerate() {
                        let c = coordinates(&engine.pid, target, &engine.boundary(n, x)).ok_or_else(|| {
                            Error::Other(format!("d^{r} of a class in E_{p} (degree {n}) left Z^{r}_{}", p - r))
                        })?;
                        for (i, v) in c.into_iter().enumerate() {
                            m.set(i, j, v);
                        }
                    }
                    row.push(Some(m));
                }
                d_page.push(row);
            }
            cells.push(page);
            diffs.push(d_page);
        }
        Ok(Pages { engine, cells, diffs })
    }

    fn r_max(&self) -> usize {
        self.cells.len()
    }

    fn dim(&self, r: usize, p: i64, n: i64) -> usize {
        if p < 0 || n < 0 || p as usize > self.engine.max_p || n as usize >= self.engine.len() {
            return 0;
        }
        self.cells[r - 1][p as usize][n as usize].dim()
    }

    fn diff(&self, r: usize, p: i64, n: i64) -> Option<&Matrix<P::Elem>> {
        if p < 0 || n < 0 || p as usize > self.engine.max_p || n as usize >= self.engine.len() {
            return None;
        }
        self.diffs[r - 1][p as usize][n as usize].as_ref()
    }

    fn report(&self, ring: Ring) -> SpectralSequence {
        let pid = &self.engine.pid;
        let (max_p, len) = (self.engine.max_p, self.engine.len());
        let mut laws = PageLaws { d_squared_zero: true, next_page_is_homology: true, first_quadrant: true, abutment: true };
        let mut pages = Vec::new();
        for r in 1..=self.r_max() {
            let mut cells = Vec::new();
            let mut differentials = Vec::new();
            for p in 0..=max_p {
                for n in 0..len {
                    let dim = self.dim(r, p as i64, n as i64);
                    if dim == 0 {
                        continue;
                    }
                    if n < p {
                        laws.first_quadrant = false;
                        continue;
                    }
                    cells.push(PageCell { p, q: n - p, dim });
                    if let Some(m) = self.diff(r, p as i64, n as i64) {
                        if m.rows() > 0 {
                            differentials.push(Differential {
                                r,
                                p,
                                q: n - p,
                                rank: rank_of(pid, m),
                                matrix: FieldMatrix::from_matrix(pid, m),
                            });
                        }
                    }
                }
            }
            // d o d = 0 and the next page.
            for p in 0..=max_p as i64 {
                for n in 0..len as i64 {
                    let r_i = r as i64;
                    if let (Some(a), Some(b)) = (self.diff(r, p, n), self.diff(r, p - r_i, n - 1)) {
                        if !b.mul_in(pid, a).is_zero_in(pid) {
                            laws.d_squared_zero = false;
                        }
                    }
                    if r < self.r_max() {
                        let out = self.diff(r, p, n).map_or(0, |m| rank_of(pid, m));
                        let inc = self.diff(r, p + r_i, n + 1).map_or(0, |m| rank_of(pid, m));
                        if self.dim(r + 1, p, n) + out + inc != self.dim(r, p, n) {
                            laws.next_page_is_homology = false;
                        }
                    }
                }
            }
            pages.push(Page { page: r, cells, differentials });
        }
        let mut abutment = Vec::new();
        for n in 0..len {
            let mut dims_by_p = Vec::with_capacity(max_p + 1);
            let mut prev = 0;
            for p in 0..=max_p {
                let cur = self.engine.filtered_homology(p as i64, n);
                dims_by_p.push(cur - prev);
                prev = cur;
            }
            let homology = prev;
            for (p, &d) in dims_by_p.iter().enumerate() {
                if d != self.dim(self.r_max(), p as i64, n as i64) {
                    laws.abutment = false;
                }
            }
            abutment.push(AbutmentRow { degree: n, dims_by_p, homology });
        }
        SpectralSequence {
            schema_version: SCHEMA_VERSION,
            ring,
            max_p,
            reduced_ranks: self.engine.ranks.clone(),
            pages,
            abutment,
            laws,
        }
    }
}

/// The spectral sequence of a filtered complex over its (field) ring.
pub fn compute_pages(f: &FilteredChainComplex) -> Result<SpectralSequence> {
    let ring = f.ring();
    with_field!(ring, |pid| Ok(Pages::compute(pid, f)?.report(ring)))
}

/// One comparison of `d^1` with the connecting map of a triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct D1Row {
    pub p: usize,
    pub q: usize,
    /// `dim E^1_{p,q}` and `dim H_{p+q}(F_p, F_{p-1})`.
    pub source_dims: (usize, usize),
    /// `dim E^1_{p-1,q}` and `dim H_{p+q-1}(F_{p-1}, F_{p-2})`.
    pub target_dims: (usize, usize),
    /// `d^1` in the page bases.
    pub d1: FieldMatrix,
    /// The connecting map in the bases of the triple's homology groups.
    pub connecting: FieldMatrix,
    /// `connecting * P = Q * d1` for the change-of-basis matrices `P`, `Q`
    /// from page classes to the triple's bases.
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct D1Report {
    pub rows: Vec<D1Row>,
    pub pass: bool,
}

fn change_of_basis<P: Pid>(
    pid: &P,
    basis: &crate::algebra::exact::HomologyBasis<P::Elem>,
    reps: &[SparseVec<P::Elem>],
) -> Option<Matrix<P::Elem>> {
    let mut m = Matrix::zeros_in(pid, basis.len(), reps.len());
    for (j, x) in reps.iter().enumerate() {
        for (i, v) in basis.coordinates(pid, x)?.into_iter().enumerate() {
            m.set(i, j, v);
        }
    }
    Some(m)
}

/// Compare `d^1` with the connecting homomorphism of `(F_p, F_{p-1}, F_{p-2})`
/// computed by the exact-algebra routines on the same reduced complex.
pub fn d1_cross_check(f: &FilteredChainComplex) -> Result<D1Report> {
    with_field!(f.ring(), |pid| {
        let pages = Pages::compute(pid, f)?;
        let e = &pages.engine;
        let pid = &e.pid;
        let amb = Ambient { pid, ranks: &e.ranks, boundaries: &e.boundaries, rational: false };
        let span = |s: i64| -> Span<_> {
            Span::Basis(
                e.degrees
                    .iter()
                    .map(|ds| ds.iter().enumerate().filter(|(_, &x)| (x as i64) <= s).map(|(j, _)| j).collect())
                    .collect(),
            )
        };
        let mut rows = Vec::new();
        for p in 1..=e.max_p {
            let (s, t, u) = (span(p as i64), span(p as i64 - 1), span(p as i64 - 2));
            for n in 1..e.len() {
                let src = &pages.cells[0][p][n];
                let tgt = &pages.cells[0][p - 1][n - 1];
                let hs = subquotient_basis(&amb, &s, &t, n);
                let ht = subquotient_basis(&amb, &t, &u, n - 1);
                if src.dim() == 0 && tgt.dim() == 0 && hs.is_empty() && ht.is_empty() {
                    continue;
                }
                let k = connecting_map(&amb, &hs, &ht)?;
                let d1 = pages.diffs[0][p][n].clone().expect("p >= 1 and n >= 1");
                let pass = match (change_of_basis(pid, &hs, &src.reps), change_of_basis(pid, &ht, &tgt.reps)) {
                    (Some(cp), Some(cq)) => {
                        hs.len() == src.dim()
                            && ht.len() == tgt.dim()
                            && rank_of(pid, &cp) == src.dim()
                            && rank_of(pid, &cq) == tgt.dim()
                            && k.matrix.mul_in(pid, &cp) == cq.mul_in(pid, &d1)
                    }
                    _ => false,
                };
                rows.push(D1Row {
                    p,
                    q: n - p,
                    source_dims: (src.dim(), hs.len()),
                    target_dims: (tgt.dim(), ht.len()),
                    d1: FieldMatrix::from_matrix(pid, &d1),
                    connecting: FieldMatrix::from_matrix(pid, &k.matrix),
                    pass,
                });
            }
        }
        let pass = rows.iter().all(|r| r.pass);
        Ok(D1Report { rows, pass })
    })
}

/// The map induced on one cell of one page.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellMap {
    pub r: usize,
    pub p: usize,
    pub q: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub matrix: FieldMatrix,
}

impl CellMap {
    pub fn is_isomorphism(&self) -> bool {
        self.source_dim == self.target_dim && self.rank == self.source_dim
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralSequenceMap {
    pub source: SpectralSequence,
    pub target: SpectralSequence,
    /// Maps on cells where source or target is nonzero, all pages.
    pub cells: Vec<CellMap>,
    /// `f d^r = d^r f` on every page.
    pub commutes_with_differentials: bool,
}

impl SpectralSequenceMap {
    pub fn cell(&self, r: usize, p: usize, q: usize) -> Option<&CellMap> {
        self.cells.iter().find(|c| c.r == r && c.p == p && c.q == q)
    }
}

/// Map of spectral sequences induced by a filtration-preserving chain map
/// (columns in the original bases of `source` and `target`).
pub fn spectral_sequence_map(
    source: &FilteredChainComplex,
    target: &FilteredChainComplex,
    f: &ChainMap,
) -> Result<SpectralSequenceMap> {
    if source.ring() != target.ring() {
        return Err(Error::InvalidRing("source and target rings differ".into()));
    }
    for (n, cols) in f.columns.iter().enumerate() {
        for (j, col) in cols.iter().enumerate() {
            let s = source.degrees[n][j];
            if col.iter().any(|(i, _)| target.degrees.get(n).and_then(|t| t.get(*i)).is_none_or(|&t| t > s)) {
                return Err(Error::Filtration(format!("map raises the filtration of element {j} in degree {n}")));
            }
        }
    }
    let ring = source.ring();
    with_field!(ring, |pid| {
        let a = Pages::compute(pid.clone(), source)?;
        let b = Pages::compute(pid.clone(), target)?;
        let conv = |v: &SparseVec<BigInt>| -> SparseVec<_> {
            v.iter().map(|(i, x)| (*i, pid.from_int(x))).filter(|(_, x)| !pid.is_zero(x)).collect()
        };
        let columns: Vec<Vec<SparseVec<_>>> = f.columns.iter().map(|c| c.iter().map(conv).collect()).collect();
        let apply = |n: usize, x: &SparseVec<_>| -> SparseVec<_> {
            let orig = a.engine.include(n, x);
            let img = columns.get(n).map_or_else(Vec::new, |c| apply_columns(&pid, c, &orig));
            b.engine.project(n, &img)
        };
        let max_p = a.engine.max_p.max(b.engine.max_p);
        let r_max = a.r_max().min(b.r_max());
        let len = a.engine.len().min(b.engine.len());
        let mut cells = Vec::new();
        let mut maps: Vec<Vec<Vec<Option<Matrix<_>>>>> = Vec::new();
        for r in 1..=r_max {
            let mut page_maps = Vec::new();
            for p in 0..=max_p {
                let mut row = Vec::new();
                for n in 0..len {
                    let (ds, dt) = (a.dim(r, p as i64, n as i64), b.dim(r, p as i64, n as i64));
                    let mut m = Matrix::zeros_in(&pid, dt, ds);
                    if ds > 0 && dt > 0 {
                        let tc = &b.cells[r - 1][p][n];
                        for (j, x) in a.cells[r - 1][p][n].reps.iter().enumerate() {
                            let c = coordinates(&pid, tc, &apply(n, x))
                                .ok_or_else(|| Error::Filtration(format!("image of a class of E^{r}_{p} is not in Z^{r}_{p}")))?;
                            for (i, v) in c.into_iter().enumerate() {
                                m.set(i, j, v);
                            }
                        }
                    }
                    if ds > 0 || dt > 0 {
                        cells.push(CellMap {
                        r,
                        p,
                        q: n.saturating_sub(p),
                        source_dim: ds,
                        target_dim: dt,
                        rank: rank_of(&pid, &m),
                        matrix: FieldMatrix::from_matrix(&pid, &m),
                    });
                    }
                    row.push(Some(m));
                }
                page_maps.push(row);
            }
            maps.push(page_maps);
        }
        // f d = d f wherever all four matrices exist.
        let mut commutes = true;
        for r in 1..=r_max {
            for p in r..=max_p {
                for n in 1..len {
                    let get = |v: &Vec<Vec<Vec<Option<Matrix<_>>>>>, p: usize, n: usize| v[r - 1][p][n].clone();
                    let (Some(fs), Some(ft)) = (get(&maps, p, n), get(&maps, p - r, n - 1)) else { continue };
                    let (Some(da), Some(db)) = (a.diff(r, p as i64, n as i64), b.diff(r, p as i64, n as i64)) else { continue };
                    if ft.mul_in(&pid, da) != db.mul_in(&pid, &fs) {
                        commutes = false;
                    }
                }
            }
        }
        Ok(SpectralSequenceMap { source: a.report(ring), target: b.report(ring), cells, commutes_with_differentials: commutes })
    })
}
