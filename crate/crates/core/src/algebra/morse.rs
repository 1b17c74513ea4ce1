//! Elimination of unit pairs from a (filtered) chain complex.
//!
//! Removing a basis pair `(sigma, tau)` with `<d sigma, tau>` a unit and
//! correcting the remaining boundary is a chain homotopy equivalence. When
//! both cells carry the same filtration degree it is a filtered equivalence,
//! so every spectral sequence page from `E^1` on is preserved. The projection
//! and inclusion maps of the equivalence are recorded so that chains and
//! chain maps can be transported to and from the reduced complex.

use std::collections::{BTreeMap, BTreeSet};

use super::matrix::{sparse_from_entries, SparseVec};
use super::ring::Pid;

#[derive(Clone, Debug)]
struct Elimination<E> {
    /// Degree of `sigma`; `tau` lives in `degree - 1`.
    degree: usize,
    sigma: usize,
    tau: usize,
    u_inv: E,
    /// Entries of row `tau` of the boundary at elimination time, `sigma` excluded.
    row_tau: Vec<(usize, E)>,
    /// Boundary of `sigma` at elimination time, `tau` excluded.
    col_sigma: Vec<(usize, E)>,
}

/// Reduced complex plus the data of the equivalence with the original.
#[derive(Clone, Debug)]
pub struct Reduced<E> {
    pub ranks: Vec<usize>,
    /// `boundaries[d][j]`: boundary of residual cell `j` of degree `d`.
    pub boundaries: Vec<Vec<SparseVec<E>>>,
    /// Filtration degree of each residual cell, if a filtration was given.
    pub degrees: Option<Vec<Vec<usize>>>,
    /// Residual index -> original index.
    pub survivors: Vec<Vec<usize>>,
    residual_of: Vec<Vec<Option<usize>>>,
    log: Vec<Elimination<E>>,
}

/// Reduce `boundaries` (columns of `d_d: C_d -> C_{d-1}`, `boundaries[0]` empty
/// columns) by eliminating unit pairs. With `degrees`, only pairs of equal
/// filtration degree are eliminated.
pub fn reduce<P: Pid>(
    pid: &P,
    ranks: &[usize],
    boundaries: &[Vec<SparseVec<P::Elem>>],
    degrees: Option<&[Vec<usize>]>,
) -> Reduced<P::Elem> {
    let top = ranks.len();
    let mut cols: Vec<Vec<BTreeMap<usize, P::Elem>>> = Vec::with_capacity(top);
    let mut rows: Vec<Vec<BTreeSet<usize>>> = Vec::with_capacity(top);
    for d in 0..top {
        let mut cd = Vec::with_capacity(ranks[d]);
        let mut rd = vec![BTreeSet::new(); if d == 0 { 0 } else { ranks[d - 1] }];
        for (j, col) in boundaries[d].iter().enumerate() {
            let mut m = BTreeMap::new();
            for (i, v) in col {
                if !pid.is_zero(v) {
                    m.insert(*i, v.clone());
                    rd[*i].insert(j);
                }
            }
            cd.push(m);
        }
        cols.push(cd);
        rows.push(rd);
    }
    let mut alive: Vec<Vec<bool>> = ranks.iter().map(|&n| vec![true; n]).collect();
    let mut log = Vec::new();

    loop {
        let mut progress = false;
        for d in (1..top).rev() {
            for sigma in 0..ranks[d] {
                if !alive[d][sigma] {
                    continue;
                }
                let mut best: Option<(usize, usize)> = None;
                for (tau, v) in &cols[d][sigma] {
                    if !pid.is_unit(v) {
                        continue;
                    }
                    if let Some(deg) = degrees {
                        if deg[d][sigma] != deg[d - 1][*tau] {
                            continue;
                        }
                    }
                    let weight = rows[d][*tau].len();
                    if best.is_none_or(|(w, _)| weight < w) {
                        best = Some((weight, *tau));
                    }
                }
                let Some((_, tau)) = best else { continue };
                progress = true;
                let e = eliminate(pid, &mut cols, &mut rows, &mut alive, d, sigma, tau);
                log.push(e);
            }
        }
        if !progress {
            break;
        }
    }

    let survivors: Vec<Vec<usize>> =
        alive.iter().map(|a| a.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| i).collect()).collect();
    let mut residual_of: Vec<Vec<Option<usize>>> = ranks.iter().map(|&n| vec![None; n]).collect();
    for (d, s) in survivors.iter().enumerate() {
        for (k, &i) in s.iter().enumerate() {
            residual_of[d][i] = Some(k);
        }
    }
    let mut out_boundaries = Vec::with_capacity(top);
    for d in 0..top {
        let mut bd = Vec::with_capacity(survivors[d].len());
        for &j in &survivors[d] {
            let col: SparseVec<P::Elem> = cols[d][j]
                .iter()
                .map(|(i, v)| (residual_of[d - 1][*i].expect("boundary of a survivor is alive"), v.clone()))
                .collect();
            bd.push(col);
        }
        out_boundaries.push(bd);
    }
    let out_degrees = degrees.map(|deg| {
        survivors.iter().enumerate().map(|(d, s)| s.iter().map(|&i| deg[d][i]).collect()).collect()
    });
    Reduced {
        ranks: survivors.iter().map(Vec::len).collect(),
        boundaries: out_boundaries,
        degrees: out_degrees,
        survivors,
        residual_of,
        log,
    }
}

fn eliminate<P: Pid>(
    pid: &P,
    cols: &mut [Vec<BTreeMap<usize, P::Elem>>],
    rows: &mut [Vec<BTreeSet<usize>>],
    alive: &mut [Vec<bool>],
    d: usize,
    sigma: usize,
    tau: usize,
) -> Elimination<P::Elem> {
    let u = cols[d][sigma][&tau].clone();
    let u_inv = pid.div_exact(&pid.one(), &u).expect("unit pivot");
    let col_sigma: Vec<(usize, P::Elem)> =
        cols[d][sigma].iter().filter(|(i, _)| **i != tau).map(|(i, v)| (*i, v.clone())).collect();
    let others: Vec<usize> = rows[d][tau].iter().copied().filter(|&x| x != sigma).collect();
    let mut row_tau = Vec::with_capacity(others.len());
    for x in others {
        let a = cols[d][x][&tau].clone();
        row_tau.push((x, a.clone()));
        let f = pid.neg(&pid.mul(&a, &u_inv));
        // col_x += f * col_sigma (including tau, which cancels)
        let sigma_col: Vec<(usize, P::Elem)> = cols[d][sigma].iter().map(|(i, v)| (*i, v.clone())).collect();
        for (i, v) in sigma_col {
            let delta = pid.mul(&f, &v);
            let entry = cols[d][x].entry(i).or_insert_with(|| pid.zero());
            *entry = pid.add(entry, &delta);
            if pid.is_zero(entry) {
                cols[d][x].remove(&i);
                rows[d][i].remove(&x);
            } else {
                rows[d][i].insert(x);
            }
        }
    }
    // Drop sigma's column.
    let sigma_rows: Vec<usize> = cols[d][sigma].keys().copied().collect();
    for i in sigma_rows {
        rows[d][i].remove(&sigma);
    }
    cols[d][sigma].clear();
    alive[d][sigma] = false;
    // Drop tau: its column in d_{d-1}.
    if d >= 1 {
        let tau_rows: Vec<usize> = cols[d - 1][tau].keys().copied().collect();
        if d >= 2 {
            for i in tau_rows {
                rows[d - 1][i].remove(&tau);
            }
        }
        cols[d - 1][tau].clear();
    }
    alive[d - 1][tau] = false;
    // Drop sigma's row in d_{d+1}.
    if d + 1 < cols.len() {
        let cofaces: Vec<usize> = rows[d + 1][sigma].iter().copied().collect();
        for y in cofaces {
            cols[d + 1][y].remove(&sigma);
        }
        rows[d + 1][sigma].clear();
    }
    Elimination { degree: d, sigma, tau, u_inv, row_tau, col_sigma }
}

impl<E: Clone + PartialEq + std::fmt::Debug> Reduced<E> {
    /// Image of an original chain of degree `degree` under the projection to
    /// the reduced complex (residual indices).
    pub fn project<P: Pid<Elem = E>>(&self, pid: &P, degree: usize, chain: &SparseVec<E>) -> SparseVec<E> {
        let mut v: BTreeMap<usize, E> = chain.iter().cloned().collect();
        for e in &self.log {
            if e.degree == degree + 1 {
                if let Some(y) = v.remove(&e.tau) {
                    let f = pid.neg(&pid.mul(&y, &e.u_inv));
                    for (i, c) in &e.col_sigma {
                        let delta = pid.mul(&f, c);
                        let entry = v.entry(*i).or_insert_with(|| pid.zero());
                        *entry = pid.add(entry, &delta);
                        if pid.is_zero(entry) {
                            v.remove(i);
                        }
                    }
                }
            } else if e.degree == degree {
                v.remove(&e.sigma);
            }
        }
        let entries = v
            .into_iter()
            .map(|(i, x)| (self.residual_of[degree][i].expect("projection lands on survivors"), x))
            .collect();
        sparse_from_entries(pid, entries)
    }

    /// Image of a residual chain under the inclusion into the original complex.
    pub fn include<P: Pid<Elem = E>>(&self, pid: &P, degree: usize, chain: &SparseVec<E>) -> SparseVec<E> {
        let mut v: BTreeMap<usize, E> = chain.iter().map(|(k, x)| (self.survivors[degree][*k], x.clone())).collect();
        for e in self.log.iter().rev() {
            if e.degree != degree {
                continue;
            }
            let mut b = pid.zero();
            for (x, a) in &e.row_tau {
                if let Some(c) = v.get(x) {
                    b = pid.add(&b, &pid.mul(c, a));
                }
            }
            if !pid.is_zero(&b) {
                v.insert(e.sigma, pid.neg(&pid.mul(&e.u_inv, &b)));
            }
        }
        sparse_from_entries(pid, v.into_iter().collect())
    }

    /// The same equivalence over another ring, through a ring map that keeps
    /// the eliminated pivots units.
    pub fn convert<Q: Pid>(&self, pid: &Q, f: impl Fn(&E) -> Q::Elem) -> Reduced<Q::Elem> {
        let conv = |v: &SparseVec<E>| -> SparseVec<Q::Elem> {
            v.iter().map(|(i, x)| (*i, f(x))).filter(|(_, x)| !pid.is_zero(x)).collect()
        };
        Reduced {
            ranks: self.ranks.clone(),
            boundaries: self.boundaries.iter().map(|l| l.iter().map(conv).collect()).collect(),
            degrees: self.degrees.clone(),
            survivors: self.survivors.clone(),
            residual_of: self.residual_of.clone(),
            log: self
                .log
                .iter()
                .map(|e| Elimination {
                    degree: e.degree,
                    sigma: e.sigma,
                    tau: e.tau,
                    u_inv: f(&e.u_inv),
                    row_tau: conv(&e.row_tau),
                    col_sigma: conv(&e.col_sigma),
                })
                .collect(),
        }
    }

    pub fn eliminated_pairs(&self) -> usize {
        self.log.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::Integers;
    use num_bigint::BigInt;

    fn c(entries: &[(usize, i64)]) -> SparseVec<BigInt> {
        entries.iter().map(|&(i, v)| (i, BigInt::from(v))).collect()
    }

    /// Boundary of the 2-simplex: vertices 0,1,2; edges 01,02,12; one face.
    fn triangle() -> (Vec<usize>, Vec<Vec<SparseVec<BigInt>>>) {
        let d0 = vec![vec![]; 3];
        let d1 = vec![c(&[(0, -1), (1, 1)]), c(&[(0, -1), (2, 1)]), c(&[(1, -1), (2, 1)])];
        let d2 = vec![c(&[(0, 1), (1, -1), (2, 1)])];
        (vec![3, 3, 1], vec![d0, d1, d2])
    }

    #[test]
    fn disk_reduces_to_a_point() {
        let (ranks, b) = triangle();
        let r = reduce(&Integers, &ranks, &b, None);
        assert_eq!(r.ranks, vec![1, 0, 0]);
    }

    #[test]
    fn inclusion_and_projection_are_chain_maps() {
        let (ranks, b) = triangle();
        // Circle only: drop the face.
        let ranks_c = vec![3, 3];
        let bc = vec![b[0].clone(), b[1].clone()];
        let z = Integers;
        let r = reduce(&z, &ranks_c, &bc, None);
        assert_eq!(r.ranks, vec![1, 1]);
        // The residual 1-cycle includes to a generator of the circle's cycles.
        let gen = r.include(&z, 1, &c(&[(0, 1)]));
        let bd = crate::algebra::matrix::apply_columns(&z, &bc[1], &gen);
        assert!(bd.is_empty());
        assert_eq!(r.project(&z, 1, &gen), c(&[(0, 1)]));
        let _ = ranks;
    }
}
