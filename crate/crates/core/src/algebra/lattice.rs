//! Sparse column reduction, kernels and submodule membership.
//!
//! All operations use unimodular column operations, so over the integers the
//! kernels returned are saturated lattice bases, and over fields they are
//! ordinary vector-space bases.

use std::collections::HashMap;

use super::matrix::{axpy, lin_comb, SparseVec};
use super::ring::Pid;

/// Result of reducing a list of columns to distinct lowest rows.
#[derive(Clone, Debug)]
pub struct ColumnReduction<E> {
    /// Reduced columns; each is zero or has a lowest row unique among them.
    pub reduced: Vec<SparseVec<E>>,
    /// `reduced[j] = sum_k transform[j][k] * original[k]` when tracked.
    pub transform: Option<Vec<SparseVec<E>>>,
    /// Lowest row -> column holding it.
    pub pivot_of_row: HashMap<usize, usize>,
}

impl<E> ColumnReduction<E> {
    pub fn rank(&self) -> usize {
        self.pivot_of_row.len()
    }

    pub fn zero_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.reduced.iter().enumerate().filter(|(_, c)| c.is_empty()).map(|(j, _)| j)
    }
}

fn low<E>(c: &SparseVec<E>) -> Option<usize> {
    c.last().map(|(i, _)| *i)
}

/// Left-to-right reduction by lowest row.
///
/// Column `j` is only ever combined with columns `< j`, so the transform of a
/// zero column is supported on indices `<= j`.
pub fn reduce_columns<P: Pid>(pid: &P, columns: Vec<SparseVec<P::Elem>>, track: bool) -> ColumnReduction<P::Elem> {
    let n = columns.len();
    let mut reduced = columns;
    let mut transform: Option<Vec<SparseVec<P::Elem>>> = track.then(|| (0..n).map(|j| vec![(j, pid.one())]).collect());
    let mut pivot_of_row: HashMap<usize, usize> = HashMap::new();

    for j in 0..n {
        while let Some(r) = low(&reduced[j]) {
            let Some(&i) = pivot_of_row.get(&r) else {
                pivot_of_row.insert(r, j);
                break;
            };
            let a = reduced[j].last().expect("nonempty").1.clone();
            let b = reduced[i].last().expect("nonempty").1.clone();
            if let Some(q) = pid.div_exact(&a, &b) {
                let mq = pid.neg(&q);
                reduced[j] = axpy(pid, &reduced[j], &mq, &reduced[i]);
                if let Some(t) = transform.as_mut() {
                    t[j] = axpy(pid, &t[j], &mq, &t[i]);
                }
            } else {
                // Unimodular 2x2 step: column i takes the gcd as its pivot.
                let (g, s, tt) = pid.xgcd(&b, &a);
                let b_g = pid.div_exact(&b, &g).expect("gcd divides");
                let a_g = pid.div_exact(&a, &g).expect("gcd divides");
                let new_i = lin_comb(pid, &s, &reduced[i], &tt, &reduced[j]);
                let new_j = lin_comb(pid, &b_g, &reduced[j], &pid.neg(&a_g), &reduced[i]);
                reduced[i] = new_i;
                reduced[j] = new_j;
                if let Some(t) = transform.as_mut() {
                    let ti = lin_comb(pid, &s, &t[i], &tt, &t[j]);
                    let tj = lin_comb(pid, &b_g, &t[j], &pid.neg(&a_g), &t[i]);
                    t[i] = ti;
                    t[j] = tj;
                }
            }
        }
    }
    ColumnReduction { reduced, transform, pivot_of_row }
}

/// Basis of the kernel of the linear map whose columns are given.
///
/// Vectors are expressed over the column indices. The `k`-th returned vector
/// is supported on indices `<= zero_index[k]` (see [`reduce_columns`]).
pub fn kernel<P: Pid>(pid: &P, columns: Vec<SparseVec<P::Elem>>) -> Vec<SparseVec<P::Elem>> {
    let red = reduce_columns(pid, columns, true);
    let t = red.transform.as_ref().expect("tracked");
    red.zero_columns().map(|j| t[j].clone()).collect()
}

/// Kernel vectors together with the column index that produced each one.
pub fn kernel_indexed<P: Pid>(pid: &P, columns: Vec<SparseVec<P::Elem>>) -> Vec<(usize, SparseVec<P::Elem>)> {
    let red = reduce_columns(pid, columns, true);
    let t = red.transform.as_ref().expect("tracked");
    red.zero_columns().map(|j| (j, t[j].clone())).collect()
}

/// A submodule of a free module with an echelon basis supporting exact
/// membership tests and coordinates with respect to its generators.
#[derive(Clone, Debug)]
pub struct Submodule<E> {
    /// Number of generators originally supplied.
    generators: usize,
    /// Echelon basis sorted by decreasing lowest row.
    echelon: Vec<SparseVec<E>>,
    /// Each echelon vector as a combination of the generators.
    echelon_in_generators: Vec<SparseVec<E>>,
    /// Lowest row -> position in `echelon`.
    by_low: HashMap<usize, usize>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> Submodule<E> {
    pub fn new<P: Pid<Elem = E>>(pid: &P, generators: Vec<SparseVec<E>>) -> Self {
        let count = generators.len();
        let red = reduce_columns(pid, generators, true);
        let t = red.transform.expect("tracked");
        let mut pairs: Vec<(usize, SparseVec<E>, SparseVec<E>)> = red
            .reduced
            .into_iter()
            .zip(t)
            .filter_map(|(c, tr)| low(&c).map(|l| (l, c, tr)))
            .collect();
        pairs.sort_by(|a, b| b.0.cmp(&a.0));
        let by_low = pairs.iter().enumerate().map(|(k, (l, _, _))| (*l, k)).collect();
        let (echelon, echelon_in_generators) = pairs.into_iter().map(|(_, c, t)| (c, t)).unzip();
        Submodule { generators: count, echelon, echelon_in_generators, by_low }
    }

    pub fn rank(&self) -> usize {
        self.echelon.len()
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Sparse coefficients of `v` in the echelon basis, if `v` lies in the submodule.
    pub fn echelon_coordinates_sparse<P: Pid<Elem = E>>(&self, pid: &P, v: &SparseVec<E>) -> Option<SparseVec<E>> {
        let mut rest = v.clone();
        let mut coords: Vec<(usize, E)> = Vec::new();
        while let Some((l, x)) = rest.last().cloned() {
            let &k = self.by_low.get(&l)?;
            let b = &self.echelon[k];
            let lead = &b.last().expect("nonzero echelon vector").1;
            let y = pid.div_exact(&x, lead)?;
            rest = axpy(pid, &rest, &pid.neg(&y), b);
            coords.push((k, y));
        }
        coords.sort_by_key(|(k, _)| *k);
        Some(coords)
    }

    /// Dense coefficients of `v` in the echelon basis, if `v` lies in the submodule.
    pub fn echelon_coordinates<P: Pid<Elem = E>>(&self, pid: &P, v: &SparseVec<E>) -> Option<Vec<E>> {
        let sparse = self.echelon_coordinates_sparse(pid, v)?;
        let mut out = vec![pid.zero(); self.echelon.len()];
        for (k, y) in sparse {
            out[k] = y;
        }
        Some(out)
    }

    /// Coefficients of `v` as a combination of the original generators.
    ///
    /// When the generators are independent this is the unique expansion.
    pub fn coordinates<P: Pid<Elem = E>>(&self, pid: &P, v: &SparseVec<E>) -> Option<SparseVec<E>> {
        let ys = self.echelon_coordinates_sparse(pid, v)?;
        let mut out: SparseVec<E> = Vec::new();
        for (k, y) in ys {
            out = axpy(pid, &out, &y, &self.echelon_in_generators[k]);
        }
        Some(out)
    }

    pub fn contains<P: Pid<Elem = E>>(&self, pid: &P, v: &SparseVec<E>) -> bool {
        self.echelon_coordinates_sparse(pid, v).is_some()
    }

    pub fn echelon_basis(&self) -> &[SparseVec<E>] {
        &self.echelon
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::apply_columns;
    use crate::algebra::ring::{Integers, PrimeField};
    use num_bigint::BigInt;

    fn col(entries: &[(usize, i64)]) -> SparseVec<BigInt> {
        entries.iter().map(|&(i, v)| (i, BigInt::from(v))).collect()
    }

    #[test]
    fn kernel_of_gcd_row_is_saturated() {
        // [2 3] has kernel spanned by (3, -2), not a multiple of it.
        let z = Integers;
        let cols = vec![col(&[(0, 2)]), col(&[(0, 3)])];
        let k = kernel(&z, cols.clone());
        assert_eq!(k.len(), 1);
        assert!(apply_columns(&z, &cols, &k[0]).is_empty());
        let g = num_integer::Integer::gcd(&k[0][0].1, &k[0][1].1);
        assert_eq!(g, BigInt::from(1));
    }

    #[test]
    fn membership_is_exact_over_integers() {
        let z = Integers;
        let sub = Submodule::new(&z, vec![col(&[(0, 2)]), col(&[(1, 1)])]);
        assert!(sub.contains(&z, &col(&[(0, 4), (1, 3)])));
        assert!(!sub.contains(&z, &col(&[(0, 1)])));
        let c = sub.coordinates(&z, &col(&[(0, 4), (1, 3)])).unwrap();
        assert_eq!(c, col(&[(0, 2), (1, 3)]));
    }

    #[test]
    fn field_rank() {
        let f = PrimeField::new(2);
        let cols: Vec<SparseVec<u64>> = vec![vec![(0, 1), (1, 1)], vec![(1, 1), (2, 1)], vec![(0, 1), (2, 1)]];
        assert_eq!(reduce_columns(&f, cols, false).rank(), 2);
    }
}
