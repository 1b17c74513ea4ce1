//! Homology of chain complexes: unit-pair elimination followed by Smith
//! normal form on what is left.

use num_bigint::BigInt;

use super::chain::{ChainComplex, HomologyGroup, HomologyResult};
use super::matrix::{Matrix, SparseVec};
use super::morse::reduce;
use super::ring::{Pid, Ring};
use super::snf::smith_normal_form_in;
use crate::with_lattice_ring;

/// Homology of `c` with coefficients in its ring.
///
/// Over `Q` the integer lattice is used and torsion is discarded.
pub fn homology(c: &ChainComplex) -> HomologyResult {
    homology_with(c, false)
}

/// Homology by Smith normal form of the unreduced boundary matrices. Slow;
/// an independent check on [`homology`].
pub fn oracle_homology(c: &ChainComplex) -> HomologyResult {
    homology_with(c, true)
}

fn homology_with(c: &ChainComplex, brute_force: bool) -> HomologyResult {
    let per_degree = with_lattice_ring!(c.ring(), |pid| {
        let b = c.boundaries_in(&pid);
        let h = if brute_force { residual_homology(&pid, c.ranks(), &b) } else { homology_in(&pid, c.ranks(), &b) };
        h
            .into_iter()
            .map(|(betti, t)| (betti, t.iter().map(|x| pid.to_int(x).expect("integral")).collect::<Vec<BigInt>>()))
            .collect::<Vec<_>>()
    });
    let groups = per_degree
        .into_iter()
        .enumerate()
        .map(|(degree, (betti, torsion))| HomologyGroup {
            degree,
            betti,
            torsion: if c.ring() == Ring::Integers { torsion } else { Vec::new() },
        })
        .collect();
    HomologyResult { ring: c.ring(), groups }
}

/// Betti number and torsion coefficients per degree over `pid`.
pub fn homology_in<P: Pid>(
    pid: &P,
    ranks: &[usize],
    boundaries: &[Vec<SparseVec<P::Elem>>],
) -> Vec<(usize, Vec<P::Elem>)> {
    let r = reduce(pid, ranks, boundaries, None);
    residual_homology(pid, &r.ranks, &r.boundaries)
}

/// Homology by Smith normal form of each (dense) boundary matrix.
pub fn residual_homology<P: Pid>(
    pid: &P,
    ranks: &[usize],
    boundaries: &[Vec<SparseVec<P::Elem>>],
) -> Vec<(usize, Vec<P::Elem>)> {
    let top = ranks.len();
    let mut rank_of = vec![0usize; top + 1];
    let mut factors: Vec<Vec<P::Elem>> = vec![Vec::new(); top + 1];
    for d in 1..top {
        if ranks[d] == 0 || ranks[d - 1] == 0 || boundaries[d].iter().all(Vec::is_empty) {
            continue;
        }
        let m = Matrix::from_sparse_columns(pid, ranks[d - 1], &boundaries[d]);
        let s = smith_normal_form_in(pid, &m);
        rank_of[d] = s.rank;
        factors[d] = s.diagonal().into_iter().filter(|x| !pid.is_unit(x)).collect();
    }
    (0..top)
        .map(|d| {
            let betti = ranks[d] - rank_of[d] - rank_of[d + 1];
            (betti, factors[d + 1].clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::IntMatrix;

    #[test]
    fn torsion_of_a_mapping_cone_of_degree_two() {
        // Z --2--> Z in degrees 1 -> 0.
        let c = ChainComplex::from_matrices(Ring::Integers, 1, &[IntMatrix::from_i64(1, 1, &[2])]).unwrap();
        let h = homology(&c);
        assert_eq!(h.bettis(), vec![0, 0]);
        assert_eq!(h.torsion(0), &[BigInt::from(2)]);
        let c2 = ChainComplex::from_matrices(Ring::PrimeField(2), 1, &[IntMatrix::from_i64(1, 1, &[2])]).unwrap();
        assert_eq!(homology(&c2).bettis(), vec![1, 1]);
        let cq = ChainComplex::from_matrices(Ring::Rationals, 1, &[IntMatrix::from_i64(1, 1, &[2])]).unwrap();
        let hq = homology(&cq);
        assert_eq!(hq.bettis(), vec![0, 0]);
        assert!(hq.is_torsion_free());
    }
}
