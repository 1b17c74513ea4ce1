use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use ihss::algebra::{homology, induced_homology_map, smith_normal_form, ChainMap, HomologyMap, IntMatrix, ReducedHomology};
use ihss::perverse::{intersection_chain_complex, simplicial_chain_image, FilteredComplex, Perversity, SimplicialMap};
use ihss::simplicial::SimplicialComplex;
use ihss::Ring;

/// Rank over `Q` by plain Gaussian elimination (independent of the SNF code).
fn rational_rank(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<BigRational>> =
        (0..m.rows()).map(|i| m.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn matrix_strategy() -> impl Strategy<Value = IntMatrix> {
    (1usize..=40, 1usize..=40).prop_flat_map(|(r, c)| {
        prop::collection::vec(-9i64..=9, r * c).prop_map(move |e| IntMatrix::from_i64(r, c, &e))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn smith_normal_form_is_correct(m in matrix_strategy()) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(m.rows()));
        prop_assert!(s.u.determinant().abs().is_one());
        prop_assert!(s.v.determinant().abs().is_one());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if i != j || i >= s.rank {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(w[0].is_positive() && w[1].is_multiple_of(&w[0]));
        }
        // Oracles: rank over Q, first invariant factor, and |det| for square input.
        prop_assert_eq!(s.rank, rational_rank(&m));
        let g = (0..m.rows()).flat_map(|i| m.row(i).to_vec()).fold(BigInt::zero(), |g, x| g.gcd(&x));
        if !g.is_zero() {
            prop_assert_eq!(&diag[0], &g);
        }
        if m.rows() == m.cols() {
            let prod: BigInt = if s.rank == m.rows() { diag.iter().product() } else { BigInt::zero() };
            prop_assert_eq!(prod, m.determinant().abs());
        }
    }
}

fn cycle(n: usize) -> SimplicialComplex {
    SimplicialComplex::close((0..n).map(|i| vec![i, (i + 1) % n])).unwrap()
}

/// A simplicial map `C_n -> C_m` from steps in {-1, 0, 1} closed up to a
/// multiple of `m`; returns it with its degree.
fn walk(n: usize, m: usize, steps: &[i64]) -> Option<(HashMap<usize, usize>, i64)> {
    let mut pos = vec![0i64];
    for s in &steps[..n - 1] {
        pos.push(pos.last().unwrap() + s);
    }
    let last = *pos.last().unwrap();
    // The closing step from vertex n-1 back to vertex 0 must be a step too.
    let closing = (-1..=1).find(|d| (last + d).rem_euclid(m as i64) == 0)?;
    let degree = (last + closing) / m as i64;
    Some((pos.iter().enumerate().map(|(i, p)| (i, p.rem_euclid(m as i64) as usize)).collect(), degree))
}

fn chain_map(f: &SimplicialMap, k: &SimplicialComplex, l: &SimplicialComplex) -> ChainMap {
    let cols = (0..k.levels())
        .map(|d| (0..k.count(d)).map(|i| simplicial_chain_image(f, k, l, d, &vec![(i, BigInt::one())])).collect())
        .collect();
    ChainMap::new(cols)
}

fn h_maps(f: &ChainMap, a: &ReducedHomology, b: &ReducedHomology) -> Vec<HomologyMap> {
    (0..a.len()).map(|d| induced_homology_map(f, a, b, d).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    /// Functoriality on random walks between cycles: `H(g f) = H(g) H(f)`,
    /// and `H_1` is multiplication by the winding number (the oracle).
    #[test]
    fn functoriality_on_random_maps(
        n in 3usize..12, m in 3usize..8, l in 3usize..6,
        s1 in prop::collection::vec(-1i64..=1, 12), s2 in prop::collection::vec(-1i64..=1, 8),
    ) {
        let (Some((fv, df)), Some((gv, dg))) = (walk(n, m, &s1), walk(m, l, &s2)) else {
            return Err(TestCaseError::reject("walk does not close"));
        };
        let (cn, cm, cl) = (cycle(n), cycle(m), cycle(l));
        let f = SimplicialMap::new(&cn, &cm, fv.clone()).unwrap();
        let g = SimplicialMap::new(&cm, &cl, gv.clone()).unwrap();
        let gf_vertices: HashMap<usize, usize> = fv.iter().map(|(v, w)| (*v, gv[w])).collect();
        let gf = SimplicialMap::new(&cn, &cl, gf_vertices).unwrap();
        let (hn, hm, hl) = (
            ReducedHomology::new(&cn.chain_complex(Ring::Integers)),
            ReducedHomology::new(&cm.chain_complex(Ring::Integers)),
            ReducedHomology::new(&cl.chain_complex(Ring::Integers)),
        );
        let cf = chain_map(&f, &cn, &cm);
        let cg = chain_map(&g, &cm, &cl);
        cf.check(&cn.chain_complex(Ring::Integers), &cm.chain_complex(Ring::Integers)).unwrap();
        let (hf, hg, hgf) = (h_maps(&cf, &hn, &hm), h_maps(&cg, &hm, &hl), h_maps(&chain_map(&gf, &cn, &cl), &hn, &hl));
        let composite = h_maps(&cg.compose(&cf), &hn, &hl);
        for d in 0..2 {
            prop_assert!(hg[d].compose(&hf[d]).same_map(&hgf[d]));
            prop_assert!(composite[d].same_map(&hgf[d]));
            prop_assert!(hf[d].is_isomorphism() || d == 1);
        }
        // Degree oracle, up to the sign of the chosen generators.
        let deg = |h: &HomologyMap| h.matrix.get(0, 0).abs();
        prop_assert_eq!(deg(&hf[1]), BigInt::from(df.abs()));
        prop_assert_eq!(deg(&hgf[1]), BigInt::from((df * dg).abs()));
        let id = ChainMap::identity(&cn.chain_complex(Ring::Integers));
        prop_assert!(h_maps(&id, &hn, &hn).iter().all(HomologyMap::is_isomorphism));
    }
}

fn complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0usize..8, 1..=4), 1..10)
        .prop_map(|gens| SimplicialComplex::close(gens.into_iter().map(|s| s.into_iter().collect::<Vec<_>>())).unwrap())
}

fn alternating(xs: impl IntoIterator<Item = usize>) -> i64 {
    xs.into_iter().enumerate().map(|(i, x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The Euler characteristic from the f-vector equals the alternating sum
    /// of betti numbers over every ring, and the same holds for intersection
    /// chains of a random filtration.
    #[test]
    fn euler_characteristic(k in complex_strategy(), levels in prop::collection::vec(0usize..4, 8)) {
        let chi = alternating(k.f_vector());
        prop_assert_eq!(chi, k.euler_characteristic());
        for ring in [Ring::Integers, Ring::Rationals, Ring::PrimeField(2), Ring::PrimeField(3)] {
            prop_assert_eq!(alternating(homology(&k.chain_complex(ring)).bettis()), chi);
        }
        let n = k.dimension().unwrap();
        let lv: HashMap<usize, usize> = k.vertices().into_iter().map(|v| (v, levels[v].min(n))).collect();
        let fc = FilteredComplex::from_levels(k, n, &lv).unwrap();
        for p in Perversity::all(n) {
            for ring in [Ring::Integers, Ring::PrimeField(2)] {
                let ic = intersection_chain_complex(&fc, &p, ring).unwrap();
                prop_assert_eq!(alternating(ic.homology().bettis()), alternating(ic.chain.ranks().iter().copied()));
            }
        }
    }
}
