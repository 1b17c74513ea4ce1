//! Stalk systems over a base complex and the twisted cellular complex.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::algebra::{induced_homology_map, ChainComplex, HomologyGroup, HomologyMap, IntMatrix, ReducedHomology, Ring};
use crate::error::{Error, Result};
use crate::perverse::{ic_chain_map, FilteredComplex, IcOptions, IntersectionChains, Perversity, SimplicialMap};
use crate::simplicial::{Simplex, SimplicialComplex, Subcomplex};
use crate::with_pid;

/// Inverse of `m` over `ring`, with entries as canonical integers.
pub(crate) fn invert_in(ring: Ring, m: &IntMatrix) -> Option<IntMatrix> {
    match ring {
        Ring::PrimeField(p) => {
            // inverse = adj / det, adj = det * (rational inverse).
            let det = m.determinant();
            let p = BigInt::from(p);
            let d = num_integer::Integer::mod_floor(&det, &p);
            if d == BigInt::from(0) {
                return None;
            }
            let d_inv = d.modpow(&(&p - 2), &p);
            let q = rational_inverse(m)?;
            Some(q.map(|x| {
                let adj = (x * num_rational::BigRational::from_integer(det.clone())).to_integer();
                num_integer::Integer::mod_floor(&(adj * &d_inv), &p)
            }))
        }
        _ => m.inverse(),
    }
}

fn rational_inverse(m: &IntMatrix) -> Option<crate::algebra::Matrix<num_rational::BigRational>> {
    use crate::algebra::ring::{Pid, Rationals};
    let q = Rationals;
    let n = m.rows();
    let mut a = m.map(|x| q.from_int(x));
    let mut inv = crate::algebra::Matrix::identity_in(&q, n);
    for k in 0..n {
        let piv = (k..n).find(|&r| !q.is_zero(a.get(r, k)))?;
        a.swap_rows(k, piv);
        inv.swap_rows(k, piv);
        let s = q.div_exact(&q.one(), a.get(k, k)).expect("field");
        for j in 0..n {
            a.set(k, j, q.mul(a.get(k, j), &s));
            inv.set(k, j, q.mul(inv.get(k, j), &s));
        }
        for i in 0..n {
            if i == k || q.is_zero(a.get(i, k)) {
                continue;
            }
            let f = a.get(i, k).clone();
            for j in 0..n {
                a.set(i, j, q.sub(a.get(i, j), &q.mul(&f, a.get(k, j))));
                inv.set(i, j, q.sub(inv.get(i, j), &q.mul(&f, inv.get(k, j))));
            }
        }
    }
    Some(inv)
}

fn equal_in(ring: Ring, a: &IntMatrix, b: &IntMatrix) -> bool {
    with_pid!(ring, |pid| {
        use crate::algebra::ring::Pid;
        a.map(|x| pid.from_int(x)) == b.map(|x| pid.from_int(x))
    })
}

fn mul_in(ring: Ring, a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    with_pid!(ring, |pid| {
        use crate::algebra::ring::Pid;
        a.map(|x| pid.from_int(x)).mul_in(&pid, &b.map(|x| pid.from_int(x))).map(|x| pid.to_int(x).expect("integral"))
    })
}

/// A flat system of free modules of rank `r` over the vertices of a base
/// complex, with invertible transports along edges.
#[derive(Clone, Debug)]
pub struct StalkSystem {
    pub base: SimplicialComplex,
    pub ring: Ring,
    pub rank: usize,
    /// The fiber homology group this system carries, when known.
    pub stalk: Option<HomologyGroup>,
    edges: HashMap<(usize, usize), IntMatrix>,
}

impl StalkSystem {
    pub fn trivial(base: SimplicialComplex, ring: Ring, rank: usize) -> Self {
        StalkSystem { base, ring, rank, stalk: None, edges: HashMap::new() }
    }

    /// Transports `rho(u -> v)` on listed edges (the reverse direction gets
    /// the inverse); flatness is checked on every 2-simplex of the base.
    pub fn new(
        base: SimplicialComplex,
        ring: Ring,
        rank: usize,
        listed: impl IntoIterator<Item = (usize, usize, IntMatrix)>,
    ) -> Result<Self> {
        let mut edges = HashMap::new();
        for (u, v, m) in listed {
            let e = Simplex::new(vec![u, v]).map_err(|_| Error::LocalSystem(format!("bad edge {u} {v}")))?;
            if !base.contains(&e) {
                return Err(Error::LocalSystem(format!("{e} is not an edge of the base")));
            }
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::LocalSystem(format!("transport on {u} -> {v} is not {rank}x{rank}")));
            }
            let inv = invert_in(ring, &m).ok_or_else(|| Error::NotInvertible(format!("transport on {u} -> {v}")))?;
            if edges.contains_key(&(u, v)) {
                return Err(Error::LocalSystem(format!("edge {u} -> {v} listed twice")));
            }
            edges.insert((v, u), inv);
            edges.insert((u, v), m);
        }
        let sys = StalkSystem { base, ring, rank, stalk: None, edges };
        sys.check_flat()?;
        Ok(sys)
    }

    pub fn with_stalk(mut self, stalk: HomologyGroup) -> Self {
        self.stalk = Some(stalk);
        self
    }

    pub fn transport(&self, u: usize, v: usize) -> IntMatrix {
        self.edges.get(&(u, v)).cloned().unwrap_or_else(|| IntMatrix::identity(self.rank))
    }

    fn check_flat(&self) -> Result<()> {
        if self.base.levels() < 3 {
            return Ok(());
        }
        for t in self.base.simplices(2) {
            let [a, b, c] = [t.vertices()[0], t.vertices()[1], t.vertices()[2]];
            let lhs = self.transport(a, c);
            let rhs = mul_in(self.ring, &self.transport(b, c), &self.transport(a, b));
            if !equal_in(self.ring, &lhs, &rhs) {
                return Err(Error::LocalSystem(format!("stalk system is not flat on {t}")));
            }
        }
        Ok(())
    }

    /// Transport along an edge path of vertices.
    pub fn path_transport(&self, path: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::identity(self.rank);
        for w in path.windows(2) {
            m = mul_in(self.ring, &self.transport(w[0], w[1]), &m);
        }
        m
    }

    /// Parse `rank r` then `edge u v : entries` over vertex ids of the base.
    pub fn parse(text: &str, base: SimplicialComplex, ring: Ring) -> Result<Self> {
        let mut rank: Option<usize> = None;
        let mut listed = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |msg: &str| Error::Parse { line: no + 1, msg: msg.into() };
            if let Some(r) = line.strip_prefix("rank") {
                rank = Some(r.trim().parse().map_err(|_| perr("bad rank"))?);
            } else if let Some(rest) = line.strip_prefix("edge") {
                let r = rank.ok_or_else(|| perr("`rank` must come first"))?;
                let (ends, entries) = rest.split_once(':').ok_or_else(|| perr("expected `edge u v : entries`"))?;
                let ends: std::result::Result<Vec<usize>, _> = ends.split_whitespace().map(str::parse).collect();
                let ends = ends.map_err(|_| perr("bad vertex"))?;
                let vals: std::result::Result<Vec<i64>, _> = entries.split_whitespace().map(str::parse).collect();
                let vals = vals.map_err(|_| perr("bad matrix entry"))?;
                if ends.len() != 2 || vals.len() != r * r {
                    return Err(perr("malformed edge line"));
                }
                listed.push((ends[0], ends[1], IntMatrix::from_i64(r, r, &vals)));
            } else {
                return Err(perr("unknown directive"));
            }
        }
        let rank = rank.ok_or(Error::Parse { line: 0, msg: "missing `rank`".into() })?;
        Self::new(base, ring, rank, listed)
    }
}

/// `Gamma(B; S)`: one copy of the stalk per simplex, anchored at its least
/// vertex; the facet opposite the leading vertex picks up `rho(v0 -> v1)`.
pub fn twisted_cellular_complex(base: &SimplicialComplex, sys: &StalkSystem) -> Result<ChainComplex> {
    if *base != sys.base {
        return Err(Error::LocalSystem("stalk system lives on a different base".into()));
    }
    let r = sys.rank;
    let levels = base.levels();
    let mut ranks = Vec::with_capacity(levels);
    let mut boundaries = Vec::with_capacity(levels);
    for d in 0..levels {
        ranks.push(base.count(d) * r);
        let mut cols = Vec::with_capacity(base.count(d) * r);
        for (i, s) in base.simplices(d).iter().enumerate() {
            for a in 0..r {
                let mut col: Vec<(usize, BigInt)> = Vec::new();
                if d > 0 {
                    for (j, (sign, f)) in s.facets().enumerate() {
                        let fi = base.index_of(&f).expect("closed");
                        if j == 0 {
                            let m = sys.transport(s.vertices()[0], s.vertices()[1]);
                            for b in 0..r {
                                col.push((fi * r + b, m.get(b, a) * sign));
                            }
                        } else {
                            col.push((fi * r + a, BigInt::from(sign)));
                        }
                    }
                }
                let _ = i;
                let mut acc: std::collections::BTreeMap<usize, BigInt> = std::collections::BTreeMap::new();
                for (row, v) in col {
                    *acc.entry(row).or_default() += v;
                }
                cols.push(acc.into_iter().filter(|(_, v)| *v != BigInt::from(0)).collect());
            }
        }
        boundaries.push(cols);
    }
    ChainComplex::new(sys.ring, ranks, boundaries).map_err(|e| match e {
        Error::NotAComplex(d) => Error::LocalSystem(format!("boundary does not square to zero in degree {d}: not flat")),
        e => e,
    })
}

/// The `m`-gon with vertices `0..m` and the loop generator acting by `monodromy`
/// on the closing edge `m-1 -> 0`.
pub fn stalk_system_from_gluing(monodromy: &IntMatrix, m: usize, ring: Ring) -> Result<StalkSystem> {
    if m < 3 {
        return Err(Error::InvalidConstruction(format!("circle needs at least 3 vertices, got {m}")));
    }
    let base = SimplicialComplex::close((0..m).map(|j| vec![j, (j + 1) % m]))?;
    let r = monodromy.rows();
    StalkSystem::new(base, ring, r, [(m - 1, 0, monodromy.clone())])
}

/// Maps induced on `IH_*` of a fiber by a stratum-preserving automorphism.
pub fn fiber_monodromy(
    fiber: &FilteredComplex,
    phi: &HashMap<usize, usize>,
    p: &Perversity,
    ring: Ring,
) -> Result<Vec<HomologyMap>> {
    let f = SimplicialMap::new(fiber.complex(), fiber.complex(), phi.clone())?;
    crate::perverse::induced_ih_map(&f, fiber, fiber, p, ring)
}

/// One degree of the comparison `IH_q(L) -> IH_q(cL)` induced by inclusion.
#[derive(Clone, Debug)]
pub struct StalkComparison {
    pub degree: usize,
    pub map: HomologyMap,
    /// `q < codim - 1 - p(codim)`.
    pub below_threshold: bool,
    pub isomorphism: bool,
    pub zero: bool,
    /// Commutes with the monodromies of the two stalk systems.
    pub equivariant: bool,
}

impl StalkComparison {
    /// Isomorphism below the threshold, zero at and above it, equivariant.
    pub fn pass(&self) -> bool {
        self.equivariant && if self.below_threshold { self.isomorphism } else { self.zero }
    }
}

/// Comparison maps `IH_q(L) -> IH_q(cL)` for a link `L` with an optional
/// gluing automorphism, together with the two monodromies.
///
/// `p` is given on the cone's formal dimension `L.n() + 1`.
pub fn stalk_comparison_map(
    link: &FilteredComplex,
    phi: Option<&HashMap<usize, usize>>,
    p: &Perversity,
    ring: Ring,
) -> Result<Vec<StalkComparison>> {
    let cone = link.cone();
    let n = cone.n();
    let p = p.truncate(n);
    let threshold = n as i64 - 1 - p.value(n);
    let apex = cone.cone_apex();
    let sub = Subcomplex::from_predicate(cone.complex(), |s| !s.contains_vertex(apex));
    let l_in_cone = cone.restrict(&sub);
    let opts = IcOptions::new(ring);
    let ic_l = IntersectionChains::build(&l_in_cone, &p, &opts)?;
    let ic_c = IntersectionChains::build(&cone, &p, &opts)?;
    let id: HashMap<usize, usize> = l_in_cone.complex().vertices().into_iter().map(|v| (v, v)).collect();
    let inc = ic_chain_map(&SimplicialMap::new(l_in_cone.complex(), cone.complex(), id)?, &ic_l, &ic_c, l_in_cone.complex(), cone.complex())?;
    let h_l = ReducedHomology::new(&ic_l.chain);
    let h_c = ReducedHomology::new(&ic_c.chain);
    let monodromies = match phi {
        Some(phi) => {
            let mut full = phi.clone();
            full.insert(apex, apex);
            let f_l = SimplicialMap::new(l_in_cone.complex(), l_in_cone.complex(), phi.clone())?;
            let f_c = SimplicialMap::new(cone.complex(), cone.complex(), full)?;
            f_l.check_stratum_preserving(&l_in_cone, &l_in_cone)?;
            f_c.check_stratum_preserving(&cone, &cone)?;
            Some((ic_chain_map(&f_l, &ic_l, &ic_l, l_in_cone.complex(), l_in_cone.complex())?, ic_chain_map(&f_c, &ic_c, &ic_c, cone.complex(), cone.complex())?))
        }
        None => None,
    };
    let mut out = Vec::new();
    for q in 0..h_l.len() {
        let map = induced_homology_map(&inc, &h_l, &h_c, q)?;
        let equivariant = match &monodromies {
            Some((ml, mc)) => {
                let a = induced_homology_map(ml, &h_l, &h_l, q)?;
                let b = induced_homology_map(mc, &h_c, &h_c, q)?;
                map.compose(&a).same_map(&b.compose(&map))
            }
            None => true,
        };
        out.push(StalkComparison {
            degree: q,
            below_threshold: (q as i64) < threshold,
            isomorphism: map.is_isomorphism(),
            zero: map.is_zero(),
            equivariant,
            map,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::homology;

    #[test]
    fn swap_on_a_circle() {
        let swap = IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]);
        let s = stalk_system_from_gluing(&swap, 4, Ring::Rationals).unwrap();
        let g = twisted_cellular_complex(&s.base, &s).unwrap();
        assert_eq!(homology(&g).bettis(), vec![1, 1]);
        let z = stalk_system_from_gluing(&swap, 4, Ring::Integers).unwrap();
        let h = homology(&twisted_cellular_complex(&z.base, &z).unwrap());
        assert_eq!(h.bettis(), vec![1, 1]);
        assert!(h.is_torsion_free());
        assert_eq!(s.path_transport(&[3, 0, 1, 2, 3]), swap);
    }

    #[test]
    fn trivial_stalk_is_ordinary_homology() {
        let pt = SimplicialComplex::close([vec![0]]).unwrap();
        let g = twisted_cellular_complex(&pt, &StalkSystem::trivial(pt.clone(), Ring::Integers, 2)).unwrap();
        assert_eq!(homology(&g).bettis(), vec![2]);
        let disk = SimplicialComplex::close([vec![0, 1, 2]]).unwrap();
        let bad = StalkSystem::new(disk, Ring::Integers, 1, [(0, 1, IntMatrix::from_i64(1, 1, &[-1]))]);
        assert!(bad.is_err());
    }

    #[test]
    fn comparison_for_two_circles() {
        let two = FilteredComplex::unfiltered(
            SimplicialComplex::close([vec![0, 1], vec![1, 2], vec![0, 2], vec![3, 4], vec![4, 5], vec![3, 5]]).unwrap(),
        );
        let swap: HashMap<usize, usize> = [(0, 3), (1, 4), (2, 5), (3, 0), (4, 1), (5, 2)].into_iter().collect();
        let c = stalk_comparison_map(&two, Some(&swap), &Perversity::zero(2), Ring::Integers).unwrap();
        assert!(c[0].below_threshold && c[0].isomorphism && c[0].equivariant);
        assert!(!c[1].below_threshold && c[1].zero);
        assert!(c.iter().all(StalkComparison::pass));
        let mono = fiber_monodromy(&two, &swap, &Perversity::zero(1), Ring::Integers).unwrap();
        assert!(mono[1].is_isomorphism() && !mono[1].same_map(&HomologyMap { matrix: IntMatrix::identity(2), ..mono[1].clone() }));
    }
}
