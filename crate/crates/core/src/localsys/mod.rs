//! Local coefficient systems on the top stratum, twisted intersection
//! chains, stalk systems over a base and the twisted cellular complex.

mod stalk;

pub use stalk::{
    fiber_monodromy, stalk_comparison_map, stalk_system_from_gluing, twisted_cellular_complex, StalkComparison,
    StalkSystem,
};

use std::collections::HashMap;

use crate::algebra::{homology, HomologyResult, IntMatrix, Ring};
use crate::error::{Error, Result};
use crate::perverse::{Coefficients, FilteredComplex, IcOptions, IntersectionChains, Perversity, Transport};
use crate::simplicial::{barycentric_subdivision, Simplex, SimplicialComplex};

/// A flat system of free modules of rank `r` on the dual carrier of the top
/// stratum: the barycenters of simplices not in `X_{n-2}`.
///
/// Edge matrices are keyed by `(from, to)` simplices of `K`, one a facet-chain
/// face of the other; both directions are stored.
#[derive(Clone, Debug)]
pub struct LocalSystem {
    complex: SimplicialComplex,
    n: usize,
    ring: Ring,
    rank: usize,
    edges: HashMap<(Simplex, Simplex), IntMatrix>,
}

fn in_carrier(fc: &FilteredComplex, s: &Simplex) -> bool {
    fc.simplex_level(s) + 2 > fc.n()
}

/// Parse `a.b.c` as the simplex `{a, b, c}`.
fn parse_token(line: usize, t: &str) -> Result<Simplex> {
    let v: std::result::Result<Vec<usize>, _> = t.split('.').map(str::parse).collect();
    let v = v.map_err(|_| Error::Parse { line, msg: format!("bad carrier vertex `{t}`") })?;
    Simplex::new(v).map_err(|e| Error::Parse { line, msg: e.to_string() })
}

fn format_token(s: &Simplex) -> String {
    s.vertices().iter().map(ToString::to_string).collect::<Vec<_>>().join(".")
}

impl LocalSystem {
    /// The trivial system of rank `r`.
    pub fn trivial(fc: &FilteredComplex, rank: usize, ring: Ring) -> Self {
        LocalSystem { complex: fc.complex().clone(), n: fc.n(), ring, rank, edges: HashMap::new() }
    }

    /// `validate_local_system`: check every matrix is invertible over the
    /// integers, every edge joins comparable carrier simplices, and flatness
    /// on every carrier 2-simplex touching a listed edge.
    pub fn new(
        fc: &FilteredComplex,
        rank: usize,
        ring: Ring,
        listed: impl IntoIterator<Item = (Simplex, Simplex, IntMatrix)>,
    ) -> Result<Self> {
        let k = fc.complex();
        let mut edges = HashMap::new();
        for (u, v, m) in listed {
            for s in [&u, &v] {
                if !k.contains(s) {
                    return Err(Error::LocalSystem(format!("{s} is not a simplex")));
                }
                if !in_carrier(fc, s) {
                    return Err(Error::LocalSystem(format!("barycenter of {s} is not in the top stratum")));
                }
            }
            if u == v || !(u.is_face_of(&v) || v.is_face_of(&u)) {
                return Err(Error::LocalSystem(format!("{u} and {v} are not joined by an edge of the subdivision")));
            }
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::LocalSystem(format!("matrix on {u} -> {v} is not {rank}x{rank}")));
            }
            let inv = m.inverse().ok_or_else(|| Error::NotInvertible(format!("matrix on edge {u} -> {v}")))?;
            if edges.contains_key(&(u.clone(), v.clone())) {
                return Err(Error::LocalSystem(format!("edge {u} -> {v} listed twice")));
            }
            edges.insert((v.clone(), u.clone()), inv);
            edges.insert((u, v), m);
        }
        let sys = LocalSystem { complex: k.clone(), n: fc.n(), ring, rank, edges };
        sys.check_flat(fc)?;
        Ok(sys)
    }

    /// Parse the text format: `rank r` then `edge u v : m11 m12 ...`.
    pub fn parse(text: &str, fc: &FilteredComplex, ring: Ring) -> Result<Self> {
        let mut rank: Option<usize> = None;
        let mut listed = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line_no = no + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |msg: &str| Error::Parse { line: line_no, msg: msg.into() };
            if let Some(r) = line.strip_prefix("rank") {
                rank = Some(r.trim().parse().map_err(|_| perr("bad rank"))?);
            } else if let Some(rest) = line.strip_prefix("edge") {
                let r = rank.ok_or_else(|| perr("`rank` must come first"))?;
                let (ends, entries) = rest.split_once(':').ok_or_else(|| perr("expected `edge u v : entries`"))?;
                let ends: Vec<&str> = ends.split_whitespace().collect();
                if ends.len() != 2 {
                    return Err(perr("expected two carrier vertices"));
                }
                let vals: std::result::Result<Vec<i64>, _> = entries.split_whitespace().map(str::parse).collect();
                let vals = vals.map_err(|_| perr("bad matrix entry"))?;
                if vals.len() != r * r {
                    return Err(perr(&format!("expected {} entries", r * r)));
                }
                listed.push((parse_token(line_no, ends[0])?, parse_token(line_no, ends[1])?, IntMatrix::from_i64(r, r, &vals)));
            } else {
                return Err(perr("unknown directive"));
            }
        }
        let rank = rank.ok_or(Error::Parse { line: 0, msg: "missing `rank`".into() })?;
        Self::new(fc, rank, ring, listed)
    }

    /// Listed edges in the text format (one direction each).
    pub fn to_text(&self) -> String {
        let mut lines = vec![format!("rank {}", self.rank)];
        let mut keys: Vec<&(Simplex, Simplex)> = self.edges.keys().filter(|(u, v)| u.dim() > v.dim()).collect();
        keys.sort();
        for key in keys {
            let m = &self.edges[key];
            let entries: Vec<String> = (0..self.rank).flat_map(|i| m.row(i).iter().map(ToString::to_string).collect::<Vec<_>>()).collect();
            lines.push(format!("edge {} {} : {}", format_token(&key.0), format_token(&key.1), entries.join(" ")));
        }
        lines.join("\n") + "\n"
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Transport along the subdivision edge `b(from) -> b(to)`.
    pub fn edge(&self, from: &Simplex, to: &Simplex) -> IntMatrix {
        self.edges.get(&(from.clone(), to.clone())).cloned().unwrap_or_else(|| IntMatrix::identity(self.rank))
    }

    fn check_flat(&self, fc: &FilteredComplex) -> Result<()> {
        let k = fc.complex();
        let mut checked = std::collections::HashSet::new();
        for (u, v) in self.edges.keys() {
            let (lo, hi) = if u.dim() < v.dim() { (u, v) } else { (v, u) };
            // Third members of flags containing lo < hi.
            let mut thirds: Vec<Simplex> = lo.faces().into_iter().filter(|f| f != lo && in_carrier(fc, f)).collect();
            thirds.extend(hi.faces().into_iter().filter(|f| lo.is_face_of(f) && f != lo && f != hi));
            for d in hi.dim() + 1..k.levels() {
                thirds.extend(k.simplices(d).iter().filter(|s| hi.is_face_of(s)).cloned());
            }
            for c in thirds {
                let mut flag = [lo.clone(), hi.clone(), c];
                flag.sort_by_key(Simplex::dim);
                if !checked.insert(flag.clone()) {
                    continue;
                }
                let [a, b, c] = &flag;
                let lhs = self.edge(a, c);
                let rhs = self.edge(b, c).mul(&self.edge(a, b));
                if lhs != rhs {
                    return Err(Error::LocalSystem(format!("not flat on the 2-simplex b({a}) b({b}) b({c})")));
                }
            }
        }
        Ok(())
    }

    /// The carrier as a subcomplex of `sd K`, with vertex ids of the subdivision.
    pub fn carrier_complex(&self, fc: &FilteredComplex) -> SimplicialComplex {
        let sd = barycentric_subdivision(fc.complex());
        let keep: std::collections::BTreeSet<usize> =
            (0..sd.carrier.len()).filter(|&v| in_carrier(fc, &sd.carrier[v])).collect();
        let sub = crate::simplicial::Subcomplex::full(&sd.complex, &keep);
        sub.to_complex(&sd.complex)
    }

    fn check_base(&self, fc: &FilteredComplex) -> Result<()> {
        if self.complex != *fc.complex() || self.n != fc.n() {
            return Err(Error::LocalSystem("local system lives on a different complex".into()));
        }
        Ok(())
    }
}

impl Transport for LocalSystem {
    fn rank(&self) -> usize {
        self.rank
    }

    fn transport(&self, from: &Simplex, to: &Simplex) -> Result<IntMatrix> {
        Ok(self.edge(from, to))
    }
}

/// Intersection chains with local coefficients.
pub fn twisted_ic(fc: &FilteredComplex, p: &Perversity, sys: &LocalSystem) -> Result<IntersectionChains> {
    sys.check_base(fc)?;
    let opts = IcOptions { ring: sys.ring, coefficients: Coefficients::Local(sys), degree: None };
    IntersectionChains::build(fc, p, &opts)
}

pub fn twisted_ih(fc: &FilteredComplex, p: &Perversity, sys: &LocalSystem) -> Result<HomologyResult> {
    Ok(homology(&twisted_ic(fc, p, sys)?.chain))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> FilteredComplex {
        FilteredComplex::unfiltered(SimplicialComplex::close([vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap())
    }

    #[test]
    fn sign_system_on_a_circle() {
        let c = circle();
        let text = "rank 1\nedge 0.1 1 : -1\n";
        let q = LocalSystem::parse(text, &c, Ring::Rationals).unwrap();
        assert_eq!(twisted_ih(&c, &Perversity::zero(1), &q).unwrap().bettis(), vec![0, 0]);
        let z = LocalSystem::parse(text, &c, Ring::Integers).unwrap();
        let h = twisted_ih(&c, &Perversity::zero(1), &z).unwrap();
        assert_eq!(h.torsion(0), &[2.into()]);
        let t = LocalSystem::trivial(&c, 2, Ring::Integers);
        assert_eq!(twisted_ih(&c, &Perversity::zero(1), &t).unwrap().bettis(), vec![2, 2]);
        assert_eq!(LocalSystem::parse(&z.to_text(), &c, Ring::Integers).unwrap().to_text(), z.to_text());
    }

    #[test]
    fn corrupted_system_on_a_disk_is_rejected() {
        let d = FilteredComplex::unfiltered(SimplicialComplex::close([vec![0, 1, 2]]).unwrap());
        let swap = IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]);
        let err = LocalSystem::new(&d, 2, Ring::Integers, [(Simplex::new(vec![0, 1]).unwrap(), Simplex::vertex(0), swap)]);
        assert!(err.is_err());
        let not_inv = IntMatrix::from_i64(1, 1, &[2]);
        assert!(LocalSystem::new(&circle(), 1, Ring::Integers, [(Simplex::new(vec![0, 1]).unwrap(), Simplex::vertex(0), not_inv)]).is_err());
    }
}
