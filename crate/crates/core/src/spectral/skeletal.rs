//! The skeletal filtration of a regular neighborhood of the bottom stratum,
//! the deleted neighborhood, and the comparisons of `E^2` with twisted
//! cellular homology of the base.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::pages::{compute_pages, spectral_sequence_map, FilteredChainComplex, SpectralSequence, SpectralSequenceMap};
use crate::algebra::{homology, induced_homology_map, ChainMap, IntMatrix, ReducedHomology, Ring};
use crate::error::{Error, Result};
use crate::localsys::{fiber_monodromy, stalk_comparison_map, stalk_system_from_gluing, twisted_cellular_complex, StalkSystem};
use crate::perverse::{
    ic_chain_map, relative_intersection_homology, Coefficients, FilteredComplex, FilteredNeighborhood, IcOptions,
    IntersectionChains, Perversity, SimplicialMap,
};
use crate::simplicial::{Simplex, SimplicialComplex, Subcomplex};

/// A filtered complex with its intersection chains and their filtration.
#[derive(Clone, Debug)]
pub struct FilteredIc {
    pub space: FilteredComplex,
    pub ic: IntersectionChains,
    pub filtered: FilteredChainComplex,
}

fn filtered_ic(space: &FilteredComplex, nbhd: &FilteredNeighborhood, p: &Perversity, ring: Ring) -> Result<FilteredIc> {
    let deg = |s: &Simplex| nbhd.degree(s);
    let opts = IcOptions { ring, coefficients: Coefficients::Constant, degree: Some(&deg) };
    let ic = IntersectionChains::build(space, p, &opts)?;
    let filtered = FilteredChainComplex::from_ic(&ic)?;
    Ok(FilteredIc { space: space.clone(), ic, filtered })
}

/// `J^s`: simplices of the neighborhood `N` whose retraction image lies in
/// the subdivided `s`-skeleton of the base. Intersection chains of `J^s` are
/// the span of basis elements of filtration degree at most `s`.
#[derive(Clone, Debug)]
pub struct SkeletalFiltration {
    pub nbhd: FilteredNeighborhood,
    pub perversity: Perversity,
    pub ring: Ring,
    pub full: FilteredIc,
}

/// One piece `(sigma~_alpha, boundary)` over a simplex `alpha` of the base.
#[derive(Clone, Debug)]
pub struct Piece {
    pub alpha: Simplex,
    pub piece: Subcomplex,
    pub boundary: Subcomplex,
}

fn check_retraction(nbhd: &FilteredNeighborhood) -> Result<()> {
    let rn = &nbhd.data;
    let base_vertices = rn.base_in_n.vertices(&rn.complex);
    for v in rn.complex.vertices() {
        let r = *rn
            .retraction
            .get(&v)
            .ok_or_else(|| Error::InvalidConstruction(format!("retraction undefined at vertex {v}")))?;
        if !base_vertices.contains(&r) {
            return Err(Error::InvalidConstruction(format!("retraction sends {v} outside the base")));
        }
        if base_vertices.contains(&v) && r != v {
            return Err(Error::InvalidConstruction(format!("retraction moves the base vertex {v}")));
        }
    }
    for s in rn.complex.all_simplices() {
        if !rn.base_in_n.contains_simplex(&rn.complex, &rn.retract(s)) {
            return Err(Error::InvalidConstruction(format!("retraction is not simplicial on {s}")));
        }
    }
    Ok(())
}

/// The skeletal filtration of the neighborhood of the bottom stratum `X_k`.
pub fn skeletal_filtration(space: &FilteredComplex, base_level: usize, p: &Perversity, ring: Ring) -> Result<SkeletalFiltration> {
    if space.bottom_level() != Some(base_level) {
        return Err(Error::Filtration(format!(
            "X_{base_level} is not the bottom stratum (bottom level {:?})",
            space.bottom_level()
        )));
    }
    let nbhd = space.neighborhood(base_level)?;
    check_retraction(&nbhd)?;
    let full = filtered_ic(&nbhd.neighborhood, &nbhd, p, ring)?;
    Ok(SkeletalFiltration { nbhd, perversity: p.clone(), ring, full })
}

/// The frontier of the neighborhood with inherited strata: the model of `N - X_k`.
pub fn deleted_neighborhood(nbhd: &FilteredNeighborhood) -> Result<FilteredComplex> {
    if nbhd.frontier.complex().is_empty() {
        return Err(Error::NotSubcomplex("neighborhood has an empty frontier".into()));
    }
    Ok(nbhd.frontier.clone())
}

impl SkeletalFiltration {
    pub fn base_dimension(&self) -> usize {
        self.nbhd.base_dimension()
    }

    pub fn j(&self, s: usize) -> Subcomplex {
        self.nbhd.data.skeletal_preimage(s)
    }

    /// The subdivided `s`-skeleton of the base inside `N`.
    pub fn b(&self, s: usize) -> Subcomplex {
        let rn = &self.nbhd.data;
        Subcomplex::from_predicate(&rn.complex, |x| rn.base_in_n.contains_simplex(&rn.complex, x) && rn.degree(x) <= s)
    }

    /// Whether `J^s` is exactly the retraction preimage of `B^s` for every `s`.
    pub fn preimages_match(&self) -> bool {
        let rn = &self.nbhd.data;
        (0..=self.base_dimension()).all(|s| {
            let b = self.b(s);
            let j = self.j(s);
            rn.complex
                .all_simplices()
                .all(|x| j.contains_simplex(&rn.complex, x) == b.contains_simplex(&rn.complex, &rn.retract(x)))
        })
    }

    /// Pieces over the `s`-simplices of the base.
    pub fn pieces(&self, s: usize) -> Vec<Piece> {
        let base = self.nbhd.base_complex();
        if s >= base.levels() {
            return Vec::new();
        }
        base.simplices(s)
            .iter()
            .map(|alpha| {
                let (piece, boundary) = self.nbhd.data.piece(alpha);
                Piece { alpha: alpha.clone(), piece, boundary }
            })
            .collect()
    }

    /// The deleted neighborhood with the restricted filtration.
    pub fn deleted(&self) -> Result<FilteredIc> {
        filtered_ic(&deleted_neighborhood(&self.nbhd)?, &self.nbhd, &self.perversity, self.ring)
    }

    /// Inclusion of the deleted neighborhood as a filtered chain map.
    pub fn inclusion(&self, deleted: &FilteredIc) -> Result<ChainMap> {
        let src = deleted.space.complex();
        let tgt = self.full.space.complex();
        let id: HashMap<usize, usize> = src.vertices().into_iter().map(|v| (v, v)).collect();
        let f = SimplicialMap::new(src, tgt, id)?;
        let map = ic_chain_map(&f, &deleted.ic, &self.full.ic, src, tgt)?;
        map.check(&deleted.ic.chain, &self.full.ic.chain)?;
        Ok(map)
    }

    /// The link of a base vertex: frontier simplices over it, with strata
    /// shifted down by one so that its closed cone has the local codimension.
    pub fn vertex_link(&self, v: usize) -> Result<FilteredComplex> {
        let rn = &self.nbhd.data;
        let frontier = &self.nbhd.frontier;
        let at = Simplex::vertex(v);
        let sub = Subcomplex::from_predicate(frontier.complex(), |x| rn.base_carrier(x) == at);
        let complex = sub.to_complex(frontier.complex());
        let codim = frontier.n() - self.nbhd.base_level;
        let levels = complex.vertices().into_iter().map(|w| (w, frontier.vertex_level(w) - 1 - self.nbhd.base_level)).collect();
        FilteredComplex::from_levels(complex, codim - 1, &levels)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E1DecompositionRow {
    pub p: usize,
    pub q: usize,
    pub e1: usize,
    /// `sum_alpha dim IH_{p+q}(sigma~_alpha, boundary)`.
    pub pieces: usize,
    pub pass: bool,
}

/// `dim E^1_{p,q} = sum over p-simplices alpha of dim IH_{p+q}(piece, boundary)`.
pub fn e1_decomposition(sf: &SkeletalFiltration, ss: &SpectralSequence) -> Result<Vec<E1DecompositionRow>> {
    let n_top = sf.full.ic.chain.len();
    let rn = &sf.nbhd.data;
    let mut rows = Vec::new();
    for p in 0..=sf.base_dimension() {
        let mut sums = vec![0usize; n_top];
        for piece in sf.pieces(p) {
            let fc = sf.full.space.restrict(&piece.piece);
            let alpha = piece.alpha.clone();
            let a = Subcomplex::from_predicate(fc.complex(), |x| rn.base_carrier(x) != alpha);
            let h = relative_intersection_homology(&fc, &a, &sf.perversity, sf.ring)?;
            for (i, s) in sums.iter_mut().enumerate() {
                *s += h.betti(i);
            }
        }
        for (n, &pieces) in sums.iter().enumerate().skip(p) {
            let e1 = ss.dim(1, p, n - p);
            if e1 == 0 && pieces == 0 {
                continue;
            }
            rows.push(E1DecompositionRow { p, q: n - p, e1, pieces, pass: e1 == pieces });
        }
    }
    Ok(rows)
}

/// Base of the stalk systems: a circle with gluing, or isolated points.
#[derive(Clone, Debug)]
pub enum StalkBase {
    /// The `m`-gon; the gluing acts on the closing edge.
    Circle { m: usize, phi: HashMap<usize, usize> },
    /// Isolated points with isomorphic links.
    Points(usize),
}

/// Stalk systems `IH_q(L)` and `IH_q(cL)` over the base with the stalk
/// comparison `IH_q(L) -> IH_q(cL)` in the same bases.
#[derive(Clone, Debug)]
pub struct FiberDegree {
    pub q: usize,
    pub link: StalkSystem,
    pub cone: StalkSystem,
    pub comparison: IntMatrix,
    pub below_threshold: bool,
    pub isomorphism: bool,
    pub zero: bool,
    pub equivariant: bool,
}

#[derive(Clone, Debug)]
pub struct FiberStalks {
    pub base: SimplicialComplex,
    /// `codim - 1 - p(codim)`.
    pub threshold: i64,
    pub degrees: Vec<FiberDegree>,
}

/// Build the stalk systems from a link and the gluing data.
pub fn fiber_stalks(link: &FilteredComplex, base: &StalkBase, p: &Perversity, ring: Ring) -> Result<FiberStalks> {
    let cone = link.cone();
    let n = cone.n();
    let pc = p.truncate(n);
    let threshold = n as i64 - 1 - pc.value(n);
    let apex = cone.cone_apex();
    let l_in_cone = cone.restrict(&Subcomplex::from_predicate(cone.complex(), |s| !s.contains_vertex(apex)));
    let phi = match base {
        StalkBase::Circle { phi, .. } => Some(phi),
        StalkBase::Points(_) => None,
    };
    let comparisons = stalk_comparison_map(link, phi, &pc, ring)?;
    let monodromies = match phi {
        Some(phi) => {
            let mut full = phi.clone();
            full.insert(apex, apex);
            Some((fiber_monodromy(&l_in_cone, phi, &pc, ring)?, fiber_monodromy(&cone, &full, &pc, ring)?))
        }
        None => None,
    };
    let base_complex = match base {
        StalkBase::Circle { m, .. } => SimplicialComplex::close((0..*m).map(|j| vec![j, (j + 1) % m]))?,
        StalkBase::Points(k) => SimplicialComplex::close((0..*k).map(|j| vec![j]))?,
    };
    let mut degrees = Vec::new();
    for c in comparisons {
        let q = c.degree;
        let (rl, rc) = (c.map.source_orders.len(), c.map.target_orders.len());
        let (link_sys, cone_sys) = match (&monodromies, base) {
            (Some((ml, mc)), StalkBase::Circle { m, .. }) => {
                (stalk_system_from_gluing(&ml[q].matrix, *m, ring)?, stalk_system_from_gluing(&mc[q].matrix, *m, ring)?)
            }
            _ => (StalkSystem::trivial(base_complex.clone(), ring, rl), StalkSystem::trivial(base_complex.clone(), ring, rc)),
        };
        degrees.push(FiberDegree {
            q,
            link: link_sys,
            cone: cone_sys,
            comparison: c.map.matrix.clone(),
            below_threshold: c.below_threshold,
            isomorphism: c.isomorphism,
            zero: c.zero,
            equivariant: c.equivariant,
        });
    }
    Ok(FiberStalks { base: base_complex, threshold, degrees })
}

/// Which stalks drive the comparison: the deleted neighborhood sees the link,
/// the full neighborhood the closed cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StalkVariant {
    Link,
    Cone,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2Row {
    pub p: usize,
    pub q: usize,
    pub e2: usize,
    pub twisted: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2Report {
    pub variant: StalkVariant,
    pub rows: Vec<E2Row>,
    pub pass: bool,
}

fn twisted_bettis(base: &SimplicialComplex, sys: &StalkSystem) -> Result<Vec<usize>> {
    Ok(homology(&twisted_cellular_complex(base, sys)?).bettis())
}

/// `dim E^2_{p,q} = dim H_p(base; S_q)` for all `p, q`.
pub fn e2_vs_twisted(ss: &SpectralSequence, stalks: &FiberStalks, variant: StalkVariant) -> Result<E2Report> {
    let max_q = ss.max_q().max(stalks.degrees.len().saturating_sub(1));
    let max_p = ss.max_p.max(stalks.base.dimension().unwrap_or(0));
    let mut rows = Vec::new();
    for q in 0..=max_q {
        let twisted = match stalks.degrees.get(q) {
            Some(d) => twisted_bettis(&stalks.base, if variant == StalkVariant::Link { &d.link } else { &d.cone })?,
            None => Vec::new(),
        };
        for p in 0..=max_p {
            let e2 = if ss.last_page() >= 2 { ss.dim(2, p, q) } else { ss.dim(1, p, q) };
            let t = twisted.get(p).copied().unwrap_or(0);
            if e2 == 0 && t == 0 {
                continue;
            }
            rows.push(E2Row { p, q, e2, twisted: t, pass: e2 == t });
        }
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(E2Report { variant, rows, pass })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SsMapRow {
    pub p: usize,
    pub q: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    /// Rank of `id (x) comparison` on twisted cellular homology.
    pub expected_rank: usize,
    pub below_threshold: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SsMapCheck {
    pub map: SpectralSequenceMap,
    pub rows: Vec<SsMapRow>,
    /// The stalk comparison is an isomorphism below the threshold, zero above,
    /// and commutes with the monodromies.
    pub stalk_pattern: bool,
    pub pass: bool,
}

/// `id (x) C`: `Gamma(B; S_L) -> Gamma(B; S_cL)`.
fn tensor_comparison(base: &SimplicialComplex, d: &FiberDegree) -> ChainMap {
    let (rl, rc) = (d.link.rank, d.cone.rank);
    let columns = (0..base.levels())
        .map(|k| {
            (0..base.count(k))
                .flat_map(|i| {
                    (0..rl).map(move |a| {
                        (0..rc)
                            .filter(|&b| d.comparison.get(b, a) != &num_bigint::BigInt::from(0))
                            .map(|b| (i * rc + b, d.comparison.get(b, a).clone()))
                            .collect()
                    })
                })
                .collect()
        })
        .collect();
    ChainMap::new(columns)
}

/// The map of spectral sequences induced by the deleted neighborhood
/// inclusion, compared on `E^2` with base identity tensor stalk comparison.
pub fn ss_map_deleted_to_full(sf: &SkeletalFiltration, stalks: &FiberStalks) -> Result<SsMapCheck> {
    let deleted = sf.deleted()?;
    let inc = sf.inclusion(&deleted)?;
    let map = spectral_sequence_map(&deleted.filtered, &sf.full.filtered, &inc)?;
    let r = if map.source.last_page() >= 2 && map.target.last_page() >= 2 { 2 } else { 1 };
    let mut rows = Vec::new();
    for d in &stalks.degrees {
        let gl = twisted_cellular_complex(&stalks.base, &d.link)?;
        let gc = twisted_cellular_complex(&stalks.base, &d.cone)?;
        let f = tensor_comparison(&stalks.base, d);
        f.check(&gl, &gc)?;
        let (hl, hc) = (ReducedHomology::new(&gl), ReducedHomology::new(&gc));
        for p in 0..hl.len() {
            let expected_rank = induced_homology_map(&f, &hl, &hc, p)?.rank();
            let (sd, td) = (hl.rank(p), hc.rank(p));
            let (source_dim, target_dim, rank) = match map.cell(r, p, d.q) {
                Some(c) => (c.source_dim, c.target_dim, c.rank),
                None => (0, 0, 0),
            };
            if source_dim == 0 && target_dim == 0 && sd == 0 && td == 0 {
                continue;
            }
            let shape = if d.below_threshold { rank == source_dim && rank == target_dim } else { rank == 0 };
            rows.push(SsMapRow {
                p,
                q: d.q,
                source_dim,
                target_dim,
                rank,
                expected_rank,
                below_threshold: d.below_threshold,
                pass: shape && rank == expected_rank && source_dim == sd && target_dim == td,
            });
        }
    }
    let stalk_pattern = stalks
        .degrees
        .iter()
        .all(|d| d.equivariant && if d.below_threshold { d.isomorphism } else { d.zero });
    let pass = stalk_pattern && map.commutes_with_differentials && rows.iter().all(|r| r.pass);
    Ok(SsMapCheck { map, rows, stalk_pattern, pass })
}

/// Pages of the full and deleted neighborhoods.
pub fn neighborhood_pages(sf: &SkeletalFiltration) -> Result<(SpectralSequence, SpectralSequence)> {
    Ok((compute_pages(&sf.full.filtered)?, compute_pages(&sf.deleted()?.filtered)?))
}
