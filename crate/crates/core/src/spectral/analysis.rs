//! End-to-end neighborhood analysis of a corpus space: both spectral
//! sequences, their cross-checks and the map between them.

use serde::{Deserialize, Serialize};

use super::pages::{compute_pages, d1_cross_check, D1Report, SpectralSequence, SCHEMA_VERSION};
use super::skeletal::{
    e1_decomposition, e2_vs_twisted, fiber_stalks, skeletal_filtration, ss_map_deleted_to_full, E1DecompositionRow,
    E2Report, FiberStalks, SkeletalFiltration, SsMapCheck, StalkBase, StalkVariant,
};
use crate::algebra::{homology, HomologyResult, Ring};
use crate::corpus::CorpusSpace;
use crate::error::{Error, Result};
use crate::perverse::{IntersectionChains, IcOptions, Perversity};

/// Stalk systems for a corpus space: from its bundle data over a circle, or
/// from the vertex links over a discrete base.
pub fn corpus_stalks(space: &CorpusSpace, sf: &SkeletalFiltration, p: &Perversity, ring: Ring) -> Result<FiberStalks> {
    if let Some(b) = &space.bundle {
        return fiber_stalks(&b.link, &StalkBase::Circle { m: b.m, phi: b.phi.clone() }, p, ring);
    }
    if sf.base_dimension() != 0 {
        return Err(Error::InvalidConstruction(format!("{} has a positive-dimensional base and no bundle data", space.name)));
    }
    let verts = sf.nbhd.base_complex().vertices();
    let links: Vec<_> = verts.iter().map(|&v| sf.vertex_link(v)).collect::<Result<_>>()?;
    let opts = IcOptions::new(ring);
    let first = IntersectionChains::build(&links[0], &p.truncate(links[0].n()), &opts)?.homology().bettis();
    for l in &links[1..] {
        if IntersectionChains::build(l, &p.truncate(l.n()), &opts)?.homology().bettis() != first {
            return Err(Error::InvalidConstruction("base vertices have different links".into()));
        }
    }
    fiber_stalks(&links[0], &StalkBase::Points(verts.len()), p, ring)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborhoodAnalysis {
    pub schema_version: u32,
    pub space: String,
    pub perversity: Perversity,
    pub ring: Ring,
    pub base_level: usize,
    pub base_dimension: usize,
    /// `IH` of the neighborhood and of its frontier by direct reduction.
    pub ih_neighborhood: HomologyResult,
    pub ih_deleted: HomologyResult,
    pub full: SpectralSequence,
    pub deleted: SpectralSequence,
    pub d1_full: D1Report,
    pub d1_deleted: D1Report,
    pub e2_full: E2Report,
    pub e2_deleted: E2Report,
    pub map: SsMapCheck,
    pub e1_decomposition: Vec<E1DecompositionRow>,
    /// `J^s` equals the retraction preimage of the subdivided base skeleton.
    pub preimages_match: bool,
    /// Total `E^infinity` per degree equals the directly computed `IH`.
    pub abutment_matches_ih: bool,
}

impl NeighborhoodAnalysis {
    pub fn pass(&self) -> bool {
        self.full.pass()
            && self.deleted.pass()
            && self.d1_full.pass
            && self.d1_deleted.pass
            && self.e2_full.pass
            && self.e2_deleted.pass
            && self.map.pass
            && self.e1_decomposition.iter().all(|r| r.pass)
            && self.preimages_match
            && self.abutment_matches_ih
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

fn abutment_matches(ss: &SpectralSequence, h: &HomologyResult) -> bool {
    let n = ss.abutment.len().max(h.groups.len());
    (0..n).all(|i| {
        let total: usize = ss.abutment.get(i).map_or(0, |row| row.dims_by_p.iter().sum());
        total == h.betti(i) && ss.abutment.get(i).map_or(0, |row| row.homology) == total
    })
}

/// Run every neighborhood check on a corpus space with a base stratum.
pub fn analyze_corpus_space(space: &CorpusSpace, p: &Perversity, ring: Ring) -> Result<NeighborhoodAnalysis> {
    if !ring.is_field() {
        return Err(Error::NotAField(ring.to_string()));
    }
    let base_level = space
        .base_level
        .ok_or_else(|| Error::InvalidConstruction(format!("{} has no designated base stratum", space.name)))?;
    let p = p.truncate(space.space.n());
    let sf = skeletal_filtration(&space.space, base_level, &p, ring)?;
    let deleted = sf.deleted()?;
    let stalks = corpus_stalks(space, &sf, &p, ring)?;
    let full = compute_pages(&sf.full.filtered)?;
    let del = compute_pages(&deleted.filtered)?;
    let ih_neighborhood = homology(&sf.full.ic.chain);
    let ih_deleted = homology(&deleted.ic.chain);
    let abutment_matches_ih = abutment_matches(&full, &ih_neighborhood) && abutment_matches(&del, &ih_deleted);
    Ok(NeighborhoodAnalysis {
        schema_version: SCHEMA_VERSION,
        space: space.name.to_string(),
        perversity: p.clone(),
        ring,
        base_level,
        base_dimension: sf.base_dimension(),
        d1_full: d1_cross_check(&sf.full.filtered)?,
        d1_deleted: d1_cross_check(&deleted.filtered)?,
        e2_full: e2_vs_twisted(&full, &stalks, StalkVariant::Cone)?,
        e2_deleted: e2_vs_twisted(&del, &stalks, StalkVariant::Link)?,
        map: ss_map_deleted_to_full(&sf, &stalks)?,
        e1_decomposition: e1_decomposition(&sf, &full)?,
        preimages_match: sf.preimages_match(),
        abutment_matches_ih,
        ih_neighborhood,
        ih_deleted,
        full,
        deleted: del,
    })
}
