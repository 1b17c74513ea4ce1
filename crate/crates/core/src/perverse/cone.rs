//! The cone formula: for `L` of formal dimension `n - 1`,
//! `IH_i(cL) = IH_i(L)` for `i < n - 1 - p(n)` (induced by inclusion) and
//! `IH_i(cL) = 0` above.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::maps::ic_chain_map;
use super::{FilteredComplex, IcOptions, IntersectionChains, Perversity, SimplicialMap};
use crate::algebra::{induced_homology_map, HomologyGroup, ReducedHomology, Ring};
use crate::error::Result;
use crate::simplicial::Subcomplex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeFormulaRow {
    pub degree: usize,
    pub link: HomologyGroup,
    pub cone: HomologyGroup,
    /// Whether the formula predicts `IH_i(L)` (below the threshold) or zero.
    pub below_threshold: bool,
    /// Below the threshold: whether the inclusion `L -> cL` induces an isomorphism.
    pub inclusion_isomorphism: Option<bool>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeFormulaReport {
    pub perversity: Perversity,
    pub ring: Ring,
    /// `n - 1 - p(n)`.
    pub threshold: i64,
    /// `IH_0` of a cone is one summand per component of `L` even though the
    /// cone is connected: the apex is not allowable in degree 0.
    pub link_disconnected: bool,
    pub rows: Vec<ConeFormulaRow>,
}

impl ConeFormulaReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

fn zero_group(degree: usize) -> HomologyGroup {
    HomologyGroup { degree, betti: 0, torsion: Vec::new() }
}

/// Check the cone formula on the closed cone of `link` for perversity `p`
/// (given on formal dimension `link.n() + 1`).
pub fn cone_formula_check(link: &FilteredComplex, p: &Perversity, ring: Ring) -> Result<ConeFormulaReport> {
    let cone = link.cone();
    let n = cone.n();
    let p = p.truncate(n);
    let threshold = n as i64 - 1 - p.value(n);
    let h_link = IntersectionChains::build(link, &p.truncate(n - 1), &IcOptions::new(ring))?.homology();
    let ic_cone = IntersectionChains::build(&cone, &p, &IcOptions::new(ring))?;
    let h_cone = ic_cone.homology();
    // L inside the cone with the cone's strata: IC(L) there equals IC of L itself.
    let apex = cone.cone_apex();
    let sub = Subcomplex::from_predicate(cone.complex(), |s| !s.contains_vertex(apex));
    let l_in_cone = cone.restrict(&sub);
    let ic_l = IntersectionChains::build(&l_in_cone, &p, &IcOptions::new(ring))?;
    let id: HashMap<usize, usize> = l_in_cone.complex().vertices().into_iter().map(|v| (v, v)).collect();
    let inc = SimplicialMap::new(l_in_cone.complex(), cone.complex(), id)?;
    let chain_map = ic_chain_map(&inc, &ic_l, &ic_cone, l_in_cone.complex(), cone.complex())?;
    chain_map.check(&ic_l.chain, &ic_cone.chain)?;
    let rh_l = ReducedHomology::new(&ic_l.chain);
    let rh_cone = ReducedHomology::new(&ic_cone.chain);

    let mut rows = Vec::new();
    for i in 0..=n {
        let link_g = h_link.groups.get(i).cloned().unwrap_or_else(|| zero_group(i));
        let cone_g = h_cone.groups.get(i).cloned().unwrap_or_else(|| zero_group(i));
        let below = (i as i64) < threshold;
        let (inclusion_isomorphism, pass) = if below {
            let iso = if i < rh_l.len() { induced_homology_map(&chain_map, &rh_l, &rh_cone, i)?.is_isomorphism() } else { cone_g.betti == 0 && cone_g.torsion.is_empty() };
            (Some(iso), iso && link_g.betti == cone_g.betti && link_g.torsion == cone_g.torsion)
        } else {
            (None, cone_g.betti == 0 && cone_g.torsion.is_empty())
        };
        rows.push(ConeFormulaRow { degree: i, link: link_g, cone: cone_g, below_threshold: below, inclusion_isomorphism, pass });
    }
    Ok(ConeFormulaReport {
        perversity: p,
        ring,
        threshold,
        link_disconnected: link.complex().components().len() > 1,
        rows,
    })
}
