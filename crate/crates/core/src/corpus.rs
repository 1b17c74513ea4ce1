//! Named example spaces with golden intersection homology values.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::perverse::{FilteredComplex, Perversity};
use crate::simplicial::SimplicialComplex;

/// Bundle structure of a mapping torus `L -> E -> S^1` of a cone `cL`.
#[derive(Clone, Debug)]
pub struct BundleData {
    /// The link `L` (the fiber is its closed cone).
    pub link: FilteredComplex,
    /// Gluing automorphism of `L`, extended to the cone by fixing the apex.
    pub phi: HashMap<usize, usize>,
    /// Number of vertices of the base circle.
    pub m: usize,
}

/// Expected betti numbers over `Q` (torsion over `Z` where listed).
#[derive(Clone, Debug)]
pub struct Golden {
    pub perversity: Vec<i64>,
    pub bettis: Vec<usize>,
    /// `(degree, torsion coefficients)` over `Z`.
    pub torsion: Vec<(usize, Vec<u64>)>,
}

#[derive(Clone, Debug)]
pub struct CorpusSpace {
    pub name: &'static str,
    pub description: &'static str,
    pub space: FilteredComplex,
    /// Level of the base stratum whose neighborhood drives the spectral sequence.
    pub base_level: Option<usize>,
    pub bundle: Option<BundleData>,
    pub golden: Vec<Golden>,
}

pub const NAMES: [&str; 9] = [
    "sphere2",
    "torus7",
    "rp2_6",
    "cone_s1",
    "cone_t2",
    "pinched_torus",
    "susp_t2",
    "s1_x_cone_t2",
    "twisted_cone_bundle",
];

fn close(gens: Vec<Vec<usize>>) -> SimplicialComplex {
    SimplicialComplex::close(gens).expect("corpus complexes are valid")
}

pub fn sphere2() -> SimplicialComplex {
    close(vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
}

/// The 7-vertex torus.
pub fn torus7() -> SimplicialComplex {
    close((0..7).flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]]).collect())
}

/// The 6-vertex real projective plane.
pub fn rp2_6() -> SimplicialComplex {
    let t = [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1], [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3]];
    close(t.iter().map(|x| x.to_vec()).collect())
}

pub fn circle(m: usize) -> SimplicialComplex {
    close((0..m).map(|j| vec![j, (j + 1) % m]).collect())
}

/// Two disjoint triangle boundaries `{0,1,2}` and `{3,4,5}`.
pub fn two_circles() -> SimplicialComplex {
    close(vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![3, 4], vec![4, 5], vec![3, 5]])
}

/// Exchange of the two circles of [`two_circles`].
pub fn swap_two_circles() -> HashMap<usize, usize> {
    (0..6).map(|v| (v, (v + 3) % 6)).collect()
}

fn golden(perversity: &[i64], bettis: &[usize]) -> Golden {
    Golden { perversity: perversity.to_vec(), bettis: bettis.to_vec(), torsion: Vec::new() }
}

fn pinched_torus() -> FilteredComplex {
    // Annulus between the triangles a = {0,1,2} and b = {3,4,5}; both ends
    // coned to the vertex 6.
    let mut t = Vec::new();
    for i in 0..3 {
        let j = (i + 1) % 3;
        t.push(vec![i, j, i + 3]);
        t.push(vec![j, i + 3, j + 3]);
        t.push(vec![i, j, 6]);
        t.push(vec![i + 3, j + 3, 6]);
    }
    let levels = [(6, 0)].into_iter().collect();
    FilteredComplex::from_levels(close(t), 2, &levels).expect("valid")
}

fn suspension_t2() -> FilteredComplex {
    let t = torus7();
    let mut gens = Vec::new();
    for s in t.maximal_simplices() {
        for apex in [7, 8] {
            let mut v = s.vertices().to_vec();
            v.push(apex);
            gens.push(v);
        }
    }
    let levels = [(7, 0), (8, 0)].into_iter().collect();
    FilteredComplex::from_levels(close(gens), 3, &levels).expect("valid")
}

pub fn get(name: &str) -> Result<CorpusSpace> {
    let unfiltered = |k: SimplicialComplex| FilteredComplex::unfiltered(k);
    let space = match name {
        "sphere2" => CorpusSpace {
            name: "sphere2",
            description: "boundary of the tetrahedron",
            space: unfiltered(sphere2()),
            base_level: None,
            bundle: None,
            golden: vec![golden(&[0, 0, 0], &[1, 0, 1])],
        },
        "torus7" => CorpusSpace {
            name: "torus7",
            description: "7-vertex torus",
            space: unfiltered(torus7()),
            base_level: None,
            bundle: None,
            golden: vec![golden(&[0, 0, 0], &[1, 2, 1])],
        },
        "rp2_6" => CorpusSpace {
            name: "rp2_6",
            description: "6-vertex projective plane",
            space: unfiltered(rp2_6()),
            base_level: None,
            bundle: None,
            golden: vec![Golden { perversity: vec![0, 0, 0], bettis: vec![1, 0, 0], torsion: vec![(1, vec![2])] }],
        },
        "cone_s1" => CorpusSpace {
            name: "cone_s1",
            description: "closed cone on a circle, apex a point stratum",
            space: unfiltered(circle(3)).cone(),
            base_level: Some(0),
            bundle: None,
            golden: vec![golden(&[0, 0, 0], &[1, 0, 0])],
        },
        "cone_t2" => CorpusSpace {
            name: "cone_t2",
            description: "closed cone on the 7-vertex torus",
            space: unfiltered(torus7()).cone(),
            base_level: Some(0),
            bundle: None,
            golden: vec![golden(&[0, 0, 0, 0], &[1, 2, 0, 0]), golden(&[0, 0, 0, 1], &[1, 0, 0, 0])],
        },
        "pinched_torus" => CorpusSpace {
            name: "pinched_torus",
            description: "torus with a meridian circle collapsed to a point",
            space: pinched_torus(),
            base_level: Some(0),
            bundle: None,
            golden: vec![golden(&[0, 0, 0], &[1, 0, 1])],
        },
        "susp_t2" => CorpusSpace {
            name: "susp_t2",
            description: "suspension of the 7-vertex torus, two suspension points",
            space: suspension_t2(),
            base_level: Some(0),
            bundle: None,
            golden: vec![golden(&[0, 0, 0, 0], &[1, 2, 0, 1]), golden(&[0, 0, 0, 1], &[1, 0, 2, 1])],
        },
        "s1_x_cone_t2" => {
            let link = unfiltered(torus7());
            let (space, _) = link.cone().product_with_circle(3)?;
            CorpusSpace {
                name: "s1_x_cone_t2",
                description: "circle times the closed cone on the torus",
                space,
                base_level: Some(1),
                bundle: Some(BundleData { phi: link.complex().vertices().into_iter().map(|v| (v, v)).collect(), link, m: 3 }),
                golden: vec![golden(&[0, 0, 0, 0, 0], &[1, 3, 2, 0, 0]), golden(&[0, 0, 0, 1, 1], &[1, 1, 0, 0, 0])],
            }
        }
        "twisted_cone_bundle" => {
            let link = unfiltered(two_circles());
            let mut phi = swap_two_circles();
            let cone = link.cone();
            phi.insert(cone.cone_apex(), cone.cone_apex());
            let (space, _) = cone.mapping_torus(&phi, 3)?;
            phi.remove(&cone.cone_apex());
            CorpusSpace {
                name: "twisted_cone_bundle",
                description: "mapping torus of the cone on two circles under their exchange",
                space,
                base_level: Some(1),
                bundle: Some(BundleData { link, phi, m: 3 }),
                golden: vec![golden(&[0, 0, 0, 0], &[1, 1, 0, 0])],
            }
        }
        other => return Err(Error::UnknownCorpus(other.to_string())),
    };
    Ok(space)
}

/// All corpus spaces in listing order.
pub fn all() -> Vec<CorpusSpace> {
    NAMES.iter().map(|n| get(n).expect("listed")).collect()
}

impl Golden {
    pub fn perversity(&self) -> Perversity {
        Perversity::new(self.perversity.clone()).expect("golden perversities are valid")
    }
}
