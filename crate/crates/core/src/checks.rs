//! Verification suites: each runs a family of cases and reports pass/fail
//! with a short detail line per case.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::morse::{reduce, Reduced};
use crate::algebra::exact::{check_mayer_vietoris, check_triple_sequence, Ambient, Span};
use crate::algebra::ring::Integers;
use crate::algebra::{HomologyResult, Ring, SparseVec};
use crate::corpus::{self, CorpusSpace};
use crate::error::{Error, Result};
use crate::perverse::{
    allowable, cone_formula_check, intersection_chain_complex, intersection_homology, FilteredComplex, Perversity,
};
use crate::simplicial::{prism_decomposition, star_link, Simplex, SimplicialComplex, Subcomplex};
use crate::spectral::{analyze_corpus_space, skeletal_filtration, NeighborhoodAnalysis, SCHEMA_VERSION};

pub const SUITES: [&str; 7] = ["cone-formula", "exactness", "prism", "subdivision", "e2", "ss-map", "golden"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
    pub pass: bool,
    /// Wall time; not serialized so reports stay byte-identical across runs.
    #[serde(skip)]
    pub millis: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema_version: u32,
    pub suites: Vec<SuiteReport>,
    pub pass: bool,
}

impl CheckReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.pass)
    }
}

/// One expected `IH` value; `torsion` lists `(degree, coefficients)` over `Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenEntry {
    pub space: String,
    pub perversity: Vec<i64>,
    pub bettis: Vec<usize>,
    #[serde(default)]
    pub torsion: Vec<(usize, Vec<u64>)>,
}

/// The golden values shipped with the corpus.
pub fn corpus_golden() -> Vec<GoldenEntry> {
    corpus::all()
        .into_iter()
        .flat_map(|s| {
            let name = s.name;
            s.golden.into_iter().map(move |g| GoldenEntry {
                space: name.to_string(),
                perversity: g.perversity,
                bettis: g.bettis,
                torsion: g.torsion,
            })
        })
        .collect()
}

pub fn parse_golden(text: &str) -> Result<Vec<GoldenEntry>> {
    serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
}

fn case(name: impl Into<String>, outcome: Result<(bool, String)>) -> CaseResult {
    match outcome {
        Ok((pass, detail)) => CaseResult { name: name.into(), pass, detail },
        Err(e) => CaseResult { name: name.into(), pass: false, detail: format!("error: {e}") },
    }
}

fn finish(suite: &str, start: Instant, cases: Vec<CaseResult>) -> SuiteReport {
    let pass = !cases.is_empty() && cases.iter().all(|c| c.pass);
    SuiteReport { suite: suite.to_string(), cases, pass, millis: start.elapsed().as_millis() }
}

/// Run one suite. `golden` replaces the corpus golden values for `golden`.
pub fn run_suite(name: &str, golden: Option<&[GoldenEntry]>) -> Result<SuiteReport> {
    match name {
        "cone-formula" => Ok(cone_formula_suite()),
        "exactness" => Ok(exactness_suite()),
        "prism" => Ok(prism_suite()),
        "subdivision" => Ok(subdivision_suite()),
        "e2" => Ok(e2_suite(&neighborhood_analyses())),
        "ss-map" => Ok(ss_map_suite(&neighborhood_analyses())),
        "golden" => Ok(golden_suite(golden.map(|g| g.to_vec()).unwrap_or_else(corpus_golden))),
        other => Err(Error::Other(format!("unknown suite `{other}` (expected one of {}, all)", SUITES.join(", ")))),
    }
}

/// Run every suite, sharing the neighborhood analyses between `e2` and `ss-map`.
pub fn run_all(golden: Option<&[GoldenEntry]>) -> CheckReport {
    let analyses = neighborhood_analyses();
    let suites = vec![
        cone_formula_suite(),
        exactness_suite(),
        prism_suite(),
        subdivision_suite(),
        e2_suite(&analyses),
        ss_map_suite(&analyses),
        golden_suite(golden.map(|g| g.to_vec()).unwrap_or_else(corpus_golden)),
    ];
    let pass = suites.iter().all(|s| s.pass);
    CheckReport { schema_version: SCHEMA_VERSION, suites, pass }
}

fn fmt_bettis(h: &HomologyResult) -> String {
    (0..h.groups.len()).map(|d| h.describe(d)).collect::<Vec<_>>().join(", ")
}

// ---------------------------------------------------------------- cone formula

fn cone_formula_suite() -> SuiteReport {
    let start = Instant::now();
    let links = [
        ("circle", FilteredComplex::unfiltered(corpus::circle(3))),
        ("torus", FilteredComplex::unfiltered(corpus::torus7())),
        ("two_circles", FilteredComplex::unfiltered(corpus::two_circles())),
    ];
    let mut cases = Vec::new();
    for (name, link) in &links {
        for p in Perversity::all(link.n() + 1) {
            for ring in [Ring::Integers, Ring::Rationals] {
                cases.push(case(
                    format!("c({name}) {} over {ring}", p.name()),
                    cone_formula_check(link, &p, ring).map(|r| {
                        let dims: Vec<String> = r.rows.iter().map(|row| format!("{}", row.cone.betti)).collect();
                        (r.pass(), format!("threshold {}, IH(cL) betti [{}]", r.threshold, dims.join(", ")))
                    }),
                ));
            }
        }
    }
    finish("cone-formula", start, cases)
}

// ---------------------------------------------------------------- exactness

fn simplicial_ambient_parts(k: &SimplicialComplex) -> (Vec<usize>, Vec<Vec<SparseVec<BigInt>>>) {
    let c = k.chain_complex(Ring::Integers);
    (c.ranks().to_vec(), c.boundaries_in(&Integers))
}

/// Reduce a complex cancelling only unit pairs with equal labels, so each
/// union of label classes that was a subcomplex stays one. Returns the
/// reduced complex and the surviving indices of each label set.
fn reduce_labeled(
    ranks: &[usize],
    bd: &[Vec<SparseVec<BigInt>>],
    labels: &[Vec<usize>],
    sets: &[&dyn Fn(usize) -> bool],
) -> (Reduced<BigInt>, Vec<Vec<Vec<usize>>>) {
    let r = reduce(&Integers, ranks, bd, Some(labels));
    let deg = r.degrees.as_ref().expect("labels kept");
    let spans = sets
        .iter()
        .map(|keep| deg.iter().map(|ds| ds.iter().enumerate().filter(|(_, &l)| keep(l)).map(|(i, _)| i).collect()).collect())
        .collect();
    (r, spans)
}

/// Mayer-Vietoris for subcomplexes `A`, `B` of `K` on a reduction of `C(A u B)`.
fn mayer_vietoris_reduced(k: &SimplicialComplex, a: &Subcomplex, b: &Subcomplex) -> Result<(usize, usize, usize)> {
    let (ranks, bd) = simplicial_ambient_parts(k);
    let labels: Vec<Vec<usize>> = (0..k.levels())
        .map(|d| (0..k.count(d)).map(|i| usize::from(a.contains(d, i)) + 2 * usize::from(b.contains(d, i))).collect())
        .collect();
    if labels.iter().flatten().any(|&l| l == 0) {
        return Err(Error::InvalidConstruction("A and B do not cover the complex".into()));
    }
    let (r, spans) = reduce_labeled(&ranks, &bd, &labels, &[&|l| l & 1 == 1, &|l| l & 2 == 2]);
    let amb = Ambient { pid: &Integers, ranks: &r.ranks, boundaries: &r.boundaries, rational: false };
    let n = check_mayer_vietoris(&amb, &spans[0], &spans[1])?;
    Ok((n, ranks.iter().sum(), r.ranks.iter().sum()))
}

fn closed_star(k: &SimplicialComplex, v: usize) -> Subcomplex {
    star_link(k, &Subcomplex::full(k, &[v].into_iter().collect())).0
}

fn first_vertex(k: &SimplicialComplex) -> Result<usize> {
    k.vertices().first().copied().ok_or_else(|| Error::InvalidConstruction("empty complex".into()))
}

fn closed_star_pair(k: &SimplicialComplex) -> Result<(bool, String)> {
    let v = first_vertex(k)?;
    let star = closed_star(k, v);
    let (ranks, bd) = simplicial_ambient_parts(k);
    let labels: Vec<Vec<usize>> = (0..k.levels()).map(|d| (0..k.count(d)).map(|i| usize::from(!star.contains(d, i))).collect()).collect();
    let (r, spans) = reduce_labeled(&ranks, &bd, &labels, &[&|l| l == 0]);
    let amb = Ambient { pid: &Integers, ranks: &r.ranks, boundaries: &r.boundaries, rational: false };
    let n = check_triple_sequence(&amb, &Span::All, &Span::Basis(spans[0].clone()), &Span::Zero)?;
    Ok((true, format!("pair (K, st v{v}): {n} positions exact")))
}

fn star_deletion_mv(k: &SimplicialComplex) -> Result<(bool, String)> {
    let v = first_vertex(k)?;
    let deletion = Subcomplex::from_predicate(k, |s| !s.contains_vertex(v));
    let (n, cells, kept) = mayer_vietoris_reduced(k, &closed_star(k, v), &deletion)?;
    Ok((true, format!("K = st v{v} u del v{v}: {n} positions exact ({cells} cells reduced to {kept})")))
}

/// `J^1 = J^0 u (pieces over edges)` on simplicial chains of the neighborhood.
fn neighborhood_mv(space: &CorpusSpace, base_level: usize) -> Result<(bool, String)> {
    let sf = skeletal_filtration(&space.space, base_level, &Perversity::zero(space.space.n()), Ring::Integers)?;
    if sf.base_dimension() == 0 {
        return Ok((true, "point base: no edge pieces".into()));
    }
    let k = &sf.nbhd.data.complex;
    let j0 = sf.j(0);
    let mut edges = Subcomplex::empty(k);
    for piece in sf.pieces(1) {
        edges = edges.union(&piece.piece);
    }
    let j1 = sf.j(1);
    if j0.union(&edges) != j1 {
        return Ok((false, "J^0 and the edge pieces do not cover J^1".into()));
    }
    let sub = j1.to_complex(k);
    let pull = |x: &Subcomplex| Subcomplex::from_predicate(&sub, |t| x.contains_simplex(k, t));
    let (n, cells, kept) = mayer_vietoris_reduced(&sub, &pull(&j0), &pull(&edges))?;
    Ok((true, format!("J^1 = J^0 u edge pieces: {n} positions exact ({cells} cells reduced to {kept})")))
}

/// Long exact sequences of the triples `F_s >= F_{s-1} >= F_{s-2}` and of
/// the pairs `(IC, F_s)` for the skeletal filtration over `Z`, computed on a
/// filtered reduction (a filtered chain equivalence).
fn skeletal_triples(space: &CorpusSpace, base_level: usize, p: &Perversity) -> Result<(bool, String)> {
    let sf = skeletal_filtration(&space.space, base_level, p, Ring::Integers)?;
    let f = &sf.full.filtered;
    let r = reduce(&Integers, f.chain().ranks(), f.chain().boundaries(), Some(f.degrees()));
    let deg = r.degrees.as_ref().expect("filtered reduction keeps degrees");
    let span = |s: i64| -> Span<BigInt> {
        Span::Basis(deg.iter().map(|ds| ds.iter().enumerate().filter(|(_, &x)| x as i64 <= s).map(|(j, _)| j).collect()).collect())
    };
    let amb = Ambient { pid: &Integers, ranks: &r.ranks, boundaries: &r.boundaries, rational: false };
    let top = f.max_degree() as i64;
    let mut checked = 0;
    for s in 0..=top {
        checked += check_triple_sequence(&amb, &span(s), &span(s - 1), &span(s - 2))?;
        checked += check_triple_sequence(&amb, &Span::All, &span(s), &Span::Zero)?;
    }
    Ok((true, format!("{checked} positions exact over {} filtration steps", top + 1)))
}

fn exactness_suite() -> SuiteReport {
    let start = Instant::now();
    let mut cases = Vec::new();
    for space in corpus::all() {
        let k = space.space.complex();
        cases.push(case(format!("{} closed star pair", space.name), closed_star_pair(k)));
        cases.push(case(format!("{} star/deletion Mayer-Vietoris", space.name), star_deletion_mv(k)));
        if let Some(b) = space.base_level {
            cases.push(case(format!("{} neighborhood Mayer-Vietoris", space.name), neighborhood_mv(&space, b)));
            for g in &space.golden {
                let p = g.perversity();
                cases.push(case(format!("{} skeletal triples {}", space.name, p.name()), skeletal_triples(&space, b, &p)));
            }
        }
    }
    finish("exactness", start, cases)
}

// ---------------------------------------------------------------- prism

type Chain = BTreeMap<Simplex, i64>;

fn add(chain: &mut Chain, s: Simplex, c: i64) {
    let e = chain.entry(s.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        chain.remove(&s);
    }
}

fn boundary(chain: &Chain) -> Chain {
    let mut out = Chain::new();
    for (s, c) in chain {
        for (sign, f) in s.facets() {
            add(&mut out, f, sign * c);
        }
    }
    out
}

fn layer(s: &Simplex, t: usize) -> Simplex {
    Simplex::new(s.vertices().iter().map(|v| 2 * v + t).collect()).expect("distinct")
}

/// Staircase prism operator on a simplex with sorted vertices.
fn prism(s: &Simplex) -> Chain {
    let mut out = Chain::new();
    for ps in prism_decomposition(s.dim()) {
        let verts = ps.vertices.iter().map(|&(t, i)| 2 * s.vertices()[i] + t as usize).collect();
        add(&mut out, Simplex::new(verts).expect("distinct"), ps.sign);
    }
    out
}

/// `K x I` with vertex `(v, t)` as `2v + t`, strata `X_i x I` one level up.
pub fn cylinder(fc: &FilteredComplex) -> Result<FilteredComplex> {
    let mut gens = Vec::new();
    for s in fc.complex().maximal_simplices() {
        gens.extend(prism(&s).into_keys().map(|x| x.vertices().to_vec()));
    }
    let k = SimplicialComplex::close(gens)?;
    let levels: HashMap<usize, usize> = k.vertices().into_iter().map(|w| (w, fc.vertex_level(w / 2) + 1)).collect();
    FilteredComplex::from_levels(k, fc.n() + 1, &levels)
}

/// Extend a perversity by one dimension, repeating its last value.
fn extend_perversity(p: &Perversity) -> Result<Perversity> {
    let mut v = p.values().to_vec();
    v.push(*v.last().expect("nonempty"));
    Perversity::new(v)
}

fn prism_case(fc: &FilteredComplex, p: &Perversity) -> Result<(bool, String)> {
    let cyl = cylinder(fc)?;
    let pc = extend_perversity(p)?;
    let mut simplices = 0;
    for s in fc.complex().all_simplices().filter(|s| s.dim() <= 4) {
        if !allowable(fc, s, p)? {
            continue;
        }
        simplices += 1;
        let mut rhs = Chain::new();
        add(&mut rhs, layer(s, 1), 1);
        add(&mut rhs, layer(s, 0), -1);
        for (sign, f) in s.facets() {
            for (x, c) in prism(&f) {
                add(&mut rhs, x, -sign * c);
            }
        }
        let px = prism(s);
        if boundary(&px) != rhs {
            return Ok((false, format!("homotopy formula fails on {s}")));
        }
        for x in px.keys() {
            if !allowable(&cyl, x, &pc)? {
                return Ok((false, format!("prism simplex {x} over {s} is not allowable")));
            }
        }
    }
    // The prism of each intersection chain is an intersection chain of the cylinder.
    let ic = intersection_chain_complex(fc, p, Ring::Integers)?;
    let ic_cyl = intersection_chain_complex(&cyl, &pc, Ring::Integers)?;
    let (k, kc) = (fc.complex(), cyl.complex());
    for (d, basis) in ic.basis.iter().enumerate() {
        for b in basis {
            let mut px = Chain::new();
            for (i, c) in b {
                let c = i64::try_from(c).map_err(|_| Error::Other("coefficient overflow".into()))?;
                for (x, e) in prism(k.simplex(d, *i)) {
                    add(&mut px, x, c * e);
                }
            }
            let cells: SparseVec<BigInt> =
                px.iter().map(|(x, &c)| (kc.index_of(x).expect("prism simplex in cylinder"), BigInt::from(c))).collect();
            let mut cells = cells;
            cells.sort_by_key(|(i, _)| *i);
            if ic_cyl.coordinates(d + 1, &cells).is_none() {
                return Ok((false, format!("prism of an IC_{d} basis chain is not an intersection chain")));
            }
        }
    }
    Ok((true, format!("{simplices} allowable simplices, {} IC basis chains", ic.basis.iter().map(Vec::len).sum::<usize>())))
}

fn prism_suite() -> SuiteReport {
    let start = Instant::now();
    let mut cases = Vec::new();
    for space in corpus::all() {
        for g in &space.golden {
            let p = g.perversity();
            cases.push(case(format!("{} {}", space.name, p.name()), prism_case(&space.space, &p)));
        }
    }
    finish("prism", start, cases)
}

// ---------------------------------------------------------------- subdivision

fn subdivision_case(fc: &FilteredComplex, sd: &FilteredComplex, p: &Perversity) -> Result<(bool, String)> {
    let a = intersection_homology(fc, p, Ring::Integers)?;
    let b = intersection_homology(sd, p, Ring::Integers)?;
    Ok((a == b, format!("K: [{}]  sd K: [{}]", fmt_bettis(&a), fmt_bettis(&b))))
}

fn subdivision_suite() -> SuiteReport {
    let start = Instant::now();
    let mut cases = Vec::new();
    for space in corpus::all() {
        let n = space.space.n();
        let (sd, _) = space.space.subdivide();
        let mut ps = vec![Perversity::zero(n), Perversity::lower_middle(n), Perversity::upper_middle(n)];
        ps.dedup();
        for p in ps {
            cases.push(case(format!("{} {}", space.name, p.name()), subdivision_case(&space.space, &sd, &p)));
        }
    }
    finish("subdivision", start, cases)
}

// ---------------------------------------------------------------- spectral sequences

pub struct AnalysisCase {
    pub name: String,
    pub result: Result<NeighborhoodAnalysis>,
    pub millis: u128,
}

/// Neighborhood analyses of every corpus space with a base stratum, for
/// each golden perversity, over `Q` and `F_2`.
pub fn neighborhood_analyses() -> Vec<AnalysisCase> {
    let mut out = Vec::new();
    for space in corpus::all().into_iter().filter(|s| s.base_level.is_some()) {
        for g in &space.golden {
            let p = g.perversity();
            for ring in [Ring::Rationals, Ring::PrimeField(2)] {
                let start = Instant::now();
                let result = analyze_corpus_space(&space, &p, ring);
                out.push(AnalysisCase {
                    name: format!("{} {} over {ring}", space.name, p.name()),
                    result,
                    millis: start.elapsed().as_millis(),
                });
            }
        }
    }
    out
}

fn analysis_case(a: &AnalysisCase, f: impl Fn(&NeighborhoodAnalysis) -> (bool, String)) -> CaseResult {
    match &a.result {
        Ok(r) => {
            let (pass, detail) = f(r);
            CaseResult { name: a.name.clone(), pass, detail }
        }
        Err(e) => CaseResult { name: a.name.clone(), pass: false, detail: format!("error: {e}") },
    }
}

fn e2_suite(analyses: &[AnalysisCase]) -> SuiteReport {
    let start = Instant::now();
    let cases = analyses
        .iter()
        .map(|a| {
            analysis_case(a, |r| {
                let cells: Vec<String> = r.e2_full.rows.iter().map(|row| format!("({},{})={}", row.p, row.q, row.e2)).collect();
                let pass = r.e2_full.pass
                    && r.e2_deleted.pass
                    && r.d1_full.pass
                    && r.d1_deleted.pass
                    && r.full.pass()
                    && r.deleted.pass()
                    && r.abutment_matches_ih
                    && r.preimages_match
                    && r.e1_decomposition.iter().all(|x| x.pass);
                (pass, format!("E2 {}; collapses at {}", cells.join(" "), r.full.last_page()))
            })
        })
        .collect();
    let mut report = finish("e2", start, cases);
    report.millis += analyses.iter().map(|a| a.millis).sum::<u128>();
    report
}

fn ss_map_suite(analyses: &[AnalysisCase]) -> SuiteReport {
    let start = Instant::now();
    let cases = analyses
        .iter()
        .map(|a| {
            analysis_case(a, |r| {
                let pass = r.map.pass && r.map.map.commutes_with_differentials;
                (pass, format!("E2 map matches the stalk comparison: {}", r.map.stalk_pattern))
            })
        })
        .collect();
    let mut report = finish("ss-map", start, cases);
    report.millis += analyses.iter().map(|a| a.millis).sum::<u128>();
    report
}

// ---------------------------------------------------------------- golden

fn golden_case(g: &GoldenEntry) -> Result<(bool, String)> {
    let space = corpus::get(&g.space)?;
    let p = Perversity::new(g.perversity.clone())?;
    let q = intersection_homology(&space.space, &p, Ring::Rationals)?;
    let z = intersection_homology(&space.space, &p, Ring::Integers)?;
    let mut pass = q.bettis() == g.bettis && z.bettis() == g.bettis;
    for (d, t) in &g.torsion {
        let t: Vec<BigInt> = t.iter().map(|&x| x.into()).collect();
        pass &= z.torsion(*d) == t.as_slice();
    }
    let listed: Vec<usize> = g.torsion.iter().map(|(d, _)| *d).collect();
    pass &= (0..z.groups.len()).all(|d| listed.contains(&d) || z.torsion(d).is_empty());
    Ok((pass, format!("expected {:?}, got [{}]", g.bettis, fmt_bettis(&z))))
}

fn golden_suite(entries: Vec<GoldenEntry>) -> SuiteReport {
    let start = Instant::now();
    let cases = entries
        .iter()
        .map(|g| case(format!("{} {:?}", g.space, g.perversity), golden_case(g)))
        .collect();
    finish("golden", start, cases)
}
