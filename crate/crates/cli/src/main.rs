//! Command-line front end: intersection homology, neighborhood spectral
//! sequences and verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use ihss::algebra::{homology, oracle_homology, HomologyResult};
use ihss::checks::{self, CheckReport, GoldenEntry, SuiteReport, SUITES};
use ihss::corpus::{self, CorpusSpace};
use ihss::localsys::{twisted_cellular_complex, twisted_ic, LocalSystem, StalkSystem};
use ihss::perverse::{parse_complex, FilteredComplex, IcOptions, IntersectionChains, Perversity};
use ihss::spectral::{analyze_corpus_space, NeighborhoodAnalysis, SpectralSequence, SCHEMA_VERSION};
use ihss::Ring;
use serde_json::json;

#[derive(Parser)]
#[command(name = "ihss", version, about = "Exact intersection homology and neighborhood spectral sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the JSON report here and print a summary instead.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List the corpus, or print its golden values.
    Corpus {
        /// Print the stored golden values as JSON.
        #[arg(long)]
        golden: bool,
        /// Recompute the golden values by full Smith normal form on the unreduced complexes.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Intersection homology of a corpus space or a complex file.
    Ih {
        /// Corpus name or path to a complex file.
        space: String,
        /// Alias (zero, lower-middle, upper-middle, top) or list p(0),...,p(n).
        #[arg(default_value = "zero")]
        perversity: String,
        /// Z, Q or Fp.
        #[arg(default_value = "Z")]
        ring: String,
        /// Local coefficient system file.
        #[arg(long, value_name = "FILE")]
        local_system: Option<PathBuf>,
        /// Also compute by full Smith normal form and compare.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Spectral sequences of the neighborhood of the bottom stratum and of its frontier.
    Ss {
        /// Corpus name or path to a complex file.
        space: String,
        /// Level of the base stratum (`bottom` or `apex` for the designated one).
        #[arg(long, default_value = "bottom")]
        base: String,
        #[arg(long, default_value = "zero")]
        perversity: String,
        /// Q or Fp.
        #[arg(long, default_value = "Q")]
        field: String,
        /// Stalk system over the base to compare against one row of E^2.
        #[arg(long, value_name = "FILE", requires = "stalk_degree")]
        stalk_system: Option<PathBuf>,
        /// Row `q` of E^2 compared with the homology of the base in the stalk system.
        #[arg(long, value_name = "Q", requires = "stalk_system")]
        stalk_degree: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Run a verification suite (or `all`).
    Check {
        suite: String,
        /// Golden values file replacing the corpus values.
        #[arg(long, value_name = "FILE")]
        golden: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
}

/// Failure kinds mapped to exit codes.
enum Failure {
    Verification(String),
    Input(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Corpus { golden, oracle, out } => cmd_corpus(golden, oracle, &out),
        Command::Ih { space, perversity, ring, local_system, oracle, out } => {
            cmd_ih(&space, &perversity, &ring, local_system.as_deref(), oracle, &out)
        }
        Command::Ss { space, base, perversity, field, stalk_system, stalk_degree, out } => {
            let stalk = stalk_system.zip(stalk_degree);
            cmd_ss(&space, &base, &perversity, &field, stalk.as_ref().map(|(f, q)| (f.as_path(), *q)), &out)
        }
        Command::Check { suite, golden, out } => cmd_check(&suite, golden.as_deref(), &out),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Print `json` to stdout, or write it to the report path and print `summary`.
fn emit(out: &Output, json: &serde_json::Value, summary: impl FnOnce() -> String) -> CmdResult {
    let text = serde_json::to_string_pretty(json)? + "\n";
    match &out.report {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            print!("{}", summary());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// A corpus entry by name, or a complex file wrapped as an entry.
fn load_space(name: &str) -> anyhow::Result<CorpusSpace> {
    if let Ok(space) = corpus::get(name) {
        return Ok(space);
    }
    let path = Path::new(name);
    if !path.exists() {
        bail!("`{name}` is neither a corpus space ({}) nor a file", corpus::NAMES.join(", "));
    }
    let fc = parse_complex(&read(path)?).with_context(|| format!("parsing {name}"))?;
    Ok(CorpusSpace {
        name: Box::leak(name.to_string().into_boxed_str()),
        description: "complex file",
        base_level: fc.bottom_level(),
        space: fc,
        bundle: None,
        golden: Vec::new(),
    })
}

fn parse_ring(s: &str) -> anyhow::Result<Ring> {
    Ok(s.parse::<Ring>()?)
}

fn bettis_line(h: &HomologyResult) -> String {
    (0..h.groups.len()).map(|d| format!("IH_{d} = {}", h.describe(d))).collect::<Vec<_>>().join("\n") + "\n"
}

// ---------------------------------------------------------------- corpus

fn golden_entry(space: &CorpusSpace, p: &Perversity) -> anyhow::Result<GoldenEntry> {
    let ic = IntersectionChains::build(&space.space, p, &IcOptions::new(Ring::Integers))?;
    let z = oracle_homology(&ic.chain);
    let torsion = (0..z.groups.len())
        .filter(|&d| !z.torsion(d).is_empty())
        .map(|d| {
            let t: Vec<u64> = z.torsion(d).iter().map(|x| u64::try_from(x).expect("small torsion")).collect();
            (d, t)
        })
        .collect();
    Ok(GoldenEntry { space: space.name.to_string(), perversity: p.values().to_vec(), bettis: z.bettis(), torsion })
}

fn cmd_corpus(golden: bool, oracle: bool, out: &Output) -> CmdResult {
    let stored = checks::corpus_golden();
    if oracle {
        let mut recomputed = Vec::new();
        for space in corpus::all() {
            for g in &space.golden {
                recomputed.push(golden_entry(&space, &g.perversity())?);
            }
        }
        let mismatches: Vec<String> = stored
            .iter()
            .zip(&recomputed)
            .filter(|(a, b)| a != b)
            .map(|(a, b)| format!("{} {:?}: stored {:?} {:?}, oracle {:?} {:?}", a.space, a.perversity, a.bettis, a.torsion, b.bettis, b.torsion))
            .collect();
        emit(out, &serde_json::to_value(&recomputed)?, || format!("{} golden values recomputed\n", recomputed.len()))?;
        if !mismatches.is_empty() {
            return Err(Failure::Verification(mismatches.join("; ")));
        }
        return Ok(());
    }
    if golden {
        return emit(out, &serde_json::to_value(&stored)?, || format!("{} golden values\n", stored.len()));
    }
    let spaces = corpus::all();
    let listing: Vec<serde_json::Value> = spaces
        .iter()
        .map(|s| {
            json!({
                "name": s.name,
                "description": s.description,
                "formal_dimension": s.space.n(),
                "f_vector": s.space.complex().f_vector(),
                "base_level": s.base_level,
            })
        })
        .collect();
    let mut text = String::new();
    for s in &spaces {
        let base = s.base_level.map_or("-".to_string(), |b| b.to_string());
        writeln!(text, "{:<20} n={} base={:<2} f={:?}  {}", s.name, s.space.n(), base, s.space.complex().f_vector(), s.description).unwrap();
    }
    match &out.report {
        Some(_) => emit(out, &json!({ "schema_version": SCHEMA_VERSION, "spaces": listing }), || text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------- ih

fn cmd_ih(space: &str, perversity: &str, ring: &str, local_system: Option<&Path>, oracle: bool, out: &Output) -> CmdResult {
    let space = load_space(space)?;
    let fc: &FilteredComplex = &space.space;
    let ring = parse_ring(ring)?;
    let p = Perversity::parse(perversity, fc.n())?;
    let ic = match local_system {
        Some(path) => {
            let sys = LocalSystem::parse(&read(path)?, fc, ring).with_context(|| format!("parsing {}", path.display()))?;
            twisted_ic(fc, &p, &sys)?
        }
        None => IntersectionChains::build(fc, &p, &IcOptions::new(ring))?,
    };
    let h = homology(&ic.chain);
    let mut report = json!({
        "schema_version": SCHEMA_VERSION,
        "space": space.name,
        "perversity": p,
        "ring": ring,
        "local_system": local_system.is_some(),
        "homology": h,
    });
    let mut agrees = true;
    if oracle {
        let o = oracle_homology(&ic.chain);
        agrees = o == h;
        report["oracle"] = json!({ "homology": o, "agrees": agrees });
    }
    emit(out, &report, || bettis_line(&h))?;
    if !agrees {
        return Err(Failure::Verification("reduced and brute-force homology differ".into()));
    }
    Ok(())
}

// ---------------------------------------------------------------- ss

fn page_table(ss: &SpectralSequence, r: usize) -> String {
    let mut s = String::new();
    let max_q = ss.max_q();
    writeln!(s, "E^{r}:").unwrap();
    for q in (0..=max_q).rev() {
        let row: Vec<String> = (0..=ss.max_p).map(|p| format!("{:>3}", ss.dim(r, p, q))).collect();
        writeln!(s, "  q={q:<2}{}", row.join("")).unwrap();
    }
    s
}

fn ss_summary(a: &NeighborhoodAnalysis, extra: &Option<serde_json::Value>) -> String {
    let mut s = String::new();
    writeln!(s, "{} {} over {}: base level {}, base dimension {}", a.space, a.perversity.name(), a.ring, a.base_level, a.base_dimension).unwrap();
    writeln!(s, "neighborhood, degenerates at E^{}", a.full.last_page()).unwrap();
    s += &page_table(&a.full, 2.min(a.full.last_page()));
    writeln!(s, "frontier, degenerates at E^{}", a.deleted.last_page()).unwrap();
    s += &page_table(&a.deleted, 2.min(a.deleted.last_page()));
    writeln!(s, "IH(N) betti {:?}, IH(frontier) betti {:?}", a.ih_neighborhood.bettis(), a.ih_deleted.bettis()).unwrap();
    writeln!(s, "E^2 map matches the stalk comparison: {}", a.map.stalk_pattern).unwrap();
    if let Some(x) = extra {
        writeln!(s, "stalk system row: {x}").unwrap();
    }
    writeln!(s, "verdict: {}", if a.pass() { "PASS" } else { "FAIL" }).unwrap();
    s
}

fn cmd_ss(space: &str, base: &str, perversity: &str, field: &str, stalk: Option<(&Path, usize)>, out: &Output) -> CmdResult {
    let mut space = load_space(space)?;
    let ring = parse_ring(field)?;
    if !ring.is_field() {
        return Err(Failure::Input(anyhow!("--field must be Q or Fp, got {ring}")));
    }
    match base {
        "bottom" | "apex" => {}
        level => {
            let level: usize = level.parse().map_err(|_| anyhow!("--base expects a level, `bottom` or `apex`"))?;
            if space.space.bottom_level() != Some(level) {
                return Err(Failure::Input(anyhow!("level {level} is not the bottom stratum of {}", space.name)));
            }
            space.base_level = Some(level);
        }
    }
    if space.base_level.is_none() {
        return Err(Failure::Input(anyhow!("{} has no singular stratum", space.name)));
    }
    let p = Perversity::parse(perversity, space.space.n())?;
    let a = analyze_corpus_space(&space, &p, ring)?;
    let mut report = serde_json::to_value(&a)?;
    let mut extra = None;
    let mut pass = a.pass();
    if let Some((path, q)) = stalk {
        let sf = ihss::spectral::skeletal_filtration(&space.space, a.base_level, &a.perversity, ring)?;
        let base_complex = sf.nbhd.base_complex();
        let sys = StalkSystem::parse(&read(path)?, base_complex.clone(), ring).with_context(|| format!("parsing {}", path.display()))?;
        let h = homology(&twisted_cellular_complex(&base_complex, &sys)?);
        let row: Vec<usize> = (0..=a.full.max_p).map(|p| a.full.dim(2.min(a.full.last_page()), p, q)).collect();
        let twisted: Vec<usize> = (0..=a.full.max_p).map(|p| h.betti(p)).collect();
        let agrees = row == twisted;
        pass &= agrees;
        let x = json!({ "q": q, "e2_row": row, "twisted_homology": twisted, "agrees": agrees });
        report["stalk_system"] = x.clone();
        extra = Some(x);
    }
    emit(out, &report, || ss_summary(&a, &extra))?;
    if !pass {
        return Err(Failure::Verification(format!("spectral sequence checks failed for {}", a.space)));
    }
    Ok(())
}

// ---------------------------------------------------------------- check

fn suite_lines(r: &SuiteReport) -> String {
    let mut s = String::new();
    for c in &r.cases {
        writeln!(s, "{} {}: {} ({})", r.suite, c.name, if c.pass { "PASS" } else { "FAIL" }, c.detail).unwrap();
    }
    writeln!(s, "{}: {} ({} cases)", r.suite, if r.pass { "PASS" } else { "FAIL" }, r.cases.len()).unwrap();
    s
}

fn cmd_check(suite: &str, golden: Option<&Path>, out: &Output) -> CmdResult {
    let golden = match golden {
        Some(path) => Some(checks::parse_golden(&read(path)?).with_context(|| format!("parsing {}", path.display()))?),
        None => None,
    };
    let report = if suite == "all" {
        checks::run_all(golden.as_deref())
    } else {
        if !SUITES.contains(&suite) {
            return Err(Failure::Input(anyhow!("unknown suite `{suite}`; expected one of {}, all", SUITES.join(", "))));
        }
        let r = checks::run_suite(suite, golden.as_deref())?;
        let pass = r.pass;
        CheckReport { schema_version: SCHEMA_VERSION, suites: vec![r], pass }
    };
    for r in &report.suites {
        eprintln!("{}: {} ms", r.suite, r.millis);
    }
    let text: String = report.suites.iter().map(suite_lines).collect();
    match &out.report {
        Some(_) => emit(out, &serde_json::to_value(&report)?, || text)?,
        None => print!("{text}"),
    }
    if !report.pass {
        let failed: Vec<&str> = report.suites.iter().filter(|s| !s.pass).map(|s| s.suite.as_str()).collect();
        return Err(Failure::Verification(format!("failing suites: {}", failed.join(", "))));
    }
    Ok(())
}
