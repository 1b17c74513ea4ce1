//! Plain-text format for filtered complexes.
//!
//! ```text
//! # comment
//! dim 2
//! s 0 1 3
//! s 1 2 3
//! stratum 0: 3
//! ```
//!
//! `dim` is the formal dimension, each `s` line a simplex (faces are added),
//! and `stratum i: ...` lists the vertices of level `i`: `X_i` is the full
//! subcomplex on vertices of level at most `i`. Unlisted vertices lie in the
//! top stratum.

use std::collections::HashMap;
use std::fmt::Write;

use super::FilteredComplex;
use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_vertices(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split_whitespace().map(|t| t.parse::<usize>().map_err(|_| parse_err(line, format!("bad vertex `{t}`")))).collect()
}

pub fn parse_complex(text: &str) -> Result<FilteredComplex> {
    let mut n: Option<usize> = None;
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut levels: HashMap<usize, usize> = HashMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match head {
            "dim" => {
                if n.is_some() {
                    return Err(parse_err(line_no, "repeated `dim`"));
                }
                n = Some(rest.trim().parse().map_err(|_| parse_err(line_no, "bad dimension"))?);
            }
            "s" => {
                let v = parse_vertices(line_no, rest)?;
                if v.is_empty() {
                    return Err(parse_err(line_no, "empty simplex"));
                }
                gens.push(v);
            }
            "stratum" => {
                let (i, vs) = rest.split_once(':').ok_or_else(|| parse_err(line_no, "expected `stratum i: v ...`"))?;
                let i: usize = i.trim().parse().map_err(|_| parse_err(line_no, "bad stratum index"))?;
                for v in parse_vertices(line_no, vs)? {
                    if levels.insert(v, i).is_some_and(|old| old != i) {
                        return Err(parse_err(line_no, format!("vertex {v} listed in two strata")));
                    }
                }
            }
            other => return Err(parse_err(line_no, format!("unknown directive `{other}`"))),
        }
    }
    let complex = SimplicialComplex::close(gens).map_err(|e| parse_err(0, e.to_string()))?;
    let n = n.or(complex.dimension()).unwrap_or(0);
    for v in levels.keys() {
        if !complex.contains(&crate::simplicial::Simplex::vertex(*v)) {
            return Err(parse_err(0, format!("stratum vertex {v} is not in the complex")));
        }
    }
    FilteredComplex::from_levels(complex, n, &levels)
}

pub fn write_complex(fc: &FilteredComplex) -> String {
    let mut out = String::new();
    writeln!(out, "dim {}", fc.n()).unwrap();
    for s in fc.complex().maximal_simplices() {
        let v: Vec<String> = s.vertices().iter().map(ToString::to_string).collect();
        writeln!(out, "s {}", v.join(" ")).unwrap();
    }
    let mut by_level: Vec<Vec<usize>> = vec![Vec::new(); fc.n()];
    for v in fc.complex().vertices() {
        let l = fc.vertex_level(v);
        if l < fc.n() {
            by_level[l].push(v);
        }
    }
    for (i, vs) in by_level.iter().enumerate().filter(|(_, vs)| !vs.is_empty()) {
        let v: Vec<String> = vs.iter().map(ToString::to_string).collect();
        writeln!(out, "stratum {i}: {}", v.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# cone on a circle\ndim 2\ns 0 1 3\ns 1 2 3\ns 0 2 3\nstratum 0: 3\n";
        let fc = parse_complex(text).unwrap();
        assert_eq!(fc.vertex_level(3), 0);
        assert_eq!(fc.vertex_level(0), 2);
        assert_eq!(parse_complex(&write_complex(&fc)).unwrap(), fc);
        assert!(matches!(parse_complex("dim 2\nq 1"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_complex("s 0 1\nstratum 0: 7").is_err());
    }
}
