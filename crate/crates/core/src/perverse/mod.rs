//! Perversities, filtered complexes and intersection homology.

mod cone;
mod filtered;
mod ic;
mod io;
mod maps;

pub use cone::{cone_formula_check, ConeFormulaReport, ConeFormulaRow};
pub use filtered::{FilteredComplex, FilteredNeighborhood};
pub use ic::{
    allowability_table, allowable, intersection_chain_complex, intersection_homology, relative_intersection_homology,
    Coefficients, IcOptions, IntersectionChains, Transport,
};
pub use io::{parse_complex, write_complex};
pub use maps::{ic_chain_map, induced_ih_map, simplicial_chain_image, SimplicialMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Goresky-MacPherson perversity `p(0), ..., p(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Perversity {
    values: Vec<i64>,
}

impl Perversity {
    /// Validate `p(0..=n)`: `p(0) = p(1) = p(2) = 0` and `p(k) <= p(k+1) <= p(k) + 1`.
    pub fn new(values: Vec<i64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Perversity { k: 0, reason: "no values".into() });
        }
        for (k, &v) in values.iter().enumerate().take(3) {
            if v != 0 {
                return Err(Error::Perversity { k, reason: format!("p({k}) must be 0, got {v}") });
            }
        }
        for k in 0..values.len() - 1 {
            let (a, b) = (values[k], values[k + 1]);
            if b < a || b > a + 1 {
                return Err(Error::Perversity {
                    k: k + 1,
                    reason: format!("p({}) = {b} does not satisfy p({k}) <= p({}) <= p({k}) + 1", k + 1, k + 1),
                });
            }
        }
        Ok(Perversity { values })
    }

    fn from_fn(n: usize, f: impl Fn(i64) -> i64) -> Self {
        Perversity { values: (0..=n as i64).map(|k| f(k).max(0)).collect() }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_fn(n, |_| 0)
    }

    /// `m(k) = floor((k - 2) / 2)`.
    pub fn lower_middle(n: usize) -> Self {
        Self::from_fn(n, |k| (k - 2).div_euclid(2))
    }

    /// `n(k) = floor((k - 1) / 2)`.
    pub fn upper_middle(n: usize) -> Self {
        Self::from_fn(n, |k| (k - 1).div_euclid(2))
    }

    /// `t(k) = k - 2`.
    pub fn top(n: usize) -> Self {
        Self::from_fn(n, |k| k - 2)
    }

    /// Parse an alias (`zero`, `lower-middle`, `upper-middle`, `top`) or a
    /// comma list `p(0),...,p(n)`. A shorter list is not extended.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        match s.trim() {
            "zero" | "0" => Ok(Self::zero(n)),
            "lower-middle" | "m" => Ok(Self::lower_middle(n)),
            "upper-middle" | "n" => Ok(Self::upper_middle(n)),
            "top" | "t" => Ok(Self::top(n)),
            list => {
                let values: std::result::Result<Vec<i64>, _> = list.split(',').map(|x| x.trim().parse::<i64>()).collect();
                let values = values.map_err(|_| Error::Perversity { k: 0, reason: format!("cannot parse `{list}`") })?;
                if values.len() != n + 1 {
                    return Err(Error::Perversity {
                        k: values.len(),
                        reason: format!("expected {} values p(0..={n}), got {}", n + 1, values.len()),
                    });
                }
                Self::new(values)
            }
        }
    }

    /// Formal dimension covered.
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    /// `p(k)`; codimensions beyond the stored range are an error in callers,
    /// so this panics.
    pub fn value(&self, k: usize) -> i64 {
        self.values[k]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// The same perversity on a lower formal dimension.
    pub fn truncate(&self, n: usize) -> Perversity {
        Perversity { values: self.values[..=n.min(self.n())].to_vec() }
    }

    /// Pointwise comparison.
    pub fn le(&self, other: &Perversity) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// All valid perversities on formal dimension `n`.
    pub fn all(n: usize) -> Vec<Perversity> {
        let mut out = vec![vec![0i64; 3.min(n + 1)]];
        for _ in 3..=n {
            let mut next = Vec::new();
            for v in out {
                let last = *v.last().expect("nonempty");
                for step in 0..=1 {
                    let mut w = v.clone();
                    w.push(last + step);
                    next.push(w);
                }
            }
            out = next;
        }
        out.into_iter().map(|values| Perversity { values }).collect()
    }

    /// Short name if this is a standard perversity.
    pub fn name(&self) -> String {
        let n = self.n();
        if *self == Self::zero(n) {
            "zero".into()
        } else if *self == Self::lower_middle(n) {
            "lower-middle".into()
        } else if *self == Self::upper_middle(n) {
            "upper-middle".into()
        } else if *self == Self::top(n) {
            "top".into()
        } else {
            self.to_string()
        }
    }
}

impl std::fmt::Display for Perversity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Perversity::new(vec![0, 0, 0, 0, 0]).is_ok());
        assert_eq!(Perversity::lower_middle(4).values(), &[0, 0, 0, 0, 1]);
        assert_eq!(Perversity::upper_middle(4).values(), &[0, 0, 0, 1, 1]);
        assert_eq!(Perversity::top(4).values(), &[0, 0, 0, 1, 2]);
        let err = Perversity::new(vec![0, 0, 1, 1]).unwrap_err();
        assert!(matches!(err, Error::Perversity { k: 2, .. }));
        assert!(Perversity::new(vec![0, 0, 0, 2]).is_err());
        assert_eq!(Perversity::parse("0,0,0,1", 3).unwrap(), Perversity::top(3));
        assert_eq!(Perversity::all(4).len(), 4);
        assert_eq!(Perversity::all(2).len(), 1);
        for p in Perversity::all(5) {
            assert!(Perversity::zero(5).le(&p) && p.le(&Perversity::top(5)));
        }
    }
}
