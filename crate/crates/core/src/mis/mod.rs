//! Maximal independent sets: an exhaustive backtracking enumerator and an
//! independent slice-transfer counter.

mod backtrack;
mod transfer;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GridFamily, GridGraph, Vertex};

pub use backtrack::{enumerate_mis, for_each_mis, mis_parity};
pub use transfer::{count_mis_dp, size_polynomial_dp};

pub const DEFAULT_ENUMERATION_BUDGET: usize = 36;
pub const DEFAULT_WIDTH_BUDGET: usize = 12;

/// Limits on instance size for the exponential engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Maximum vertex count for enumeration (hard ceiling 64).
    pub vertices: usize,
    /// Maximum slice width `m` for the transfer counter.
    pub width: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            vertices: DEFAULT_ENUMERATION_BUDGET,
            width: DEFAULT_WIDTH_BUDGET,
        }
    }
}

/// One maximal independent set, as a column-major membership mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MisSet {
    mask: u64,
}

impl MisSet {
    pub(crate) fn from_mask(mask: u64) -> Self {
        MisSet { mask }
    }

    /// Builds a set from vertices, checking that it really is an MIS of `g`.
    pub fn from_vertices(g: &GridGraph, vertices: &[Vertex]) -> Result<Self> {
        let mask = vertex_mask(g, vertices)?;
        match classify(g, mask) {
            MisVerdict::Valid => Ok(MisSet { mask }),
            verdict => Err(Error::IdentityViolated {
                context: "MisSet::from_vertices",
                detail: verdict.to_string(),
            }),
        }
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn size(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn contains(&self, index: usize) -> bool {
        self.mask >> index & 1 == 1
    }

    pub fn vertices(&self, g: &GridGraph) -> Vec<Vertex> {
        self.indices().map(|k| g.vertex(k)).collect()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> {
        let mask = self.mask;
        (0..64).filter(move |k| mask >> k & 1 == 1)
    }

    /// Members of slice `i` (1-based), as a row mask.
    pub fn slice_rows(&self, g: &GridGraph, i: usize) -> u64 {
        let m = g.m();
        (self.mask >> ((i - 1) * m)) & ((1u64 << m) - 1)
    }

    /// One line of the MIS stream export: `size;(i1,j1),(i2,j2),...`.
    pub fn export_line(&self, g: &GridGraph) -> String {
        let body: Vec<String> = self
            .vertices(g)
            .iter()
            .map(|v| format!("({},{})", v.i, v.j))
            .collect();
        format!("{};{}", self.size(), body.join(","))
    }
}

/// Orders membership masks lexicographically over the column-major vertex
/// sequence, with absence before presence.
pub fn canonical_cmp(a: u64, b: u64) -> std::cmp::Ordering {
    a.reverse_bits().cmp(&b.reverse_bits())
}

/// Parses one `size;(i,j),...` export line.
pub fn parse_export_line(g: &GridGraph, line: &str) -> Result<MisSet> {
    let (size, body) = line
        .split_once(';')
        .ok_or_else(|| Error::Parse(format!("missing ';' in {line:?}")))?;
    let size: usize = size
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("bad size {size:?}: {e}")))?;
    let mut vertices = Vec::new();
    for part in body.split("),").filter(|p| !p.trim().is_empty()) {
        let inner = part.trim().trim_start_matches('(').trim_end_matches(')');
        let (i, j) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("bad vertex {part:?}")))?;
        let p = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad coordinate {t:?}: {e}")))
        };
        vertices.push(Vertex::new(p(i)?, p(j)?));
    }
    if vertices.len() != size {
        return Err(Error::Parse(format!(
            "size field {size} but {} vertices",
            vertices.len()
        )));
    }
    MisSet::from_vertices(g, &vertices)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MisVerdict {
    Valid,
    NotIndependent(Vertex, Vertex),
    NotMaximal(Vertex),
}

impl fmt::Display for MisVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MisVerdict::Valid => f.write_str("valid MIS"),
            MisVerdict::NotIndependent(a, b) => {
                write!(f, "not independent: edge ({a})-({b})")
            }
            MisVerdict::NotMaximal(v) => write!(f, "not maximal: ({v}) uncovered"),
        }
    }
}

fn vertex_mask(g: &GridGraph, vertices: &[Vertex]) -> Result<u64> {
    if g.vertex_count() > 64 {
        return Err(Error::BudgetExceeded {
            what: "vertex mask",
            actual: g.vertex_count(),
            limit: 64,
        });
    }
    vertices
        .iter()
        .try_fold(0u64, |acc, &v| Ok(acc | 1 << g.index(v)?))
}

fn classify(g: &GridGraph, mask: u64) -> MisVerdict {
    let present = |k: usize| mask >> k & 1 == 1;
    for (a, b) in g.edges() {
        if present(a) && present(b) {
            return MisVerdict::NotIndependent(g.vertex(a), g.vertex(b));
        }
    }
    for u in (0..g.vertex_count()).rev() {
        if !present(u) && !g.neighbors(u).iter().any(|&w| present(w)) {
            return MisVerdict::NotMaximal(g.vertex(u));
        }
    }
    MisVerdict::Valid
}

/// Classifies a vertex set as an MIS, or names a witness. The witness edge is
/// the first offending edge in column-major order; the uncovered witness is
/// the last uncovered vertex.
pub fn verify_mis(g: &GridGraph, set: &[Vertex]) -> Result<MisVerdict> {
    Ok(classify(g, vertex_mask(g, set)?))
}

pub(crate) fn check_engine_family(g: &GridGraph, operation: &'static str) -> Result<()> {
    if g.family() == GridFamily::Torus {
        return Err(Error::FamilyUnsupported {
            operation,
            family: GridFamily::Torus,
        });
    }
    Ok(())
}

/// MIS counts by size: coefficient `r` is the number of MIS's with `r` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SizePolynomial {
    coefficients: Vec<BigUint>,
}

impl SizePolynomial {
    pub fn from_coefficients(mut coefficients: Vec<BigUint>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        SizePolynomial { coefficients }
    }

    /// Histogram of sizes over an explicit list of sets.
    pub fn from_sets(sets: &[MisSet]) -> Self {
        let mut coefficients = Vec::new();
        for s in sets {
            if coefficients.len() <= s.size() {
                coefficients.resize(s.size() + 1, BigUint::zero());
            }
            coefficients[s.size()] += 1u32;
        }
        Self::from_coefficients(coefficients)
    }

    pub fn coefficient(&self, r: usize) -> BigUint {
        self.coefficients.get(r).cloned().unwrap_or_default()
    }

    pub fn coefficients(&self) -> &[BigUint] {
        &self.coefficients
    }

    /// Nonzero coefficients keyed by size.
    pub fn nonzero(&self) -> BTreeMap<usize, BigUint> {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(r, c)| (r, c.clone()))
            .collect()
    }

    /// `|MIS(G)|`.
    pub fn total_count(&self) -> BigUint {
        self.coefficients.iter().sum()
    }

    /// `T(G)`, the sum of sizes over all MIS's.
    pub fn total_size(&self) -> BigUint {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(r, c)| c * BigUint::from(r))
            .sum()
    }

    /// `A(G) = T(G) / |MIS(G)|`; `None` for the empty polynomial.
    pub fn average(&self) -> Option<BigRational> {
        let count = self.total_count();
        if count.is_zero() {
            return None;
        }
        Some(BigRational::new(
            self.total_size().into(),
            count.into(),
        ))
    }
}

impl fmt::Display for SizePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .nonzero()
            .into_iter()
            .map(|(r, c)| format!("{r}:{c}"))
            .collect();
        f.write_str(&terms.join(" "))
    }
}

/// Exact average MIS size via the transfer counter.
pub fn average_size(g: &GridGraph, budgets: Budgets) -> Result<BigRational> {
    let poly = size_polynomial_dp(g, budgets)?;
    poly.average().ok_or_else(|| Error::IdentityViolated {
        context: "average_size",
        detail: "graph has no maximal independent sets".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: GridFamily, m: usize, n: usize) -> GridGraph {
        GridGraph::build(f, m, n).unwrap()
    }

    #[test]
    fn verify_examples() {
        let c4 = g(GridFamily::Grid, 2, 2);
        let d = [Vertex::new(1, 1), Vertex::new(2, 2)];
        assert_eq!(verify_mis(&c4, &d).unwrap(), MisVerdict::Valid);
        assert_eq!(
            verify_mis(&c4, &[Vertex::new(1, 1), Vertex::new(2, 1)]).unwrap(),
            MisVerdict::NotIndependent(Vertex::new(1, 1), Vertex::new(2, 1))
        );
        let g23 = g(GridFamily::Grid, 2, 3);
        assert_eq!(
            verify_mis(&g23, &[Vertex::new(1, 1)]).unwrap(),
            MisVerdict::NotMaximal(Vertex::new(3, 2))
        );
        assert!(verify_mis(&g23, &[Vertex::new(4, 1)]).is_err());
    }

    #[test]
    fn export_line_round_trip() {
        let g23 = g(GridFamily::Grid, 2, 3);
        let s = MisSet::from_vertices(&g23, &[Vertex::new(1, 1), Vertex::new(3, 2)]).unwrap();
        let line = s.export_line(&g23);
        assert_eq!(line, "2;(1,1),(3,2)");
        assert_eq!(parse_export_line(&g23, &line).unwrap(), s);
        assert!(parse_export_line(&g23, "3;(1,1),(3,2)").is_err());
        assert!(parse_export_line(&g23, "1;(1,1)").is_err());
    }

    #[test]
    fn canonical_order_is_lexicographic_on_membership() {
        // {v0} vs {v1}: v0 present first means it sorts after absence at v0
        assert_eq!(canonical_cmp(0b01, 0b10), std::cmp::Ordering::Greater);
        assert_eq!(canonical_cmp(0b100, 0b011), std::cmp::Ordering::Less);
    }

    #[test]
    fn polynomial_totals() {
        let p = SizePolynomial::from_coefficients(vec![0u32.into(), 0u32.into(), 2u32.into(), 3u32.into()]);
        assert_eq!(p.total_count(), 5u32.into());
        assert_eq!(p.total_size(), 13u32.into());
        assert_eq!(p.average().unwrap(), BigRational::new(13.into(), 5.into()));
        assert_eq!(p.to_string(), "2:2 3:3");
    }
}
