//! The grid-like graph families on the vertex set `V_{m×n}`.
//!
//! Vertices are `(i, j)` with `i` the column in `1..=n` and `j` the row in
//! `1..=m`. Internally a vertex is the column-major index `(i-1)*m + (j-1)`,
//! so the vertices of slice `i` occupy one contiguous block.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Row bitmask within one slice; bit `r` is row `r + 1`.
pub type RowMask = u32;

/// Largest `m` whose slices fit a [`RowMask`].
pub const MAX_SLICE_WIDTH: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridFamily {
    Grid,
    FatCylinder,
    ThinCylinder,
    Mobius,
    /// `C_m □ C_n`. Only the parity checks accept it.
    Torus,
}

impl GridFamily {
    pub const ALL: [GridFamily; 5] = [
        GridFamily::Grid,
        GridFamily::FatCylinder,
        GridFamily::ThinCylinder,
        GridFamily::Mobius,
        GridFamily::Torus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GridFamily::Grid => "grid",
            GridFamily::FatCylinder => "fat-cylinder",
            GridFamily::ThinCylinder => "thin-cylinder",
            GridFamily::Mobius => "mobius",
            GridFamily::Torus => "torus",
        }
    }

    /// Whether consecutive slices wrap around (column `n` meets column 1).
    pub fn wraps_columns(self) -> bool {
        matches!(
            self,
            GridFamily::FatCylinder | GridFamily::Mobius | GridFamily::Torus
        )
    }

    /// Whether each slice is a cycle rather than a path.
    pub fn cyclic_slices(self) -> bool {
        matches!(self, GridFamily::ThinCylinder | GridFamily::Torus)
    }
}

impl fmt::Display for GridFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GridFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "grid" | "g" => Ok(GridFamily::Grid),
            "fat-cylinder" | "fat" | "band" | "b" => Ok(GridFamily::FatCylinder),
            "thin-cylinder" | "thin" | "tube" | "t" => Ok(GridFamily::ThinCylinder),
            "mobius" | "möbius" | "m" => Ok(GridFamily::Mobius),
            "torus" => Ok(GridFamily::Torus),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

/// A vertex `(i, j)`: column `i`, row `j`, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub i: usize,
    pub j: usize,
}

impl Vertex {
    pub const fn new(i: usize, j: usize) -> Self {
        Vertex { i, j }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.i, self.j)
    }
}

/// An immutable grid-like graph.
///
/// Adjacency is kept twice: as per-vertex neighbor lists for the generic
/// engines, and as per-slice row masks plus a seam permutation for the
/// slice-transfer counter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridGraph {
    family: GridFamily,
    m: usize,
    n: usize,
    neighbors: Vec<Vec<usize>>,
    edge_count: usize,
    slice_adj: Vec<RowMask>,
    seam: Option<Vec<usize>>,
}

impl GridGraph {
    pub fn build(family: GridFamily, m: usize, n: usize) -> Result<Self> {
        let fail = |bound| Err(Error::DimensionOutOfRange { family, bound, m, n });
        if m < 1 || n < 1 {
            return fail("m >= 1 and n >= 1");
        }
        match family {
            GridFamily::Mobius if m < 2 || n < 2 => return fail("m >= 2 and n >= 2"),
            GridFamily::ThinCylinder if m < 2 => return fail("m >= 2"),
            GridFamily::FatCylinder if n < 2 => return fail("n >= 2"),
            GridFamily::Torus if m < 2 || n < 2 => return fail("m >= 2 and n >= 2"),
            _ => {}
        }

        let idx = |i: usize, j: usize| (i - 1) * m + (j - 1);
        let mut edges = BTreeSet::new();
        let mut add = |a: usize, b: usize| {
            if a != b {
                edges.insert((a.min(b), a.max(b)));
            }
        };
        for i in 1..=n {
            for j in 1..=m {
                if i < n {
                    add(idx(i, j), idx(i + 1, j));
                }
                if j < m {
                    add(idx(i, j), idx(i, j + 1));
                }
            }
        }
        let seam: Option<Vec<usize>> = match family {
            GridFamily::FatCylinder | GridFamily::Torus => Some((0..m).collect()),
            GridFamily::Mobius => Some((0..m).map(|r| m - 1 - r).collect()),
            _ => None,
        };
        if let Some(seam) = &seam {
            for (r, &s) in seam.iter().enumerate() {
                add(idx(1, r + 1), idx(n, s + 1));
            }
        }
        if family.cyclic_slices() {
            for i in 1..=n {
                add(idx(i, 1), idx(i, m));
            }
        }

        let mut neighbors = vec![Vec::new(); m * n];
        for &(a, b) in &edges {
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }

        let mut slice_adj = vec![0; m.min(MAX_SLICE_WIDTH)];
        if m <= MAX_SLICE_WIDTH {
            for (r, mask) in slice_adj.iter_mut().enumerate() {
                for &w in &neighbors[r] {
                    if w < m {
                        *mask |= 1 << w;
                    }
                }
            }
        }

        Ok(GridGraph {
            family,
            m,
            n,
            neighbors,
            edge_count: edges.len(),
            slice_adj,
            seam,
        })
    }

    pub fn family(&self) -> GridFamily {
        self.family
    }

    /// Number of rows.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of columns (slices).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.m * self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn index(&self, v: Vertex) -> Result<usize> {
        if v.i < 1 || v.i > self.n || v.j < 1 || v.j > self.m {
            return Err(Error::VertexOutOfRange {
                i: v.i,
                j: v.j,
                m: self.m,
                n: self.n,
            });
        }
        Ok((v.i - 1) * self.m + (v.j - 1))
    }

    pub fn vertex(&self, index: usize) -> Vertex {
        Vertex::new(index / self.m + 1, index % self.m + 1)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertex_count()).map(|k| self.vertex(k))
    }

    /// Neighbor indices of vertex `index`, ascending.
    pub fn neighbors(&self, index: usize) -> &[usize] {
        &self.neighbors[index]
    }

    pub fn degree(&self, index: usize) -> usize {
        self.neighbors[index].len()
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.neighbors[a].binary_search(&b).is_ok()
    }

    /// Edges as index pairs `(a, b)` with `a < b`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    /// The vertices of slice `i` (column `i`), ordered by row.
    pub fn slice(&self, i: usize) -> Result<Vec<Vertex>> {
        if i < 1 || i > self.n {
            return Err(Error::IndexOutOfRange { index: i, max: self.n });
        }
        Ok((1..=self.m).map(|j| Vertex::new(i, j)).collect())
    }

    /// Degrees of all vertices, sorted ascending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.neighbors.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }

    /// Rows adjacent to row `r` (0-based) inside one slice.
    pub(crate) fn slice_adjacency(&self) -> &[RowMask] {
        &self.slice_adj
    }

    /// For wrapping families, `seam[r]` is the row of column `n` joined to row
    /// `r` of column 1 (both 0-based).
    pub(crate) fn seam(&self) -> Option<&[usize]> {
        self.seam.as_deref()
    }

    /// One `u64` neighbor mask per vertex, if the graph has at most 64 vertices.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.vertex_count() > 64 {
            return None;
        }
        Some(
            self.neighbors
                .iter()
                .map(|list| list.iter().fold(0u64, |acc, &w| acc | 1 << w))
                .collect(),
        )
    }

    /// Adjacency-list export, one line per vertex: `i,j: i1,j1 i2,j2 ...`.
    pub fn export_adjacency(&self) -> String {
        let mut out = String::new();
        for (k, list) in self.neighbors.iter().enumerate() {
            out.push_str(&self.vertex(k).to_string());
            out.push(':');
            for &w in list {
                out.push(' ');
                out.push_str(&self.vertex(w).to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// Parses the adjacency-list export back into per-vertex neighbor lists.
pub fn parse_adjacency(text: &str) -> Result<Vec<(Vertex, Vec<Vertex>)>> {
    fn vertex(s: &str) -> Result<Vertex> {
        let (i, j) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("bad vertex {s:?}")))?;
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad coordinate {t:?}: {e}")))
        };
        Ok(Vertex::new(num(i)?, num(j)?))
    }
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let (head, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("missing ':' in {line:?}")))?;
            let nbrs = rest.split_whitespace().map(vertex).collect::<Result<_>>()?;
            Ok((vertex(head)?, nbrs))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_set(g: &GridGraph) -> BTreeSet<(usize, usize)> {
        g.edges().collect()
    }

    #[test]
    fn grid_4x6_counts() {
        let g = GridGraph::build(GridFamily::Grid, 4, 6).unwrap();
        assert_eq!(g.vertex_count(), 24);
        assert_eq!(g.edge_count(), 38);
    }

    #[test]
    fn grid_edge_count_formula() {
        for m in 1..=6 {
            for n in 1..=6 {
                let g = GridGraph::build(GridFamily::Grid, m, n).unwrap();
                assert_eq!(g.edge_count(), m * (n - 1) + n * (m - 1));
            }
        }
    }

    #[test]
    fn thin_cylinder_m2_collapses_to_grid() {
        let t = GridGraph::build(GridFamily::ThinCylinder, 2, 5).unwrap();
        let g = GridGraph::build(GridFamily::Grid, 2, 5).unwrap();
        assert_eq!(edge_set(&t), edge_set(&g));
    }

    #[test]
    fn mobius_2x3_wrap_edges() {
        let g = GridGraph::build(GridFamily::Mobius, 2, 3).unwrap();
        assert_eq!(g.vertex_count(), 6);
        let ix = |i, j| g.index(Vertex::new(i, j)).unwrap();
        assert!(g.is_adjacent(ix(1, 1), ix(3, 2)));
        assert!(g.is_adjacent(ix(1, 2), ix(3, 1)));
        assert!(!g.is_adjacent(ix(1, 1), ix(3, 1)));
        // grid 2x3 has 7 edges, plus the two twisted ones
        assert_eq!(g.edge_count(), 9);
    }

    #[test]
    fn slices() {
        let g = GridGraph::build(GridFamily::Grid, 2, 3).unwrap();
        assert_eq!(g.slice(2).unwrap(), vec![Vertex::new(2, 1), Vertex::new(2, 2)]);
        assert!(matches!(g.slice(0), Err(Error::IndexOutOfRange { .. })));
        assert!(g.slice(4).is_err());
        let mb = GridGraph::build(GridFamily::Mobius, 4, 6).unwrap();
        let s = mb.slice(6).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.iter().all(|v| v.i == 6));
    }

    #[test]
    fn degree_sequences() {
        let d = |f, m, n| GridGraph::build(f, m, n).unwrap().degree_sequence();
        assert_eq!(d(GridFamily::Grid, 2, 2), vec![2; 4]);
        assert_eq!(d(GridFamily::ThinCylinder, 3, 2), vec![3; 6]);
        assert_eq!(d(GridFamily::Torus, 3, 3), vec![4; 9]);
    }

    #[test]
    fn dimension_errors_name_the_bound() {
        let e = GridGraph::build(GridFamily::Mobius, 1, 4).unwrap_err();
        assert!(e.to_string().contains("m >= 2"));
        assert!(GridGraph::build(GridFamily::ThinCylinder, 1, 3).is_err());
        assert!(GridGraph::build(GridFamily::FatCylinder, 3, 1).is_err());
        assert!(GridGraph::build(GridFamily::Torus, 3, 1).is_err());
        assert!(GridGraph::build(GridFamily::Grid, 0, 3).is_err());
        assert!(GridGraph::build(GridFamily::Grid, 1, 1).is_ok());
    }

    #[test]
    fn family_inclusions() {
        for m in 2..=5 {
            for n in 2..=5 {
                let e = |f| edge_set(&GridGraph::build(f, m, n).unwrap());
                let (g, b, t, tor) = (
                    e(GridFamily::Grid),
                    e(GridFamily::FatCylinder),
                    e(GridFamily::ThinCylinder),
                    e(GridFamily::Torus),
                );
                assert!(g.is_subset(&b) && b.is_subset(&tor));
                assert!(g.is_subset(&t) && t.is_subset(&tor));
            }
        }
    }

    #[test]
    fn slices_induce_paths_or_cycles() {
        for f in [
            GridFamily::Grid,
            GridFamily::FatCylinder,
            GridFamily::ThinCylinder,
            GridFamily::Mobius,
        ] {
            for m in 2..=5 {
                let g = GridGraph::build(f, m, 4).unwrap();
                for i in 1..=4 {
                    let idx: Vec<usize> =
                        g.slice(i).unwrap().into_iter().map(|v| g.index(v).unwrap()).collect();
                    let induced = idx
                        .iter()
                        .flat_map(|&a| idx.iter().map(move |&b| (a, b)))
                        .filter(|&(a, b)| a < b && g.is_adjacent(a, b))
                        .count();
                    let cycle = f == GridFamily::ThinCylinder && m >= 3;
                    assert_eq!(induced, if cycle { m } else { m - 1 }, "{f} {m} slice {i}");
                }
            }
        }
    }

    #[test]
    fn mobius_has_exactly_m_twisted_edges() {
        for m in 2..=5 {
            for n in 3..=5 {
                let mb = GridGraph::build(GridFamily::Mobius, m, n).unwrap();
                let g = GridGraph::build(GridFamily::Grid, m, n).unwrap();
                assert_eq!(mb.edge_count() - g.edge_count(), m);
                for r in 1..=m {
                    let a = mb.index(Vertex::new(1, r)).unwrap();
                    let b = mb.index(Vertex::new(n, m + 1 - r)).unwrap();
                    assert!(mb.is_adjacent(a, b));
                }
            }
        }
    }

    #[test]
    fn fat_cylinder_matches_transposed_thin_cylinder_invariants() {
        for m in 2..=5 {
            for n in 3..=6 {
                let b = GridGraph::build(GridFamily::FatCylinder, m, n).unwrap();
                let t = GridGraph::build(GridFamily::ThinCylinder, n, m).unwrap();
                assert_eq!(b.edge_count(), t.edge_count());
                assert_eq!(b.degree_sequence(), t.degree_sequence());
            }
        }
    }

    #[test]
    fn export_lines() {
        let g = GridGraph::build(GridFamily::Grid, 2, 2).unwrap();
        assert_eq!(g.export_adjacency(), "1,1: 1,2 2,1\n1,2: 1,1 2,2\n2,1: 1,1 2,2\n2,2: 1,2 2,1\n");
        let parsed = parse_adjacency(&g.export_adjacency()).unwrap();
        assert_eq!(parsed.len(), 4);
        assert_eq!(parsed[3].1, vec![Vertex::new(1, 2), Vertex::new(2, 1)]);
    }
}
