//! Slice-by-slice transfer counting.
//!
//! A state after slice `i` is the pair (rows chosen in slice `i`, rows of
//! slice `i` not yet covered). The next slice must cover every pending row,
//! since only its same-row neighbor is left to do so. When the columns wrap,
//! the first slice is fixed up front and the rows of slice 1 that neither
//! slice 1 nor slice 2 covers ride along until the seam closes.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;

use super::{check_engine_family, Budgets, SizePolynomial};
use crate::error::{Error, Result};
use crate::graph::{GridGraph, RowMask};

trait Weight: Clone {
    fn empty() -> Self;
    /// Weight of a single partial set with `size` vertices.
    fn unit(size: u32) -> Self;
    fn accumulate(&mut self, other: &Self);
    fn shifted(&self, by: u32) -> Self;
}

impl Weight for BigUint {
    fn empty() -> Self {
        Zero::zero()
    }
    fn unit(_: u32) -> Self {
        BigUint::from(1u32)
    }
    fn accumulate(&mut self, other: &Self) {
        *self += other;
    }
    fn shifted(&self, _: u32) -> Self {
        self.clone()
    }
}

/// Coefficient vector indexed by set size.
#[derive(Clone)]
struct Poly(Vec<BigUint>);

impl Weight for Poly {
    fn empty() -> Self {
        Poly(Vec::new())
    }
    fn unit(size: u32) -> Self {
        let mut c = vec![BigUint::zero(); size as usize + 1];
        c[size as usize] = BigUint::from(1u32);
        Poly(c)
    }
    fn accumulate(&mut self, other: &Self) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), BigUint::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }
    fn shifted(&self, by: u32) -> Self {
        let mut c = vec![BigUint::zero(); by as usize];
        c.extend(self.0.iter().cloned());
        Poly(c)
    }
}

struct Slices {
    full: RowMask,
    /// Independent row sets of one slice, with their in-slice coverage.
    independent: Vec<(RowMask, RowMask)>,
}

impl Slices {
    fn new(g: &GridGraph) -> Self {
        let m = g.m();
        let adj = g.slice_adjacency();
        let full: RowMask = if m == 32 { !0 } else { (1 << m) - 1 };
        let independent = (0..=full)
            .filter(|&s| (0..m).all(|r| s >> r & 1 == 0 || adj[r] & s == 0))
            .map(|s| {
                let cover = (0..m)
                    .filter(|&r| s >> r & 1 == 1)
                    .fold(s, |acc, r| acc | adj[r]);
                (s, cover)
            })
            .collect();
        Slices { full, independent }
    }
}

fn permute_rows(rows: RowMask, seam: &[usize]) -> RowMask {
    seam.iter()
        .enumerate()
        .filter(|&(r, _)| rows >> r & 1 == 1)
        .fold(0, |acc, (_, &s)| acc | 1 << s)
}

fn add<K: std::hash::Hash + Eq, W: Weight>(map: &mut HashMap<K, W>, key: K, w: W) {
    map.entry(key)
        .and_modify(|e| e.accumulate(&w))
        .or_insert(w);
}

/// One transfer step: `(prev, pending)` to every legal next slice.
fn step<K, W: Weight>(
    slices: &Slices,
    states: HashMap<(RowMask, RowMask, K), W>,
) -> HashMap<(RowMask, RowMask, K), W>
where
    K: std::hash::Hash + Eq + Copy,
{
    let mut next = HashMap::new();
    for ((prev, pending, extra), w) in states {
        for &(t, cover) in &slices.independent {
            if t & prev != 0 || pending & !t != 0 {
                continue;
            }
            let uncovered = slices.full & !(cover | prev);
            add(&mut next, (t, uncovered, extra), w.shifted(t.count_ones()));
        }
    }
    next
}

fn run_linear<W: Weight>(g: &GridGraph, slices: &Slices) -> W {
    let mut states: HashMap<(RowMask, RowMask, ()), W> = HashMap::new();
    for &(s, cover) in &slices.independent {
        add(&mut states, (s, slices.full & !cover, ()), W::unit(s.count_ones()));
    }
    for _ in 1..g.n() {
        states = step(slices, states);
    }
    let mut total = W::empty();
    for ((_, pending, _), w) in &states {
        if *pending == 0 {
            total.accumulate(w);
        }
    }
    total
}

fn run_cyclic<W: Weight>(g: &GridGraph, slices: &Slices, seam: &[usize]) -> W {
    let mut inverse = vec![0; seam.len()];
    for (r, &s) in seam.iter().enumerate() {
        inverse[s] = r;
    }
    let mut total = W::empty();
    for &(first, first_cover) in &slices.independent {
        let first_pending = slices.full & !first_cover;
        // key extra = rows of slice 1 still waiting for slice n
        let mut states: HashMap<(RowMask, RowMask, RowMask), W> = HashMap::new();
        for &(t, cover) in &slices.independent {
            if t & first != 0 {
                continue;
            }
            let uncovered = slices.full & !(cover | first);
            add(
                &mut states,
                (t, uncovered, first_pending & !t),
                W::unit(first.count_ones() + t.count_ones()),
            );
        }
        for _ in 2..g.n() {
            states = step(slices, states);
        }
        let first_at_seam = permute_rows(first, seam);
        for ((last, pending, waiting), w) in &states {
            let last_at_first = permute_rows(*last, &inverse);
            if last & first_at_seam == 0
                && pending & !first_at_seam == 0
                && waiting & !last_at_first == 0
            {
                total.accumulate(w);
            }
        }
    }
    total
}

fn run<W: Weight>(g: &GridGraph, budgets: Budgets, operation: &'static str) -> Result<W> {
    check_engine_family(g, operation)?;
    let limit = budgets.width.min(crate::graph::MAX_SLICE_WIDTH);
    if g.m() > limit {
        return Err(Error::BudgetExceeded {
            what: "slice width",
            actual: g.m(),
            limit,
        });
    }
    let slices = Slices::new(g);
    Ok(match g.seam() {
        Some(seam) => run_cyclic(g, &slices, seam),
        None => run_linear(g, &slices),
    })
}

/// `|MIS(g)|` by slice transfer.
pub fn count_mis_dp(g: &GridGraph, budgets: Budgets) -> Result<BigUint> {
    run(g, budgets, "count_mis_dp")
}

/// MIS counts by size, by slice transfer.
pub fn size_polynomial_dp(g: &GridGraph, budgets: Budgets) -> Result<SizePolynomial> {
    let poly: Poly = run(g, budgets, "size_polynomial_dp")?;
    Ok(SizePolynomial::from_coefficients(poly.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GridFamily;

    fn count(f: GridFamily, m: usize, n: usize) -> BigUint {
        count_mis_dp(&GridGraph::build(f, m, n).unwrap(), Budgets::default()).unwrap()
    }

    fn fib(n: usize) -> u64 {
        let (mut a, mut b) = (0u64, 1u64);
        for _ in 0..n {
            (a, b) = (b, a + b);
        }
        a
    }

    #[test]
    fn two_by_n_grid_is_twice_fibonacci() {
        for n in 1..=30 {
            assert_eq!(count(GridFamily::Grid, 2, n), BigUint::from(2 * fib(n)), "n={n}");
        }
    }

    #[test]
    fn small_known_values() {
        assert_eq!(count(GridFamily::Grid, 2, 2), 2u32.into());
        assert_eq!(count(GridFamily::ThinCylinder, 3, 2), 6u32.into());
        // P_1: single vertex, single MIS
        assert_eq!(count(GridFamily::Grid, 1, 1), 1u32.into());
        // K4 and K_{3,3}
        assert_eq!(count(GridFamily::Mobius, 2, 2), 4u32.into());
        assert_eq!(count(GridFamily::Mobius, 2, 3), 2u32.into());
    }

    #[test]
    fn polynomials() {
        let poly = |f, m, n| {
            size_polynomial_dp(&GridGraph::build(f, m, n).unwrap(), Budgets::default()).unwrap()
        };
        assert_eq!(poly(GridFamily::Grid, 2, 2).coefficients(), &[0u32.into(), 0u32.into(), 2u32.into()]);
        assert_eq!(poly(GridFamily::FatCylinder, 2, 4).coefficient(2), 4u32.into());
        let mb = poly(GridFamily::Mobius, 2, 5);
        assert!(mb.nonzero().keys().all(|r| r % 2 == 1));
    }

    #[test]
    fn torus_and_width_rejected() {
        let t = GridGraph::build(GridFamily::Torus, 3, 3).unwrap();
        assert!(matches!(count_mis_dp(&t, Budgets::default()), Err(Error::FamilyUnsupported { .. })));
        let wide = GridGraph::build(GridFamily::Grid, 13, 2).unwrap();
        assert!(matches!(count_mis_dp(&wide, Budgets::default()), Err(Error::BudgetExceeded { .. })));
    }
}
