use rayon::prelude::*;

use super::{check_engine_family, Budgets, MisSet};
use crate::error::{Error, Result};
use crate::graph::GridGraph;

/// Vertex-by-vertex include/exclude search in column-major order.
///
/// A vertex is "closed" once it and all of its neighbors have been decided;
/// from that point it must already be covered. Trying exclusion before
/// inclusion yields the canonical lexicographic order directly.
struct Searcher {
    adj: Vec<u64>,
    /// `closing[k]`: vertices whose last undecided neighbor (or self) is `k`.
    closing: Vec<u64>,
}

#[derive(Clone, Copy)]
struct Partial {
    next: usize,
    chosen: u64,
    covered: u64,
}

impl Searcher {
    fn new(g: &GridGraph, budgets: Budgets) -> Result<Self> {
        let limit = budgets.vertices.min(64);
        if g.vertex_count() > limit {
            return Err(Error::BudgetExceeded {
                what: "enumeration vertex",
                actual: g.vertex_count(),
                limit,
            });
        }
        let adj = g.adjacency_masks().expect("vertex count checked above");
        let mut closing = vec![0u64; adj.len()];
        for (u, &nbrs) in adj.iter().enumerate() {
            let last = if nbrs == 0 {
                u
            } else {
                (63 - nbrs.leading_zeros() as usize).max(u)
            };
            closing[last] |= 1 << u;
        }
        Ok(Searcher { adj, closing })
    }

    fn run(&self, p: Partial, stop: usize, out: &mut dyn FnMut(Partial)) {
        if p.next == stop {
            out(p);
            return;
        }
        let k = p.next;
        let closing = self.closing[k];
        if closing & !p.covered == 0 {
            self.run(
                Partial {
                    next: k + 1,
                    ..p
                },
                stop,
                out,
            );
        }
        if self.adj[k] & p.chosen == 0 {
            let covered = p.covered | 1 << k | self.adj[k];
            if closing & !covered == 0 {
                self.run(
                    Partial {
                        next: k + 1,
                        chosen: p.chosen | 1 << k,
                        covered,
                    },
                    stop,
                    out,
                );
            }
        }
    }

    fn vertex_count(&self) -> usize {
        self.adj.len()
    }
}

const ROOT: Partial = Partial {
    next: 0,
    chosen: 0,
    covered: 0,
};

/// All maximal independent sets of `g`, in canonical order.
///
/// The search is split on the choices made in the first slice and the parts
/// run in parallel; they are concatenated in prefix order, which is already
/// the canonical order.
pub fn enumerate_mis(g: &GridGraph, budgets: Budgets) -> Result<Vec<MisSet>> {
    check_engine_family(g, "enumerate_mis")?;
    let searcher = Searcher::new(g, budgets)?;
    let total = searcher.vertex_count();
    let split = g.m().min(total);
    let mut prefixes = Vec::new();
    searcher.run(ROOT, split, &mut |p| prefixes.push(p));
    let parts: Vec<Vec<MisSet>> = prefixes
        .into_par_iter()
        .map(|p| {
            let mut found = Vec::new();
            searcher.run(p, total, &mut |leaf| found.push(MisSet::from_mask(leaf.chosen)));
            found
        })
        .collect();
    Ok(parts.into_iter().flatten().collect())
}

/// Streams every MIS of `g` to `f` in canonical order, without materializing
/// the list.
pub fn for_each_mis(g: &GridGraph, budgets: Budgets, mut f: impl FnMut(MisSet)) -> Result<()> {
    check_engine_family(g, "for_each_mis")?;
    let searcher = Searcher::new(g, budgets)?;
    let total = searcher.vertex_count();
    searcher.run(ROOT, total, &mut |leaf| f(MisSet::from_mask(leaf.chosen)));
    Ok(())
}

/// `|MIS(g)|` by exhaustive search, for the parity checks. Unlike the other
/// engines this accepts every family, the torus included.
pub fn mis_parity(g: &GridGraph, budgets: Budgets) -> Result<(u64, bool)> {
    let searcher = Searcher::new(g, budgets)?;
    let total = searcher.vertex_count();
    let mut count = 0u64;
    searcher.run(ROOT, total, &mut |_| count += 1);
    Ok((count, count % 2 == 0))
}
