//! Automorphism groups of grid-like graphs and their action on MIS's.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GridFamily, GridGraph, Vertex};
use crate::mis::{enumerate_mis, verify_mis, Budgets, MisSet, MisVerdict};

/// Default vertex limit for the generic automorphism search.
pub const GROUP_SEARCH_BUDGET: usize = 64;

/// A vertex permutation of one host graph, stored on column-major indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Automorphism {
    perm: Vec<usize>,
}

impl Automorphism {
    pub fn identity(vertex_count: usize) -> Self {
        Automorphism {
            perm: (0..vertex_count).collect(),
        }
    }

    /// Builds the map from a vertex function and checks that it is an
    /// automorphism of `g`.
    pub fn from_fn(g: &GridGraph, f: impl Fn(Vertex) -> Vertex) -> Result<Self> {
        let perm = g
            .vertices()
            .map(|v| g.index(f(v)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_perm(g, perm)
    }

    pub fn from_perm(g: &GridGraph, perm: Vec<usize>) -> Result<Self> {
        let a = Automorphism { perm };
        if !a.is_automorphism_of(g) {
            return Err(Error::IdentityViolated {
                context: "Automorphism::from_perm",
                detail: "map is not an adjacency-preserving bijection".into(),
            });
        }
        Ok(a)
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply(&self, index: usize) -> usize {
        self.perm[index]
    }

    pub fn apply_vertex(&self, g: &GridGraph, v: Vertex) -> Result<Vertex> {
        Ok(g.vertex(self.perm[g.index(v)?]))
    }

    pub fn apply_set(&self, set: &MisSet) -> MisSet {
        MisSet::from_mask(set.indices().fold(0u64, |acc, u| acc | 1 << self.perm[u]))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Automorphism {
            perm: other.perm.iter().map(|&u| self.perm[u]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut perm = vec![0; self.perm.len()];
        for (u, &w) in self.perm.iter().enumerate() {
            perm[w] = u;
        }
        Automorphism { perm }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(u, &w)| u == w)
    }

    pub fn is_automorphism_of(&self, g: &GridGraph) -> bool {
        let n = g.vertex_count();
        if self.perm.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &w in &self.perm {
            if w >= n || seen[w] {
                return false;
            }
            seen[w] = true;
        }
        // a bijection that maps edges to edges preserves non-edges too,
        // since edge counts are equal
        g.edges()
            .all(|(a, b)| g.is_adjacent(self.perm[a], self.perm[b]))
    }
}

/// `v(i,j) = (n+1−i, j)`.
pub fn vertical_flip(g: &GridGraph) -> Result<Automorphism> {
    let n = g.n();
    Automorphism::from_fn(g, |v| Vertex::new(n + 1 - v.i, v.j))
}

/// `h(i,j) = (i, m+1−j)`.
pub fn horizontal_flip(g: &GridGraph) -> Result<Automorphism> {
    let m = g.m();
    Automorphism::from_fn(g, |v| Vertex::new(v.i, m + 1 - v.j))
}

/// `(i,j) ↦ (i, j+1)` with rows taken cyclically.
pub fn row_rotation(g: &GridGraph) -> Result<Automorphism> {
    let m = g.m();
    Automorphism::from_fn(g, |v| Vertex::new(v.i, v.j % m + 1))
}

/// `(i,j) ↦ (i+1, j)` with columns taken cyclically.
pub fn column_rotation(g: &GridGraph) -> Result<Automorphism> {
    let n = g.n();
    Automorphism::from_fn(g, |v| Vertex::new(v.i % n + 1, v.j))
}

/// The generators written down for the families whose groups are known.
pub fn known_generators(g: &GridGraph) -> Result<Vec<Automorphism>> {
    match g.family() {
        GridFamily::Grid => Ok(vec![vertical_flip(g)?, horizontal_flip(g)?]),
        GridFamily::ThinCylinder => Ok(vec![
            vertical_flip(g)?,
            row_rotation(g)?,
            horizontal_flip(g)?,
        ]),
        GridFamily::FatCylinder => Ok(vec![
            column_rotation(g)?,
            vertical_flip(g)?,
            horizontal_flip(g)?,
        ]),
        family @ (GridFamily::Mobius | GridFamily::Torus) => Err(Error::FamilyUnsupported {
            operation: "known_generators",
            family,
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    HardcodedGenerators,
    GenericSearch,
}

/// A finite automorphism group, elements sorted by permutation.
#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    elements: Vec<Automorphism>,
    provenance: Provenance,
}

impl AutomorphismGroup {
    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn contains(&self, a: &Automorphism) -> bool {
        self.elements.binary_search(a).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &AutomorphismGroup) -> bool {
        self.elements.iter().all(|a| other.contains(a))
    }

    /// Identity, closure under composition, closure under inverses.
    pub fn check_axioms(&self) -> Result<()> {
        let fail = |detail: &str| Error::IdentityViolated {
            context: "AutomorphismGroup::check_axioms",
            detail: detail.into(),
        };
        if !self.elements.first().is_some_and(Automorphism::is_identity) {
            return Err(fail("identity missing"));
        }
        for a in &self.elements {
            if !self.contains(&a.inverse()) {
                return Err(fail("not closed under inverses"));
            }
            for b in &self.elements {
                if !self.contains(&a.compose(b)) {
                    return Err(fail("not closed under composition"));
                }
            }
        }
        Ok(())
    }
}

/// The group generated by `generators`, by breadth-first closure.
pub fn closure(g: &GridGraph, generators: &[Automorphism]) -> AutomorphismGroup {
    let id = Automorphism::identity(g.vertex_count());
    let mut seen: HashSet<Automorphism> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(a) = queue.pop_front() {
        for s in generators {
            let b = s.compose(&a);
            if seen.insert(b.clone()) {
                queue.push_back(b);
            }
        }
    }
    let mut elements: Vec<_> = seen.into_iter().collect();
    elements.sort();
    AutomorphismGroup {
        elements,
        provenance: Provenance::HardcodedGenerators,
    }
}

fn distance_profile(g: &GridGraph, source: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    let mut queue = VecDeque::from([source]);
    dist[source] = 0;
    let mut histogram = vec![0usize];
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                if histogram.len() <= dist[w] {
                    histogram.push(0);
                }
                histogram[dist[w]] += 1;
                queue.push_back(w);
            }
        }
    }
    histogram
}

struct GroupSearch<'a> {
    g: &'a GridGraph,
    /// Vertices with equal invariants share a class id.
    class: Vec<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
    found: Vec<Automorphism>,
}

impl GroupSearch<'_> {
    fn extend(&mut self, u: usize) {
        let n = self.g.vertex_count();
        if u == n {
            self.found.push(Automorphism {
                perm: self.image.clone(),
            });
            return;
        }
        let anchor = self.g.neighbors(u).iter().copied().filter(|&p| p < u).min();
        let candidates: Vec<usize> = match anchor {
            Some(p) => self.g.neighbors(self.image[p]).to_vec(),
            None => (0..n).collect(),
        };
        for w in candidates {
            if self.used[w] || self.class[w] != self.class[u] {
                continue;
            }
            let consistent = (0..u).all(|p| self.g.is_adjacent(u, p) == self.g.is_adjacent(w, self.image[p]));
            if !consistent {
                continue;
            }
            self.image[u] = w;
            self.used[w] = true;
            self.extend(u + 1);
            self.used[w] = false;
        }
    }
}

/// The full automorphism group of `g` by pruned backtracking.
pub fn full_group(g: &GridGraph) -> Result<AutomorphismGroup> {
    full_group_with_budget(g, GROUP_SEARCH_BUDGET)
}

pub fn full_group_with_budget(g: &GridGraph, limit: usize) -> Result<AutomorphismGroup> {
    let n = g.vertex_count();
    if n > limit {
        return Err(Error::BudgetExceeded {
            what: "group search vertex",
            actual: n,
            limit,
        });
    }
    let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    let class = (0..n)
        .map(|u| {
            let key = (g.degree(u), distance_profile(g, u));
            let next = ids.len();
            *ids.entry(key).or_insert(next)
        })
        .collect();
    let mut search = GroupSearch {
        g,
        class,
        image: vec![0; n],
        used: vec![false; n],
        found: Vec::new(),
    };
    search.extend(0);
    let mut elements = search.found;
    elements.sort();
    let group = AutomorphismGroup {
        elements,
        provenance: Provenance::GenericSearch,
    };
    group.check_axioms()?;
    if let Ok(gens) = known_generators(g) {
        if !closure(g, &gens).is_subgroup_of(&group) {
            return Err(Error::IdentityViolated {
                context: "full_group",
                detail: "known generators fall outside the searched group".into(),
            });
        }
    }
    Ok(group)
}

/// `a(M) = M`.
pub fn symmetric_under(set: &MisSet, a: &Automorphism) -> bool {
    a.apply_set(set) == *set
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    /// Indices into the MIS list, ascending; the first is the representative.
    pub members: Vec<usize>,
    pub stabilizer_order: usize,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn representative(&self) -> usize {
        self.members[0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub group_order: usize,
    pub orbits: Vec<Orbit>,
}

impl OrbitPartition {
    pub fn nimis(&self) -> usize {
        self.orbits.len()
    }

    /// Lines `orbit-id: size, stabilizer-order, representative`.
    pub fn report(&self, g: &GridGraph, sets: &[MisSet]) -> String {
        let mut out = String::new();
        for (id, orbit) in self.orbits.iter().enumerate() {
            let rep: Vec<String> = sets[orbit.representative()]
                .vertices(g)
                .iter()
                .map(|v| format!("({v})"))
                .collect();
            out.push_str(&format!(
                "{}: {}, {}, {}\n",
                id + 1,
                orbit.size(),
                orbit.stabilizer_order,
                rep.join(",")
            ));
        }
        out
    }
}

/// Partitions `sets`, which must be all of MIS(g) in canonical order, into
/// orbits of `group`.
pub fn orbit_partition(
    g: &GridGraph,
    sets: &[MisSet],
    group: &AutomorphismGroup,
) -> Result<OrbitPartition> {
    let position: HashMap<MisSet, usize> =
        sets.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let step = (sets.len() / 16).max(1);
    for s in sets.iter().step_by(step) {
        let verdict = verify_mis(g, &s.vertices(g))?;
        if verdict != MisVerdict::Valid {
            return Err(Error::IdentityViolated {
                context: "orbit_partition",
                detail: format!("input set is not an MIS: {verdict}"),
            });
        }
    }
    // (smallest index in the orbit, stabilizer order) for every set
    let labels: Vec<(usize, usize)> = sets
        .par_iter()
        .map(|s| {
            let mut least = usize::MAX;
            let mut stab = 0;
            for a in group.elements() {
                let image = a.apply_set(s);
                if image == *s {
                    stab += 1;
                }
                match position.get(&image) {
                    Some(&k) => least = least.min(k),
                    None => return Err(s.export_line(g)),
                }
            }
            Ok((least, stab))
        })
        .collect::<std::result::Result<_, String>>()
        .map_err(|line| Error::IdentityViolated {
            context: "orbit_partition",
            detail: format!("image of {line} is missing from the MIS list"),
        })?;

    let mut by_rep: BTreeMap<usize, Orbit> = BTreeMap::new();
    for (k, &(rep, stab)) in labels.iter().enumerate() {
        let orbit = by_rep.entry(rep).or_insert(Orbit {
            members: Vec::new(),
            stabilizer_order: stab,
        });
        if orbit.stabilizer_order != stab {
            return Err(Error::IdentityViolated {
                context: "orbit_partition",
                detail: format!("stabilizer orders differ inside orbit of set {rep}"),
            });
        }
        orbit.members.push(k);
    }
    let orbits: Vec<Orbit> = by_rep.into_values().collect();
    for o in &orbits {
        if o.size() * o.stabilizer_order != group.order() {
            return Err(Error::IdentityViolated {
                context: "orbit_partition",
                detail: format!(
                    "orbit size {} times stabilizer order {} is not {}",
                    o.size(),
                    o.stabilizer_order,
                    group.order()
                ),
            });
        }
    }
    Ok(OrbitPartition {
        group_order: group.order(),
        orbits,
    })
}

/// `(1/|A|) Σ_a fix(a)`.
pub fn burnside_count(sets: &[MisSet], group: &AutomorphismGroup) -> BigRational {
    let fixed: usize = group
        .elements()
        .par_iter()
        .map(|a| sets.iter().filter(|s| symmetric_under(s, a)).count())
        .sum();
    BigRational::new(fixed.into(), group.order().into())
}

/// Everything computed on the way to `|NIMIS(g)|`.
#[derive(Debug, Clone)]
pub struct NimisReport {
    pub sets: Vec<MisSet>,
    pub group: AutomorphismGroup,
    pub partition: OrbitPartition,
}

impl NimisReport {
    pub fn count(&self) -> BigUint {
        self.partition.nimis().into()
    }
}

pub fn nimis_report(g: &GridGraph, budgets: Budgets) -> Result<NimisReport> {
    let sets = enumerate_mis(g, budgets)?;
    let group = full_group(g)?;
    let partition = orbit_partition(g, &sets, &group)?;
    let burnside = burnside_count(&sets, &group);
    if burnside != BigRational::from_integer(partition.nimis().into()) {
        return Err(Error::IdentityViolated {
            context: "nimis_count",
            detail: format!("Burnside gives {burnside}, orbits give {}", partition.nimis()),
        });
    }
    Ok(NimisReport {
        sets,
        group,
        partition,
    })
}

/// `|NIMIS(g)|`, cross-checked against the Burnside average.
pub fn nimis_count(g: &GridGraph, budgets: Budgets) -> Result<BigUint> {
    Ok(nimis_report(g, budgets)?.count())
}

/// `|NIMIS| / |MIS|` for one graph.
pub fn nimis_ratio(g: &GridGraph, budgets: Budgets) -> Result<BigRational> {
    let r = nimis_report(g, budgets)?;
    if r.sets.is_empty() {
        return Ok(BigRational::zero());
    }
    Ok(BigRational::new(r.partition.nimis().into(), r.sets.len().into()))
}

/// A point of the NIMIS ratio sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioPoint {
    pub n: usize,
    pub ratio: BigRational,
    /// `|ratio − 1/4|`.
    pub deviation: BigRational,
}

impl fmt::Display for RatioPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dec = self.ratio.to_f64().unwrap_or(f64::NAN);
        write!(f, "n={} ratio={} ({dec:.6}) deviation={}", self.n, self.ratio, self.deviation)
    }
}

pub fn nimis_ratio_trend(
    family: GridFamily,
    m: usize,
    ns: impl IntoIterator<Item = usize>,
    budgets: Budgets,
) -> Result<Vec<RatioPoint>> {
    let quarter = BigRational::new(1.into(), 4.into());
    ns.into_iter()
        .map(|n| {
            let g = GridGraph::build(family, m, n)?;
            let ratio = nimis_ratio(&g, budgets)?;
            let deviation = (&ratio - &quarter).abs();
            Ok(RatioPoint { n, ratio, deviation })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(f: GridFamily, m: usize, n: usize) -> GridGraph {
        GridGraph::build(f, m, n).unwrap()
    }

    #[test]
    fn generator_examples() {
        let g = graph(GridFamily::Grid, 2, 3);
        let v = vertical_flip(&g).unwrap();
        assert_eq!(v.apply_vertex(&g, Vertex::new(1, 1)).unwrap(), Vertex::new(3, 1));

        let t = graph(GridFamily::ThinCylinder, 3, 4);
        let r = &known_generators(&t).unwrap()[1];
        for (a, b) in [((1, 1), (1, 2)), ((1, 2), (1, 3)), ((1, 3), (1, 1))] {
            assert_eq!(
                r.apply_vertex(&t, Vertex::new(a.0, a.1)).unwrap(),
                Vertex::new(b.0, b.1)
            );
        }

        let b = graph(GridFamily::FatCylinder, 2, 4);
        let h = &known_generators(&b).unwrap()[2];
        for i in 1..=4 {
            assert_eq!(h.apply_vertex(&b, Vertex::new(i, 1)).unwrap(), Vertex::new(i, 2));
        }
        assert!(matches!(
            known_generators(&graph(GridFamily::Mobius, 2, 4)),
            Err(Error::FamilyUnsupported { .. })
        ));
    }

    #[test]
    fn group_orders() {
        let order = |f, m, n| full_group(&graph(f, m, n)).unwrap().order();
        assert_eq!(order(GridFamily::Grid, 4, 6), 4);
        assert_eq!(order(GridFamily::Grid, 3, 3), 8);
        assert_eq!(order(GridFamily::ThinCylinder, 3, 5), 12);
        assert_eq!(order(GridFamily::FatCylinder, 2, 5), 20);
        assert_eq!(order(GridFamily::Grid, 1, 5), 2);
        // 2x4 band is the 3-cube; 2x2 Mobius strip is K4; 2x3 is K_{3,3}
        assert_eq!(order(GridFamily::FatCylinder, 2, 4), 48);
        assert_eq!(order(GridFamily::Mobius, 2, 2), 24);
        assert_eq!(order(GridFamily::Mobius, 2, 3), 72);
    }

    /// Counts permutations preserving adjacency, by trying all of them.
    fn brute_force_order(g: &GridGraph) -> usize {
        fn go(g: &GridGraph, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> usize {
            let u = perm.len();
            if u == g.vertex_count() {
                return 1;
            }
            let mut total = 0;
            for w in 0..g.vertex_count() {
                if used[w] || (0..u).any(|p| g.is_adjacent(u, p) != g.is_adjacent(w, perm[p])) {
                    continue;
                }
                used[w] = true;
                perm.push(w);
                total += go(g, perm, used);
                perm.pop();
                used[w] = false;
            }
            total
        }
        go(g, &mut Vec::new(), &mut vec![false; g.vertex_count()])
    }

    #[test]
    fn search_matches_unpruned_search() {
        for f in GridFamily::ALL {
            for (m, n) in [(2, 3), (3, 3), (2, 4), (3, 4), (4, 2)] {
                let Ok(g) = GridGraph::build(f, m, n) else {
                    continue;
                };
                assert_eq!(full_group(&g).unwrap().order(), brute_force_order(&g), "{f} {m}x{n}");
            }
        }
    }

    #[test]
    fn generators_close_inside_full_group() {
        for (f, m, n, equal) in [
            (GridFamily::Grid, 3, 5, true),
            (GridFamily::Grid, 4, 4, false),
            (GridFamily::ThinCylinder, 3, 6, true),
            (GridFamily::ThinCylinder, 5, 3, true),
            (GridFamily::FatCylinder, 3, 5, true),
            (GridFamily::FatCylinder, 2, 4, false),
        ] {
            let g = graph(f, m, n);
            let sub = closure(&g, &known_generators(&g).unwrap());
            sub.check_axioms().unwrap();
            let full = full_group(&g).unwrap();
            assert!(sub.is_subgroup_of(&full));
            assert_eq!(sub.order() == full.order(), equal, "{f} {m}x{n}");
        }
    }

    #[test]
    fn orbit_examples() {
        let part = |f, m, n| {
            let g = graph(f, m, n);
            nimis_report(&g, Budgets::default()).unwrap().partition
        };
        let p = part(GridFamily::ThinCylinder, 3, 2);
        assert_eq!(p.orbits.len(), 1);
        assert_eq!(p.orbits[0].size(), 6);
        assert_eq!(part(GridFamily::Grid, 2, 3).nimis(), 2);
        let p = part(GridFamily::Grid, 2, 2);
        assert_eq!(p.orbits.len(), 1);
        assert_eq!(p.orbits[0].size(), 2);
    }

    #[test]
    fn nimis_examples() {
        let count = |f, m, n| nimis_count(&graph(f, m, n), Budgets::default()).unwrap();
        assert_eq!(count(GridFamily::Grid, 2, 6), 5u32.into());
        assert_eq!(count(GridFamily::ThinCylinder, 3, 4), 3u32.into());
    }

    #[test]
    fn orbit_sizes_for_tubes_and_ladders() {
        for n in 2..=6 {
            let r = nimis_report(&graph(GridFamily::ThinCylinder, 3, n), Budgets::default()).unwrap();
            assert!(r.partition.orbits.iter().all(|o| o.size() == 6 || o.size() == 12));
        }
        for n in 3..=10 {
            let r = nimis_report(&graph(GridFamily::Grid, 2, n), Budgets::default()).unwrap();
            assert!(r.partition.orbits.iter().all(|o| o.size() == 2 || o.size() == 4));
        }
    }

    #[test]
    fn vertical_flip_pairs_sets_without_fixed_points() {
        for (m, n) in [(2, 4), (3, 4), (3, 6), (4, 4), (2, 8)] {
            let g = graph(GridFamily::Grid, m, n);
            let v = vertical_flip(&g).unwrap();
            for s in enumerate_mis(&g, Budgets::default()).unwrap() {
                assert!(!symmetric_under(&s, &v));
                assert_eq!(v.apply_set(&v.apply_set(&s)), s);
            }
        }
        let b = graph(GridFamily::FatCylinder, 2, 7);
        let v = vertical_flip(&b).unwrap();
        assert!(enumerate_mis(&b, Budgets::default())
            .unwrap()
            .iter()
            .all(|s| !symmetric_under(s, &v)));
    }

    #[test]
    fn diagonal_not_symmetric_under_h() {
        let g = graph(GridFamily::Grid, 2, 2);
        let h = horizontal_flip(&g).unwrap();
        let d = MisSet::from_vertices(&g, &[Vertex::new(1, 1), Vertex::new(2, 2)]).unwrap();
        assert!(!symmetric_under(&d, &h));
    }

    #[test]
    fn ratio_for_twelve() {
        let pts = nimis_ratio_trend(GridFamily::Grid, 2, [12], Budgets::default()).unwrap();
        assert_eq!(pts[0].ratio, BigRational::new(152.into(), 576.into()));
    }

    #[test]
    fn report_lines_and_budget() {
        let g = graph(GridFamily::Grid, 2, 2);
        let r = nimis_report(&g, Budgets::default()).unwrap();
        assert_eq!(r.partition.report(&g, &r.sets), "1: 2, 4, (1,2),(2,1)\n");
        let big = graph(GridFamily::Grid, 9, 8);
        assert!(matches!(full_group(&big), Err(Error::BudgetExceeded { .. })));
    }
}
