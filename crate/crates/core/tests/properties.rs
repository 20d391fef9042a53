use proptest::prelude::*;

use gridmis::encodings::{psi, psi_preimage, BitString, Composition};
use gridmis::mis::{canonical_cmp, count_mis_dp, enumerate_mis, verify_mis};
use gridmis::symmetry::full_group;
use gridmis::{Budgets, GridFamily, GridGraph, MisVerdict, Vertex};

fn engine_family() -> impl Strategy<Value = GridFamily> {
    prop_oneof![
        Just(GridFamily::Grid),
        Just(GridFamily::FatCylinder),
        Just(GridFamily::ThinCylinder),
        Just(GridFamily::Mobius),
    ]
}

fn small_graph() -> impl Strategy<Value = GridGraph> {
    (engine_family(), 2usize..=4, 2usize..=6)
        .prop_map(|(f, m, n)| GridGraph::build(f, m, n).unwrap())
}

fn x_string() -> impl Strategy<Value = BitString> {
    (2usize..=30, any::<u32>()).prop_map(|(n, noise)| {
        let mut bits = vec![1u8; n];
        for k in 1..n - 1 {
            if bits[k - 1] == 1 && noise >> (k % 32) & 1 == 1 {
                bits[k] = 0;
            }
        }
        BitString(bits)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn engines_agree_and_sets_verify(g in small_graph()) {
        let sets = enumerate_mis(&g, Budgets::default()).unwrap();
        prop_assert_eq!(count_mis_dp(&g, Budgets::default()).unwrap(), sets.len().into());
        for w in sets.windows(2) {
            prop_assert_eq!(canonical_cmp(w[0].mask(), w[1].mask()), std::cmp::Ordering::Less);
        }
        for s in &sets {
            prop_assert_eq!(verify_mis(&g, &s.vertices(&g)).unwrap(), MisVerdict::Valid);
        }
    }

    #[test]
    fn verdict_matches_definition(g in small_graph(), mask in any::<u32>()) {
        let chosen: Vec<usize> = (0..g.vertex_count()).filter(|&u| mask >> (u % 32) & 1 == 1).collect();
        let vertices: Vec<Vertex> = chosen.iter().map(|&u| g.vertex(u)).collect();
        let inside = |u: usize| chosen.contains(&u);
        let independent = g.edges().all(|(a, b)| !(inside(a) && inside(b)));
        let dominating = (0..g.vertex_count()).all(|u| inside(u) || g.neighbors(u).iter().any(|&w| inside(w)));
        let verdict = verify_mis(&g, &vertices).unwrap();
        prop_assert_eq!(verdict == MisVerdict::Valid, independent && dominating);
        prop_assert_eq!(matches!(verdict, MisVerdict::NotIndependent(..)), !independent);
    }

    #[test]
    fn automorphisms_permute_mis(g in small_graph()) {
        let group = full_group(&g).unwrap();
        let sets = enumerate_mis(&g, Budgets::default()).unwrap();
        for a in group.elements().iter().take(8) {
            prop_assert!(a.is_automorphism_of(&g));
            let mut images: Vec<_> = sets.iter().map(|s| a.apply_set(s)).collect();
            images.sort_by(|x, y| canonical_cmp(x.mask(), y.mask()));
            prop_assert_eq!(&images, &sets);
        }
    }

    #[test]
    fn psi_preimage_round_trips(b in x_string()) {
        let g = GridGraph::build(GridFamily::Grid, 2, b.len()).unwrap();
        let (p, q) = psi_preimage(&g, &b).unwrap();
        prop_assert_ne!(p, q);
        prop_assert_eq!(psi(&g, &p).unwrap(), b.clone());
        prop_assert_eq!(psi(&g, &q).unwrap(), b);
    }

    #[test]
    fn canonical_composition_is_dihedral_invariant(parts in prop::collection::vec(1usize..6, 1..8), shift in 0usize..8, flip in any::<bool>()) {
        let c = Composition(parts.clone());
        let mut moved = parts;
        let k = moved.len();
        moved.rotate_left(shift % k);
        if flip {
            moved.reverse();
        }
        let d = Composition(moved);
        prop_assert_eq!(c.canonical(), d.canonical());
        prop_assert!(c.canonical() <= c);
        prop_assert_eq!(c.canonical().total(), c.total());
    }
}
