use std::collections::BTreeMap;

use cy_core::diagram::{Diagram, DiagramData, Direction, Move, NodeKind, Side};
use cy_core::homology::{count_augmentations, Presentation};
use proptest::prelude::*;

fn d0() -> Diagram {
    let path = format!("{}/../../fixtures/d0_23.json", env!("CARGO_MANIFEST_DIR"));
    Diagram::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Applies up to `steps.len()` moves, each picked by `(move index, site index)`.
fn walk(steps: &[(usize, usize)]) -> Diagram {
    let mut d = d0();
    for &(m, k) in steps {
        let mv = Move::ALL[m % Move::ALL.len()];
        let dir = if k % 2 == 0 { Direction::Forward } else { Direction::Backward };
        let sites = d.enumerate_move_sites(mv, dir);
        if let Some(s) = sites.get(k % sites.len().max(1)) {
            d = d.apply_move(s).unwrap();
        }
    }
    d
}

fn count_mod_2(d: &Diagram) -> u64 {
    count_augmentations(&Presentation::from_table(&d.crossing_table().unwrap()), 2).unwrap().count
}

fn steps() -> impl Strategy<Value = Vec<(usize, usize)>> {
    prop::collection::vec((0usize..11, 0usize..1000), 0..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn resolutions_stay_valid(s in steps()) {
        let d = walk(&s);
        for side in [Side::Plus, Side::Minus] {
            let l = d.resolve(side).unwrap();
            prop_assert_eq!(l.crossing_count(), d.crossing_count());
            prop_assert_eq!(l.vertex_count(), 0);
        }
    }

    #[test]
    fn json_round_trip(s in steps()) {
        let d = walk(&s);
        prop_assert_eq!(Diagram::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn arcs_ignore_edge_ids(s in steps(), seed in any::<u64>()) {
        let d = walk(&s);
        let mut data: DiagramData = d.data().clone();
        // a fresh injective relabeling of edge ids
        let mut ids: Vec<u32> = (0..data.edges.len() as u32).map(|k| k * 7 + 3).collect();
        let mut x = seed;
        for k in (1..ids.len()).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ids.swap(k, (x >> 33) as usize % (k + 1));
        }
        for (e, id) in data.edges.iter_mut().zip(&ids) {
            e.id = *id;
        }
        let old: BTreeMap<u32, u32> = d.edges().iter().zip(&ids).map(|(e, &id)| (e.id, id)).collect();
        let r = Diagram::new(data).unwrap();
        let (a, b) = (d.compute_arcs(), r.compute_arcs());
        prop_assert_eq!(a.arcs, b.arcs);
        // same partition of edges into arcs
        let arc_of = |dd: &Diagram, l: &cy_core::diagram::ArcLabeling, id: u32| l.of_edge[dd.edge_index(id).unwrap()];
        for e in d.edges() {
            for f in d.edges() {
                prop_assert_eq!(
                    arc_of(&d, &a, e.id) == arc_of(&d, &a, f.id),
                    arc_of(&r, &b, old[&e.id]) == arc_of(&r, &b, old[&f.id])
                );
            }
        }
        prop_assert_eq!(count_mod_2(&d), count_mod_2(&r));
    }

    #[test]
    fn turning_nodes_is_an_isomorphism(s in steps(), turns in prop::collection::vec(0u8..4, 16)) {
        let d = walk(&s);
        let mut data = d.data().clone();
        let shift: BTreeMap<String, u8> = data.nodes.iter().zip(turns.iter().cycle()).map(|(n, &t)| {
            let t = if matches!(n.kind, NodeKind::Vertex) { t / 2 * 2 } else { t };
            (n.id.clone(), t)
        }).collect();
        for n in &mut data.nodes {
            if let NodeKind::Crossing { over_ports } = &mut n.kind {
                for p in over_ports.iter_mut() {
                    *p = (*p + shift[&n.id]) % 4;
                }
            }
        }
        for e in &mut data.edges {
            for end in [&mut e.tail, &mut e.head] {
                end.1 = (end.1 + shift[&end.0]) % 4;
            }
        }
        let r = Diagram::new(data).unwrap();
        prop_assert!(r.is_isomorphic(&d));
        prop_assert_eq!(r.crossing_table().unwrap(), d.crossing_table().unwrap());
    }

    #[test]
    fn moves_undo_and_keep_counts(s in steps(), m in 0usize..11, k in 0usize..1000) {
        let d = walk(&s);
        let mv = Move::ALL[m];
        let sites = d.enumerate_move_sites(mv, Direction::Forward);
        prop_assume!(!sites.is_empty());
        let e = d.apply_move(&sites[k % sites.len()]).unwrap();
        let back = if mv.is_involution() { Direction::Forward } else { Direction::Backward };
        prop_assert!(e.enumerate_move_sites(mv, back).iter().any(|t| e.apply_move(t).unwrap().is_isomorphic(&d)));
        prop_assert_eq!(count_mod_2(&e), count_mod_2(&d));
    }
}

#[test]
fn mirror_is_not_isomorphic() {
    // flipping every crossing of d0_23 gives a different diagram
    let d = d0();
    let mut data = d.data().clone();
    for n in &mut data.nodes {
        if let NodeKind::Crossing { over_ports } = &mut n.kind {
            *over_ports = [(over_ports[0] + 1) % 4, (over_ports[1] + 1) % 4];
        }
    }
    assert!(!Diagram::new(data).unwrap().is_isomorphic(&d));
}
