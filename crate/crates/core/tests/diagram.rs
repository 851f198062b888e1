use cy_core::diagram::{CrossingTable, Diagram, DiagramError, Direction, Locus, Move, Side, Site};
use cy_core::homology::{count_augmentations, Presentation};

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn d0() -> Diagram {
    Diagram::from_json(&fixture("d0_23.json")).unwrap()
}

/// d0_23 after pushing edge 1 over edge 7; has Ω3, Ω5 and Ω8 sites.
fn finger() -> Diagram {
    Diagram::from_json(&fixture("d0_23_finger.json")).unwrap()
}

fn counts(d: &Diagram) -> Vec<u64> {
    let p = Presentation::from_table(&d.crossing_table().unwrap());
    [2, 3, 5].iter().map(|&n| count_augmentations(&p, n).unwrap().count).collect()
}

fn inverse_dir(mv: Move) -> Direction {
    if mv.is_involution() {
        Direction::Forward
    } else {
        Direction::Backward
    }
}

#[test]
fn table_matches_hand_table() {
    assert_eq!(d0().crossing_table().unwrap(), CrossingTable::parse(&fixture("d0_23.table")).unwrap());
}

#[test]
fn finger_fixture_is_one_move_from_d0() {
    let site = Site {
        mv: Move::Omega2,
        direction: Direction::Forward,
        locus: Locus::Finger { first: 1, first_forward: false, second: 7, second_forward: false, first_over: true },
    };
    assert_eq!(d0().apply_move(&site).unwrap(), finger());
}

#[test]
fn resolutions_reduce_to_unlinks() {
    let d = d0();
    for side in [Side::Plus, Side::Minus] {
        let l = d.resolve(side).unwrap();
        assert_eq!((l.vertex_count(), l.crossing_count()), (0, 6));
    }
    let r = d.is_admissible(10_000).unwrap();
    assert!(r.verified(), "{r:?}");
    assert_eq!(r.plus.components, Some(2));
    assert_eq!(r.minus.components, Some(2));
}

#[test]
fn every_move_has_a_site_and_an_inverse() {
    for mv in Move::ALL {
        let base = if d0().enumerate_move_sites(mv, Direction::Forward).is_empty() { finger() } else { d0() };
        let sites = base.enumerate_move_sites(mv, Direction::Forward);
        assert!(!sites.is_empty(), "{mv}");
        let after = base.apply_move(&sites[0]).unwrap();
        let undo = after.enumerate_move_sites(mv, inverse_dir(mv));
        assert!(undo.iter().any(|s| after.apply_move(s).unwrap().is_isomorphic(&base)), "{mv}");
    }
}

#[test]
fn template_deltas() {
    // crossings and vertices added by one forward application, and the most
    // arcs it can add; an arc that closes up through a vertex may not split
    let expect = [
        (Move::Omega1, (1, 0), 1),
        (Move::Omega1Prime, (1, 0), 1),
        (Move::Omega2, (2, 0), 2),
        (Move::Omega6, (0, 1), 0),
        (Move::Omega6Prime, (0, 1), 0),
    ];
    let d = d0();
    for (mv, delta, max_arcs) in expect {
        for s in d.enumerate_move_sites(mv, Direction::Forward) {
            let e = d.apply_move(&s).unwrap();
            assert_eq!((e.crossing_count() - d.crossing_count(), e.vertex_count() - d.vertex_count()), delta, "{mv}");
            let arcs = e.compute_arcs().arcs - d.compute_arcs().arcs;
            assert!(arcs <= max_arcs, "{mv} {s:?}");
        }
    }
    // edge 2 lies on an arc with two ends
    let kink = Site { mv: Move::Omega1, direction: Direction::Forward, locus: Locus::Edge { edge: 2, left: true } };
    assert_eq!(d.apply_move(&kink).unwrap().compute_arcs().arcs, d.compute_arcs().arcs + 1);
    for mv in Move::ALL.into_iter().filter(|m| m.is_involution()) {
        let f = finger();
        for s in f.enumerate_move_sites(mv, Direction::Forward) {
            let e = f.apply_move(&s).unwrap();
            assert_eq!((e.crossing_count(), e.vertex_count()), (f.crossing_count(), f.vertex_count()), "{mv}");
        }
    }
}

#[test]
fn kink_signs() {
    let d = d0();
    for (mv, positive) in [(Move::Omega1, true), (Move::Omega1Prime, false)] {
        for s in d.enumerate_move_sites(mv, Direction::Forward) {
            let e = d.apply_move(&s).unwrap();
            let x = e.nodes().iter().position(|n| d.node_index(&n.id).is_none()).unwrap();
            assert_eq!(e.sign(x) == cy_core::diagram::Sign::Positive, positive);
            assert_eq!(e.enumerate_move_sites(mv, Direction::Backward).len(), 1);
        }
    }
}

#[test]
fn counts_survive_moves_mod_2_3_5() {
    let base = counts(&d0());
    assert_eq!(base, vec![2, 3, 8]);
    for mv in Move::ALL {
        for d in [d0(), finger()] {
            for s in d.enumerate_move_sites(mv, Direction::Forward).iter().step_by(7) {
                assert_eq!(counts(&d.apply_move(s).unwrap()), base, "{mv} {s:?}");
            }
        }
    }
}

#[test]
fn stale_sites_are_rejected() {
    let d = d0();
    let site = Site { mv: Move::Omega1, direction: Direction::Backward, locus: Locus::Node { node: "A".into() } };
    assert_eq!(d.apply_move(&site), Err(DiagramError::StaleSite));
    let site = Site { mv: Move::Omega6, direction: Direction::Forward, locus: Locus::Edge { edge: 99, left: true } };
    assert_eq!(d.apply_move(&site), Err(DiagramError::StaleSite));
    // a removal site from a grown diagram does not apply to the original
    let grown = d.apply_move(&d.enumerate_move_sites(Move::Omega2, Direction::Forward)[0]).unwrap();
    let undo = grown.enumerate_move_sites(Move::Omega2, Direction::Backward);
    assert_eq!(d.apply_move(&undo[0]), Err(DiagramError::StaleSite));
}

#[test]
fn trefoil_resolution_is_unknown() {
    // standard trefoil: three crossings, each arc over once
    let text = r#"{"nodes":[
        {"id":"P","type":"crossing","over_ports":[0,2]},
        {"id":"Q","type":"crossing","over_ports":[0,2]},
        {"id":"R","type":"crossing","over_ports":[0,2]}],
      "edges":[
        {"id":0,"tail":["P",2],"head":["Q",3]},
        {"id":1,"tail":["Q",1],"head":["R",0]},
        {"id":2,"tail":["R",2],"head":["P",3]},
        {"id":3,"tail":["P",1],"head":["Q",0]},
        {"id":4,"tail":["Q",2],"head":["R",3]},
        {"id":5,"tail":["R",1],"head":["P",0]}]}"#;
    let t = Diagram::from_json(text).unwrap();
    assert_eq!(t.crossing_table().unwrap().arcs, 3);
    let r = t.reduce_link(10_000);
    assert_eq!(r.status, cy_core::diagram::Admissibility::Unknown);
    // with a vertex loop added, both resolutions still carry the trefoil
    let s = t.enumerate_move_sites(Move::Omega6, Direction::Forward)[0].clone();
    let m = t.apply_move(&s).unwrap();
    assert!(!m.is_admissible(10_000).unwrap().verified());
}

#[test]
fn move_names_parse() {
    for mv in Move::ALL {
        assert_eq!(mv.as_str().parse::<Move>(), Ok(mv));
        assert_eq!(mv.to_string().parse::<Move>(), Ok(mv));
    }
    assert_eq!("omega4prime".parse::<Move>(), Ok(Move::Omega4Prime));
    assert_eq!("O6'".parse::<Move>(), Ok(Move::Omega6Prime));
    assert!("9".parse::<Move>().is_err());
}

#[test]
fn sites_read_back_from_json() {
    for d in [d0(), finger()] {
        for mv in Move::ALL {
            for dir in [Direction::Forward, Direction::Backward] {
                for s in d.enumerate_move_sites(mv, dir).into_iter().take(3) {
                    let back: Site = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
                    assert_eq!(d.apply_move(&back).unwrap(), d.apply_move(&s).unwrap());
                }
            }
        }
    }
}
