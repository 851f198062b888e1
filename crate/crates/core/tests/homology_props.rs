use cy_core::dga::Dga;
use cy_core::diagram::{CrossingRow, CrossingTable};
use cy_core::homology::{count_augmentations, count_augmentations_oracle, Presentation, RelationsFile};
use proptest::prelude::*;

fn presentation() -> impl Strategy<Value = Presentation> {
    (1..=3usize).prop_flat_map(|arcs| {
        prop::collection::vec((1..=arcs, 1..=arcs, 1..=arcs), 0..=3).prop_map(move |rows| {
            let rows = rows
                .into_iter()
                .enumerate()
                .map(|(k, (over, left, right))| CrossingRow { label: format!("X{k}"), over, left, right })
                .collect();
            Presentation::from_dga(&Dga::build(&CrossingTable::new(arcs, rows).unwrap()))
        })
    })
}

fn fixture(name: &str) -> RelationsFile {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    RelationsFile::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solver_matches_oracle(p in presentation(), n in prop::sample::select(vec![2u64, 3, 4, 5])) {
        let solver = count_augmentations(&p, n).unwrap();
        prop_assert_eq!(solver.count, count_augmentations_oracle(&p, n, false).unwrap());
    }

    #[test]
    fn solutions_are_sorted_roots(p in presentation(), n in prop::sample::select(vec![2u64, 3])) {
        let r = count_augmentations(&p, n).unwrap();
        prop_assert!(r.solutions.windows(2).all(|w| w[0] < w[1]));
        for a in &r.solutions {
            prop_assert!(p.evaluate(n, a).iter().all(|&v| v == 0));
        }
    }

    #[test]
    fn elimination_keeps_counts(p in presentation(), n in prop::sample::select(vec![2u64, 3, 5])) {
        let e = p.eliminate();
        prop_assert!(e.reduced.variables.len() + e.eliminated.len() == p.variables.len());
        prop_assert_eq!(count_augmentations(&e.reduced, n).unwrap().count, count_augmentations(&p, n).unwrap().count);
    }
}

#[test]
fn printed_presentations_separate_mod_3() {
    let spun = fixture("thm12_1_rel12.rels");
    let twist = fixture("thm12_2_no3.rels");
    assert_eq!(count_augmentations(&spun.presentation, 3).unwrap().count, 3);
    assert_eq!(count_augmentations(&twist.presentation, 3).unwrap().count, 2);
    // every listed assignment solves the first two relations
    for a in &spun.listed {
        assert!(spun.presentation.evaluate(3, a).iter().all(|&v| v == 0));
    }
}

#[test]
fn dropping_relation_three_recovers_the_listed_maps() {
    let all = fixture("thm12_1.rels");
    let without = all.presentation.without_relation(2);
    let r = count_augmentations(&without, 3).unwrap();
    assert_eq!(r.solutions, all.listed);
}
