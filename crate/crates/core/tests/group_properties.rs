use std::collections::HashSet;

use nilgrowth::groups::{ConcreteGroup, HeisElem, HeisenbergSubgroup};
use proptest::prelude::*;

fn elem() -> impl Strategy<Value = HeisElem> {
    (-3i64..=3, -3i64..=3, -4i64..=4).prop_map(|(a, b, c)| HeisElem::new(a, b, c))
}

fn word_ball(gens: &[HeisElem], r: usize) -> HashSet<HeisElem> {
    let mut steps: Vec<HeisElem> = gens.to_vec();
    steps.extend(gens.iter().map(|g| g.inv()));
    let mut seen = HashSet::from([HeisElem::ID]);
    let mut frontier = vec![HeisElem::ID];
    for _ in 0..r {
        let mut next = Vec::new();
        for g in &frontier {
            for s in &steps {
                let h = g.mul(*s);
                if seen.insert(h) {
                    next.push(h);
                }
            }
        }
        frontier = next;
    }
    seen
}

const P: i64 = 5;

fn reduce(g: HeisElem) -> Vec<i64> {
    vec![g.a.rem_euclid(P), g.b.rem_euclid(P), g.c.rem_euclid(P)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn words_in_the_generators_are_members(gens in prop::collection::vec(elem(), 1..=3)) {
        let h = HeisenbergSubgroup::generated(&gens);
        for g in word_ball(&gens, 5) {
            prop_assert!(h.contains(g), "{} from {:?}", g, gens);
        }
    }

    // The image of the canonical form in H(Z/5) must be the subgroup that
    // breadth-first closure finds there.
    #[test]
    fn reduction_mod_five_matches_closure(gens in prop::collection::vec(elem(), 1..=3)) {
        let h = HeisenbergSubgroup::generated(&gens);
        let finite = ConcreteGroup::heisenberg_mod(P).unwrap();
        let reduced: Vec<Vec<i64>> = gens.iter().map(|&g| reduce(g)).collect();
        let oracle: HashSet<Vec<i64>> = finite.subgroup_elements(&reduced, 1_000_000).unwrap().into_iter().collect();
        let mut seen = HashSet::new();
        let m = h.center();
        for a in -12..=12 {
            for b in -12..=12 {
                let Some(c0) = h.corner_over(a, b) else { continue };
                for t in 0..P {
                    let g = HeisElem::new(a, b, c0 + m * t);
                    prop_assert!(h.contains(g));
                    seen.insert(reduce(g));
                }
            }
        }
        prop_assert_eq!(seen, oracle);
    }

    #[test]
    fn canonical_form_ignores_the_generating_set(gens in prop::collection::vec(elem(), 1..=3), w in elem()) {
        let h = HeisenbergSubgroup::generated(&gens);
        let mut more = gens.clone();
        more.push(gens[0].mul(gens[gens.len() - 1]).mul(gens[0].inv()));
        prop_assert_eq!(HeisenbergSubgroup::generated(&more), h.clone());
        prop_assert_eq!(HeisenbergSubgroup::generated(&h.generators()), h.clone());
        let joined = h.with(&[w]);
        prop_assert!(joined.contains_subgroup(&h) && joined.contains(w));
    }

    #[test]
    fn balls_grow_and_are_symmetric(r in 0usize..7) {
        let g = ConcreteGroup::heisenberg_z();
        let small = g.ball(r, 1_000_000).unwrap();
        let big = g.ball(r + 1, 1_000_000).unwrap();
        prop_assert!(small.len() < big.len() && big.len() <= 5 * small.len());
        let set: HashSet<_> = small.iter().cloned().collect();
        prop_assert!(small.iter().all(|x| set.contains(&g.inv(x))));
    }
}
