use proptest::prelude::*;
use rand::Rng;

use rainbow_core::format::{parse_instance, serialize_instance, Instance};
use rainbow_core::oracle::{nu_exact, rainbow_exact};
use rainbow_core::shifting::{is_shifted, pullback_rainbow, replay, shift_hypergraph, shifted_closure, ShiftMode};
use rainbow_core::solvers::{greedy_bipartite, hall_size_algorithm, check_hall_condition, Outcome};
use rainbow_core::verify::trial_rng;
use rainbow_core::{Family, GroundSet, Hypergraph};

fn hypergraph(ground: GroundSet) -> impl Strategy<Value = Hypergraph> {
    let universe = ground.universe();
    proptest::collection::vec(any::<bool>(), universe.len()).prop_map(move |mask| {
        let edges = universe.iter().zip(&mask).filter(|(_, &b)| b).map(|(e, _)| e.clone());
        Hypergraph::from_edges(ground, edges).unwrap()
    })
}

fn family(ground: GroundSet, k: usize) -> impl Strategy<Value = Family> {
    proptest::collection::vec(hypergraph(ground), k).prop_map(|members| Family::new(members).unwrap())
}

fn any_ground() -> impl Strategy<Value = GroundSet> {
    prop_oneof![
        (1usize..=4).prop_map(|n| GroundSet::partite(2, n).unwrap()),
        (1usize..=2).prop_map(|n| GroundSet::partite(3, n).unwrap()),
        (2usize..=6).prop_map(|n| GroundSet::general(n, 2).unwrap()),
        (4usize..=6).prop_map(|n| GroundSet::general(n, 3).unwrap()),
    ]
}

fn any_family() -> impl Strategy<Value = Family> {
    (any_ground(), 1usize..=3).prop_flat_map(|(g, k)| family(g, k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_is_shifted_and_keeps_sizes(f in any_family()) {
        let mode = ShiftMode::for_ground(f.ground());
        let (shifted, log) = shifted_closure(&f, mode).unwrap();
        prop_assert_eq!(shifted.sizes(), f.sizes());
        for h in shifted.members() {
            prop_assert!(is_shifted(h, mode).unwrap());
        }
        prop_assert_eq!(replay(&log, &f).unwrap(), shifted);
    }

    #[test]
    fn pullback_validates(f in any_family()) {
        let (shifted, log) = shifted_closure(&f, ShiftMode::for_ground(f.ground())).unwrap();
        let upstairs = rainbow_exact(&shifted);
        let downstairs = rainbow_exact(&f);
        if let Some(m) = upstairs {
            let back = pullback_rainbow(&log, &f, &m).unwrap();
            prop_assert!(back.validate(&f).is_ok());
        }
        // shifting cannot create a rainbow matching
        if downstairs.is_none() {
            prop_assert!(rainbow_exact(&shifted).is_none());
        }
    }

    #[test]
    fn single_shift_never_raises_nu(h in (1usize..=3).prop_flat_map(|n| hypergraph(GroundSet::partite(2, n).unwrap())), side in 0usize..2) {
        let n = h.ground().n();
        for x in 0..n {
            for y in x + 1..n {
                let (s, _) = shift_hypergraph(&h, side, x, y).unwrap();
                prop_assert!(nu_exact(&s) <= nu_exact(&h));
                prop_assert_eq!(s.len(), h.len());
            }
        }
    }

    #[test]
    fn instance_round_trip(f in any_family()) {
        let text = serialize_instance(&f);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(serialize_instance(&back), text);
        let doc = Instance::from_family(&f);
        prop_assert_eq!(doc.to_family().unwrap(), f);
    }

    #[test]
    fn greedy_succeeds_above_bound(n in 2usize..=5, k in 1usize..=3, seed in any::<u64>()) {
        prop_assume!(k <= n);
        let g = GroundSet::partite(2, n).unwrap();
        let universe = g.universe();
        let bound = (k - 1) * n;
        let mut rng = trial_rng(seed, 0);
        let members = (0..k).map(|_| {
            let size = rng.random_range(bound + 1..=n * n);
            let picked = rand::seq::index::sample(&mut rng, universe.len(), size);
            Hypergraph::from_edges(g, picked.iter().map(|i| universe[i].clone())).unwrap()
        }).collect::<Vec<_>>();
        let f = Family::new(members).unwrap();
        match greedy_bipartite(&f).unwrap() {
            Outcome::Found(m) => prop_assert!(m.validate(&f).is_ok()),
            Outcome::NotFound { reason } => prop_assert!(false, "greedy failed: {}", reason),
        }
    }

    #[test]
    fn hall_algorithm_agrees_with_condition(f in (1usize..=3, 1usize..=3).prop_flat_map(|(n, k)| family(GroundSet::partite(2, n).unwrap(), k))) {
        let (shifted, _) = shifted_closure(&f, ShiftMode::Partite).unwrap();
        let trace = hall_size_algorithm(&shifted).unwrap();
        if check_hall_condition(&shifted).unwrap().holds {
            let m = trace.matching().expect("success under the size condition");
            prop_assert!(m.validate(&shifted).is_ok());
        }
        if let Some(m) = trace.matching() {
            prop_assert!(m.validate(&shifted).is_ok());
        }
    }
}
