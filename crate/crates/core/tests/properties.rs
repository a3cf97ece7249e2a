mod common;

use proptest::prelude::*;
use theater_foata::theater_sim::{simulate_with, SeatPolicy};
use theater_foata::{
    all_b_anomalies, anomaly_block_starts, bounded_to_theater, count_bounded_cycles, cycle_decomposition, cycle_head_of,
    foata_forward, foata_inverse, has_b_anomaly, is_theater_admissible, max_cycle_length, reachable_seats,
    sample_bounded, theater_to_bounded, theater_violation, CycleDecomposition, Permutation, SeatingState, TextStyle,
    U64CountTable,
};

use common::*;

fn permutation(max_len: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_len).prop_flat_map(|n| {
        Just((1..=n as u32).collect::<Vec<u32>>())
            .prop_shuffle()
            .prop_map(|w| Permutation::from_word(w).unwrap())
    })
}

fn perm_and_b(max_len: usize) -> impl Strategy<Value = (Permutation, usize)> {
    permutation(max_len).prop_flat_map(|p| {
        let n = p.len();
        (Just(p), 1..=n + 1)
    })
}

proptest! {
    #[test]
    fn text_round_trip(p in permutation(40)) {
        prop_assert_eq!(p.to_text(TextStyle::Comma).parse::<Permutation>().unwrap(), p.clone());
        prop_assert_eq!(p.to_text(TextStyle::Compact).parse::<Permutation>().unwrap(), p.clone());
        let spaced = p.to_string().replace(',', " ");
        prop_assert_eq!(spaced.parse::<Permutation>().unwrap(), p.clone());
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<Permutation>(&json).unwrap(), p);
    }

    #[test]
    fn involutions(p in permutation(60)) {
        prop_assert_eq!(p.rotate180().rotate180(), p.clone());
        prop_assert_eq!(p.complement().complement(), p.clone());
        prop_assert_eq!(p.rotate180(), p.reverse().complement());
        prop_assert_eq!(p.rotate180().into_word(), rotate_by_hand(p.word()));
        let q = p.invert();
        for i in 1..=p.len() {
            prop_assert_eq!(q.apply(p.apply(i) as usize) as usize, i);
        }
        prop_assert_eq!(q.invert(), p);
    }

    #[test]
    fn foata_matches_hand_construction(p in permutation(80)) {
        let w = foata_forward(&p);
        prop_assert_eq!(w.word().to_vec(), foata_by_hand(p.word()));
        prop_assert_eq!(foata_inverse(&w), p.clone());
        prop_assert_eq!(foata_forward(&foata_inverse(&p)), p.clone());
        prop_assert_eq!(max_cycle_length(&p), max_cycle(p.word()));
    }

    #[test]
    fn canonical_form_and_cycle_text(p in permutation(30)) {
        let dec = cycle_decomposition(&p);
        for pair in dec.cycles().windows(2) {
            prop_assert!(pair[0].head() < pair[1].head());
        }
        for c in dec.cycles() {
            prop_assert_eq!(c.head(), *c.elements().iter().max().unwrap());
        }
        let reparsed: CycleDecomposition = dec.to_string().parse().unwrap();
        prop_assert_eq!(&reparsed, &dec);
        prop_assert_eq!(reparsed.to_permutation(), p.clone());
        prop_assert_eq!(dec.cycle_type(), cycle_decomposition(&p.invert()).cycle_type());
    }

    #[test]
    fn prefix_maximum_is_cycle_head(w in permutation(50)) {
        let s = foata_inverse(&w);
        let dec = cycle_decomposition(&s);
        for k in 1..=w.len() {
            let letter = w.apply(k);
            let cycle = dec.cycles().iter().find(|c| c.elements().contains(&letter)).unwrap();
            prop_assert_eq!(cycle_head_of(&w, k).unwrap(), cycle.head());
        }
    }

    #[test]
    fn long_cycle_iff_anomaly((s, b) in perm_and_b(40)) {
        let long = max_cycle(s.word()) > b;
        prop_assert_eq!(has_b_anomaly(&foata_forward(&s), b).unwrap(), long);
    }

    #[test]
    fn detectors_match_definitions((w, b) in perm_and_b(40)) {
        prop_assert_eq!(anomaly_block_starts(&w, b).unwrap(), anomaly_starts(w.word(), b));
        prop_assert_eq!(is_theater_admissible(&w, b).unwrap(), theater_admissible(w.word(), b));
        prop_assert_eq!(has_b_anomaly(&w, b).unwrap(), !is_theater_admissible(&w.rotate180(), b).unwrap());
        if has_b_anomaly(&w, b).unwrap() {
            for c in 1..=b {
                prop_assert!(has_b_anomaly(&w, c).unwrap());
            }
        }
    }

    #[test]
    fn witnesses_are_sound((w, b) in perm_and_b(40)) {
        let word = w.word();
        for wit in all_b_anomalies(&w, b).unwrap() {
            let block = &word[wit.block_start..wit.block_start + b];
            let block_max = *block.iter().max().unwrap();
            prop_assert!(wit.blocker_position >= 1 && wit.blocker_position <= wit.block_start);
            prop_assert_eq!(word[wit.blocker_position - 1], wit.blocker_value);
            prop_assert!(wit.blocker_value > block_max);
            // Largest element of the set of earlier letters above the block.
            let best = word[..wit.block_start].iter().copied().filter(|&a| a > block_max).max();
            prop_assert_eq!(best, Some(wit.blocker_value));
        }
        if let Some(v) = theater_violation(&w, b).unwrap() {
            prop_assert!(v.block_start + b < v.victim_position);
            let victim = word[v.victim_position - 1];
            prop_assert!(word[v.block_start..v.block_start + b].iter().all(|&x| x > victim));
            // No violation with a smaller victim, nor a smaller block for this victim.
            let earlier: Vec<u32> = word[..v.victim_position - 1].to_vec();
            prop_assert!(theater_admissible(&earlier, b));
            for j in 0..v.block_start {
                prop_assert!(!(j + b < v.victim_position && word[j..j + b].iter().all(|&x| x > victim)));
            }
        }
    }

    #[test]
    fn bijection_round_trip((s, b) in perm_and_b(60)) {
        let t = bounded_to_theater(&s);
        prop_assert_eq!(theater_to_bounded(&t), s.clone());
        prop_assert_eq!(bounded_to_theater(&theater_to_bounded(&s)), s.clone());
        if max_cycle(s.word()) <= b {
            prop_assert!(theater_admissible(t.word(), b));
        }
        if theater_admissible(s.word(), b) {
            prop_assert!(max_cycle(theater_to_bounded(&s).word()) <= b);
        }
    }

    #[test]
    fn sampler_stays_in_class(len in 1usize..40, b in 1usize..8, seed: u64) {
        let p = sample_bounded(len, b, seed).unwrap();
        prop_assert_eq!(p.len(), len);
        prop_assert!(max_cycle(p.word()) <= b);
    }

    #[test]
    fn seats_never_become_reachable_again(len in 1usize..30, b in 1usize..6, seed: u64) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let trace = simulate_with(len, b, SeatPolicy::UniformReachable, &mut rng).unwrap();
        prop_assert!(trace.is_valid(len, b));
        let mut occupancy = vec![false; len];
        let mut lost = vec![false; len];
        for &seat in &trace.choices {
            let reachable = reachable_seats(&SeatingState::from_occupancy(occupancy.clone()), b);
            prop_assert!(reachable.contains(&(seat as usize)));
            for x in 1..=len {
                if !occupancy[x - 1] && !reachable.contains(&x) {
                    lost[x - 1] = true;
                }
                prop_assert!(!(lost[x - 1] && reachable.contains(&x)));
            }
            occupancy[seat as usize - 1] = true;
        }
    }
}

#[test]
fn count_table_boundary_rows_and_monotonicity() {
    let mut table = U64CountTable::new();
    for n in 0..=20 {
        assert_eq!(table.get(n, 1).unwrap(), 1);
        for b in n.max(1)..n + 3 {
            assert_eq!(table.get(n, b).unwrap(), factorial(n));
        }
        for b in 1..=n + 1 {
            let (lo, hi) = (table.get(n, b).unwrap(), table.get(n, b + 1).unwrap());
            assert!(lo <= hi);
            assert_eq!(lo == hi, b >= n, "L={n} b={b}");
        }
    }
    assert_eq!(count_bounded_cycles::<u64>(0, 4), Ok(1));
}

#[test]
fn recurrence_matches_oracle_through_eight() {
    for n in 1..=8 {
        let words = all_words(n);
        for b in 1..=n {
            let brute = words.iter().filter(|w| max_cycle(w) <= b).count() as u64;
            assert_eq!(count_bounded_cycles::<u64>(n, b).unwrap(), brute, "L={n} b={b}");
        }
    }
}
