use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use numlab_core::arith::{crt_solve, sieve_primes, CongruenceSystem};
use numlab_core::covering::{
    instantiate, is_complete_and_effective, is_covered, search_complete_coverings_with, verify_run,
    CoveringState, SearchMode,
};
use numlab_core::Exec;
use proptest::prelude::*;

/// The placement pattern that the run starting at `a` induces on its boxes.
fn induced_state(a: u64, length: usize) -> CoveringState {
    let mut state = CoveringState::new(length);
    for &p in sieve_primes(length as u64 - 1).primes() {
        let offset = (p - a % p) % p;
        if offset + p < length as u64 {
            state.place(p, offset).unwrap();
        }
    }
    state
}

#[test]
fn length_17_starts_in_one_period() {
    let none = BTreeSet::new();
    let starts: Vec<u64> = (1..=30030).filter(|&a| verify_run(&BigUint::from(a), 17, &none)).collect();
    assert_eq!(starts, vec![2184, 27830]);
}

#[test]
fn periodic_in_30030() {
    let none = BTreeSet::new();
    for a in (1..=30030u64).step_by(7) {
        assert_eq!(
            verify_run(&BigUint::from(a), 17, &none),
            verify_run(&BigUint::from(a + 30030), 17, &none)
        );
    }
}

#[test]
fn model_matches_integer_runs() {
    let none = BTreeSet::new();
    for length in 17..=20 {
        let found = search_complete_coverings_with(length, &none, SearchMode::Exhaustive, Exec::Parallel).unwrap();
        for state in &found {
            let (a, _) = instantiate(state).unwrap();
            assert!(verify_run(&a, length, &none), "length {length}");
        }
        for a in 1..=60_000u64 {
            let semantic = verify_run(&BigUint::from(a), length, &none);
            let model = is_covered(&induced_state(a, length)).0;
            assert_eq!(semantic, model, "a = {a}, length {length}");
        }
    }
}

#[test]
fn mirror_pairs() {
    let none = BTreeSet::new();
    for length in 17..=20 {
        let found = search_complete_coverings_with(length, &none, SearchMode::Exhaustive, Exec::Parallel).unwrap();
        for state in &found {
            assert!(found.contains(&state.mirror()));
        }
    }
}

#[test]
fn exhaustive_strategies_agree() {
    let none = BTreeSet::new();
    for length in [17, 19, 21] {
        assert_eq!(
            search_complete_coverings_with(length, &none, SearchMode::Exhaustive, Exec::Sequential).unwrap(),
            search_complete_coverings_with(length, &none, SearchMode::Exhaustive, Exec::Parallel).unwrap()
        );
    }
}

#[test]
fn first_found_with_exclusions() {
    for (length, excluded) in [(1300, vec![3]), (600, vec![5]), (400, vec![2])] {
        let excluded: BTreeSet<u64> = excluded.into_iter().collect();
        let found = search_complete_coverings_with(length, &excluded, SearchMode::FirstFound, Exec::Parallel).unwrap();
        if let Some(state) = found.first() {
            assert!(is_complete_and_effective(state));
            assert!(excluded.iter().all(|p| !state.placement_map().contains_key(p)));
            let (a, _) = instantiate(state).unwrap();
            assert!(verify_run(&a, length, &excluded));
        } else {
            assert_ne!(length, 1300);
        }
    }
}

proptest! {
    #[test]
    fn crt_solutions_satisfy_system(residues in proptest::collection::vec(0i64..1000, 1..8)) {
        let primes = [2u64, 3, 5, 7, 11, 13, 17, 19];
        let mut system = CongruenceSystem::new();
        for (r, &p) in residues.iter().zip(&primes) {
            system.push(*r, p);
        }
        let (x, m) = crt_solve(&system).unwrap();
        prop_assert!(x < m);
        for (r, &p) in residues.iter().zip(&primes) {
            let lhs = BigInt::from(x.clone()) - r;
            prop_assert_eq!(lhs % BigInt::from(p), BigInt::from(0));
        }
    }

    #[test]
    fn mirror_is_involution(offsets in proptest::collection::vec(0u64..30, 6)) {
        let primes = [2u64, 3, 5, 7, 11, 13];
        let mut state = CoveringState::new(30);
        for (&p, o) in primes.iter().zip(offsets) {
            state.place(p, o % p).unwrap();
        }
        prop_assert_eq!(state.mirror().mirror(), state.clone());
        prop_assert_eq!(is_covered(&state).0, is_covered(&state.mirror()).0);
    }
}
