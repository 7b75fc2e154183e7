use num_bigint::BigUint;
use numlab_core::waring::{
    four_cube_reps, four_cube_reps_raw, integer_cbrt, ordered_count, pow10, tower_lift, CubeQuad,
};
use numlab_core::Exec;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand::rngs::StdRng;

fn brute_force(n: u64) -> Vec<[u64; 4]> {
    let top = integer_cbrt(n);
    let mut out = Vec::new();
    for a in 0..=top {
        for b in a..=top {
            for c in b..=top {
                let s = a.pow(3) + b.pow(3) + c.pow(3);
                if s > n {
                    break;
                }
                let d = integer_cbrt(n - s);
                if d >= c && d.pow(3) == n - s {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

#[test]
fn golden_table() {
    let golden = include_str!("golden/waring_1e8.txt");
    let text: String = four_cube_reps(100_000_000, true)
        .unwrap()
        .iter()
        .map(|q| format!("{q}\n"))
        .collect();
    assert_eq!(text, golden);
}

#[test]
fn random_targets_match_brute_force() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..100 {
        let n = rng.gen_range(1..=1_000_000u64);
        assert_eq!(four_cube_reps_raw(n, true, Exec::Parallel, 5).unwrap(), brute_force(n), "n = {n}");
    }
}

#[test]
fn small_targets_match_brute_force() {
    for n in 0..=2000u64 {
        assert_eq!(four_cube_reps_raw(n, true, Exec::Sequential, 1).unwrap(), brute_force(n), "n = {n}");
    }
}

#[test]
fn partition_independent() {
    let reference = four_cube_reps_raw(100_000_000, true, Exec::Sequential, 1).unwrap();
    for parts in [2, 3, 7, 16, 64] {
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(four_cube_reps_raw(100_000_000, true, exec, parts).unwrap(), reference);
        }
    }
}

#[test]
fn positive_only() {
    let all = four_cube_reps(100_000_000, true).unwrap();
    let positive = four_cube_reps(100_000_000, false).unwrap();
    assert_eq!(positive.len(), all.len() - 1);
    assert_eq!(ordered_count(&all), 1020);
}

proptest! {
    #[test]
    fn lifts_compose(b1 in 0u32..40, b2 in 0u32..40) {
        let root = CubeQuad::from_components([6, 24, 34, 36]);
        let once = tower_lift(&root, b1 + b2).unwrap();
        let twice = tower_lift(&tower_lift(&root, b1).unwrap(), b2).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(once.target(), &(BigUint::from(100_000u32) * pow10(3 * (b1 + b2))));
    }

    #[test]
    fn reps_sum_to_target(n in 0u64..5_000_000) {
        for q in four_cube_reps_raw(n, true, Exec::Sequential, 2).unwrap() {
            prop_assert!(q.windows(2).all(|w| w[0] <= w[1]));
            prop_assert_eq!(q.iter().map(|c| c.pow(3)).sum::<u64>(), n);
        }
    }
}
