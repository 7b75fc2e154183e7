use numlab_core::sturmian::{
    complexity, letters_to_string, parity_differences, parity_profile, Letter, Param, PlanarPath,
    SturmianWord, Weight,
};
use numlab_core::Exec;
use rand::{Rng, SeedableRng};
use rand::rngs::StdRng;
use sha2::{Digest, Sha256};

fn digest(path: &PlanarPath) -> String {
    hex::encode(Sha256::digest(path.to_text().as_bytes()))
}

#[test]
fn golden_curve_and_walk() {
    let w = SturmianWord::sqrt7_over_7();
    assert_eq!(
        digest(&w.odd_even_curve(1000).unwrap()),
        "c62db4b0748e207213fa2ab7699a202c1155c944902fe058c6016af932d0dab0"
    );
    assert_eq!(
        digest(&w.parity_walk(2000, false, Exec::Parallel).unwrap()),
        "018c1683655ee2a6bf8b2f0582f169783221f3d6974656174f159169d4d5a9eb"
    );
    let w = SturmianWord::pi_over_8();
    assert_eq!(
        digest(&w.odd_even_curve(1000).unwrap()),
        "ecc567e79f52ed7d266c85ca372646e1730a05010fa869fa5aa2fc4d427c185d"
    );
    assert_eq!(
        digest(&w.parity_walk(2000, false, Exec::Sequential).unwrap()),
        "94c612169a5576cf154a305ed83d8510ba2948303ba72d4847091100bd509889"
    );
}

fn fibonacci_by_substitution(len: usize) -> String {
    let mut w = String::from("a");
    while w.len() < len {
        w = w.chars().map(|c| if c == 'a' { "ab" } else { "a" }).collect();
    }
    w.truncate(len);
    w
}

#[test]
fn fibonacci_preset() {
    let w = SturmianWord::fibonacci();
    assert_eq!(w.prefix_string(10_000).unwrap(), fibonacci_by_substitution(10_000));
    let d = w.density(1_000_000).unwrap();
    let d = *d.numer() as f64 / *d.denom() as f64;
    assert!((d - 0.3819660).abs() < 1e-4, "{d}");
}

#[test]
fn random_words_are_sturmian() {
    let mut rng = StdRng::seed_from_u64(11);
    let squarefree = [2u64, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23];
    let mut words = vec![SturmianWord::sqrt7_over_7(), SturmianWord::pi_over_8()];
    for _ in 0..10 {
        let d = squarefree[rng.gen_range(0..squarefree.len())];
        let q = rng.gen_range(2..9i64);
        // frac(sqrt(d) / q)
        let theta: Param = format!("sqrt{d}/{q}").parse().unwrap();
        let int = theta.to_f64().floor() as i64;
        let theta = Param::sqrt(d, num_rational::BigRational::new(1.into(), q.into()), num_rational::BigRational::from_integer((-int).into()));
        let phi: Param = format!("{}/1000", rng.gen_range(0..1000)).parse().unwrap();
        words.push(SturmianWord::new(theta, phi).unwrap());
    }
    for w in words {
        let c = w.complexity(10, 100_000).unwrap();
        assert!(c.iter().all(|&(n, p)| p == n + 1), "{:?} {:?}: {c:?}", w.theta(), w.phi());
    }
}

#[test]
fn sweep_matches_per_index_profiles() {
    for w in [SturmianWord::sqrt7_over_7(), SturmianWord::fibonacci()] {
        let letters = w.prefix(10_000).unwrap();
        let d = parity_differences(&letters, 10_000, Exec::Parallel);
        for n in 1..=10_000u64 {
            let p = parity_profile(&letters, n).unwrap();
            assert_eq!(d[n as usize - 1] as i64, p.d);
            let divisors = (1..=n).filter(|j| n % j == 0).count() as u64;
            assert!(p.o + p.e <= divisors);
        }
    }
}

#[test]
fn sweep_is_strategy_independent() {
    let letters = SturmianWord::pi_over_8().prefix(200_000).unwrap();
    assert_eq!(
        parity_differences(&letters, 200_000, Exec::Sequential),
        parity_differences(&letters, 200_000, Exec::Parallel)
    );
}

fn heading_from_turns(path: &PlanarPath) -> i64 {
    // net quarter turns implied by consecutive step directions
    let dirs: Vec<(i64, i64)> = path.points.windows(2).map(|w| (w[1].0 - w[0].0, w[1].1 - w[0].1)).collect();
    let mut net = 0;
    for w in dirs.windows(2) {
        let cross = w[0].0 * w[1].1 - w[0].1 * w[1].0;
        net += cross;
    }
    net
}

#[test]
fn paths_are_lattice_walks() {
    let w = SturmianWord::sqrt7_over_7();
    let letters = w.prefix(5000).unwrap();
    let curve = w.odd_even_curve(5000).unwrap();
    assert!(curve.is_valid());
    assert_eq!(curve.points.len(), 5001);
    // every b at an even index is a left turn, at an odd index a right turn
    let expected: i64 = letters[..4999]
        .iter()
        .enumerate()
        .map(|(i, l)| match (l, (i + 1) % 2) {
            (Letter::A, _) => 0,
            (Letter::B, 0) => 1,
            (Letter::B, _) => -1,
        })
        .sum();
    assert_eq!(heading_from_turns(&curve), expected);

    let walk = w.parity_walk(5000, false, Exec::Parallel).unwrap();
    assert!(walk.is_valid());
    let d = parity_differences(&letters, 5000, Exec::Sequential);
    let expected: i64 = d[..4999].iter().map(|v| v.signum() as i64).sum();
    assert_eq!(heading_from_turns(&walk), expected);
    let zeros: Vec<usize> = d.iter().enumerate().filter(|(_, &v)| v == 0).map(|(i, _)| i + 1).collect();
    assert_eq!(walk.marks, zeros);
}

#[test]
fn riesz_slope_near_prediction() {
    let w = SturmianWord::sqrt7_over_7();
    let m = w.mollified_average(100_000, Weight::Riesz, Exec::Parallel).unwrap();
    assert!((m.slope - m.predicted_slope).abs() / m.predicted_slope < 0.05);
    assert!((m.beta - (1.0 - 7f64.sqrt() / 7.0)).abs() < 1e-3);
    let lit = w.mollified_average(100_000, Weight::Literal, Exec::Parallel).unwrap();
    assert!(lit.slope < 0.0);
}

#[test]
fn higher_precision_changes_nothing() {
    let base = SturmianWord::pi_over_8();
    let fine = SturmianWord::with_precision(base.theta().clone(), base.phi().clone(), 512).unwrap();
    assert_eq!(base.prefix(3000).unwrap(), fine.prefix(3000).unwrap());
    assert_eq!(complexity(&fine.prefix(1000).unwrap(), 3), vec![(1, 2), (2, 3), (3, 4)]);
    assert_eq!(letters_to_string(&fine.prefix(34).unwrap()), "abbababbababbababbababbababbabbaba");
}
