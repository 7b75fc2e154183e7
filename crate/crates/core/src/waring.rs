//! Representations of an integer as a sum of four nonnegative cubes.
//!
//! [`four_cube_reps`] builds the table of pair sums `x³ + y³` and joins
//! complementary sums, which is enough to list every representation of
//! targets up to `10^12`. Representations of much larger powers of ten are
//! produced from small ones by [`tower_lift`].

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::fmt;

use crate::arith::power_of_ten_exponent;
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Largest target accepted by [`four_cube_reps`].
pub const DESK_SCALE_LIMIT: u64 = 1_000_000_000_000;

/// Four nonnegative integers in nondecreasing order whose cubes sum to `target`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeQuad {
    components: [BigUint; 4],
    target: BigUint,
}

impl CubeQuad {
    /// Sorts the components and checks the cube-sum identity.
    pub fn new(mut components: [BigUint; 4], target: BigUint) -> Result<Self> {
        components.sort();
        let actual: BigUint = components.iter().map(|c| c * c * c).sum();
        if actual != target {
            return Err(Error::CubeSumMismatch {
                actual: actual.to_string(),
                target: target.to_string(),
            });
        }
        Ok(Self { components, target })
    }

    /// Quad with the target computed from the components.
    pub fn from_components(components: [u64; 4]) -> Self {
        let components = components.map(BigUint::from);
        let target = components.iter().map(|c| c * c * c).sum();
        Self::new(components, target).expect("target computed from components")
    }

    pub fn components(&self) -> &[BigUint; 4] {
        &self.components
    }

    pub fn target(&self) -> &BigUint {
        &self.target
    }

    /// Components as decimal strings.
    pub fn to_strings(&self) -> [String; 4] {
        self.components.clone().map(|c| c.to_string())
    }

    /// Number of distinct orderings of the components: 4! / Π multiplicity!.
    pub fn permutation_count(&self) -> u64 {
        let mut count = 24;
        let mut run = 1;
        for i in 1..4 {
            if self.components[i] == self.components[i - 1] {
                run += 1;
                count /= run;
            } else {
                run = 1;
            }
        }
        count
    }
}

impl fmt::Display for CubeQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [m, n, p, q] = &self.components;
        write!(f, "({m},{n},{p},{q})")
    }
}

/// All root solutions for `10^(2+3a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSolutionSet {
    pub exponent_a: u32,
    pub quads: Vec<CubeQuad>,
    pub ordered_count: u64,
}

/// Floor of the cube root.
pub fn integer_cbrt(n: u64) -> u64 {
    let mut r = (n as f64).cbrt() as u64;
    while r > 0 && r.checked_pow(3).is_none_or(|c| c > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(3).is_some_and(|c| c <= n) {
        r += 1;
    }
    r
}

/// Pair sums `x³ + y³ <= n` with `x <= y`, sorted by `(sum, x, y)`.
fn pair_table(n: u64, min_component: u64, exec: Exec, partitions: usize) -> Vec<(u64, u32, u32)> {
    let cbrt = integer_cbrt(n);
    let x_max = integer_cbrt(n / 2);
    if min_component > x_max {
        return Vec::new();
    }
    let chunks = exec.map_chunks(min_component..x_max + 1, partitions, |xs| {
        let mut out = Vec::new();
        for x in xs {
            let x3 = x * x * x;
            for y in x..=cbrt {
                let s = x3 + y * y * y;
                if s > n {
                    break;
                }
                out.push((s, x as u32, y as u32));
            }
        }
        out
    });
    let mut pairs: Vec<_> = chunks.into_iter().flatten().collect();
    exec.sort_unstable(&mut pairs);
    pairs
}

/// Lists all nondecreasing quads with cube sum `n`, lexicographically sorted.
pub fn four_cube_reps(n: u64, allow_zero: bool) -> Result<Vec<CubeQuad>> {
    let exec = Exec::default();
    four_cube_reps_with(n, allow_zero, exec, exec.default_chunks())
}

/// [`four_cube_reps`] with an explicit execution strategy and number of
/// pair-table partitions. The result does not depend on either.
pub fn four_cube_reps_with(
    n: u64,
    allow_zero: bool,
    exec: Exec,
    partitions: usize,
) -> Result<Vec<CubeQuad>> {
    let raw = four_cube_reps_raw(n, allow_zero, exec, partitions)?;
    Ok(raw.into_iter().map(CubeQuad::from_components).collect())
}

/// Same as [`four_cube_reps_with`] but on machine integers.
pub fn four_cube_reps_raw(
    n: u64,
    allow_zero: bool,
    exec: Exec,
    partitions: usize,
) -> Result<Vec<[u64; 4]>> {
    if n > DESK_SCALE_LIMIT {
        return Err(Error::TargetTooLarge);
    }
    let min_component = u64::from(!allow_zero);
    let pairs = pair_table(n, min_component, exec, partitions);

    // start index of every run of equal sums
    let mut group_starts: Vec<usize> = Vec::new();
    for (i, p) in pairs.iter().enumerate() {
        if i == 0 || pairs[i - 1].0 != p.0 {
            group_starts.push(i);
        }
    }
    let group_end = |g: usize| group_starts.get(g + 1).copied().unwrap_or(pairs.len());

    let found = exec.map_chunks(0..group_starts.len() as u64, partitions, |groups| {
        let mut out = Vec::new();
        for g in groups {
            let g = g as usize;
            let lo = &pairs[group_starts[g]..group_end(g)];
            let s = lo[0].0;
            let rest = n - s;
            if rest < s {
                break;
            }
            let a = pairs.partition_point(|p| p.0 < rest);
            let b = pairs.partition_point(|p| p.0 <= rest);
            for &(_, x1, y1) in lo {
                for &(_, x2, y2) in &pairs[a..b] {
                    let mut q = [x1 as u64, y1 as u64, x2 as u64, y2 as u64];
                    q.sort_unstable();
                    out.push(q);
                }
            }
        }
        out
    });
    let mut quads: Vec<[u64; 4]> = found.into_iter().flatten().collect();
    quads.sort_unstable();
    quads.dedup();
    Ok(quads)
}

/// Number of ordered 4-tuples generated by a list of distinct sorted quads.
pub fn ordered_count(quads: &[CubeQuad]) -> u64 {
    quads.iter().map(CubeQuad::permutation_count).sum()
}

/// Exponent `a` such that `target = 10^(2+3a)`, if any.
pub fn root_exponent(target: &BigUint) -> Option<u32> {
    let e = power_of_ten_exponent(target)?;
    (e >= 2 && (e - 2) % 3 == 0).then(|| ((e - 2) / 3) as u32)
}

/// Multiplies every component of a root solution by `10^b`.
pub fn tower_lift(root: &CubeQuad, b: u32) -> Result<CubeQuad> {
    if root_exponent(root.target()).is_none() {
        return Err(Error::NotRootSolution);
    }
    let factor = BigUint::from(10u32).pow(b);
    let cube = &factor * &factor * &factor;
    let components = root.components().clone().map(|c| c * &factor);
    CubeQuad::new(components, root.target() * cube)
}

/// Root solutions of `10^(2+3a)` together with their ordered count.
pub fn root_solutions(a: u32) -> Result<RootSolutionSet> {
    let target = 10u64
        .checked_pow(2 + 3 * a)
        .filter(|&t| t <= DESK_SCALE_LIMIT)
        .ok_or(Error::TargetTooLarge)?;
    let quads = four_cube_reps(target, true)?;
    let ordered_count = ordered_count(&quads);
    Ok(RootSolutionSet { exponent_a: a, quads, ordered_count })
}

/// How strictly "components do not end with zeros" is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primitivity {
    /// Not every component is divisible by 10 (the quad is not a tower lift).
    Weak,
    /// No component is divisible by 10.
    Strong,
}

pub fn primitive_solutions(quads: &[CubeQuad], mode: Primitivity) -> Vec<CubeQuad> {
    let ten = BigUint::from(10u32);
    let ends_in_zero = |c: &BigUint| (c % &ten).is_zero();
    quads
        .iter()
        .filter(|q| match mode {
            Primitivity::Weak => !q.components().iter().all(ends_in_zero),
            Primitivity::Strong => !q.components().iter().any(ends_in_zero),
        })
        .cloned()
        .collect()
}

/// Quads with four distinct positive components.
pub fn distinct_positive(quads: &[CubeQuad]) -> Vec<CubeQuad> {
    quads
        .iter()
        .filter(|q| {
            let c = q.components();
            !c[0].is_zero() && c.windows(2).all(|w| w[0] != w[1])
        })
        .cloned()
        .collect()
}

/// `10^k` as a big integer.
pub fn pow10(k: u32) -> BigUint {
    let mut x = BigUint::one();
    for _ in 0..k {
        x *= 10u32;
    }
    x
}
