//! Coverings of a run of consecutive boxes by residue classes of primes.
//!
//! A prime `p` placed at offset `r` puts a pearl in every box `b` with
//! `b ≡ r (mod p)`. A run of `length` boxes is *completely covered* when
//! every box holds a pearl, and a placement is *effective* when it puts at
//! least two pearls inside the run. Complete effective coverings correspond
//! through the Chinese remainder theorem to runs of consecutive integers in
//! which every member shares a prime factor with another member.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

use crate::arith::{crt_solve, is_prime, sieve_primes, CongruenceSystem};
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Longest run accepted by [`SearchMode::Exhaustive`].
pub const EXHAUSTIVE_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Placement {
    pub prime: u64,
    pub offset: u64,
}

/// A run of boxes `0..length` together with the primes placed on it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CoveringState {
    length: usize,
    placements: BTreeMap<u64, u64>,
    excluded: BTreeSet<u64>,
}

impl CoveringState {
    pub fn new(length: usize) -> Self {
        Self { length, placements: BTreeMap::new(), excluded: BTreeSet::new() }
    }

    pub fn with_excluded(length: usize, excluded: impl IntoIterator<Item = u64>) -> Self {
        Self { length, placements: BTreeMap::new(), excluded: excluded.into_iter().collect() }
    }

    /// Builds a state from `(prime, offset)` pairs.
    pub fn from_placements(length: usize, placements: &[(u64, u64)]) -> Result<Self> {
        let mut s = Self::new(length);
        for &(p, r) in placements {
            s.place(p, r)?;
        }
        Ok(s)
    }

    /// Places `prime` with a pearl in box `offset` (and every `prime`-th box from it).
    pub fn place(&mut self, prime: u64, offset: u64) -> Result<()> {
        if !is_prime(prime) {
            return Err(Error::InvalidInput(format!("{prime} is not prime")));
        }
        if offset >= prime {
            return Err(Error::InvalidInput(format!("offset {offset} must be below {prime}")));
        }
        if self.excluded.contains(&prime) {
            return Err(Error::InvalidInput(format!("{prime} is excluded")));
        }
        if self.placements.contains_key(&prime) {
            return Err(Error::InvalidInput(format!("{prime} is already placed")));
        }
        self.placements.insert(prime, offset);
        Ok(())
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn placements(&self) -> impl Iterator<Item = Placement> + '_ {
        self.placements.iter().map(|(&prime, &offset)| Placement { prime, offset })
    }

    pub fn placement_map(&self) -> &BTreeMap<u64, u64> {
        &self.placements
    }

    pub fn excluded(&self) -> &BTreeSet<u64> {
        &self.excluded
    }

    /// Reflects the run: box `b` becomes `length - 1 - b`.
    pub fn mirror(&self) -> Self {
        let last = self.length.saturating_sub(1) as i64;
        let placements = self
            .placements
            .iter()
            .map(|(&p, &r)| (p, (last - r as i64).rem_euclid(p as i64) as u64))
            .collect();
        Self { length: self.length, placements, excluded: self.excluded.clone() }
    }

    /// Smallest placed prime covering box `b`, if any.
    pub fn covering_prime(&self, b: u64) -> Option<u64> {
        self.placements.iter().find(|(&p, &r)| b % p == r).map(|(&p, _)| p)
    }
}

/// Whether every box holds a pearl, and which boxes are empty.
pub fn is_covered(state: &CoveringState) -> (bool, Vec<usize>) {
    let mut covered = vec![false; state.length];
    for (&p, &r) in &state.placements {
        let mut b = r as usize;
        while b < state.length {
            covered[b] = true;
            b += p as usize;
        }
    }
    let uncovered: Vec<usize> =
        covered.iter().enumerate().filter(|(_, &c)| !c).map(|(i, _)| i).collect();
    (uncovered.is_empty(), uncovered)
}

/// Whether every placed prime has at least two pearls in the run.
pub fn is_effective(state: &CoveringState) -> (bool, Vec<u64>) {
    let violators: Vec<u64> = state
        .placements
        .iter()
        .filter(|(&p, &r)| (r + p) as usize >= state.length)
        .map(|(&p, _)| p)
        .collect();
    (violators.is_empty(), violators)
}

pub fn is_complete_and_effective(state: &CoveringState) -> bool {
    is_covered(state).0 && is_effective(state).0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    FirstFound,
}

/// Complete effective coverings of `0..length` avoiding the `excluded` primes.
pub fn search_complete_coverings(
    length: usize,
    excluded: &BTreeSet<u64>,
    mode: SearchMode,
) -> Result<Vec<CoveringState>> {
    search_complete_coverings_with(length, excluded, mode, Exec::default())
}

pub fn search_complete_coverings_with(
    length: usize,
    excluded: &BTreeSet<u64>,
    mode: SearchMode,
    exec: Exec,
) -> Result<Vec<CoveringState>> {
    match mode {
        SearchMode::Exhaustive => {
            if length > EXHAUSTIVE_CAP {
                return Err(Error::UseFirstFound { cap: EXHAUSTIVE_CAP });
            }
            Ok(exhaustive(length, excluded, exec, false))
        }
        SearchMode::FirstFound => {
            if length <= EXHAUSTIVE_CAP {
                return Ok(exhaustive(length, excluded, Exec::Sequential, true));
            }
            Ok(greedy_search(length, excluded).into_iter().collect())
        }
    }
}

/// Offset-tuple enumeration over bit masks of the run.
struct MaskSearch {
    length: usize,
    full: u64,
    primes: Vec<u64>,
    // per prime: list of (offset, mask)
    options: Vec<Vec<(u64, u64)>>,
    // boxes any prime from index i onward could still cover
    reachable: Vec<u64>,
}

impl MaskSearch {
    fn new(length: usize, excluded: &BTreeSet<u64>) -> Self {
        let mut primes: Vec<u64> = sieve_primes(length.saturating_sub(1) as u64)
            .primes()
            .iter()
            .copied()
            .filter(|p| !excluded.contains(p))
            .collect();
        // larger primes have fewer options; deciding them first keeps the tree narrow
        primes.reverse();
        let options: Vec<Vec<(u64, u64)>> = primes
            .iter()
            .map(|&p| {
                (0..p)
                    .filter(|&r| ((r + p) as usize) < length)
                    .map(|r| {
                        let mut mask = 0u64;
                        let mut b = r;
                        while (b as usize) < length {
                            mask |= 1 << b;
                            b += p;
                        }
                        (r, mask)
                    })
                    .collect()
            })
            .collect();
        let mut reachable = vec![0u64; primes.len() + 1];
        for i in (0..primes.len()).rev() {
            reachable[i] = reachable[i + 1] | options[i].iter().fold(0, |m, o| m | o.1);
        }
        let full = if length == 64 { u64::MAX } else { (1u64 << length) - 1 };
        Self { length, full, primes, options, reachable }
    }

    fn dfs(
        &self,
        i: usize,
        covered: u64,
        chosen: &mut Vec<(u64, u64)>,
        out: &mut Vec<CoveringState>,
        stop_at_first: bool,
    ) {
        if stop_at_first && !out.is_empty() {
            return;
        }
        if covered == self.full {
            if i == self.primes.len() {
                out.push(self.state(chosen));
                return;
            }
        } else if (self.full & !covered) & !self.reachable[i] != 0 {
            return;
        }
        if i == self.primes.len() {
            return;
        }
        // leave this prime unused
        self.dfs(i + 1, covered, chosen, out, stop_at_first);
        for &(r, mask) in &self.options[i] {
            chosen.push((self.primes[i], r));
            self.dfs(i + 1, covered | mask, chosen, out, stop_at_first);
            chosen.pop();
        }
    }

    fn state(&self, chosen: &[(u64, u64)]) -> CoveringState {
        CoveringState {
            length: self.length,
            placements: chosen.iter().copied().collect(),
            excluded: BTreeSet::new(),
        }
    }
}

fn exhaustive(
    length: usize,
    excluded: &BTreeSet<u64>,
    exec: Exec,
    stop_at_first: bool,
) -> Vec<CoveringState> {
    if length == 0 {
        let mut s = CoveringState::new(0);
        s.excluded = excluded.clone();
        return vec![s];
    }
    let search = MaskSearch::new(length, excluded);
    if search.primes.is_empty() {
        return Vec::new();
    }
    let mut results = if stop_at_first {
        let mut out = Vec::new();
        search.dfs(0, 0, &mut Vec::new(), &mut out, true);
        out
    } else {
        // outermost prime: unused, or one of its offsets
        let mut branches: Vec<Option<(u64, u64)>> = vec![None];
        branches.extend(search.options[0].iter().map(|&o| Some(o)));
        exec.map_slice(&branches, |branch| {
            let mut out = Vec::new();
            let mut chosen = Vec::new();
            let covered = match branch {
                Some((r, mask)) => {
                    chosen.push((search.primes[0], *r));
                    *mask
                }
                None => 0,
            };
            search.dfs(1, covered, &mut chosen, &mut out, false);
            out
        })
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
    };
    for s in &mut results {
        s.excluded = excluded.clone();
    }
    results.sort();
    results
}

/// Greedy placement of small primes followed by a matching of the remaining
/// boxes to distinct larger primes. Tries a sweep of greedy cut-offs and
/// returns the first complete effective covering found.
fn greedy_search(length: usize, excluded: &BTreeSet<u64>) -> Option<CoveringState> {
    let primes: Vec<u64> = sieve_primes(length.saturating_sub(1) as u64)
        .primes()
        .iter()
        .copied()
        .filter(|p| !excluded.contains(p))
        .collect();
    if primes.is_empty() {
        return None;
    }
    let mut cutoffs: Vec<usize> = (1..=primes.len()).rev().collect();
    cutoffs.dedup();
    cutoffs.into_iter().find_map(|k| greedy_attempt(length, excluded, &primes, k))
}

fn greedy_attempt(
    length: usize,
    excluded: &BTreeSet<u64>,
    primes: &[u64],
    greedy_count: usize,
) -> Option<CoveringState> {
    let mut covered = vec![false; length];
    let mut state = CoveringState::with_excluded(length, excluded.iter().copied());
    for &p in &primes[..greedy_count] {
        let pu = p as usize;
        let mut best: Option<(usize, u64)> = None;
        for r in 0..p {
            if (r + p) as usize >= length {
                break;
            }
            let gain = (r as usize..length).step_by(pu).filter(|&b| !covered[b]).count();
            if gain > 0 && best.is_none_or(|(g, _)| gain > g) {
                best = Some((gain, r));
            }
        }
        if let Some((_, r)) = best {
            for b in (r as usize..length).step_by(pu) {
                covered[b] = true;
            }
            state.placements.insert(p, r);
        }
    }
    let open: Vec<usize> = (0..length).filter(|&b| !covered[b]).collect();
    if open.is_empty() {
        return Some(state);
    }
    let spare: Vec<u64> = primes[greedy_count..].to_vec();
    if spare.len() < open.len() {
        return None;
    }
    let assignment = match_boxes(length, &open, &spare)?;
    for (bi, pi) in assignment.into_iter().enumerate() {
        let p = spare[pi];
        state.placements.insert(p, open[bi] as u64 % p);
    }
    debug_assert!(is_complete_and_effective(&state));
    Some(state)
}

/// Kuhn's augmenting-path matching of boxes to primes. A prime can take box
/// `b` when placing it there is effective.
fn match_boxes(length: usize, open: &[usize], primes: &[u64]) -> Option<Vec<usize>> {
    let fits = |b: usize, p: u64| {
        let r = (b as u64 % p) as usize;
        r + (p as usize) < length
    };
    let adj: Vec<Vec<usize>> = open
        .iter()
        .map(|&b| (0..primes.len()).filter(|&j| fits(b, primes[j])).collect())
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; primes.len()];

    fn augment(
        b: usize,
        adj: &[Vec<usize>],
        owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for &j in &adj[b] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none_or(|other| augment(other, adj, owner, seen)) {
                owner[j] = Some(b);
                return true;
            }
        }
        false
    }

    for b in 0..open.len() {
        let mut seen = vec![false; primes.len()];
        if !augment(b, &adj, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut result = vec![0; open.len()];
    for (j, o) in owner.iter().enumerate() {
        if let Some(b) = o {
            result[*b] = j;
        }
    }
    Some(result)
}

/// Least positive start `a` of an integer run realising the covering, and
/// the period of such starts.
pub fn instantiate(state: &CoveringState) -> Result<(BigUint, BigUint)> {
    if !is_complete_and_effective(state) {
        return Err(Error::NotCompleteCovering);
    }
    let mut system = CongruenceSystem::new();
    for (&p, &r) in &state.placements {
        system.push(-BigInt::from(r), p);
    }
    let (a, m) = crt_solve(&system)?;
    let a = if a.is_zero() { m.clone() } else { a };
    Ok((a, m))
}

/// For each integer of the run `a..a+length`, the smallest non-excluded prime
/// it shares with another member of the run.
pub fn run_witnesses(a: &BigUint, length: usize, excluded: &BTreeSet<u64>) -> Vec<Option<u64>> {
    let mut witness = vec![None; length];
    if length < 2 {
        return witness;
    }
    for &p in sieve_primes(length as u64 - 1).primes() {
        if excluded.contains(&p) {
            continue;
        }
        let rem = (a % p).to_u64().expect("remainder below p");
        let first = ((p - rem) % p) as usize;
        let pu = p as usize;
        if first + pu >= length {
            continue;
        }
        for i in (first..length).step_by(pu) {
            witness[i].get_or_insert(p);
        }
    }
    witness
}

/// True iff every member of `a..a+length` shares a non-excluded prime factor
/// with some other member.
pub fn verify_run(a: &BigUint, length: usize, excluded: &BTreeSet<u64>) -> bool {
    length >= 2 && run_witnesses(a, length, excluded).iter().all(Option::is_some)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
    Alternate,
}

/// Which unused primes may fill a box when the run grows to length `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Availability {
    /// `q <= L - 1`: the prime can put a second pearl inside the run.
    #[default]
    TwoPearls,
    /// `q <= floor(L / 2)`.
    HalfLength,
}

impl Availability {
    fn bound(self, new_length: u64) -> u64 {
        match self {
            Availability::TwoPearls => new_length - 1,
            Availability::HalfLength => new_length / 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExtensionStep {
    #[serde(rename = "box")]
    pub box_index: u64,
    pub prime: u64,
}

/// Record of a first-come-first-served extension.
///
/// Box indices are 0-based. Right extension keeps the original numbering;
/// left extension reports boxes in the mirrored frame (distance counted
/// leftward from the original right end), so in both cases the steps are
/// strictly increasing. Alternate extension numbers boxes from the final
/// leftmost box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionTrace {
    pub steps: Vec<ExtensionStep>,
    /// Unused available primes remaining right after each fill.
    pub available_counts: BTreeMap<u64, usize>,
    /// Box at which no prime was available, if the process got stuck. In the
    /// alternate frame this can be `-1`, the box just left of the run.
    pub stuck_at: Option<i64>,
    /// Length of the completely covered run at the end of the trace.
    pub final_length: usize,
    #[serde(skip)]
    pub final_state: CoveringState,
}

/// Grows a complete effective covering box by box, filling each empty
/// frontier box with the smallest unused available prime, until the run
/// holds `target_box + 1` boxes.
pub fn fcfs_extend(
    start: &CoveringState,
    target_box: u64,
    side: Side,
    availability: Availability,
) -> Result<ExtensionTrace> {
    if !is_complete_and_effective(start) || start.length == 0 {
        return Err(Error::NotCompleteCovering);
    }
    let l0 = start.length as i64;
    let target_len = target_box as i64 + 1;
    let grow = (target_len - l0).max(0);
    let (min_box, max_box) = match side {
        Side::Right => (0, l0 - 1 + grow),
        Side::Left => (-grow, l0 - 1),
        Side::Alternate => (-grow, l0 - 1 + grow),
    };
    let idx = |b: i64| (b - min_box) as usize;
    let mut covered = vec![false; (max_box - min_box + 1) as usize];
    let mark = |covered: &mut Vec<bool>, p: i64, r: i64| {
        let mut b = min_box + (r - min_box).rem_euclid(p);
        while b <= max_box {
            covered[(b - min_box) as usize] = true;
            b += p;
        }
    };

    let mut residues: BTreeMap<u64, i64> = BTreeMap::new();
    for (&p, &r) in &start.placements {
        residues.insert(p, r as i64);
        mark(&mut covered, p as i64, r as i64);
    }

    let bound = availability.bound(target_len.max(l0) as u64);
    let mut pool: BTreeSet<u64> = sieve_primes(bound)
        .primes()
        .iter()
        .copied()
        .filter(|p| !start.excluded.contains(p) && !residues.contains_key(p))
        .collect();

    let (mut lo, mut hi) = (0i64, l0 - 1);
    let mut raw_steps: Vec<(i64, u64, usize)> = Vec::new();
    let mut stuck: Option<i64> = None;
    let mut go_right = true;
    while hi - lo + 1 < target_len {
        let to_right = match side {
            Side::Right => true,
            Side::Left => false,
            Side::Alternate => {
                let r = go_right;
                go_right = !go_right;
                r
            }
        };
        let b = if to_right { hi + 1 } else { lo - 1 };
        let new_len = (hi - lo + 2) as u64;
        if !covered[idx(b)] {
            let limit = availability.bound(new_len);
            let Some(&q) = pool.iter().next().filter(|&&q| q <= limit) else {
                stuck = Some(b);
                break;
            };
            pool.remove(&q);
            residues.insert(q, b);
            mark(&mut covered, q as i64, b);
            let remaining = pool.range(..=limit).count();
            raw_steps.push((b, q, remaining));
        }
        if to_right {
            hi = b;
        } else {
            lo = b;
        }
    }

    let to_output = |b: i64| -> i64 {
        match side {
            Side::Left => l0 - 1 - b,
            _ => b - lo,
        }
    };
    let steps: Vec<ExtensionStep> = raw_steps
        .iter()
        .map(|&(b, q, _)| ExtensionStep { box_index: to_output(b) as u64, prime: q })
        .collect();
    let available_counts =
        raw_steps.iter().map(|&(b, _, n)| (to_output(b) as u64, n)).collect();
    let final_length = (hi - lo + 1) as usize;
    let placements = residues
        .iter()
        .map(|(&p, &r)| {
            let pi = p as i64;
            let off = match side {
                Side::Left => (hi - r).rem_euclid(pi),
                _ => (r - lo).rem_euclid(pi),
            };
            (p, off as u64)
        })
        .collect();
    let final_state = CoveringState {
        length: final_length,
        placements,
        excluded: start.excluded.clone(),
    };
    Ok(ExtensionTrace {
        steps,
        available_counts,
        stuck_at: stuck.map(to_output),
        final_length,
        final_state,
    })
}

/// The length-17 covering with 2, 5, 11 at box 0, 3 at box 1, 7 at box 2 and
/// 13 at box 3.
pub fn minimal_covering() -> CoveringState {
    CoveringState::from_placements(17, &[(2, 0), (3, 1), (5, 0), (7, 2), (11, 0), (13, 3)])
        .expect("valid placements")
}
