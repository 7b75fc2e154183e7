//! Digit counts of powers `b^e`, repdigit ("constant word") detection and the
//! searches built on them.
//!
//! Digit counts come from `floor(e · log10 b) + 1` with `log10 b` enclosed in
//! a certified interval. Precision doubles until the floor is unambiguous.
//! Powers below `10^10000` are additionally expanded and compared.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{log10_certified, power_of_ten_exponent, CertifiedReal};
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Powers with fewer digits than this are cross-checked by full expansion.
pub const EXPANSION_DIGITS: u64 = 10_000;
/// Hard ceiling on the working precision of a single digit count.
pub const PRECISION_CEILING: u32 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountMethod {
    /// Confirmed against the full decimal expansion.
    Exact,
    /// From the certified logarithm alone.
    CertifiedLog,
}

impl CountMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            CountMethod::Exact => "exact",
            CountMethod::CertifiedLog => "certified-log",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DigitCount {
    pub digits: u64,
    pub method: CountMethod,
    /// Working precision that settled the floor (0 when no logarithm was needed).
    pub precision_bits: u32,
}

/// Number of decimal digits of `base^exp`.
pub fn digit_count_pow(base: u64, exp: u64) -> Result<u64> {
    digit_count_pow_big(&BigUint::from(base), exp).map(|d| d.digits)
}

/// [`digit_count_pow`] with the method and precision that produced it.
pub fn digit_count_pow_big(base: &BigUint, exp: u64) -> Result<DigitCount> {
    let trivial = |digits| DigitCount { digits, method: CountMethod::Exact, precision_bits: 0 };
    if base.is_zero() {
        return if exp == 0 { Err(Error::Undefined) } else { Ok(trivial(1)) };
    }
    if exp == 0 || base.is_one() {
        return Ok(trivial(1));
    }
    if let Some(j) = power_of_ten_exponent(base) {
        return Ok(trivial(j * exp + 1));
    }
    let (digits, precision_bits) = certified_digits(base, exp)?;
    if digits < EXPANSION_DIGITS {
        let exact = expanded_digit_count(base, exp);
        if exact != digits {
            return Err(Error::Internal(format!(
                "digit count of {base}^{exp}: certified {digits}, expanded {exact}"
            )));
        }
        return Ok(DigitCount { digits, method: CountMethod::Exact, precision_bits });
    }
    Ok(DigitCount { digits, method: CountMethod::CertifiedLog, precision_bits })
}

fn certified_digits(base: &BigUint, exp: u64) -> Result<(u64, u32)> {
    let e = BigInt::from(exp);
    let mut precision = 64 + (64 - exp.leading_zeros());
    loop {
        if precision > PRECISION_CEILING {
            return Err(Error::PrecisionCeiling(PRECISION_CEILING));
        }
        let log = log10_certified(base, precision)?;
        if let Some(f) = log.mul_int(&e).floor() {
            let f = f.to_u64().ok_or_else(|| Error::InvalidInput("digit count overflows u64".into()))?;
            return Ok((f + 1, precision));
        }
        precision *= 2;
    }
}

/// Digit count by bracketing `base^exp` between powers of ten.
fn expanded_digit_count(base: &BigUint, exp: u64) -> u64 {
    let value = base.pow(exp as u32);
    value.to_string().len() as u64
}

/// True iff all decimal digits of `x` are equal.
pub fn is_repdigit(x: u64) -> bool {
    let last = x % 10;
    let mut y = x / 10;
    while y > 0 {
        if y % 10 != last {
            return false;
        }
        y /= 10;
    }
    true
}

/// True iff the number of digits of `n` is a repdigit.
pub fn is_constant_word_number(n: &BigUint) -> bool {
    let len = if n.is_zero() { 1 } else { n.to_string().len() as u64 };
    is_repdigit(len)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SelfPowerRecord {
    pub n: u64,
    pub digit_count: u64,
    pub is_constant_word: bool,
    pub method: CountMethod,
}

pub fn self_power_record(n: u64) -> Result<SelfPowerRecord> {
    let d = digit_count_pow_big(&BigUint::from(n), n)?;
    Ok(SelfPowerRecord {
        n,
        digit_count: d.digits,
        is_constant_word: is_repdigit(d.digits),
        method: d.method,
    })
}

/// All `n <= limit` whose self-power has a repdigit number of digits.
pub fn search_selfpower_cwn(limit: u64) -> Result<Vec<SelfPowerRecord>> {
    search_selfpower_cwn_with(limit, Exec::default())
}

pub fn search_selfpower_cwn_with(limit: u64, exec: Exec) -> Result<Vec<SelfPowerRecord>> {
    let records = exec.map_range(1..limit + 1, self_power_record);
    let mut out = Vec::new();
    for r in records {
        let r = r?;
        if r.is_constant_word {
            out.push(r);
        }
    }
    Ok(out)
}

/// A cyclic tuple whose consecutive powers all have repdigit digit counts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct AmicableTuple {
    pub members: Vec<u64>,
    /// `digit_counts[i]` is the digit count of `members[i]^members[i+1 mod k]`.
    pub digit_counts: Vec<u64>,
}

/// Cyclic digit counts of a tuple.
pub fn cyclic_counts(members: &[u64]) -> Result<Vec<u64>> {
    let k = members.len();
    (0..k).map(|i| digit_count_pow(members[i], members[(i + 1) % k])).collect()
}

/// The tuple with its counts if every cyclic count is a repdigit.
pub fn verify_amicable(members: &[u64]) -> Result<Option<AmicableTuple>> {
    if members.is_empty() || members.contains(&0) {
        return Err(Error::InvalidInput("amicable tuples need positive members".into()));
    }
    let counts = cyclic_counts(members)?;
    Ok(counts
        .iter()
        .all(|&c| is_repdigit(c))
        .then(|| AmicableTuple { members: members.to_vec(), digit_counts: counts }))
}

/// Lexicographically smallest rotation.
pub fn canonical_rotation(members: &[u64]) -> Vec<u64> {
    (0..members.len().max(1))
        .map(|s| members.iter().cycle().skip(s).take(members.len()).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// Digit counts `l(m^n)` for `1 <= m, n <= bound`.
struct DigitTable {
    bound: u64,
    counts: Vec<u64>,
}

impl DigitTable {
    fn build(bound: u64, exec: Exec) -> Result<Self> {
        let rows = exec.map_range(1..bound + 1, |m| -> Result<Vec<u64>> {
            let base = BigUint::from(m);
            let log = if m == 1 { None } else { Some(log10_certified(&base, 96)?) };
            (1..=bound).map(|n| row_entry(&base, log.as_ref(), n)).collect()
        });
        let mut counts = Vec::with_capacity((bound * bound) as usize);
        for r in rows {
            counts.extend(r?);
        }
        Ok(Self { bound, counts })
    }

    fn get(&self, m: u64, n: u64) -> u64 {
        self.counts[((m - 1) * self.bound + (n - 1)) as usize]
    }
}

fn row_entry(base: &BigUint, log: Option<&CertifiedReal>, exp: u64) -> Result<u64> {
    if let Some(f) = log.and_then(|l| l.mul_int(&BigInt::from(exp)).floor()) {
        return Ok(f.to_u64().expect("small") + 1);
    }
    digit_count_pow_big(base, exp).map(|d| d.digits)
}

/// Canonical amicable `k`-tuples with members in `1..=bound`, in
/// lexicographic order, at most `limit_results` of them. Counts below
/// `min_digits` are treated as non-qualifying.
pub fn search_amicable(
    k: usize,
    bound: u64,
    limit_results: usize,
    min_digits: u64,
) -> Result<Vec<AmicableTuple>> {
    search_amicable_with(k, bound, limit_results, min_digits, Exec::default())
}

pub fn search_amicable_with(
    k: usize,
    bound: u64,
    limit_results: usize,
    min_digits: u64,
    exec: Exec,
) -> Result<Vec<AmicableTuple>> {
    if k == 0 {
        return Err(Error::InvalidInput("tuple size must be at least 1".into()));
    }
    if bound < 1 {
        return Ok(Vec::new());
    }
    let table = DigitTable::build(bound, exec)?;
    let ok = |c: u64| c >= min_digits && is_repdigit(c);
    let per_first = exec.map_range(1..bound + 1, |first| {
        let mut found = Vec::new();
        let mut stack = vec![first];
        extend(&table, k, &ok, &mut stack, &mut found, limit_results);
        found
    });
    let mut out: Vec<AmicableTuple> = per_first.into_iter().flatten().collect();
    out.truncate(limit_results);
    Ok(out)
}

fn extend(
    table: &DigitTable,
    k: usize,
    ok: &dyn Fn(u64) -> bool,
    stack: &mut Vec<u64>,
    found: &mut Vec<AmicableTuple>,
    limit: usize,
) {
    if found.len() >= limit {
        return;
    }
    let first = stack[0];
    let last = *stack.last().unwrap();
    if stack.len() == k {
        if ok(table.get(last, first)) && canonical_rotation(stack) == *stack {
            let counts =
                (0..k).map(|i| table.get(stack[i], stack[(i + 1) % k])).collect();
            found.push(AmicableTuple { members: stack.clone(), digit_counts: counts });
        }
        return;
    }
    for next in first..=table.bound {
        if ok(table.get(last, next)) {
            stack.push(next);
            extend(table, k, ok, stack, found, limit);
            stack.pop();
            if found.len() >= limit {
                return;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sequence {
    /// Repdigits 1, 2, …, 9, 11, 22, …
    Repdigits,
    /// Digit counts of `n^n` for `n = 1, 2, …`
    SelfPowerLengths,
}

/// The `i`-th repdigit (0-based).
pub fn repdigit(i: u64) -> BigUint {
    let len = i / 9 + 1;
    let digit = i % 9 + 1;
    let ones = (BigUint::from(10u32).pow(len as u32) - 1u32) / 9u32;
    ones * digit
}

/// First `count` elements of the sequence.
pub fn sequence_terms(which: Sequence, count: usize) -> Result<Vec<BigUint>> {
    match which {
        Sequence::Repdigits => Ok((0..count as u64).map(repdigit).collect()),
        Sequence::SelfPowerLengths => (1..=count as u64)
            .map(|n| digit_count_pow(n, n).map(BigUint::from))
            .collect(),
    }
}

/// Consecutive differences of the first `count` elements.
pub fn sequence_gaps(which: Sequence, count: usize) -> Result<Vec<BigUint>> {
    if count < 2 {
        return Err(Error::InvalidInput("need at least two terms".into()));
    }
    let terms = sequence_terms(which, count)?;
    Ok(terms.windows(2).map(|w| &w[1] - &w[0]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn headline_counts() {
        assert_eq!(digit_count_pow(2017, 2017).unwrap(), 6666);
        assert_eq!(digit_count_pow(1717, 1717).unwrap(), 5555);
        assert_eq!(digit_count_pow(2312, 2312).unwrap(), 7778);
        assert_eq!(digit_count_pow(2602, 2602).unwrap(), 8887);
        assert_eq!(digit_count_pow(2889, 2889).unwrap(), 9999);
        assert_eq!(digit_count_pow(3173, 3173).unwrap(), 11111);
        assert_eq!(digit_count_pow(10, 10).unwrap(), 11);
    }

    #[test]
    fn large_self_power() {
        let d = digit_count_pow_big(&BigUint::from(631_296_394u64), 631_296_394).unwrap();
        assert_eq!(d.digits, 5_555_555_555);
        assert_eq!(d.method, CountMethod::CertifiedLog);
        assert!(d.precision_bits <= PRECISION_CEILING);
    }

    #[test]
    fn degenerate_powers() {
        assert_eq!(digit_count_pow(0, 0), Err(Error::Undefined));
        assert_eq!(digit_count_pow(0, 5).unwrap(), 1);
        assert_eq!(digit_count_pow(7, 0).unwrap(), 1);
        assert_eq!(digit_count_pow(1, 1_000_000).unwrap(), 1);
        assert_eq!(digit_count_pow(1000, 7).unwrap(), 22);
    }

    #[test]
    fn repdigits() {
        assert!(is_repdigit(6666));
        assert!(is_repdigit(7));
        assert!(is_repdigit(0));
        assert!(!is_repdigit(7778));
        assert!(!is_repdigit(10));
        assert!(is_constant_word_number(&BigUint::from(10_000_000_000u64)));
        assert!(!is_constant_word_number(&BigUint::from(1_000_000_000_000u64)));
    }

    #[test]
    fn small_search() {
        let r = search_selfpower_cwn(9).unwrap();
        assert_eq!(r.iter().map(|x| x.n).collect::<Vec<_>>(), (1..=9).collect::<Vec<_>>());
        // every self-power below 10^10 has a single-digit length
        let counts: Vec<u64> = r.iter().map(|x| x.digit_count).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 4, 5, 6, 8, 9]);
    }

    #[test]
    fn amicable_examples() {
        let t = verify_amicable(&[4, 368]).unwrap().unwrap();
        assert_eq!(t.digit_counts, vec![222, 11]);
        let t = verify_amicable(&[26, 62, 49]).unwrap().unwrap();
        assert_eq!(t.digit_counts, vec![88, 88, 44]);
        assert!(verify_amicable(&[2312]).unwrap().is_none());
        assert!(verify_amicable(&[]).is_err());
    }

    #[test]
    fn amicable_search_contains_known_pair() {
        let found = search_amicable(2, 100, usize::MAX, 10).unwrap();
        let pair = found.iter().find(|t| t.members == vec![48, 66]).expect("(48,66)");
        assert_eq!(pair.digit_counts, vec![111, 88]);
        assert!(found.windows(2).all(|w| w[0].members < w[1].members));
        for t in &found {
            assert_eq!(canonical_rotation(&t.members), t.members);
            assert_eq!(verify_amicable(&t.members).unwrap().unwrap(), *t);
        }
        let singles = search_amicable(1, 60, usize::MAX, 1).unwrap();
        let via_cwn: Vec<u64> = search_selfpower_cwn(60).unwrap().iter().map(|r| r.n).collect();
        assert_eq!(singles.iter().map(|t| t.members[0]).collect::<Vec<_>>(), via_cwn);
    }

    #[test]
    fn rotation() {
        assert_eq!(canonical_rotation(&[49, 26, 62]), vec![26, 62, 49]);
        assert_eq!(canonical_rotation(&[5]), vec![5]);
    }

    #[test]
    fn gaps() {
        let g = sequence_gaps(Sequence::Repdigits, 12).unwrap();
        let expect: Vec<BigUint> =
            [1u32, 1, 1, 1, 1, 1, 1, 1, 2, 11, 11].iter().map(|&x| x.into()).collect();
        assert_eq!(g, expect);
        let g = sequence_gaps(Sequence::SelfPowerLengths, 5).unwrap();
        let expect: Vec<BigUint> = [0u32, 1, 1, 1].iter().map(|&x| x.into()).collect();
        assert_eq!(g, expect);
        let t = sequence_terms(Sequence::SelfPowerLengths, 10).unwrap();
        assert_eq!(t[9], BigUint::from(11u32));
        assert!(sequence_gaps(Sequence::Repdigits, 1).is_err());
    }
}
