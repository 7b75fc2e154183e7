use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A list of congruences `x ≡ residue (mod modulus)`.
///
/// Residues are normalised into `0..modulus` on insertion, so `x ≡ -3 (mod 13)`
/// is stored as `(10, 13)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CongruenceSystem {
    congruences: Vec<(BigUint, BigUint)>,
}

impl CongruenceSystem {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a congruence. Panics if `modulus` is zero.
    pub fn push(&mut self, residue: impl Into<BigInt>, modulus: impl Into<BigUint>) -> &mut Self {
        let modulus = modulus.into();
        assert!(!modulus.is_zero(), "modulus must be positive");
        let m = BigInt::from_biguint(Sign::Plus, modulus.clone());
        let r = residue.into().mod_floor(&m);
        self.congruences.push((r.to_biguint().expect("mod_floor is nonnegative"), modulus));
        self
    }

    pub fn with(mut self, residue: impl Into<BigInt>, modulus: impl Into<BigUint>) -> Self {
        self.push(residue, modulus);
        self
    }

    pub fn congruences(&self) -> &[(BigUint, BigUint)] {
        &self.congruences
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }
}

/// Solves a system with pairwise coprime moduli.
///
/// Returns the least nonnegative solution together with the product of the
/// moduli. An empty system yields `(0, 1)`.
pub fn crt_solve(system: &CongruenceSystem) -> Result<(BigUint, BigUint)> {
    let cs = system.congruences();
    for (i, (ri, mi)) in cs.iter().enumerate() {
        for (rj, mj) in &cs[i + 1..] {
            let g = mi.gcd(mj);
            if !g.is_one() {
                if (ri % &g) != (rj % &g) {
                    return Err(Error::InconsistentSystem);
                }
                return Err(Error::NotCoprime);
            }
        }
    }

    let mut residue = BigUint::zero();
    let mut modulus = BigUint::one();
    for (r, m) in cs {
        // residue + modulus * t ≡ r (mod m)
        let inv = mod_inverse(&(&modulus % m), m).ok_or(Error::NotCoprime)?;
        let diff = (BigInt::from(r.clone()) - BigInt::from(&residue % m))
            .mod_floor(&BigInt::from(m.clone()))
            .to_biguint()
            .expect("nonnegative");
        let t = (diff * inv) % m;
        residue += &modulus * t;
        modulus *= m;
        residue %= &modulus;
    }
    Ok((residue, modulus))
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    if m.is_one() {
        return Some(BigUint::zero());
    }
    let a = BigInt::from(a.clone());
    let m = BigInt::from(m.clone());
    let e = a.extended_gcd(&m);
    if !e.gcd.is_one() {
        return None;
    }
    e.x.mod_floor(&m).to_biguint()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn system4() -> CongruenceSystem {
        CongruenceSystem::new()
            .with(0, 2u32)
            .with(0, 5u32)
            .with(0, 11u32)
            .with(-1, 3u32)
            .with(-2, 7u32)
            .with(-3, 13u32)
    }

    #[test]
    fn minimal_covering_system() {
        assert_eq!(crt_solve(&system4()).unwrap(), (u(27830), u(30030)));
    }

    #[test]
    fn mirrored_system() {
        // reflected placements: 2,3,7,13 at box 0, 5 at box 1, 11 at box 5
        let s = CongruenceSystem::new()
            .with(0, 2u32)
            .with(0, 3u32)
            .with(0, 7u32)
            .with(0, 13u32)
            .with(-1, 5u32)
            .with(-5, 11u32);
        assert_eq!(crt_solve(&s).unwrap(), (u(2184), u(30030)));
    }

    #[test]
    fn single_and_empty() {
        assert_eq!(crt_solve(&CongruenceSystem::new().with(0, 7u32)).unwrap(), (u(0), u(7)));
        assert_eq!(crt_solve(&CongruenceSystem::new()).unwrap(), (u(0), u(1)));
    }

    #[test]
    fn rejects_non_coprime() {
        let s = CongruenceSystem::new().with(1, 4u32).with(2, 6u32);
        assert_eq!(crt_solve(&s), Err(Error::InconsistentSystem));
        let s = CongruenceSystem::new().with(1, 4u32).with(3, 6u32);
        assert_eq!(crt_solve(&s), Err(Error::NotCoprime));
    }

    #[test]
    fn all_zero_residues() {
        let s = CongruenceSystem::new().with(0, 3u32).with(0, 4u32).with(0, 35u32);
        assert_eq!(crt_solve(&s).unwrap(), (u(0), u(420)));
    }

    #[test]
    fn normalises_negative_residues() {
        let s = CongruenceSystem::new().with(-3, 13u32);
        assert_eq!(s.congruences()[0], (u(10), u(13)));
    }
}
