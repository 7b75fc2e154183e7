//! Shared arithmetic: prime sieving, Chinese remaindering and certified
//! logarithms.

mod certified;
mod crt;
mod sieve;

pub use certified::{
    atan_ratio, atanh_ratio, ln10, ln2, ln_uint, log10_certified, pi, power_of_ten_exponent,
    sqrt_uint, CertifiedReal,
};
pub use crt::{crt_solve, mod_inverse, CongruenceSystem};
pub use sieve::{factorize, integer_sqrt, is_prime, sieve_primes, PrimeTable};
