//! Exhaustive searches and certified computations around four themes on
//! integers: four-cube representations of powers of ten, complete prime
//! coverings of runs of consecutive integers, repdigit digit counts of
//! self-powers, and divisor-parity statistics on rotation words.
//!
//! Data-parallel loops go through [`Exec`]; build without the default
//! `parallel` feature for a purely sequential library.

pub mod arith;
pub mod covering;
mod error;
pub mod exec;
pub mod selfpower;
pub mod sturmian;
pub mod waring;

pub use error::{Error, Result};
pub use exec::Exec;
