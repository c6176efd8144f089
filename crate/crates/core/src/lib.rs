//! Exact computation of the constants controlling surjectivity of mod-`p`
//! images for elliptic curves semistable outside a finite set of primes of a
//! totally real Galois field.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, network access
//! and the command line live in the `serre-bound` companion crate.
//!
//! Module map:
//!
//! * [`numfield`]: fields, algebraic integers, integral ideals in Hermite
//!   normal form, real quadratic fields built from scratch.
//! * [`irreducibility`]: twisted norms, the pattern constants and their lcm,
//!   and the irreducibility threshold.
//! * [`levels`]: the additive level and the quadratic character conductor
//!   bound attached to `S`.
//! * [`gl2`]: matrix groups over `F_p`, Cartan subgroups and normalizers,
//!   image classification and exhaustive checks.
//! * [`forms`]: Hilbert eigenform records and their validation.
//! * [`elimination`]: the eigenform sieve and assembly of the final report.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arith;
pub mod elimination;
pub mod forms;
pub mod gl2;
pub mod irreducibility;
pub mod levels;
pub mod linalg;
pub mod numfield;
pub mod poly;

pub use num_bigint::{BigInt, BigUint};
