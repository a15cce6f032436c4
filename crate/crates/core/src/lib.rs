//! Gröbner-Shirshov bases for Lie superalgebras and their universal enveloping algebras.
//!
//! The crate is organized bottom-up:
//!
//! * [`alphabet`]: graded, ordered generating sets and the two word orderings
//! * [`words`]: words, bracket trees, super-Lyndon-Shirshov combinatorics
//! * [`superalgebra`]: exact rationals, polynomials, the superbracket
//! * [`rewrite`]: relation sets, normal forms, reduced bases
//! * [`composition`]: overlaps, compositions, closure checks, completion
//! * [`kacmoody`]: Cartan data and Kac-Moody superalgebra presentations
//! * [`classical`]: the families sl(m,n), B(m,n), B(0,n), C(n), D(m,n)
//! * [`checks`]: seeded end-to-end checks over the classical grid
//! * [`cli`]: the `superlie` command

pub mod alphabet;
pub mod checks;
pub mod classical;
pub mod cli;
pub mod composition;
pub mod kacmoody;
pub mod parse;
pub mod rewrite;
pub mod superalgebra;
pub mod words;

pub use alphabet::{Alphabet, GradedLetter, Letter, Parity};
pub use superalgebra::{Poly, Rational};
pub use words::{NaWord, Word};
