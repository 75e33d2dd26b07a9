//! Exact evaluation of induced sign characters of the type A Hecke algebra.
//!
//! The crate evaluates the characters induced from sign characters of Young
//! subgroups on products of the form `(1 + T_{s_{i_1}}) ... (1 + T_{s_{i_m}})`,
//! entirely in exact arithmetic over Laurent polynomials in `q^(1/2)`.  The
//! headline algorithm is a subtraction-free tableau formula: the character
//! value is a generating function over column-closed path tableaux in the
//! wiring diagram of the word.  Everything it relies on is implemented here
//! from scratch and cross-checked by independent computation routes:
//!
//! * [`hecke`] — the Hecke algebra itself, with multiplication in the natural
//!   basis and an expansion of the product over binary masks;
//! * [`qmatrix`] — noncommutative quantum-matrix straightening, quantum
//!   determinants, and the transition polynomials between monomial bases;
//! * [`walks`] — weak-order walk generating functions matching the transition
//!   polynomials;
//! * [`wiring`] — wiring diagrams, path families, and the sigma evaluation
//!   functional computed by three unrelated algorithms;
//! * [`chareval`] — the tableau formula, an immanant-style alternating sum,
//!   a character-table route through quantum determinants, and a classical
//!   (q = 1) evaluation for corroboration;
//! * [`perm`], [`laurent`], [`error`] — shared combinatorial and arithmetic
//!   foundations;
//! * [`cli`] — a command-line interface over all of the above.

pub mod chareval;
pub mod cli;
pub mod error;
pub mod hecke;
pub mod laurent;
pub mod perm;
pub mod qmatrix;
pub mod walks;
pub mod wiring;

pub use error::{Error, Result};
pub use laurent::{LaurentPoly, Q1Poly};
pub use perm::{Partition, Permutation, Word};
