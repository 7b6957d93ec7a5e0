//! Exact-arithmetic engines for cyclic modules over truncated current algebras.
//!
//! The crate provides, over arbitrary-precision rationals and with no floating
//! point anywhere:
//!
//! * Gelfand-Tsetlin pattern combinatorics and the matrix action of `gl_n` on
//!   its irreducible representations ([`gt`]);
//! * finite-dimensional graded cyclic modules over `gl_n[z]` with evaluation
//!   and fusion constructors ([`current`]);
//! * the one-parameter family of subalgebras of `⊕_b gl_n[z]` interpolating
//!   between the current algebra and the Iwahori algebra ([`contraction`]);
//! * a work-list closure engine for operator-stable subspaces of tensor
//!   products, echelonized weight space by weight space ([`subspace`]);
//! * lattices over the polynomial ring in the contraction parameter and their
//!   flat limit at zero via valuation saturation ([`limit`]).
//!
//! All constructions are deterministic: basis orders, weight orders and
//! echelon forms are canonical, so recomputed results are byte-identical.
//! The crate is `no_std` (with `alloc`); IO and file formats live in the
//! `coherence-lab` companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod contraction;
pub mod current;
pub mod error;
pub mod gt;
pub mod limit;
pub mod perm;
pub mod poly;
pub mod sparse;
pub mod subspace;
pub mod tensor;
pub mod weight;

pub use arith::Rat;
pub use error::CoreError;
pub use weight::WeightVector;
