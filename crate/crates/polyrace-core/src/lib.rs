//! Prime-factor races in `F_q[t]`.
//!
//! The crate is organised bottom-up:
//!
//! * [`ffcore`] — arithmetic in the coefficient field `F_q`, `q = p^e`;
//! * [`polyring`] — polynomials over `F_q`: arithmetic, irreducibility,
//!   enumeration and factorization;
//! * [`characters`] — the unit group `(F_q[t]/(M))^*` and its Dirichlet
//!   characters;
//! * [`lfunc`] — Dirichlet L-polynomials `𝓛(u,χ)` and their inverse zeros;
//! * [`counting`] — exact counts of monic polynomials with `k` irreducible
//!   factors in congruence classes, by enumeration and by generating-function
//!   recursions;
//! * [`asymptotics`] — explicit main terms for the counting functions and the
//!   normalized difference functions;
//! * [`bias`] — density scans, limiting-distribution statistics and
//!   modulus constructions;
//! * [`parse`] — the text grammar for field literals and polynomial
//!   expressions.
//!
//! The core is `no_std` (with `alloc`); anything that touches the file system
//! or a terminal lives in the companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod asymptotics;
pub mod bias;
pub mod characters;
pub mod counting;
pub mod ffcore;
pub mod lfunc;
pub mod parse;
pub mod polyring;
