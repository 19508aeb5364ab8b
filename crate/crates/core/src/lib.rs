//! Finite automata computing Motzkin numbers modulo a prime.
//!
//! The crate builds the automaton with output (DFAO) for `M_n mod p` from a
//! rational-function diagonal, evaluates it on base-`p` digits, analyses its
//! structure, checks digit-pattern characterizations of the zero set by
//! language equivalence, and computes natural densities exactly.
//!
//! Module map:
//!
//! * [`seq`]: exact Motzkin and Catalan numbers and their residues.
//! * [`poly`]: sparse bivariate polynomials over `Z/pZ` with section operators.
//! * [`automaton`]: DFAO construction, evaluation and minimization.
//! * [`analysis`]: loop states, absorbing-digit partitions, congruence families.
//! * [`langops`]: acceptors over digit strings and their equivalence.
//! * [`density`]: residue counting and closed-form densities.
//! * [`io`]: JSON persistence and DOT export.
//! * [`cli`]: the `motzkin` command line front end.

pub mod analysis;
pub mod automaton;
pub mod cli;
pub mod density;
mod error;
pub mod io;
pub mod langops;
pub mod poly;
pub mod prime;
pub mod seq;

pub use automaton::{build_dfao, Dfao, Digits, StateId};
pub use error::{Error, Result};
pub use poly::PolyFp;
pub use prime::Prime;
