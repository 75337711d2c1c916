//! Exact commutative algebra for graded local rings: polynomials, Gröbner
//! bases, graded resolutions, Koszul complexes, simplicial Koszul algebras and
//! homotopy-theoretic invariants of ring endomorphisms.

pub mod error;
pub mod ghost;
pub mod groebner;
pub mod homalg;
pub mod koszul;
pub mod linalg;
pub mod polycore;
pub mod simplicial;

pub use error::{Error, Result};
