//! Exact computer algebra for quiver Hecke (KLR) algebras `R(nu)` of a
//! simply-laced graph, the quantum group `U+` seen through its bilinear form,
//! the nilHecke algebra, and the Hecke and Temperley-Lieb algebras.
//!
//! Everything is exact: integers are arbitrary precision and linear algebra
//! runs over big rationals or fraction-free over `Z[q, q^-1]`.

#![no_std]
// Index loops read more clearly than iterator chains in the matrix code.
#![allow(clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cartan;
pub mod error;
pub mod hecke;
pub mod klr;
pub mod linalg;
pub mod nilhecke;
pub mod oracle;
pub mod perm;
pub mod poly;
pub mod projiso;
pub mod ring;
pub mod tl;
pub mod uplus;

pub use cartan::{Graph, Seq, Vertex, Weight};
pub use error::{GraphError, HeckeError, KlrError, NilHeckeError, ProjError, RingError, UplusError};
pub use klr::{BasisDiagram, Element, Generator, GeneratorWord, KlrAlgebra, LedgerOptions};
pub use perm::Permutation;
pub use ring::{LaurentPoly, Rational, RationalGraded};
