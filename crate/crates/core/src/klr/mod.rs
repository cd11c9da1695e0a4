//! The graded algebra `R(nu)`: normal-form basis and multiplication by
//! rewriting.

mod algebra;
mod diagram;

pub use algebra::{KlrAlgebra, LedgerOptions};
pub use diagram::{crossing_degree, BasisDiagram, Element, Generator, GeneratorWord};

#[cfg(test)]
mod tests;
