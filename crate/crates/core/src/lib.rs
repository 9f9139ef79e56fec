//! Finite universal-algebra workbench for Boolean factor congruences and
//! property (*): congruence lattices, factor congruences, Mal'cev witness
//! schemes, first-order formula checks and a small corpus.

pub mod algebra;
pub mod cli;
pub mod congruence;
pub mod corpus;
pub mod error;
pub mod factor;
pub mod formula;
pub mod limits;
pub mod malcev;
pub mod sexpr;

pub use algebra::{Element, FiniteAlgebra, Signature, Term};
pub use congruence::{BinaryRelation, Congruence, Partition};
pub use error::{Error, Result};
pub use formula::Formula;
pub use limits::Limits;
pub use malcev::{WitnessScheme, Word};
