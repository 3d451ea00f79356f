//! Khovanov-type chain complexes of link diagrams read as CSS codes.
//!
//! Everything here is `no_std` with `alloc`: diagrams, cube-of-resolution
//! complexes over GF(2) and GF(3), exact linear algebra, minimum-weight
//! searches, annular and sl3 variants, and the integer sequences that
//! describe the code families. IO, parallelism and wall-clock budgets live
//! in the `khoco` crate.
#![no_std]

extern crate alloc;

pub mod annular;
pub mod builders;
pub mod complex;
pub mod diagram;
pub mod distance;
pub mod error;
pub mod field;
pub mod khovanov;
pub mod linear;
pub mod packed;
pub mod products;
pub mod sequences;
pub mod sl3;

pub use complex::{BasisElement, ChainComplex, ChainMap, Convention, Label};
pub use diagram::{Crossing, CubeEdge, EdgeKind, LinkDiagram, Resolution};
pub use distance::{Budget, CodeReport, Method, NodeBudget, Unlimited};
pub use error::{Error, Result};
pub use field::Field;
pub use linear::{GFMatrix, GFVector};
