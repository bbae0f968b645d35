//! Partially-symmetric Macdonald polynomials, their integral and modified
//! forms, and the two representations of the Carlsson-Mellit operators.

pub mod algebra;
pub mod error;
pub mod fixedpoints;
pub mod linalg;
pub mod nonsym;
pub mod partial;
pub mod pieri;
pub mod polyrep;
pub mod shapes;
pub mod symfunc;
pub mod verify;

pub use algebra::{QTRational, QtPoly, XPolynomial};
pub use error::{Error, Result};
pub use shapes::{Composition, FixedPointLabel, PlaneBox, SplitIndex};
