//! Euclidean Jordan algebra computations with Schur-product transformations
//! and numerical majorization checks.
//!
//! The crate covers spectral and Peirce decompositions in `Sⁿ`, `Hⁿ`, the
//! Jordan spin algebra and direct sums; Schur products `A•x` and the
//! transformations `L_a`, `P_a`, `P_{u,v}` built from them; vector and
//! element majorization with doubly stochastic certificates; mean-induced
//! transformations; and Löwner-map geometry on the symmetric cone. The
//! [`harness`] module turns all of it into seeded, replayable verification
//! suites.

pub mod algebra;
pub mod cone;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod majorize;
pub mod means;
pub mod peirce;
pub mod quadrature;
pub mod rng;

pub use algebra::{Algebra, Complex64, Element, SpectralDecomposition, SpectralDomain};
pub use error::{Error, Result};
pub use peirce::{CoeffMatrix, JordanFrame, PeirceBlocks};
