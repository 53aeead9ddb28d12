//! Exact computation with the algebras A_h: for a nonzero polynomial h over
//! Q or F_p, the algebra generated by x and ŷ subject to ŷx − xŷ = h, realized
//! as the subalgebra of the Weyl algebra generated by x and yh.
//!
//! The crate provides:
//! - exact scalars and univariate polynomial arithmetic ([`scalar`], [`poly`]);
//! - canonical-form arithmetic in A_h and A_1, the embedding between them,
//!   and characteristic-p center machinery ([`ore`]);
//! - the minimal bimodule resolution with an explicit contracting homotopy
//!   and ψ-operator liftings ([`resolution`]);
//! - Hochschild cohomology HH^0, HH^1, HH^2 in characteristic 0 and p,
//!   including the κ-module description and freeness criterion ([`cohomology`]);
//! - the Gerstenhaber action of HH^1 on HH^2, Witt/Virasoro intermediate
//!   series modules, and composition series ([`gerstenhaber`]);
//! - seeded randomized verification suites ([`verify`]) and the CLI ([`cli`]).

pub mod cli;
pub mod cohomology;
pub mod gerstenhaber;
pub mod linalg;
pub mod ore;
pub mod parse;
pub mod poly;
pub mod resolution;
pub mod scalar;
pub mod verify;

pub use scalar::{Field, Scalar};
