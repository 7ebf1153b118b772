//! Exact spectral factorization of rational discrete-time spectral densities.
//!
//! Given a para-Hermitian rational matrix `Phi(z)` that is positive
//! semi-definite on the unit circle, [`factorize`] computes `W(z)` with
//! `Phi = W*(z) W(z)`, `W* (z) = W^T(1/z)`, whose poles and zeroes avoid
//! caller-chosen regions. All algebra is carried out over the rationals.

pub mod canonical;
mod error;
pub mod factorizer;
pub mod matrix;
pub mod reduction;
pub mod regions;
mod ring;
pub mod scalar;

pub use canonical::{mcmillan_degree, smith_form, smith_mcmillan, SmithForm, SmithMcMillan};
pub use error::{Error, Result};
pub use factorizer::{factorize, factorize_youla, verify, FactorizeOptions, SpectralFactorization};
pub use matrix::{ConstMatrix, LPolyMatrix, Matrix, PolyMatrix, RatMatrix};
pub use regions::{RegionPair, RegionSpec, Side};
pub use ring::Ring;
pub use scalar::{LPoly, Poly, Rat, RatFun, RootPoint, Valuation};
