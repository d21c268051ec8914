//! Exact computer algebra for a quantum generalized Weyl algebra over
//! Laurent polynomials, its semiclassical limit, and the Poisson
//! endomorphisms of that limit.

pub mod cli;
pub mod endo;
pub mod ore;
pub mod poisson;
pub mod poly;
pub mod sample;
pub mod scalar;
pub mod semiclassical;

pub use endo::{Endomorphism, Kind, SupportData};
pub use ore::{Deformation, GwaParams, OreAlgebra, OreElement, OreMonomial};
pub use poisson::{BracketSpec, GwaElement, PoissonElement};
pub use poly::{LaurentPoly, Var};
pub use scalar::Scalar;
