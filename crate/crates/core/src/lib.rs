pub mod error;
pub mod automorphism;
pub mod derivation;
pub mod eigen;
pub mod exactlin;
pub mod isotropy;
pub mod poly;
pub mod uni;

pub use error::{Error, Result};
pub use poly::{Degree, Monomial, Poly, Rational};
pub use uni::UniPoly;
