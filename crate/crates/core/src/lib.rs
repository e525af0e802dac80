//! Exact construction and certification of surjective polynomial maps
//! from affine spaces onto varieties.

pub mod build;
pub mod constructible;
pub mod ideal;
pub mod poly;
pub mod scalar;
pub mod toric;

pub use poly::{parse_polynomial, Monomial, MonomialOrder, PolyError, Polynomial, Ring, RingRef};
pub use ideal::{GroebnerBasis, GroebnerConfig, Ideal, IdealError};
pub use scalar::{Field, Rational};

/// Polynomial with rational coefficients.
pub type Poly = Polynomial<Rational>;
