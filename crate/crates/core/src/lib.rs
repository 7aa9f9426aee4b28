//! Zeta-regularized and symmetrized traces and determinants of odd-class
//! elliptic operators on the circle.
//!
//! Two regimes are covered. The eigenvalue model ([`spectralmodel`]) describes
//! operators by a bilateral power law with finitely many exceptional
//! eigenvalues; its zeta functions are continued through Hurwitz zeta kernels
//! ([`zetacontinuation`]) and feed the determinant engine ([`regdet`]). The
//! symbol regime ([`symbolcalc`]) works with truncated homogeneous expansions
//! of scalar symbols on the circle: composition, complex powers, logarithms,
//! odd-class predicates and the Wodzicki residue.
//!
//! All branch choices go through [`complexcut`].

pub mod complexcut;
mod error;
pub mod fixtures;
pub mod regdet;
pub mod schema;
pub mod suites;
pub mod spectralmodel;
pub mod symbolcalc;
pub mod zetacontinuation;

pub use error::{Error, Result};

/// Real scalar used throughout.
pub type Real = f64;
/// Complex scalar used throughout.
pub type Cplx = num_complex::Complex64;

pub use complexcut::{SolidAngle, SpectralCut};
pub use regdet::DetResult;
pub use spectralmodel::{EigenFamily, IndexSet, SpectralLaw, SpectralOperator};
pub use symbolcalc::{ClassicalSymbol, HomogComponent, LogSymbol, Periodic};
pub use zetacontinuation::{ContinuationParams, LaurentAt0, ZetaFunction};

/// Shorthand for building a complex number.
#[inline]
pub fn c64(re: Real, im: Real) -> Cplx {
    Cplx::new(re, im)
}
