//! Jacobian rings of smooth hypersurfaces, Hodge numbers of their cyclic
//! covers, and lengths of the Griffiths-Yukawa coupling.
//!
//! Everything is exact. Computations are generic over a [`Field`]; the crate
//! root provides aliases for the two supported fields.

pub mod coupling;
pub mod field;
pub mod hodge;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ring;

pub use field::{Field, FieldError, FieldMode, PrimeField, Rationals};
pub use linalg::{ExactMatrix, LinalgError, Rref};
pub use monomial::ExponentVector;
pub use parse::{parse_form, ParseError};
pub use poly::{Form, FormError, Poly};
pub use ring::{Class, DegreeSubspace, GradedQuotientRing, KoszulDims, RingError};

pub type QRing = GradedQuotientRing<Rationals>;
pub type FpRing = GradedQuotientRing<PrimeField>;
pub type QMatrix = ExactMatrix<Rationals>;
pub type FpMatrix = ExactMatrix<PrimeField>;
pub type QForm = Form<Rationals>;
pub type FpForm = Form<PrimeField>;
pub type QSubspace = DegreeSubspace<Rationals>;
pub type FpSubspace = DegreeSubspace<PrimeField>;
