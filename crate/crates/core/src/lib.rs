//! Exact-arithmetic computational algebra for box-shaped matrices.
//!
//! The crate constructs ideals of 2x2 minors of n-dimensional boxes of
//! indeterminates, checks their structural properties (Groebner bases,
//! Hilbert functions, grade, kernel descriptions of Segre embeddings), and
//! runs the full blowup pipeline that produces defining ideals for
//! embeddings of the plane blown up at `C(d+1, 2)` generic points.

pub mod blowup;
pub mod boxmatrix;
pub mod error;
pub mod gb;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod segre;
pub mod vars;

pub use error::{Error, Result};
pub use gb::{GbConfig, HilbertSample};
pub use ideal::{GbStatus, Ideal};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{Polynomial, Ring, Substitution};
pub use vars::{VarName, VarTable};
