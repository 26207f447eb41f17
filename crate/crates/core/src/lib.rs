//! Horofunction boundary of `(X × X, d_max)` for two CAT(−1) model spaces.
//!
//! The crate is `no_std` (it needs `alloc`) and carries no IO. It provides:
//!
//! - [`space`]: the [`Model`] contract every model space implements, plus the
//!   derived quantities built on top of it (Gromov products, segment and ray
//!   handles, midpoints).
//! - [`disk`]: the Poincaré disk with Möbius isometries, in `f64`.
//! - [`tree`]: the Cayley tree of the free group on `a`, `b`, in exact rational
//!   arithmetic.
//! - [`product`]: the max metric, classification of divergent sequences, the
//!   singular/regular split of the horofunction boundary and the ideal domain Ω.
//! - [`geodesic`]: parametrized geodesics, the correspondence with Ω, the Hopf
//!   parametrization and the diagonal projection.
//! - [`group`]: the genus-two octagon group and the free group acting on their
//!   models, orbit sampling, and the proper-discontinuity and cocompactness
//!   experiments on `X × X ∪ Ω`.
//!
//! Every value is immutable and every operation is a pure function, so all
//! types are `Send + Sync` whenever the model's associated types are.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod disk;
pub mod error;
pub mod geodesic;
pub mod group;
pub mod product;
pub mod scalar;
pub mod space;
pub mod tree;

pub use error::Error;
pub use scalar::{Extended, Scalar};
pub use space::{Located, Model};

pub type Result<T, E = Error> = core::result::Result<T, E>;
