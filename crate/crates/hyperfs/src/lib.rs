//! Fundamental solutions of the three-dimensional elliptic equation with
//! three singular coefficients,
//!
//! ```text
//! L[u] = u_xx + u_yy + u_zz + (2a/x) u_x + (2b/y) u_y + (2c/z) u_z = 0
//! ```
//!
//! on the octant x, y, z > 0 with 0 < 2a, 2b, 2c < 1. The eight explicit
//! fundamental solutions q1..q8 are expressed through the Lauricella
//! hypergeometric function F_A of three variables; this crate provides
//!
//! - the scalar building blocks (log-gamma, Pochhammer, Gauss 2F1 with its
//!   summation and transformation identities) in [`gamma`] and [`gauss`],
//! - four independent evaluation routes for F_A (direct series, decomposition
//!   into 2F1 products, Euler triple integral, 1-D Laplace integral) in
//!   [`lauricella`],
//! - the eight fundamental solutions, their near-pole regularized form,
//!   singular-limit constant, and the gradient of q1 in [`solutions`],
//! - finite-difference verification of every identity the construction rests
//!   on (operator residuals, the Lauricella PDE system, the constructive
//!   weight identities) in [`verify`],
//! - the machine-checkable acceptance suites in [`suites`].

pub mod error;
pub mod gamma;
pub mod gauss;
pub mod kummer;
pub mod lauricella;
pub mod quadrature;
pub mod series;
pub mod solutions;
pub mod suites;
pub mod verify;

pub use error::Error;
pub use lauricella::{LauricellaParams, TripleArg};
pub use series::{EvalResult, Route, SeriesControl};
pub use solutions::{
    FieldPoint, GeometryFrame, NormalizationConstants, Pole, SingularParams, SolutionKind,
};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
