//! Exact computation of κ-class pullbacks under torus actions by fixed-point
//! localization, and of the induced comparison maps between tautological
//! rings of `M # N` and `N`.
//!
//! The layers, bottom-up:
//!
//! * [`poly`]: sparse multivariate polynomials over `Q` in torus variables.
//! * [`symmetric`]: Weyl(`D_n`)-invariance and rewriting into `e`, `p_i`.
//! * [`classes`]: the ring `H*(BSO(2n); Q)` in normal form and its
//!   restriction to oriented torus representations.
//! * [`localization`]: fibre integration as a sum over isolated fixed points.
//! * [`manifolds`]: spheres, products, projective spaces, and user data.
//! * [`hom`]: the free tautological algebra and the connected-sum map.
//! * [`parse`], [`verify`]: the class-expression grammar and the replay of
//!   the reference identities.
//!
//! Everything is exact; no floating point is used anywhere.
//!
//! ```
//! use tautring::{localization::kappa_pullback, manifolds, parse::parse_class};
//!
//! let cp2 = manifolds::projective_space(2).unwrap();
//! let c = parse_class("e*p1", 2).unwrap();
//! assert_eq!(kappa_pullback(&cp2, &c).unwrap().to_string(), "4*p1 - 4*e");
//! ```

pub mod classes;
pub mod hom;
pub mod localization;
pub mod manifolds;
pub mod parse;
pub mod poly;
pub mod symmetric;
pub mod verify;

pub use classes::{CharClass, ClassMonomial, Notation, OrientedRep};
pub use hom::{GeneratorMap, PointClassStatus, TautGenerator, TautPoly};
pub use localization::{FixedPoint, TorusManifold};
pub use poly::{MultiPoly, PolyError, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("polynomial is not Weyl-invariant: moved by {witness}")]
    NotInvariant { witness: symmetric::WeylGenerator },
    #[error("polynomial is not symmetric: moved by swapping y{} and y{}", transposition + 1, transposition + 2)]
    NotSymmetric { transposition: usize },
    #[error("fixed point {label} is not isolated: weight {weight} is zero")]
    NonIsolatedFixedPoint { label: String, weight: usize },
    #[error("localization sum is not a polynomial; remainder {remainder}")]
    NotPolynomial { remainder: MultiPoly },
    #[error("torus is not maximal at m0: weight {weight} is zero")]
    NotMaximal { weight: usize },
    #[error("weights at m0 are linearly dependent; no chart coordinates")]
    DegenerateChart,
    #[error("manifold has no retained fixed point m1")]
    MissingM1,
    #[error("point class {class} cannot be transported: {reason}")]
    PointClassUnavailable { class: String, reason: String },
    #[error("invalid manifold data: {0}")]
    InvalidManifold(String),
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
}
