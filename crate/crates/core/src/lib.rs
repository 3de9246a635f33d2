//! Exact verification of bracket-kernel generation in Chevalley orders.
//!
//! The crate constructs split reductive Lie algebras over the integers,
//! computes the kernel of the Lie bracket on the exterior square by exact
//! lattice linear algebra, and certifies that the kernel is spanned by
//! decomposable commuting pairs over a given localization of the integers.
//!
//! Core numeric code is generic over the scalar type through `num-traits`
//! bounds; the concrete type aliases used throughout the crate live at the
//! crate root: [`Int`], [`Rat`], [`IntMatrix`], [`RatMatrix`].

pub mod chevalley;
pub mod ffelim;
pub mod matrix;
pub mod ring;
pub mod roots;
pub mod sk1;
pub mod wedge;

pub use matrix::Matrix;

/// Arbitrary-precision integer scalar.
pub type Int = num_bigint::BigInt;
/// Exact rational scalar.
pub type Rat = num_rational::BigRational;
/// Dense integer matrix, the carrier for all normal-form computations.
pub type IntMatrix = Matrix<Int>;
/// Dense rational matrix.
pub type RatMatrix = Matrix<Rat>;
