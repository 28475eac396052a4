//! Exact arithmetic for reduced words in free groups, their tensor-power group
//! algebras, the radial subalgebra spanned by the sphere sums `w_n`, and the
//! series that control how far the radial conditional expectation is from
//! being multiplicative.

pub mod algebra;
pub mod conjugacy;
pub mod error;
pub mod radial;
pub mod series;
pub mod suite;
pub mod word;

pub use algebra::{AlgebraElement, Rational, TensorWord};
pub use error::{Error, Result};
pub use radial::{cond_exp, make_w, RadialCoeffs};
pub use word::{Guard, Letter, Rank, Word};
