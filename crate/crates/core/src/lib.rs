//! Cohomology of finite semigroups with zero.
//!
//! The lower layers ([`linalg`], [`abelian`], [`module`], [`cohomology`]) are
//! generic over the integer type; everything from [`schur`] upwards works
//! with [`Int`], an arbitrary-precision integer.

pub mod abelian;
pub mod brauer;
pub mod cohomology;
pub mod error;
pub mod linalg;
pub mod module;
pub mod natsys;
pub mod partial;
pub mod presentation;
pub mod scalar;
pub mod schur;
pub mod semigroup;

pub use error::Error;

pub type Int = num_bigint::BigInt;
pub type IntMatrix = linalg::Matrix<Int>;
pub type AbGroup = abelian::FinAbGroup<Int>;
pub type Hom = abelian::GroupHom<Int>;
pub type Module = module::ZeroModule<Int>;
pub type BiModule = module::Bimodule<Int>;
pub type Computation = cohomology::CohomologyComputation<Int>;
