//! Integer scalars used by the exact linear algebra.
//!
//! Everything above the matrix layer is written against [`Scalar`], so the
//! same code runs over machine integers (handy in tests and benchmarks) and
//! over [`num_bigint::BigInt`], which is what the crate-root aliases pick.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// A Euclidean ring of integers with exact division helpers.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Integer
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("scalar cannot represent i64 value")
    }

    fn of_usize(v: usize) -> Self {
        <Self as FromPrimitive>::from_usize(v).expect("scalar cannot represent usize value")
    }

    /// Least non-negative residue modulo `m`; `m == 0` means no reduction.
    fn reduce(&self, m: &Self) -> Self {
        if m.is_zero() {
            self.clone()
        } else {
            self.mod_floor(m)
        }
    }
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + Display
        + Eq
        + Ord
        + Hash
        + Integer
        + Signed
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}
