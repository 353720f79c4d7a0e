use std::cmp::Ordering;
use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Exact integer scalar for the matrix engine.
///
/// Arithmetic goes through the checked operations so that the same
/// elimination can run on a machine type and report overflow instead of
/// wrapping; `BigInt` never overflows.
pub trait IntScalar:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Send
    + Sync
    + Zero
    + One
    + Signed
    + Integer
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + 'static
{
    /// Compares absolute values without materialising them.
    fn abs_cmp(&self, other: &Self) -> Ordering;

    fn from_coord(v: i64) -> Self {
        Self::from_i64(v).expect("every scalar holds an i64")
    }

    fn checked_neg_(&self) -> Option<Self> {
        Self::zero().checked_sub(self)
    }
}

impl IntScalar for i64 {
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
}

impl IntScalar for i128 {
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
}

impl IntScalar for BigInt {
    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abs_cmp_ignores_sign() {
        assert_eq!((-5i64).abs_cmp(&3), Ordering::Greater);
        assert_eq!(i64::MIN.abs_cmp(&i64::MAX), Ordering::Greater);
        assert_eq!(BigInt::from(-2).abs_cmp(&BigInt::from(2)), Ordering::Equal);
    }
}
