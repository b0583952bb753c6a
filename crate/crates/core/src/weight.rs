//! Edge weights and path costs.
//!
//! Everything in this crate is generic over an unsigned integer weight type.
//! Integer weights keep shortest-path tie detection exact, which the
//! uniqueness tests depend on.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{Bounded, CheckedAdd, CheckedMul, NumCast, PrimInt, ToPrimitive, Unsigned};

use crate::error::GraphError;

/// Scalar type usable as an edge weight.
///
/// The maximum value of the type is reserved as the infinity sentinel, so the
/// largest finite cost is `max_value() - 1`.
pub trait Weight:
    PrimInt
    + Unsigned
    + CheckedAdd
    + CheckedMul
    + NumCast
    + ToPrimitive
    + Bounded
    + Hash
    + FromStr
    + fmt::Debug
    + fmt::Display
    + Default
    + Send
    + Sync
    + 'static
{
    fn infinity() -> Self {
        Self::max_value()
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }
}

impl<T> Weight for T where
    T: PrimInt
        + Unsigned
        + CheckedAdd
        + CheckedMul
        + NumCast
        + ToPrimitive
        + Bounded
        + Hash
        + FromStr
        + fmt::Debug
        + fmt::Display
        + Default
        + Send
        + Sync
        + 'static
{
}

/// A non-negative path cost with a reserved infinity value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Cost<W>(W);

impl<W: Weight> Cost<W> {
    pub fn zero() -> Self {
        Cost(W::zero())
    }

    pub fn infinity() -> Self {
        Cost(W::infinity())
    }

    /// Wraps a finite value. `W::max_value()` is rejected because it is the
    /// infinity sentinel.
    pub fn finite(value: W) -> Result<Self, GraphError> {
        if value == W::infinity() {
            Err(GraphError::CostOverflow)
        } else {
            Ok(Cost(value))
        }
    }

    pub fn is_infinite(self) -> bool {
        self.0 == W::infinity()
    }

    pub fn is_finite(self) -> bool {
        !self.is_infinite()
    }

    pub fn value(self) -> W {
        self.0
    }

    /// Adds a weight. Adding to infinity, or any sum that reaches the
    /// sentinel, is an overflow error.
    pub fn checked_add_weight(self, w: W) -> Result<Self, GraphError> {
        if self.is_infinite() {
            return Err(GraphError::CostOverflow);
        }
        match self.0.checked_add(&w) {
            Some(sum) => Cost::finite(sum),
            None => Err(GraphError::CostOverflow),
        }
    }

    pub fn checked_add(self, other: Self) -> Result<Self, GraphError> {
        if other.is_infinite() {
            return Err(GraphError::CostOverflow);
        }
        self.checked_add_weight(other.0)
    }
}

impl<W: fmt::Debug> fmt::Debug for Cost<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cost({:?})", self.0)
    }
}

impl<W: Weight> fmt::Display for Cost<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Sum of two weights where reaching the sentinel counts as overflow.
pub(crate) fn add_weights<W: Weight>(a: W, b: W) -> Option<W> {
    a.checked_add(&b).filter(|&s| s != W::infinity())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sentinel_is_not_a_finite_cost() {
        assert!(Cost::<u8>::finite(255).is_err());
        assert_eq!(Cost::<u8>::finite(254).unwrap().value(), 254);
        assert!(Cost::<u32>::infinity().is_infinite());
    }

    #[test]
    fn addition_overflow_is_an_error() {
        let c = Cost::<u8>::finite(200).unwrap();
        assert_eq!(c.checked_add_weight(54).unwrap().value(), 254);
        assert!(c.checked_add_weight(55).is_err());
        assert!(c.checked_add_weight(100).is_err());
        assert!(Cost::<u8>::infinity().checked_add_weight(1).is_err());
    }

    #[test]
    fn add_weights_rejects_sentinel() {
        assert_eq!(add_weights(1u16, 2u16), Some(3));
        assert_eq!(add_weights(u16::MAX - 1, 1), None);
        assert_eq!(add_weights(u16::MAX, 1), None);
    }
}
