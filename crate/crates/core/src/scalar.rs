//! The integer scalar abstraction shared by every geometric routine.
//!
//! All computations are exact. Lattice coordinates live in an integer type `I`
//! and rational coordinates in `Ratio<I>`; `i64`, `i128` and `BigInt` all
//! qualify.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// An exact signed integer usable as a lattice coordinate.
pub trait Scalar:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

/// Rational numbers over the scalar `I`.
pub type Rational<I> = Ratio<I>;

/// Lift a machine integer into `I`.
#[inline]
pub fn int<I: Scalar>(v: i64) -> I {
    I::from_i64(v).expect("every Scalar holds i64 values")
}

#[inline]
pub fn rat<I: Scalar>(num: i64, den: i64) -> Rational<I> {
    Ratio::new(int(num), int(den))
}

#[inline]
pub fn rat_int<I: Scalar>(v: I) -> Rational<I> {
    Ratio::from_integer(v)
}

/// Lossy narrowing used for combinatorial data (chain entries, counts).
pub fn to_i64<I: Scalar>(v: &I) -> crate::Result<i64> {
    v.to_i64().ok_or_else(|| crate::Error::Overflow(v.to_string()))
}

/// Binomial coefficient with the generalized upper index: C(top, k) for any
/// integer `top` and k ≥ 0.
pub fn binomial<I: Scalar>(top: &I, k: u32) -> I {
    let mut num = I::one();
    let mut den = I::one();
    for j in 0..k {
        num = num * (top.clone() - int::<I>(j as i64));
        den = den * int::<I>(j as i64 + 1);
    }
    num / den
}

/// Render a rational as `p` or `p/q`.
pub fn fmt_rat<I: Scalar>(r: &Rational<I>) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
