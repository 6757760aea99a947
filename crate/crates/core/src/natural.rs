//! The unsigned scalar abstraction every algorithm in this crate is generic over.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Shl, Shr};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_traits::{CheckedSub, FromPrimitive, Signed, ToPrimitive, Unsigned};

/// An exact unsigned integer usable as a coordinate, count or hyperbola constant.
///
/// Implemented for `u64`, `u128` and [`BigUint`]. The fixed-width types are
/// fast but only exact while intermediates fit; see [`Natural::cbrt_limit`].
pub trait Natural:
    Clone
    + Ord
    + Hash
    + Debug
    + Display
    + Unsigned
    + Integer
    + Roots
    + CheckedSub
    + FromPrimitive
    + ToPrimitive
    + Shl<usize, Output = Self>
    + Shr<usize, Output = Self>
{
    /// Signed companion used where intermediates transiently go negative.
    type Signed: Clone + Ord + Debug + Display + Signed + Integer + FromPrimitive;

    /// Number of significant bits; zero for zero.
    fn bits(&self) -> u64;

    fn to_signed(&self) -> Self::Signed;

    /// `None` when `v` is negative or does not fit.
    fn from_signed(v: &Self::Signed) -> Option<Self>;

    /// Largest `n` for which the tangent-approximation path is known not to
    /// overflow this type, or `None` when the type is unbounded.
    fn cbrt_limit() -> Option<Self>;

    /// `⌊√self⌋`. Defaults to `num_integer::Roots`; fixed widths override it
    /// with a division-free path since this is the innermost hot operation.
    fn floor_sqrt(&self) -> Self {
        Roots::sqrt(self)
    }
}

/// Floating-point estimates of roots below this are within one of the floor.
const FLOAT_EXACT_ROOT: u64 = 1 << 52;

macro_rules! float_sqrt_floor {
    ($x:expr, $t:ty, $wide:ty, $to_f64:expr) => {{
        let x: $t = $x;
        let estimate = ($to_f64)(x).sqrt() as u64;
        if estimate >= FLOAT_EXACT_ROOT {
            return Roots::sqrt(&x);
        }
        let x = x as $wide;
        let mut r = estimate as $wide;
        while r * r > x {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= x {
            r += 1;
        }
        r as $t
    }};
}

macro_rules! impl_natural_prim {
    ($t:ty, $s:ty, $limit:expr, $sqrt:ident) => {
        impl Natural for $t {
            type Signed = $s;

            fn bits(&self) -> u64 {
                (<$t>::BITS - self.leading_zeros()) as u64
            }

            fn to_signed(&self) -> $s {
                <$s>::try_from(*self).expect("value exceeds signed companion range")
            }

            fn from_signed(v: &$s) -> Option<Self> {
                <$t>::try_from(*v).ok()
            }

            fn cbrt_limit() -> Option<Self> {
                Some($limit)
            }

            fn floor_sqrt(&self) -> Self {
                $sqrt(*self)
            }
        }
    };
}

fn sqrt_u64(x: u64) -> u64 {
    float_sqrt_floor!(x, u64, u128, |v: u64| v as f64)
}

fn sqrt_u128(x: u128) -> u128 {
    // Split so both halves convert with hardware instructions.
    let to_f64 = |v: u128| ((v >> 64) as u64 as f64) * 18_446_744_073_709_551_616.0 + (v as u64 as f64);
    float_sqrt_floor!(x, u128, u128, to_f64)
}

// The widest intermediate is the tangent-point radicand q'^2·n, measured at
// about 1.75·log2(n) bits over n up to 2^64; the limits keep 7 bits spare.
impl_natural_prim!(u64, i128, (1 << 32) - 1, sqrt_u64);
impl_natural_prim!(u128, i128, (1 << 66) - 1, sqrt_u128);

impl Natural for BigUint {
    type Signed = BigInt;

    fn bits(&self) -> u64 {
        BigUint::bits(self)
    }

    fn to_signed(&self) -> BigInt {
        BigInt::from_biguint(Sign::Plus, self.clone())
    }

    fn from_signed(v: &BigInt) -> Option<Self> {
        v.to_biguint()
    }

    fn cbrt_limit() -> Option<Self> {
        None
    }
}

/// Shorthand for small constants in generic code.
#[inline]
pub(crate) fn nat<N: Natural>(v: u64) -> N {
    <N as FromPrimitive>::from_u64(v).expect("u64 fits every Natural")
}

/// `a - b` for callers that have already established `a >= b`.
#[inline]
#[track_caller]
pub(crate) fn sub<N: Natural>(a: N, b: N) -> N {
    debug_assert!(a >= b, "unsigned subtraction underflow: {a} - {b}");
    a - b
}
