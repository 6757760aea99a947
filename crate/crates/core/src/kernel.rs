//! Exact integer roots and triangle numbers.
//!
//! Floor roots come from [`Natural::floor_sqrt`] and `num_integer::Roots`,
//! both exact for every width; the ceilings and sixth root are built on top.

use crate::natural::Natural;

/// `r` with `r² ≤ x < (r+1)²`.
pub fn isqrt_floor<N: Natural>(x: &N) -> N {
    x.floor_sqrt()
}

/// `r` with `(r−1)² < x ≤ r²`.
pub fn isqrt_ceil<N: Natural>(x: &N) -> N {
    let r = isqrt_floor(x);
    if r.clone() * r.clone() == *x {
        r
    } else {
        r + N::one()
    }
}

/// `r` with `r³ ≤ x < (r+1)³`.
pub fn icbrt_floor<N: Natural>(x: &N) -> N {
    x.cbrt()
}

/// `r` with `(r−1)³ < x ≤ r³`.
pub fn icbrt_ceil<N: Natural>(x: &N) -> N {
    let r = icbrt_floor(x);
    if r.clone() * r.clone() * r.clone() == *x {
        r
    } else {
        r + N::one()
    }
}

/// `⌊x^(1/6)⌋`, via nested floors (exact for monotone integer roots).
pub fn isixth_floor<N: Natural>(x: &N) -> N {
    icbrt_floor(&isqrt_floor(x))
}

/// Δ(i) = i(i+1)/2.
pub fn triangle<N: Natural>(i: &N) -> N {
    let next = i.clone() + N::one();
    if i.is_even() {
        (i.clone() >> 1) * next
    } else {
        i.clone() * (next >> 1)
    }
}
