//! Slow reference implementations used as ground truth in tests and in the
//! `verify` command. None of them share code with the fast paths beyond the
//! integer square root.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::kernel::isqrt_floor;
use crate::natural::{nat, Natural};
use crate::region::Region;

/// `Σ_{x=1}^{n} ⌊n/x⌋`.
pub fn t_naive<N: Natural>(n: &N) -> N {
    s_partial(n, &N::one(), n)
}

/// `2·Σ_{x=1}^{⌊√n⌋} ⌊n/x⌋ − ⌊√n⌋²`.
pub fn t_sqrt<N: Natural>(n: &N) -> N {
    let root = isqrt_floor(n);
    let half = s_partial(n, &N::one(), &root);
    (half.clone() + half) - root.clone() * root
}

/// `Σ_{x=x1}^{x2} ⌊n/x⌋`, zero for an empty range.
pub fn s_partial<N: Natural>(n: &N, x1: &N, x2: &N) -> N {
    assert!(!x1.is_zero(), "summation must start at x ≥ 1");
    let mut total = N::zero();
    let mut x = x1.clone();
    while x <= *x2 {
        total = total + n.clone() / x.clone();
        x = x + N::one();
    }
    total
}

/// Number of divisors of `x`, by trial division up to `√x`.
pub fn tau<N: Natural>(x: &N) -> Result<N> {
    if x.is_zero() {
        return Err(Error::ZeroArgument("tau argument"));
    }
    let mut count = N::zero();
    let mut d = N::one();
    while d.clone() * d.clone() <= *x {
        if (x.clone() % d.clone()).is_zero() {
            count = count + N::one();
            if d.clone() * d.clone() != *x {
                count = count + N::one();
            }
        }
        d = d + N::one();
    }
    Ok(count)
}

/// Exhaustive count of `(u, v)` in `[1, w] × [1, h]` with `H(u, v) ≤ n`,
/// evaluating the hyperbola in signed arithmetic straight from the region's
/// line coefficients.
pub fn region_brute<N: Natural>(region: &Region<N>, n: &N) -> N {
    let big = |v: &N| BigInt::from(v.to_u128().expect("brute-force regions are small"));
    let (a1, b1, c1) = (big(&region.a1), big(&region.b1), big(&region.c1));
    let (a2, b2, c2) = (big(&region.a2), big(&region.b2), big(&region.c2));
    let limit = big(n);
    let w = region.w.to_u64().expect("brute-force width fits u64");
    let h = region.h.to_u64().expect("brute-force height fits u64");
    let mut count = 0u64;
    for u in 1..=w {
        for v in 1..=h {
            let up = BigInt::from(u) + &c1;
            let vp = BigInt::from(v) + &c2;
            let x = &b2 * &up - &b1 * &vp;
            let y = &a1 * &vp - &a2 * &up;
            if x * y <= limit {
                count += 1;
            }
        }
    }
    nat(count)
}

/// Triples of positive integers with `xyz ≤ n`, by direct enumeration.
pub fn t3_brute<N: Natural>(n: &N) -> N {
    let mut total = N::zero();
    let mut x = N::one();
    while x <= *n {
        let mut y = N::one();
        while x.clone() * y.clone() <= *n {
            // Innermost loop collapsed: z ranges over 1..=⌊n/(xy)⌋.
            total = total + n.clone() / (x.clone() * y.clone());
            y = y + N::one();
        }
        x = x + N::one();
    }
    total
}

/// Ordered factorisations of `x` into three positive factors.
pub fn tau3<N: Natural>(x: &N) -> Result<N> {
    if x.is_zero() {
        return Err(Error::ZeroArgument("tau3 argument"));
    }
    let mut count = N::zero();
    let mut d = N::one();
    while d <= *x {
        if (x.clone() % d.clone()).is_zero() {
            count = count + tau(&(x.clone() / d.clone()))?;
        }
        d = d + N::one();
    }
    Ok(count)
}
