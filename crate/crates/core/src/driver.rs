//! Top-level sweep: `T(n) = 2·S(n, 1, ⌊√n⌋) − ⌊√n⌋²`, with the half-sum
//! assembled from four parts.
//!
//! * `S1`: plain columns `1 ≤ x < x_min`, where the hyperbola bends too fast
//!   for regions to pay off.
//! * `S2`: the rectangle and triangle on or below the slope −1 line through
//!   `(x_max, y_min)`.
//! * `S4`: for each integral slope `−a1 = −2, −3, …`, the polygon between
//!   consecutive tangent lines plus the curvilinear region above it.
//! * `S3`: leftover columns between `x_min` and the last tangent point.

use crate::config::{Config, Method};
use crate::divfree::s_q;
use crate::error::{Error, Result};
use crate::kernel::{icbrt_ceil, isqrt_floor, triangle};
use crate::natural::{nat, sub, Natural};
use crate::oracle::{s_partial, t_naive, t_sqrt};
use crate::region::{region_count_with, Region};
use crate::stats::RunStats;

/// A computed total together with the work it took.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumResult<N> {
    pub value: N,
    pub stats: RunStats,
}

/// Below this, `S1` always uses plain division.
const DIVFREE_THRESHOLD: u64 = 1 << 16;

/// `Δ(a − b)` where `a − b ≥ −1`, so that a "negative" triangle is empty.
fn triangle_diff<N: Natural>(a: &N, b: &N) -> N {
    match a.checked_sub(b) {
        Some(k) => triangle(&k),
        None => {
            debug_assert!(a.clone() + N::one() >= *b, "triangle of {a} − {b} < −1");
            N::zero()
        }
    }
}

/// Lattice points strictly above `L2` in the polygon between `x = x_min`,
/// the tangent line `L4` (through `P4`) and the tangent line `L5` (through
/// `P5`), all three lines given by their `y` intercepts.
pub fn s_m_polygon<N: Natural>(c4: &N, c5: &N, c2: &N, x_min: &N, x5: &N) -> N {
    let gap4 = sub(c4.clone(), c2.clone());
    let whole = triangle_diff(&gap4, x_min);
    let right_of_p4 = triangle_diff(&gap4, x5);
    let under_l5 = triangle_diff(&sub(c5.clone(), c2.clone()), x5);
    sub(whole + under_l5, right_of_p4)
}

/// `x_min = min(⌈c1·∛(2n)⌉, ⌊√n⌋)`, computed as `⌈∛(2n·c1³)⌉`.
pub fn x_min_for<N: Natural>(n: &N, c1: u64) -> N {
    let c1: N = nat(c1);
    let scaled = nat::<N>(2) * n.clone() * c1.clone() * c1.clone() * c1;
    icbrt_ceil(&scaled).min(isqrt_floor(n))
}

/// `S(n, 1, ⌊√n⌋) = Σ_{x=1}^{⌊√n⌋} ⌊n/x⌋` by the tangent sweep, calling
/// `on_region` for every region processed.
pub fn hyperbola_half_sum_with<N, F>(n: &N, config: &Config, mut on_region: F) -> Result<SumResult<N>>
where
    N: Natural,
    F: FnMut(&Region<N>),
{
    let mut stats = RunStats::default();
    let x_max = isqrt_floor(n);
    if *n < nat(4) {
        let value = s_partial(n, &N::one(), &x_max);
        stats.div_calls += x_max.to_u64().unwrap_or(u64::MAX);
        return Ok(SumResult { value, stats });
    }
    let y_min = n.clone() / x_max.clone();
    let x_min = x_min_for(n, config.c1);
    stats.sqrt_calls += 2;
    stats.div_calls += 1;

    let mut a2 = N::one();
    let mut x2 = x_max.clone();
    let mut y2 = y_min.clone();
    let mut c2 = a2.clone() * x2.clone() + y2.clone();
    let mut s4 = N::zero();

    loop {
        let a1 = a2.clone() + N::one();
        let x4 = isqrt_floor(&(n.clone() / a1.clone()));
        stats.sqrt_calls += 1;
        stats.div_calls += 1;
        // The second test only triggers for tiny n, where consecutive
        // slopes can share a tangent column.
        if x4 < x_min || x4 >= x2 {
            break;
        }
        let y4 = n.clone() / x4.clone();
        let c4 = a1.clone() * x4.clone() + y4.clone();
        let x5 = x4.clone() + N::one();
        let y5 = n.clone() / x5.clone();
        let c5 = a1.clone() * x5.clone() + y5.clone();
        stats.div_calls += 2;

        s4 = s4 + s_m_polygon(&c4, &c5, &c2, &x_min, &x5);

        let w = (a1.clone() * x2.clone() + y2.clone())
            .checked_sub(&c5)
            .ok_or_else(|| Error::InvalidRegion(format!("P2 below L5 at slope {a1}")))?;
        let h = (a2.clone() * x5.clone() + y5)
            .checked_sub(&c2)
            .ok_or_else(|| Error::InvalidRegion(format!("P5 below L2 at slope {a1}")))?;
        let region = Region::new(w, h, a1.clone(), N::one(), c5, a2.clone(), N::one(), c2.clone());
        s4 = s4 + region_count_with(region, n, config, &mut stats, &mut on_region)?;

        a2 = a1;
        x2 = x4;
        y2 = y4;
        c2 = c4;
    }

    let s1 = if x_min <= N::one() {
        N::zero()
    } else if config.use_divfree && *n > nat(DIVFREE_THRESHOLD) {
        s_q(n, &N::one(), &(x_min.clone() - N::one()), &mut stats)?
    } else {
        let columns = x_min.clone() - N::one();
        stats.div_calls += columns.to_u64().unwrap_or(u64::MAX);
        s_partial(n, &N::one(), &columns)
    };

    let span = sub(x_max.clone(), x_min.clone());
    let s2 = (span.clone() + N::one()) * y_min + triangle(&span);

    // Columns in [x_min, x2) between L2 and the hyperbola.
    let mut s3 = N::zero();
    let mut x = x_min;
    while x < x2 {
        let line = a2.clone() * (x2.clone() - x.clone()) + y2.clone();
        s3 = s3 + sub(n.clone() / x.clone(), line);
        stats.div_calls += 1;
        x = x + N::one();
    }

    Ok(SumResult {
        value: s1 + s2 + s3 + s4,
        stats,
    })
}

/// `S(n, 1, ⌊√n⌋)` by the tangent sweep.
pub fn hyperbola_half_sum<N: Natural>(n: &N, config: &Config) -> Result<SumResult<N>> {
    hyperbola_half_sum_with(n, config, |_| {})
}

/// `T(n)` by the tangent sweep, calling `on_region` for every region processed.
pub fn t_cbrt_with<N, F>(n: &N, config: &Config, on_region: F) -> Result<SumResult<N>>
where
    N: Natural,
    F: FnMut(&Region<N>),
{
    if *n < nat(4) {
        return Ok(SumResult {
            value: t_naive(n),
            stats: RunStats::default(),
        });
    }
    let half = hyperbola_half_sum_with(n, config, on_region)?;
    let root = isqrt_floor(n);
    Ok(SumResult {
        value: half.value.clone() + half.value - root.clone() * root,
        stats: half.stats,
    })
}

/// `T(n) = Σ_{x ≤ n} τ(x)` in `O(n^(1/3))` operations.
pub fn t_cbrt<N: Natural>(n: &N, config: &Config) -> Result<SumResult<N>> {
    t_cbrt_with(n, config, |_| {})
}

/// `T(n)` by the method named in `config`.
pub fn t_dispatch<N: Natural>(n: &N, config: &Config) -> Result<SumResult<N>> {
    match config.method {
        Method::Naive => {
            let stats = RunStats {
                div_calls: n.to_u64().unwrap_or(u64::MAX),
                ..RunStats::default()
            };
            Ok(SumResult {
                value: t_naive(n),
                stats,
            })
        }
        Method::Sqrt => {
            let stats = RunStats {
                div_calls: isqrt_floor(n).to_u64().unwrap_or(u64::MAX),
                sqrt_calls: 1,
                ..RunStats::default()
            };
            Ok(SumResult {
                value: t_sqrt(n),
                stats,
            })
        }
        Method::Cbrt => t_cbrt(n, config),
    }
}
