//! `T3(n)`, the number of triples with `xyz ≤ n`, by summing nested shells
//! `z = 1..⌊∛n⌋`. Each shell needs one partial column sum
//! `S(⌊n/z⌋, z+1, ⌊√(n/z)⌋)`, which the tangent sweep already produces.

use crate::config::Config;
use crate::driver::{hyperbola_half_sum, SumResult};
use crate::error::{Error, Result};
use crate::kernel::{icbrt_floor, isqrt_floor};
use crate::natural::{nat, sub, Natural};
use crate::oracle::s_partial;
use crate::stats::RunStats;

/// The three per-shell quantities of the shell formula.
///
/// `T3(n) = 3·Σ_z (s_term − sqrt_term + div_term) + ⌊∛n⌋³`. A single shell's
/// bracket can be negative, so totals are accumulated before subtracting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct T3Terms<N> {
    pub z: N,
    /// `2·S(⌊n/z⌋, z+1, ⌊√(n/z)⌋)`.
    pub s_term: N,
    /// `⌊√(n/z)⌋²`.
    pub sqrt_term: N,
    /// `⌊n/z²⌋`.
    pub div_term: N,
}

/// `S(n, x1, x2)` for the shape `x2 = ⌊√n⌋` only.
///
/// Large `n` take the tangent sweep for `S(n, 1, ⌊√n⌋)` and subtract the
/// prefix `S(n, 1, x1−1)`; small `n` sum directly.
pub fn s_fast_partial<N: Natural>(n: &N, x1: &N, x2: &N, config: &Config, stats: &mut RunStats) -> Result<N> {
    if x1.is_zero() {
        return Err(Error::ZeroArgument("lower summation bound"));
    }
    let root = isqrt_floor(n);
    if *x2 != root {
        return Err(Error::UnsupportedRange(format!(
            "upper bound {x2} is not ⌊√{n}⌋ = {root}"
        )));
    }
    if x1 > x2 {
        return Ok(N::zero());
    }
    if *n < sweep_threshold(config) {
        let columns = sub(x2.clone() + N::one(), x1.clone());
        stats.div_calls += columns.to_u64().unwrap_or(u64::MAX);
        return Ok(s_partial(n, x1, x2));
    }
    let half = hyperbola_half_sum(n, config)?;
    stats.merge(&half.stats);
    let prefix = s_partial(n, &N::one(), &sub(x1.clone(), N::one()));
    stats.div_calls += sub(x1.clone(), N::one()).to_u64().unwrap_or(u64::MAX);
    Ok(sub(half.value, prefix))
}

/// `4·c1⁶`: below this the sweep would consist entirely of plain columns.
fn sweep_threshold<N: Natural>(config: &Config) -> N {
    let c1: N = nat(config.c1);
    let c1_cubed = c1.clone() * c1.clone() * c1;
    nat::<N>(4) * c1_cubed.clone() * c1_cubed
}

/// Per-shell terms for `z = 1..=⌊∛n⌋`.
pub fn t3_terms<N: Natural>(n: &N, config: &Config, stats: &mut RunStats) -> Result<Vec<T3Terms<N>>> {
    let k = icbrt_floor(n);
    let mut terms = Vec::new();
    let mut z = N::one();
    while z <= k {
        let m = n.clone() / z.clone();
        let root = isqrt_floor(&m);
        let s = s_fast_partial(&m, &(z.clone() + N::one()), &root, config, stats)?;
        stats.div_calls += 2;
        stats.sqrt_calls += 1;
        terms.push(T3Terms {
            s_term: s.clone() + s,
            sqrt_term: root.clone() * root,
            div_term: n.clone() / (z.clone() * z.clone()),
            z: z.clone(),
        });
        z = z + N::one();
    }
    Ok(terms)
}

/// `T3(n) = Σ_{x ≤ n} τ3(x)`.
pub fn t3<N: Natural>(n: &N, config: &Config) -> Result<SumResult<N>> {
    let mut stats = RunStats::default();
    let k = icbrt_floor(n);
    let terms = t3_terms(n, config, &mut stats)?;
    let mut positive = N::zero();
    let mut negative = N::zero();
    for t in terms {
        positive = positive + t.s_term + t.div_term;
        negative = negative + t.sqrt_term;
    }
    let three: N = nat(3);
    let value = three * sub(positive, negative) + k.clone() * k.clone() * k;
    Ok(SumResult { value, stats })
}
