//! Mostly division-free evaluation of `Σ_{x=x1}^{x2} ⌊n/x⌋`.
//!
//! Walking `x` downwards, `β(x) = ⌊n/x⌋` is extrapolated from its first and
//! second differences and corrected with the running remainder
//! `ε(x) = n mod x`. Three phases:
//!
//! 1. `x ≥ ∛(2n)`: the second difference is in `{−1, 0, 1, 2}`, so the
//!    correction is a short ladder of comparisons and subtractions.
//! 2. `n^(1/6) ≤ x < ∛(2n)`: the correction needs one short division.
//! 3. `x < n^(1/6)`: plain division.
//!
//! State is re-derived from exact divisions whenever a phase begins.

use crate::error::{Error, Result};
use crate::kernel::{icbrt_ceil, isixth_floor};
use crate::natural::{nat, Natural};
use crate::stats::RunStats;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, Zero};

/// Recurrence state at column `x`, as used on entry to a phase loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivFreeState<N: Natural> {
    pub x: N,
    /// `⌊n/(x+1)⌋`.
    pub beta: N,
    /// `n mod (x+1)` when synchronized; transiently out of `[0, x)`.
    pub eps: N::Signed,
    /// First difference `⌊n/x⌋ − ⌊n/(x+1)⌋`.
    pub delta1: N::Signed,
    /// `β − x·δ1`, the remainder increment assuming a zero second difference.
    pub gamma: N::Signed,
}

impl<N: Natural> DivFreeState<N> {
    /// Exact state for entering column `x` from `x + 1`.
    pub fn synchronized(n: &N, x: &N, stats: &mut RunStats) -> Self {
        let next = x.clone() + N::one();
        let (beta, eps) = n.div_rem(&next);
        let delta1 = n.clone() / x.clone() - beta.clone();
        stats.div_calls += 2;
        let delta1 = delta1.to_signed();
        let gamma = beta.to_signed() - x.to_signed() * delta1.clone();
        DivFreeState {
            x: x.clone(),
            beta,
            eps: eps.to_signed(),
            delta1,
            gamma,
        }
    }
}

/// Instrumentation for one [`s_q_traced`] call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivFreeTrace<N: Natural> {
    pub phase1_columns: u64,
    pub phase2_columns: u64,
    pub phase3_columns: u64,
    /// Phase 1 loops left because a third upward correction was needed.
    pub phase1_exits: u64,
    /// Phase 1 columns whose single downward correction left `ε < 0`.
    pub phase1_out_of_range: u64,
    /// Phase 1 second differences, indexed by `δ2 + 1` for `δ2 ∈ {−1, 0, 1, 2}`.
    pub phase1_delta2: [u64; 4],
    pub max_abs_gamma: N,
    pub max_delta1: N,
    pub max_abs_delta2: N,
}

impl<N: Natural> Default for DivFreeTrace<N> {
    fn default() -> Self {
        DivFreeTrace {
            phase1_columns: 0,
            phase2_columns: 0,
            phase3_columns: 0,
            phase1_exits: 0,
            phase1_out_of_range: 0,
            phase1_delta2: [0; 4],
            max_abs_gamma: N::zero(),
            max_delta1: N::zero(),
            max_abs_delta2: N::zero(),
        }
    }
}

impl<N: Natural> DivFreeTrace<N> {
    fn record(&mut self, gamma: &N::Signed, delta1: &N::Signed, delta2: &N::Signed) {
        let mag = |v: &N::Signed| N::from_signed(&v.abs()).expect("magnitude fits");
        self.max_abs_gamma = self.max_abs_gamma.clone().max(mag(gamma));
        self.max_delta1 = self.max_delta1.clone().max(mag(delta1));
        self.max_abs_delta2 = self.max_abs_delta2.clone().max(mag(delta2));
    }
}

/// `Σ_{x=x1}^{x2} ⌊n/x⌋`; zero when `x2 < x1`.
pub fn s_q<N: Natural>(n: &N, x1: &N, x2: &N, stats: &mut RunStats) -> Result<N> {
    s_q_traced(n, x1, x2, stats, &mut DivFreeTrace::default())
}

/// [`s_q`] with per-phase instrumentation.
pub fn s_q_traced<N: Natural>(
    n: &N,
    x1: &N,
    x2: &N,
    stats: &mut RunStats,
    trace: &mut DivFreeTrace<N>,
) -> Result<N> {
    if x1.is_zero() {
        return Err(Error::ZeroArgument("lower summation bound"));
    }
    if x2 < x1 {
        return Ok(N::zero());
    }

    let mut total = N::zero();
    let mut x = x2.clone();

    let phase1_floor = x1.clone().max(icbrt_ceil(&(nat::<N>(2) * n.clone())));
    let phase2_floor = x1.clone().max(isixth_floor(n));

    if x >= phase1_floor {
        let st = DivFreeState::synchronized(n, &x, stats);
        let (mut beta, mut eps, mut delta, mut gamma) = (st.beta.to_signed(), st.eps, st.delta1, st.gamma);
        let mut total_s = N::Signed::zero();
        while x >= phase1_floor {
            let xs = x.to_signed();
            let gamma_in = gamma.clone();
            eps = eps + gamma.clone();
            let mut delta2: i8 = 0;
            if eps >= xs {
                delta = delta + N::Signed::one();
                gamma = gamma - xs.clone();
                eps = eps - xs.clone();
                delta2 += 1;
                if eps >= xs {
                    delta = delta + N::Signed::one();
                    gamma = gamma - xs.clone();
                    eps = eps - xs.clone();
                    delta2 += 1;
                    if eps >= xs {
                        trace.phase1_exits += 1;
                        break;
                    }
                }
            } else if eps < N::Signed::zero() {
                delta = delta - N::Signed::one();
                gamma = gamma + xs.clone();
                eps = eps + xs.clone();
                delta2 = -1;
                if eps < N::Signed::zero() {
                    trace.phase1_out_of_range += 1;
                    debug_assert!(false, "second difference below −1 at x = {x}");
                    break;
                }
            }
            let delta2_s = N::Signed::from_i8(delta2).expect("small constant");
            trace.record(&gamma_in, &delta, &delta2_s);
            trace.phase1_delta2[(delta2 + 1) as usize] += 1;
            trace.phase1_columns += 1;

            gamma = gamma + delta.clone() + delta.clone();
            beta = beta + delta.clone();
            total_s = total_s + beta.clone();
            x = x - N::one();
        }
        total = total + N::from_signed(&total_s).expect("column sums are nonnegative");
        debug_assert_eq!(
            N::from_signed(&beta),
            Some(n.clone() / (x.clone() + N::one())),
            "phase 1 lost synchronization"
        );
    }

    if x >= phase2_floor {
        let st = DivFreeState::synchronized(n, &x, stats);
        let (mut beta, mut eps, mut delta, mut gamma) = (st.beta.to_signed(), st.eps, st.delta1, st.gamma);
        let mut total_s = N::Signed::zero();
        while x >= phase2_floor {
            let xs = x.to_signed();
            let gamma_in = gamma.clone();
            eps = eps + gamma.clone();
            let delta2 = eps.div_floor(&xs);
            stats.div_calls += 1;
            delta = delta + delta2.clone();
            eps = eps - xs.clone() * delta2.clone();
            gamma = gamma + delta.clone() + delta.clone() - xs * delta2.clone();
            beta = beta + delta.clone();
            total_s = total_s + beta.clone();
            trace.record(&gamma_in, &delta, &delta2);
            trace.phase2_columns += 1;
            x = x - N::one();
        }
        total = total + N::from_signed(&total_s).expect("column sums are nonnegative");
        debug_assert_eq!(
            N::from_signed(&beta),
            Some(n.clone() / (x.clone() + N::one())),
            "phase 2 lost synchronization"
        );
    }

    while x >= *x1 {
        total = total + n.clone() / x.clone();
        stats.div_calls += 1;
        trace.phase3_columns += 1;
        x = x - N::one();
    }
    Ok(total)
}
