//! Lattice counting inside a curvilinear triangle under `xy = n`.
//!
//! A region is bounded by two lattice lines `a1·x + b1·y = c1` (the `v` axis)
//! and `a2·x + b2·y = c2` (the `u` axis) whose slopes are Farey neighbours,
//! and by the arc of the hyperbola between them. Because `a1·b2 − b1·a2 = 1`
//! the map to `(u, v)` is unimodular, so lattice points can be counted in
//! either frame.
//!
//! Counting proceeds by placing a slope −1 (in `uv`) tangent under the arc,
//! adding the lattice points of the polygon beneath it, and queueing the two
//! smaller regions left above it. Slopes of the children are the mediant of
//! the parent slopes, so the queue walks a Stern–Brocot subtree.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::kernel::{isqrt_ceil, isqrt_floor, triangle};
use crate::natural::{nat, sub, Natural};
use crate::stats::RunStats;

/// The eight values `(w, h, a1, b1, c1, a2, b2, c2)` defining a region.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Region<N> {
    pub w: N,
    pub h: N,
    pub a1: N,
    pub b1: N,
    pub c1: N,
    pub a2: N,
    pub b2: N,
    pub c2: N,
}

/// Axis along which a small region is summed column by column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// Columns `u = 1..w−1`, each contributing `⌊V(u)⌋`.
    U,
    /// Rows `v = 1..h−1`, each contributing `⌊U(v)⌋`.
    V,
}

impl<N: Natural> Region<N> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(w: N, h: N, a1: N, b1: N, c1: N, a2: N, b2: N, c2: N) -> Self {
        Region {
            w,
            h,
            a1,
            b1,
            c1,
            a2,
            b2,
            c2,
        }
    }

    /// `a1·b2 − b1·a2 = 1`.
    pub fn is_unimodular(&self) -> bool {
        self.a1.clone() * self.b2.clone() == self.b1.clone() * self.a2.clone() + N::one()
    }

    /// The lattice point `P0 = (x0, y0)` where the two lines meet, if both
    /// coordinates are nonnegative.
    pub fn origin(&self) -> Option<(N, N)> {
        let x0 = (self.c1.clone() * self.b2.clone()).checked_sub(&(self.b1.clone() * self.c2.clone()))?;
        let y0 = (self.a1.clone() * self.c2.clone()).checked_sub(&(self.c1.clone() * self.a2.clone()))?;
        Some((x0, y0))
    }

    /// Checks unimodularity and that `P0` has strictly positive coordinates.
    pub fn validate(&self) -> Result<()> {
        if !self.is_unimodular() {
            return Err(Error::InvalidRegion(format!("determinant is not 1: {self:?}")));
        }
        match self.origin() {
            Some((x0, y0)) if !x0.is_zero() && !y0.is_zero() => Ok(()),
            _ => Err(Error::InvalidRegion(format!("origin not in the open first quadrant: {self:?}"))),
        }
    }

    /// The same region seen with `x` and `y` exchanged: `u ↔ v`, `w ↔ h`.
    pub fn mirrored(&self) -> Self {
        Region {
            w: self.h.clone(),
            h: self.w.clone(),
            a1: self.b2.clone(),
            b1: self.a2.clone(),
            c1: self.c2.clone(),
            a2: self.b1.clone(),
            b2: self.a1.clone(),
            c2: self.c1.clone(),
        }
    }

    /// `(x, y)` of the `uv` lattice point `(u, v)`.
    ///
    /// Panics if the point falls outside the first `xy` quadrant.
    pub fn uv_to_xy(&self, u: &N, v: &N) -> (N, N) {
        self.try_uv_to_xy(u, v)
            .unwrap_or_else(|| panic!("({u}, {v}) maps outside the first quadrant of {self:?}"))
    }

    pub(crate) fn try_uv_to_xy(&self, u: &N, v: &N) -> Option<(N, N)> {
        let up = u.clone() + self.c1.clone();
        let vp = v.clone() + self.c2.clone();
        let x = (self.b2.clone() * up.clone()).checked_sub(&(self.b1.clone() * vp.clone()))?;
        let y = (self.a1.clone() * vp).checked_sub(&(self.a2.clone() * up))?;
        Some((x, y))
    }

    /// `(u, v)` of the `xy` lattice point `(x, y)`.
    ///
    /// Panics if the point lies below either line.
    pub fn xy_to_uv(&self, x: &N, y: &N) -> (N, N) {
        let u = (self.a1.clone() * x.clone() + self.b1.clone() * y.clone())
            .checked_sub(&self.c1)
            .unwrap_or_else(|| panic!("({x}, {y}) lies below the v axis of {self:?}"));
        let v = (self.a2.clone() * x.clone() + self.b2.clone() * y.clone())
            .checked_sub(&self.c2)
            .unwrap_or_else(|| panic!("({x}, {y}) lies below the u axis of {self:?}"));
        (u, v)
    }

    /// The hyperbola `H(u, v) = x·y` evaluated in region coordinates.
    pub fn h_eval(&self, u: &N, v: &N) -> N {
        let (x, y) = self.uv_to_xy(u, v);
        x * y
    }

    /// `a1·b2 + b1·a2`, the cross term shared by both explicit curve formulas.
    fn cross(&self) -> N {
        self.a1.clone() * self.b2.clone() + self.b1.clone() * self.a2.clone()
    }

    /// `⌊u⌋` of the arc point where the slope is −1, or zero if that point is
    /// left of the `v` axis.
    pub fn u_tan(&self, n: &N) -> N {
        let a3 = self.a1.clone() + self.a2.clone();
        let b3 = self.b1.clone() + self.b2.clone();
        let q = self.cross() + nat::<N>(2) * self.a1.clone() * self.b1.clone();
        let radicand = q.clone() * q * n.clone() / (a3 * b3);
        let root = isqrt_floor(&radicand);
        root.checked_sub(&self.c1).unwrap_or_else(N::zero)
    }

    /// `⌊V(u)⌋`: the largest `v` with `H(u, v) ≤ n` on the arc's branch.
    pub fn v_floor(&self, u: &N, n: &N) -> Result<N> {
        explicit_floor(u, &self.c1, &self.c2, &self.a1, &self.b1, &self.cross(), n)
            .ok_or_else(|| Error::InvalidRegion(format!("arc does not reach column u = {u} of {self:?}")))
    }

    /// `⌊V(u)⌋` if it is one of `start`, `start − 1`, `start − 2`, given
    /// that `start + 1` is above the arc at `u`.
    fn floor_near(&self, u: &N, start: &N, n: &N) -> Option<N> {
        let mut v = start.clone();
        for _ in 0..3 {
            if v.is_zero() {
                return None;
            }
            if self.try_uv_to_xy(u, &v).is_some_and(|(x, y)| x * y <= *n) {
                return Some(v);
            }
            v = v - N::one();
        }
        None
    }

    /// `⌊U(v)⌋`: the largest `u` with `H(u, v) ≤ n` on the arc's branch.
    pub fn u_floor(&self, v: &N, n: &N) -> Result<N> {
        explicit_floor(v, &self.c2, &self.c1, &self.a2, &self.b2, &self.cross(), n)
            .ok_or_else(|| Error::InvalidRegion(format!("arc does not reach row v = {v} of {self:?}")))
    }
}

/// `⌊(q·(t+p) − ⌈√((t+p)² − 4·a·b·n)⌉) / (2ab)⌋ − r`.
fn explicit_floor<N: Natural>(t: &N, p: &N, r: &N, a: &N, b: &N, q: &N, n: &N) -> Option<N> {
    let shifted = t.clone() + p.clone();
    let ab = a.clone() * b.clone();
    let disc = (shifted.clone() * shifted.clone()).checked_sub(&(nat::<N>(4) * ab.clone() * n.clone()))?;
    let num = (q.clone() * shifted).checked_sub(&isqrt_ceil(&disc))?;
    (num / (nat::<N>(2) * ab)).checked_sub(r)
}

/// Lattice points in the polygon `P0 P6 P4 P5 P7` above both axes.
///
/// Counted along reverse diagonals `u + v = k` from the origin: every
/// diagonal below `min(v6, u7)` is full, and when the two tangent diagonals
/// differ by one the outer one is partially filled from the other side.
pub fn s_n_polygon<N: Natural>(v6: &N, u5: &N, u7: &N, u4: &N, v5: &N) -> N {
    let one = N::one();
    if *u7 == v6.clone() + one.clone() {
        // Diagonal u7 holds the points of columns u5..u7−1.
        triangle(&sub(v6.clone(), one)) + v5.clone()
    } else if *v6 == u7.clone() + one.clone() {
        // Diagonal v6 holds the points of columns 1..u4.
        triangle(&sub(u7.clone(), one)) + u4.clone()
    } else if v6 == u7 {
        triangle(&sub(v6.clone(), one))
    } else {
        // Δ(v6−1) − Δ(v6−u5) + Δ(u7−u5), with v6 ≥ u4 so Δ(v6−u5) ≥ Δ(−1) = 0.
        let column_tops = triangle(&sub(v6.clone(), one.clone()));
        let below_p4 = match v6.checked_sub(u5) {
            Some(k) => triangle(&k),
            None => N::zero(),
        };
        sub(column_tops, below_p4) + triangle(&sub(u7.clone(), u5.clone()))
    }
}

/// Column-by-column sum for a small region, one root and one division per
/// column, with the radicand and numerator advanced by additions only.
pub fn s_manual<N: Natural>(region: &Region<N>, n: &N, axis: Axis, stats: &mut RunStats) -> Result<N> {
    let q = region.cross();
    match axis {
        Axis::U => {
            let r = nat::<N>(2) * region.a1.clone() * region.b1.clone();
            sum_columns(&region.w, &region.c1, &region.c2, &q, &r, n, stats)
        }
        Axis::V => {
            let r = nat::<N>(2) * region.a2.clone() * region.b2.clone();
            sum_columns(&region.h, &region.c2, &region.c1, &q, &r, n, stats)
        }
    }
}

/// `Σ_{i=1}^{i_max−1} ⌊((p1+i)·q − ⌈√((p1+i)² − 2rn)⌉) / r⌋ − (i_max−1)·p2`.
fn sum_columns<N: Natural>(i_max: &N, p1: &N, p2: &N, q: &N, r: &N, n: &N, stats: &mut RunStats) -> Result<N> {
    if *i_max <= N::one() {
        return Ok(N::zero());
    }
    let columns = i_max.clone() - N::one();
    let invalid = || Error::InvalidRegion(format!("arc leaves the manual range (p1 = {p1}, q = {q}, r = {r})"));

    // State for i = 1; the radicand may be negative at i = 0.
    let first = p1.clone() + N::one();
    let mut a = (first.clone() * first.clone())
        .checked_sub(&(nat::<N>(2) * r.clone() * n.clone()))
        .ok_or_else(invalid)?;
    let mut b = first.clone() * q.clone();
    let mut c = nat::<N>(2) * first - N::one();
    let mut total = N::zero();
    let mut i = N::one();
    loop {
        let root = isqrt_ceil(&a);
        total = total + b.clone().checked_sub(&root).ok_or_else(invalid)? / r.clone();
        stats.sqrt_calls += 1;
        stats.div_calls += 1;
        stats.manual_columns += 1;
        if i == columns {
            break;
        }
        i = i + N::one();
        c = c + nat(2);
        a = a + c.clone();
        b = b + q.clone();
    }
    total.checked_sub(&(columns * p2.clone())).ok_or_else(invalid)
}

/// Outcome of processing one work item.
enum Step<N> {
    Done(N),
    Split(N, Region<N>, Region<N>),
}

fn manual_axis<N: Natural>(region: &Region<N>, cutoff: &N) -> Option<Axis> {
    let w_small = region.w <= *cutoff;
    let h_small = region.h <= *cutoff;
    match (w_small, h_small) {
        (true, true) if region.h < region.w => Some(Axis::V),
        (true, _) => Some(Axis::U),
        (false, true) => Some(Axis::V),
        (false, false) => None,
    }
}

fn shorter_axis<N: Natural>(region: &Region<N>) -> Axis {
    if region.h < region.w {
        Axis::V
    } else {
        Axis::U
    }
}

fn step<N: Natural>(mut r: Region<N>, n: &N, cutoff: &N, stats: &mut RunStats) -> Result<Step<N>> {
    if r.w.is_zero() || r.h.is_zero() {
        return Ok(Step::Done(N::zero()));
    }
    let mut s = N::zero();

    // Trim so the arc is within one unit of each axis at its ends. Slivers
    // can need several rows or columns; a column trim leaves the last failed
    // row test pointing at the same lattice point, so rows go first.
    while !r.w.is_zero() && !r.h.is_zero() && r.h_eval(&r.w, &N::one()) <= *n {
        s = s + r.w.clone();
        r.c2 = r.c2 + N::one();
        r.h = r.h - N::one();
    }
    while !r.w.is_zero() && !r.h.is_zero() && r.h_eval(&N::one(), &r.h) <= *n {
        s = s + r.h.clone();
        r.c1 = r.c1 + N::one();
        r.w = r.w - N::one();
    }
    if r.w.is_zero() || r.h.is_zero() {
        return Ok(Step::Done(s));
    }

    if let Some(axis) = manual_axis(&r, cutoff) {
        return Ok(Step::Done(s + s_manual(&r, n, axis, stats)?));
    }

    let u4 = r.u_tan(n);
    stats.sqrt_calls += 1;
    stats.div_calls += 1;
    if u4.is_zero() {
        let axis = shorter_axis(&r);
        return Ok(Step::Done(s + s_manual(&r, n, axis, stats)?));
    }
    if u4 >= r.w {
        // Slope −1 is reached past the end of the arc; only happens for
        // slivers a few columns wide.
        let axis = shorter_axis(&r);
        return Ok(Step::Done(s + s_manual(&r, n, axis, stats)?));
    }
    let u5 = u4.clone() + N::one();
    let v4 = r.v_floor(&u4, n)?;
    stats.sqrt_calls += 1;
    stats.div_calls += 1;
    // Past the tangent the arc falls by about one per column, so V(u5) is
    // found by testing downwards from V(u4).
    let v5 = match r.floor_near(&u5, &v4, n) {
        Some(v) => v,
        None => {
            stats.sqrt_calls += 1;
            stats.div_calls += 1;
            r.v_floor(&u5, n)?
        }
    };
    let v6 = u4.clone() + v4;
    let u7 = u5.clone() + v5.clone();
    if v6 > r.h || u7 > r.w {
        let axis = shorter_axis(&r);
        return Ok(Step::Done(s + s_manual(&r, n, axis, stats)?));
    }

    s = s + s_n_polygon(&v6, &u5, &u7, &u4, &v5);

    let a3 = r.a1.clone() + r.a2.clone();
    let b3 = r.b1.clone() + r.b2.clone();
    let c12 = r.c1.clone() + r.c2.clone();
    let upper = Region {
        w: u4,
        h: r.h.clone() - v6.clone(),
        a1: r.a1.clone(),
        b1: r.b1.clone(),
        c1: r.c1.clone(),
        a2: a3.clone(),
        b2: b3.clone(),
        c2: c12.clone() + v6,
    };
    let lower = Region {
        w: r.w.clone() - u7.clone(),
        h: v5,
        a1: a3,
        b1: b3,
        c1: c12 + u7,
        a2: r.a2,
        b2: r.b2,
        c2: r.c2,
    };
    Ok(Step::Split(s, upper, lower))
}

/// Maximum work-stack depth tolerated for hyperbola constant `n`.
pub fn stack_limit<N: Natural>(n: &N) -> usize {
    4 * n.bits() as usize + 64
}

/// Exact count of lattice points `(u, v)`, `u, v ≥ 1`, under the arc.
pub fn region_count<N: Natural>(region: Region<N>, n: &N, config: &Config, stats: &mut RunStats) -> Result<N> {
    region_count_with(region, n, config, stats, |_| {})
}

/// As [`region_count`], calling `visit` on every work item as it is taken
/// off the stack (the initial region included).
pub fn region_count_with<N, F>(
    region: Region<N>,
    n: &N,
    config: &Config,
    stats: &mut RunStats,
    mut visit: F,
) -> Result<N>
where
    N: Natural,
    F: FnMut(&Region<N>),
{
    let cutoff: N = nat(config.c2);
    let limit = stack_limit(n);
    let mut total = N::zero();
    let mut stack = vec![region];
    stats.observe_depth(1);
    while let Some(item) = stack.pop() {
        stats.regions_processed += 1;
        visit(&item);
        match step(item, n, &cutoff, stats)? {
            Step::Done(count) => total = total + count,
            Step::Split(count, upper, lower) => {
                total = total + count;
                // Smaller child on top: pending siblings at least halve in
                // w + h going up the stack, so depth stays logarithmic.
                let (first, second) = if upper.w.clone() + upper.h.clone() < lower.w.clone() + lower.h.clone() {
                    (lower, upper)
                } else {
                    (upper, lower)
                };
                for child in [first, second] {
                    if !child.w.is_zero() && !child.h.is_zero() {
                        stack.push(child);
                    }
                }
                if stack.len() > limit {
                    return Err(Error::StackOverflow {
                        depth: stack.len(),
                        limit,
                    });
                }
                stats.observe_depth(stack.len());
            }
        }
    }
    Ok(total)
}
