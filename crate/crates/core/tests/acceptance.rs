//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion does.

use std::time::{Duration, Instant};

use divsum::divfree::DivFreeTrace;
use divsum::driver::x_min_for;
use divsum::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CONSTANTS: [u64; 4] = [1, 3, 10, 50];
const EXHAUSTIVE_MAX: u64 = 20_000;
const RANDOM_LARGE: usize = 200;
const CALL_BUDGET: Duration = Duration::from_secs(1);
const GROWTH_RATIO_MAX: f64 = 2.2;
const DIVFREE_RANGES: usize = 1000;
const DIVFREE_STRADDLE: usize = 100;
const REGION_SAMPLES: usize = 500;
const T3_EXHAUSTIVE_MAX: u64 = 5000;
const T3_LARGE: u64 = 10_000_000;
const T3_BUDGET: Duration = Duration::from_secs(10);
const ROUND_TRIP_POINTS: usize = 10_000;
const ROOT_SAMPLES: usize = 20_000;

struct Verdict {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Verdict);

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn depth_bound(n: u128) -> u64 {
    4 * (128 - n.leading_zeros() as u64) + 64
}

/// 2·Σ_{x ≤ √n} ⌊n/x⌋ − ⌊√n⌋² in plain u64 arithmetic.
fn t_sqrt_u64(n: u64) -> u128 {
    let root = n.isqrt();
    let mut half: u128 = 0;
    for x in 1..=root {
        half += (n / x) as u128;
    }
    2 * half - (root as u128) * (root as u128)
}

fn exhaustive_oracle() -> Verdict {
    let expected: Vec<u64> = (0..=EXHAUSTIVE_MAX).map(|n| t_naive(&n)).collect();
    let mut mismatches = 0;
    let mut first = None;
    for &c1 in &CONSTANTS {
        for &c2 in &CONSTANTS {
            let config = Config::with_constants(c1, c2);
            for n in 0..=EXHAUSTIVE_MAX {
                let got = t_cbrt(&n, &config).map(|r| r.value);
                if got.as_ref().ok() != Some(&expected[n as usize]) {
                    mismatches += 1;
                    first.get_or_insert((n, c1, c2, got));
                }
            }
        }
    }
    verdict(
        mismatches == 0,
        format!("n ≤ {EXHAUSTIVE_MAX} × 16 (C1, C2) pairs, {mismatches} mismatches, first {first:?}"),
    )
}

fn large_cross_method() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut inputs: Vec<u64> = (0..RANDOM_LARGE)
        .map(|_| rng.gen_range(1_000_000_000..=1_000_000_000_000))
        .collect();
    inputs.extend([1_000_000_000_000, 1_000_000_000_001, u64::MAX]);
    let config = Config::default();
    let mut mismatches = Vec::new();
    let mut slowest = Duration::ZERO;
    let mut deepest_excess = 0i64;
    for n in inputs {
        let wide = n as u128;
        let start = Instant::now();
        let got = t_cbrt(&wide, &config);
        slowest = slowest.max(start.elapsed());
        match got {
            Ok(r) => {
                deepest_excess = deepest_excess.max(r.stats.max_stack_depth as i64 - depth_bound(wide) as i64);
                if r.value != t_sqrt_u64(n) {
                    mismatches.push(n);
                }
            }
            Err(_) => mismatches.push(n),
        }
    }
    // The library square-root oracle and the local one must agree too.
    let anchor = 1_000_000_000_000u128;
    let oracles_agree = t_sqrt(&anchor) == t_sqrt_u64(anchor as u64);
    verdict(
        mismatches.is_empty() && slowest < CALL_BUDGET && deepest_excess <= 0 && oracles_agree,
        format!(
            "{} inputs, mismatches {mismatches:?}, slowest call {slowest:?} (budget {CALL_BUDGET:?}), oracles agree {oracles_agree}",
            RANDOM_LARGE + 3
        ),
    )
}

fn scaling_counters() -> Verdict {
    let config = Config::default();
    let mut ratios = Vec::new();
    let mut depth_ok = true;
    let mut report = Vec::new();
    for n in [1_000_000_000u128, 10_000_000_000, 100_000_000_000] {
        let small = t_cbrt(&n, &config).expect("t_cbrt");
        let large = t_cbrt(&(8 * n), &config).expect("t_cbrt");
        for (m, r) in [(n, &small), (8 * n, &large)] {
            depth_ok &= r.stats.max_stack_depth <= depth_bound(m);
            report.push(format!("depth({m}) = {}", r.stats.max_stack_depth));
        }
        ratios.push(large.stats.regions_processed as f64 / small.stats.regions_processed as f64);
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    verdict(
        mean <= GROWTH_RATIO_MAX && depth_ok,
        format!("regions(8n)/regions(n) = {ratios:.3?}, mean {mean:.3} (max {GROWTH_RATIO_MAX}); {}", report.join(", ")),
    )
}

fn divfree_counter() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut mismatches = Vec::new();
    let mut out_of_range = 0;
    let mut exits = 0;
    let mut phase_columns = [0u64; 3];
    for i in 0..DIVFREE_RANGES {
        let n: u64 = rng.gen_range(1..=1_000_000_000_000);
        let pivot = if i < DIVFREE_STRADDLE {
            icbrt_ceil(&(2 * n))
        } else if i < 2 * DIVFREE_STRADDLE {
            isixth_floor(&n).max(1)
        } else {
            rng.gen_range(1..=n.isqrt().max(1))
        };
        let (x1, x2) = if i < 2 * DIVFREE_STRADDLE {
            // Straddle the pivot with a few thousand columns on each side.
            let below = rng.gen_range(0..=3000u64).min(pivot - 1);
            let above = rng.gen_range(0..=3000u64);
            (pivot - below, pivot + above)
        } else {
            let len = rng.gen_range(0..=20_000u64);
            (pivot, pivot + len)
        };
        let mut trace = DivFreeTrace::default();
        let got = s_q_traced(&n, &x1, &x2, &mut RunStats::default(), &mut trace);
        if got != Ok(s_partial(&n, &x1, &x2)) {
            mismatches.push((n, x1, x2));
        }
        out_of_range += trace.phase1_out_of_range;
        exits += trace.phase1_exits;
        phase_columns[0] += trace.phase1_columns;
        phase_columns[1] += trace.phase2_columns;
        phase_columns[2] += trace.phase3_columns;
    }
    verdict(
        mismatches.is_empty() && out_of_range == 0 && phase_columns.iter().all(|&c| c > 0),
        format!(
            "{DIVFREE_RANGES} ranges, mismatches {mismatches:?}, second difference out of range {out_of_range}, \
             early exits {exits}, columns per phase {phase_columns:?}"
        ),
    )
}

fn sampled_regions(seed: u64, count: usize) -> Vec<(Region64, u64, Config)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = Vec::with_capacity(count);
    while picked.len() < count {
        let n: u64 = rng.gen_range(1000..=1_000_000);
        let config = Config::with_constants(CONSTANTS[rng.gen_range(0..4)], CONSTANTS[rng.gen_range(0..4)]);
        let mut seen = Vec::new();
        t_cbrt_with(&n, &config, |r: &Region64| seen.push(r.clone())).expect("t_cbrt");
        if seen.is_empty() {
            continue;
        }
        let take = rng.gen_range(1..=4).min(seen.len());
        for _ in 0..take {
            let r = seen[rng.gen_range(0..seen.len())].clone();
            picked.push((r, n, config));
        }
    }
    picked.truncate(count);
    picked
}

fn region_oracle() -> Verdict {
    let samples = sampled_regions(0x5eed_0005, REGION_SAMPLES);
    let mut count_bad = Vec::new();
    let mut manual_bad = Vec::new();
    let mut manual_checked = 0;
    for (r, n, config) in &samples {
        let got = region_count(r.clone(), n, config, &mut RunStats::default());
        if got != Ok(region_brute(r, n)) {
            count_bad.push((r.clone(), *n));
        }
        let by_columns: Result<u64> = (1..r.w).map(|u| r.v_floor(&u, n)).sum();
        let by_rows: Result<u64> = (1..r.h).map(|v| r.u_floor(&v, n)).sum();
        for (axis, expected) in [(Axis::U, by_columns), (Axis::V, by_rows)] {
            if let Ok(expected) = expected {
                manual_checked += 1;
                if s_manual(r, n, axis, &mut RunStats::default()) != Ok(expected) {
                    manual_bad.push((r.clone(), *n, axis));
                }
            }
        }
    }
    verdict(
        count_bad.is_empty() && manual_bad.is_empty() && manual_checked >= samples.len(),
        format!(
            "{} regions from runs with n ≤ 10^6, count mismatches {count_bad:?}, \
             manual sums checked {manual_checked}, manual mismatches {manual_bad:?}",
            samples.len()
        ),
    )
}

fn triple_sums() -> Verdict {
    let config = Config::default();
    let mut mismatches = Vec::new();
    for n in 0..=T3_EXHAUSTIVE_MAX {
        if t3(&n, &config).map(|r| r.value) != Ok(t3_brute(&n)) {
            mismatches.push(n);
        }
    }
    let start = Instant::now();
    let large = t3(&(T3_LARGE as u128), &config).expect("t3").value;
    let elapsed = start.elapsed();
    let brute = t3_brute(&(T3_LARGE as u128));
    let stable: Vec<u128> = CONSTANTS
        .iter()
        .map(|&c| t3(&(T3_LARGE as u128), &Config::with_constants(c, c)).expect("t3").value)
        .collect();
    let stable_ok = stable.iter().all(|&v| v == large);
    verdict(
        mismatches.is_empty() && large == brute && elapsed < T3_BUDGET && stable_ok,
        format!(
            "n ≤ {T3_EXHAUSTIVE_MAX} mismatches {mismatches:?}; T3({T3_LARGE}) = {large} in {elapsed:?} \
             (budget {T3_BUDGET:?}), brute force {brute}, stable across C {stable_ok}"
        ),
    )
}

/// Final sweep state `(x_min, a2, x2, y2)`, recomputed independently of the driver.
fn sweep_tail(n: u64, c1: u64) -> (u64, u64, u64, u64) {
    let x_max = n.isqrt();
    let x_min = x_min_for(&n, c1);
    let (mut a2, mut x2, mut y2) = (1, x_max, n / x_max);
    loop {
        let a1 = a2 + 1;
        let x4 = (n / a1).isqrt();
        if x4 < x_min || x4 >= x2 {
            return (x_min, a2, x2, y2);
        }
        (a2, x2, y2) = (a1, x4, n / x4);
    }
}

fn invariants() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut problems: Vec<String> = Vec::new();

    // Every region taken off the work stack is unimodular.
    let mut regions_seen = 0u64;
    for _ in 0..300 {
        let n: u64 = rng.gen_range(4..=10_000_000);
        let config = Config::with_constants(CONSTANTS[rng.gen_range(0..4)], CONSTANTS[rng.gen_range(0..4)]);
        t_cbrt_with(&n, &config, |r: &Region64| {
            regions_seen += 1;
            if !r.is_unimodular() {
                problems.push(format!("determinant ≠ 1: {r:?}"));
            }
        })
        .expect("t_cbrt");
    }

    // Leftover columns between the last tangent line and the hyperbola.
    let mut s3_columns = 0u64;
    for _ in 0..300 {
        let n: u64 = rng.gen_range(4..=1_000_000_000_000);
        let c1 = CONSTANTS[rng.gen_range(0..4)];
        let (x_min, a2, x2, y2) = sweep_tail(n, c1);
        for x in x_min..x2 {
            s3_columns += 1;
            if n / x < a2 * (x2 - x) + y2 {
                problems.push(format!("negative leftover column n = {n}, x = {x}"));
            }
        }
    }

    // Region coordinates round-trip.
    let regions = sampled_regions(0x5eed_0077, 200);
    let mut points = 0;
    while points < ROUND_TRIP_POINTS {
        let (r, _, _) = &regions[rng.gen_range(0..regions.len())];
        let (u, v) = (rng.gen_range(0..=r.w), rng.gen_range(0..=r.h));
        let (x, y) = r.uv_to_xy(&u, &v);
        if r.xy_to_uv(&x, &y) != (u, v) {
            problems.push(format!("round trip failed at ({u}, {v}) in {r:?}"));
        }
        points += 1;
    }

    // Root and triangle postconditions on random 128-bit inputs.
    for i in 0..ROOT_SAMPLES {
        let bits = rng.gen_range(1..=128u32);
        let x: u128 = if bits == 128 { rng.gen() } else { rng.gen::<u128>() >> (128 - bits) };
        let xb = BigUint::from(x);
        let s = BigUint::from(isqrt_floor(&x));
        let sc = BigUint::from(isqrt_ceil(&x));
        let k = BigUint::from(icbrt_floor(&x));
        let kc = BigUint::from(icbrt_ceil(&x));
        let sqrt_ok = &s * &s <= xb && (&s + 1u32) * (&s + 1u32) > xb;
        let sqrt_ceil_ok = &sc * &sc >= xb && (sc == BigUint::from(0u32) || (&sc - 1u32) * (&sc - 1u32) < xb);
        let cbrt_ok = k.pow(3) <= xb && (&k + 1u32).pow(3) > xb;
        let cbrt_ceil_ok = kc.pow(3) >= xb && (kc == BigUint::from(0u32) || (&kc - 1u32).pow(3) < xb);
        let t = x >> 65;
        let tri_ok = BigUint::from(triangle(&t)) * 2u32 == BigUint::from(t) * (BigUint::from(t) + 1u32);
        if !(sqrt_ok && sqrt_ceil_ok && cbrt_ok && cbrt_ceil_ok && tri_ok) {
            problems.push(format!("root or triangle postcondition failed for x = {x} (sample {i})"));
        }
    }

    verdict(
        problems.is_empty() && regions_seen > 0 && s3_columns > 0,
        format!(
            "{regions_seen} regions unimodular, {s3_columns} leftover columns nonnegative, \
             {ROUND_TRIP_POINTS} round trips, {ROOT_SAMPLES} root samples; problems {:?}",
            &problems[..problems.len().min(5)]
        ),
    )
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 7] = [
        ("exhaustive oracle equivalence", exhaustive_oracle),
        ("large-n cross-method equality", large_cross_method),
        ("work and stack scaling", scaling_counters),
        ("division-free counter", divfree_counter),
        ("region oracle", region_oracle),
        ("three-factor sums", triple_sums),
        ("invariant suite", invariants),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = check();
        let status = if v.pass { "PASS" } else { "FAIL" };
        println!("{status} [{}] {name} ({:.1?}): {}", i + 1, start.elapsed(), v.detail);
        if !v.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
