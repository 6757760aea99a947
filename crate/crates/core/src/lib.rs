//! Exact divisor summatory function `T(n) = Σ_{x ≤ n} τ(x)` in `O(n^(1/3))`
//! operations by successive tangent-line approximation of `xy = n`.
//!
//! Everything is generic over an unsigned integer type implementing
//! [`Natural`]: `u64` and `u128` for speed when `n` is small enough, and
//! [`BigUint`] for arbitrary `n`.
//!
//! ```
//! use divsum::{t_cbrt, Config};
//!
//! let t = t_cbrt(&1_000_000u64, &Config::default()).unwrap();
//! assert_eq!(t.value, 13_970_034);
//! ```

pub mod cli;
pub mod config;
pub mod divfree;
pub mod driver;
pub mod error;
pub mod higher;
pub mod kernel;
pub mod natural;
pub mod oracle;
pub mod region;
pub mod stats;

pub use num_bigint::BigUint;

pub use config::{Config, Method};
pub use divfree::{s_q, s_q_traced, DivFreeState, DivFreeTrace};
pub use driver::{hyperbola_half_sum, s_m_polygon, t_cbrt, t_cbrt_with, t_dispatch, SumResult};
pub use error::{Error, Result};
pub use higher::{s_fast_partial, t3, T3Terms};
pub use kernel::{icbrt_ceil, icbrt_floor, isixth_floor, isqrt_ceil, isqrt_floor, triangle};
pub use natural::Natural;
pub use oracle::{region_brute, s_partial, t3_brute, t_naive, t_sqrt, tau};
pub use region::{region_count, region_count_with, s_manual, s_n_polygon, Axis, Region};
pub use stats::RunStats;

/// Arbitrary-precision natural number.
pub type BigNatural = BigUint;
pub type Region64 = Region<u64>;
pub type Region128 = Region<u128>;
pub type BigRegion = Region<BigUint>;
pub type SumResult128 = SumResult<u128>;
pub type BigSumResult = SumResult<BigUint>;
