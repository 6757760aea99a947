use std::fmt;
use std::str::FromStr;

/// Which summation route computes T(n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Column sum over every x ≤ n.
    Naive,
    /// Symmetric column sum up to ⌊√n⌋.
    Sqrt,
    /// Tangent-line region decomposition.
    Cbrt,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Naive, Method::Sqrt, Method::Cbrt];

    pub fn name(self) -> &'static str {
        match self {
            Method::Naive => "naive",
            Method::Sqrt => "sqrt",
            Method::Cbrt => "cbrt",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "naive" => Ok(Method::Naive),
            "sqrt" => Ok(Method::Sqrt),
            "cbrt" => Ok(Method::Cbrt),
            other => Err(format!("unknown method '{other}' (expected naive, sqrt or cbrt)")),
        }
    }
}

/// Tuning constants and method selection.
///
/// `c1` scales where region processing starts (`x_min ≈ c1·∛(2n)`); `c2` is
/// the width or height at or below which a region is summed column by
/// column. Neither affects the result, only the amount of work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub c1: u64,
    pub c2: u64,
    pub method: Method,
    pub use_divfree: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            c1: 10,
            c2: 10,
            method: Method::Cbrt,
            use_divfree: false,
        }
    }
}

impl Config {
    pub fn with_constants(c1: u64, c2: u64) -> Self {
        assert!(c1 >= 1 && c2 >= 1, "tuning constants must be positive");
        Config {
            c1,
            c2,
            ..Config::default()
        }
    }
}
