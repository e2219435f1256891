//! Closed forms for the extremal values.
//!
//! * `h(n, r)`: most zero-sum r-subsets of `n` nonzero integers.
//! * `g(n, r)`: most r-subsets sharing one sum, excluding the all-equal set.
//! * `h(n)`: most zero-sum subsets of any size (empty set included).
//! * `h_ord(n)`: most zero-sum contiguous runs of a sequence.
//!
//! `h(n, r)` is proven for `r <= 3` and `2r >= n`; for `4 <= r < n/2` the
//! value below is only the two-class construction, conjectured optimal.

use serde::Serialize;
use thiserror::Error;

use crate::numeric::{binomial, Count};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("{what}: invalid arguments n = {n}, r = {r} (need {need})")]
    BadArgs { what: &'static str, n: u64, r: u64, need: &'static str },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaStatus {
    Exact,
    LowerBoundConjecturedExact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaValue {
    pub value: Count,
    pub status: FormulaStatus,
}

impl FormulaValue {
    fn exact(value: Count) -> Self {
        FormulaValue { value, status: FormulaStatus::Exact }
    }

    pub fn is_exact(&self) -> bool {
        self.status == FormulaStatus::Exact
    }
}

/// Which regime of `h(n, r)` applies; also names the result in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HRegime {
    /// `floor(n^2 / 4)`.
    Pairs,
    /// `floor(n/3) * C(n - floor(n/3), 2)`.
    Triples,
    /// `C(n-1, r-1)` for `2r > n`.
    LargeR,
    /// `2 C(n-2, r-1)` for `2r = n`.
    HalfR,
    /// `floor(n/r) * C(n - floor(n/r), r-1)`, conjectured.
    TwoClass,
}

impl HRegime {
    pub fn of(n: u64, r: u64) -> Result<HRegime, FormulaError> {
        if r < 2 || r + 1 > n {
            return Err(FormulaError::BadArgs { what: "h(n, r)", n, r, need: "2 <= r <= n - 1" });
        }
        Ok(match r {
            2 => HRegime::Pairs,
            3 => HRegime::Triples,
            _ if 2 * r > n => HRegime::LargeR,
            _ if 2 * r == n => HRegime::HalfR,
            _ => HRegime::TwoClass,
        })
    }

    pub fn describe(self) -> &'static str {
        match self {
            HRegime::Pairs => "r = 2: floor(n^2/4)",
            HRegime::Triples => "r = 3: floor(n/3) * C(n - floor(n/3), 2)",
            HRegime::LargeR => "r > n/2: C(n-1, r-1)",
            HRegime::HalfR => "r = n/2: 2 C(n-2, r-1)",
            HRegime::TwoClass => "4 <= r < n/2: floor(n/r) * C(n - floor(n/r), r-1)",
        }
    }
}

/// The two-class construction value `floor(n/r) * C(n - floor(n/r), r - 1)`.
pub fn two_class_value(n: u64, r: u64) -> Count {
    let k = n / r;
    binomial(n - k, r as i64 - 1) * k
}

pub fn h_formula(n: u64, r: u64) -> Result<FormulaValue, FormulaError> {
    Ok(match HRegime::of(n, r)? {
        HRegime::Pairs => FormulaValue::exact(Count::from(n * n / 4)),
        HRegime::Triples => FormulaValue::exact(two_class_value(n, 3)),
        HRegime::LargeR => FormulaValue::exact(binomial(n - 1, r as i64 - 1)),
        HRegime::HalfR => FormulaValue::exact(binomial(n - 2, r as i64 - 1) * 2),
        HRegime::TwoClass => {
            FormulaValue { value: two_class_value(n, r), status: FormulaStatus::LowerBoundConjecturedExact }
        }
    })
}

/// `g(n, r)` for `1 <= r <= n - 1`.
pub fn g_formula(n: u64, r: u64) -> Result<Count, FormulaError> {
    if r < 1 || r + 1 > n {
        return Err(FormulaError::BadArgs { what: "g(n, r)", n, r, need: "1 <= r <= n - 1" });
    }
    Ok(match (2 * r).cmp(&n) {
        std::cmp::Ordering::Less => binomial(n - 1, r as i64),
        std::cmp::Ordering::Equal => binomial(n - 2, r as i64 - 1) * 2,
        std::cmp::Ordering::Greater => binomial(n - 1, r as i64 - 1),
    })
}

/// `h(n) = C(n, floor(n/2))`.
pub fn h_all_formula(n: u64) -> Result<Count, FormulaError> {
    if n < 1 {
        return Err(FormulaError::BadArgs { what: "h(n)", n, r: 0, need: "n >= 1" });
    }
    Ok(binomial(n, (n / 2) as i64))
}

/// `h_ord(n) = floor(n^2 / 4)`.
pub fn h_ord_formula(n: u64) -> Result<Count, FormulaError> {
    if n < 1 {
        return Err(FormulaError::BadArgs { what: "h_ord(n)", n, r: 0, need: "n >= 1" });
    }
    Ok(Count::from(n as u128 * n as u128 / 4))
}
