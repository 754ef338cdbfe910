//! Weight-enumerator families of extremal singly even self-dual codes of
//! lengths 64 and 66, and recovery of the free parameter `β`.
//!
//! | family | `A₁₂`        | `A₁₄`          | shadow                                  | `β` range |
//! |--------|--------------|----------------|-----------------------------------------|-----------|
//! | W64,1  | `1312 + 16β` | `22016 − 64β`  | `y⁴ + (β−14)y⁸ + (3419−12β)y¹² + …`      | 14..=104  |
//! | W64,2  | `1312 + 16β` | `23040 − 64β`  | `βy⁸ + (3328−12β)y¹² + …`                | 0..=277   |
//! | W66,1  | `858 + 8β`   | `18678 − 24β`  | `βy⁹ + (10032−12β)y¹³ + …`               | 0..=778   |
//! | W66,2  | `1690`       | `7990`         | `y + 9680y¹³ + …`                        | —         |
//! | W66,3  | `858 + 8β`   | `18166 − 24β`  | `y⁵ + (β−14)y⁹ + (10123−12β)y¹³ + …`     | 14..=756  |
//!
//! The family is read off the minimum weight of the shadow; `β` comes from
//! `A₁₂`, and every other tabulated coefficient is checked against it.

use std::fmt;

use serde::Serialize;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::shadow::{parity_class, shadow, ParityClass, ShadowReport};
use crate::weights::low_weight_counts;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    W64_1,
    W64_2,
    W66_1,
    W66_2,
    W66_3,
}

impl Family {
    pub fn length(self) -> usize {
        match self {
            Family::W64_1 | Family::W64_2 => 64,
            _ => 66,
        }
    }

    /// The `i` of `W_{n,i}`.
    pub fn index(self) -> u8 {
        match self {
            Family::W64_1 | Family::W66_1 => 1,
            Family::W64_2 | Family::W66_2 => 2,
            Family::W66_3 => 3,
        }
    }

    pub fn from_parts(length: usize, index: u8) -> Option<Family> {
        match (length, index) {
            (64, 1) => Some(Family::W64_1),
            (64, 2) => Some(Family::W64_2),
            (66, 1) => Some(Family::W66_1),
            (66, 2) => Some(Family::W66_2),
            (66, 3) => Some(Family::W66_3),
            _ => None,
        }
    }

    /// Admissible `β` values, `None` for the fixed enumerator `W66,2`.
    pub fn beta_range(self) -> Option<(i64, i64)> {
        match self {
            Family::W64_1 => Some((14, 104)),
            Family::W64_2 => Some((0, 277)),
            Family::W66_1 => Some((0, 778)),
            Family::W66_2 => None,
            Family::W66_3 => Some((14, 756)),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{},{}", self.length(), self.index())
    }
}

/// A weight enumerator family with its parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EnumeratorClass {
    pub family: Family,
    pub beta: Option<i64>,
}

impl fmt::Display for EnumeratorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.beta {
            Some(b) => write!(f, "({}, β={b})", self.family),
            None => write!(f, "({})", self.family),
        }
    }
}

/// Numbers the classification was derived from.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationDetails {
    pub class: EnumeratorClass,
    pub min_weight: usize,
    pub a12: u64,
    pub a14: u64,
    pub shadow: ShadowReport,
}

/// Upper bound on the minimum weight of a self-dual code of length `n`.
pub fn rains_bound(n: usize) -> Result<usize> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "self-dual codes need even length, got {n}"
        )));
    }
    let base = 4 * (n / 24);
    Ok(if n % 24 == 22 { base + 6 } else { base + 4 })
}

pub fn classify_enumerator(code: &LinearCode) -> Result<EnumeratorClass> {
    Ok(classify_with_details(code)?.class)
}

pub fn classify_with_details(code: &LinearCode) -> Result<ClassificationDetails> {
    let n = code.n();
    if n != 64 && n != 66 {
        return Err(Error::Unclassifiable(format!("length {n} is not 64 or 66")));
    }
    if parity_class(code)? != ParityClass::SinglyEven {
        return Err(Error::Unclassifiable("code is doubly even".into()));
    }
    let counts = low_weight_counts(code, 14)?;
    let min_weight = (1..counts.len()).find(|&i| counts[i] > 0).unwrap_or(usize::MAX);
    if min_weight != rains_bound(n)? {
        return Err(Error::Unclassifiable(format!(
            "minimum weight {} is not extremal",
            if min_weight == usize::MAX { ">14".to_string() } else { min_weight.to_string() }
        )));
    }
    let a12 = counts[12];
    let a14 = counts[14];
    let sh = shadow(code)?;
    let s = |w: usize| sh.count(w).unwrap_or(0) as i64;
    let (a12i, a14i) = (a12 as i64, a14 as i64);

    let family = match (n, sh.min_weight) {
        (64, 4) => Family::W64_1,
        (64, 8) | (64, 12) => Family::W64_2,
        (66, 1) => Family::W66_2,
        (66, 5) => Family::W66_3,
        (66, 9) | (66, 13) => Family::W66_1,
        (_, m) => {
            return Err(Error::Unclassifiable(format!(
                "shadow minimum weight {m} does not identify a family"
            )))
        }
    };

    let beta = match family {
        Family::W64_1 | Family::W64_2 => exact_div(a12i - 1312, 16)?,
        Family::W66_1 | Family::W66_3 => exact_div(a12i - 858, 8)?,
        Family::W66_2 => 0,
    };

    // (description, observed, predicted)
    let checks: Vec<(&str, i64, i64)> = match family {
        Family::W64_1 => vec![
            ("A14", a14i, 22016 - 64 * beta),
            ("S4", s(4), 1),
            ("S8", s(8), beta - 14),
            ("S12", s(12), 3419 - 12 * beta),
        ],
        Family::W64_2 => vec![
            ("A14", a14i, 23040 - 64 * beta),
            ("S8", s(8), beta),
            ("S12", s(12), 3328 - 12 * beta),
        ],
        Family::W66_1 => vec![
            ("A14", a14i, 18678 - 24 * beta),
            ("S9", s(9), beta),
            ("S13", s(13), 10032 - 12 * beta),
        ],
        Family::W66_2 => vec![
            ("A12", a12i, 1690),
            ("A14", a14i, 7990),
            ("S1", s(1), 1),
            ("S13", s(13), 9680),
        ],
        Family::W66_3 => vec![
            ("A14", a14i, 18166 - 24 * beta),
            ("S5", s(5), 1),
            ("S9", s(9), beta - 14),
            ("S13", s(13), 10123 - 12 * beta),
        ],
    };
    for (what, got, want) in checks {
        if got != want {
            return Err(Error::Unclassifiable(format!(
                "{what} = {got} but {family} with β = {beta} predicts {want}"
            )));
        }
    }

    let beta = match family.beta_range() {
        None => None,
        Some((lo, hi)) => {
            if !(lo..=hi).contains(&beta) {
                return Err(Error::Unclassifiable(format!(
                    "β = {beta} outside {lo}..={hi} for {family}"
                )));
            }
            Some(beta)
        }
    };

    Ok(ClassificationDetails {
        class: EnumeratorClass { family, beta },
        min_weight,
        a12,
        a14,
        shadow: sh,
    })
}

fn exact_div(num: i64, den: i64) -> Result<i64> {
    if num % den != 0 {
        return Err(Error::Unclassifiable(format!(
            "β = {num}/{den} is not an integer"
        )));
    }
    Ok(num / den)
}
