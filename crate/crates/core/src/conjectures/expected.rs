//! Closed-form Betti tables of general canonical and paracanonical curves.

use super::ConjectureError;
use crate::gring::binomial;
use crate::koszul::BettiDiagram;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    CanonicalOdd,
    CanonicalEven,
    ParacanonicalOdd,
    ParacanonicalEven,
}

impl Family {
    pub const ALL: [Family; 4] =
        [Family::CanonicalOdd, Family::CanonicalEven, Family::ParacanonicalOdd, Family::ParacanonicalEven];

    pub fn is_canonical(self) -> bool {
        matches!(self, Family::CanonicalOdd | Family::CanonicalEven)
    }

    /// The family a genus belongs to.
    pub fn for_genus(canonical: bool, g: usize) -> Family {
        match (canonical, g % 2 == 1) {
            (true, true) => Family::CanonicalOdd,
            (true, false) => Family::CanonicalEven,
            (false, true) => Family::ParacanonicalOdd,
            (false, false) => Family::ParacanonicalEven,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::CanonicalOdd => "canonical-odd",
            Family::CanonicalEven => "canonical-even",
            Family::ParacanonicalOdd => "paracanonical-odd",
            Family::ParacanonicalEven => "paracanonical-even",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family {s:?}"))
    }
}

/// One predicted entry with the arithmetic that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaValue {
    pub p: usize,
    pub q: usize,
    pub value: u64,
    pub formula: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedTable {
    pub family: Family,
    pub genus: usize,
    /// Degree of the embedding line bundle, `2g - 2`.
    pub degree: usize,
    pub diagram: BettiDiagram,
    pub formulas: Vec<FormulaValue>,
}

/// `num / den * C(n, k)` as an exact nonnegative integer.
fn exact(p: usize, q: usize, num: i64, den: i64, n: i64, k: i64) -> Result<FormulaValue, ConjectureError> {
    let total = num as i128 * binomial(n, k) as i128;
    if den <= 0 || total % den as i128 != 0 || total < 0 {
        return Err(ConjectureError::NotIntegral { p, q, num: total as i64, den });
    }
    Ok(FormulaValue {
        p,
        q,
        value: (total / den as i128) as u64,
        formula: format!("{num}/{den}·C({n},{k})"),
    })
}

/// Predicted table over the full window `p <= r`, `q <= 3`, where `r + 1`
/// is the number of sections (`g` canonical, `g - 1` paracanonical).
pub fn expected_table(family: Family, g: usize) -> Result<ExpectedTable, ConjectureError> {
    let odd = g % 2 == 1;
    let wants_odd = matches!(family, Family::CanonicalOdd | Family::ParacanonicalOdd);
    if odd != wants_odd {
        return Err(ConjectureError::ParityMismatch { family, genus: g });
    }
    let min_genus = if family.is_canonical() { 3 } else { 5 };
    if g < min_genus {
        return Err(ConjectureError::GenusTooSmall { family, genus: g, min: min_genus });
    }
    let gi = g as i64;
    let mut f = Vec::new();
    match family {
        Family::CanonicalOdd => {
            let i = (gi - 3) / 2;
            for p in 1..=i {
                f.push(exact(p as usize, 1, (2 * i + 2 - p) * (2 * i - 2 * p + 2), p + 1, 2 * i + 2, p - 1)?);
            }
            for p in i + 1..=2 * i {
                f.push(exact(p as usize, 2, (2 * i + 1 - p) * (2 * p - 2 * i), p + 2, 2 * i + 2, p)?);
            }
        }
        Family::CanonicalEven => {
            let i = (gi - 2) / 2;
            for p in 1..=i {
                f.push(exact(p as usize, 1, (2 * i - p + 1) * (2 * i - 2 * p + 1), p + 1, 2 * i + 1, p - 1)?);
            }
            for p in i..=2 * i - 1 {
                f.push(exact(p as usize, 2, (2 * i - p) * (2 * p - 2 * i + 1), p + 2, 2 * i + 1, p)?);
            }
        }
        Family::ParacanonicalOdd => {
            let i = (gi - 5) / 2;
            for p in 1..=i {
                f.push(exact(p as usize, 1, p * (2 * i - 2 * p + 1), 2 * i + 3, 2 * i + 4, p + 1)?);
            }
            for p in i..=2 * i + 2 {
                f.push(exact(p as usize, 2, (p + 1) * (2 * p - 2 * i + 1), 2 * i + 3, 2 * i + 4, p + 2)?);
            }
        }
        Family::ParacanonicalEven => {
            let i = (gi - 6) / 2;
            for p in 1..=i {
                f.push(exact(p as usize, 1, p * (i + 1 - p), i + 2, 2 * i + 5, p + 1)?);
            }
            for p in i + 1..=2 * i + 3 {
                f.push(exact(p as usize, 2, (p + 1) * (p - i), i + 2, 2 * i + 5, p + 2)?);
            }
        }
    }
    let num_vars = if family.is_canonical() { g } else { g - 1 };
    let r = num_vars - 1;
    let mut entries: Vec<((usize, usize), u64)> = vec![((0, 0), 1)];
    if family.is_canonical() {
        entries.push(((g - 2, 3), 1));
    }
    entries.extend(f.iter().map(|v| ((v.p, v.q), v.value)));
    Ok(ExpectedTable {
        family,
        genus: g,
        degree: 2 * g - 2,
        diagram: BettiDiagram::from_entries(num_vars, r, 3, entries),
        formulas: f,
    })
}
