//! Piecewise range formulas for `d = 3, 4, 5` and the evidence scans behind them.

use rayon::prelude::*;
use serde::Serialize;

use super::alpha::alpha_closed_form;
use super::verdict::k_upper_bound;
use crate::error::{Error, Result};

/// Excluded lengths of the `d = 3` formula.
pub const QUTRIT_RANGE_EXCEPTIONS: [usize; 3] = [23, 37, 51];

/// Piecewise `d = 3` bound: `6m-1` on `[14m-4, 14m-1]`, `6m+1` on `[14m, 14m+4]`,
/// `6m+3` on `[14m+5, 14m+9]`, `m >= 1`.
pub fn qutrit_range_formula(n: usize) -> Result<usize> {
    if n < 10 || QUTRIT_RANGE_EXCEPTIONS.contains(&n) {
        return Err(Error::NotApplicable(format!(
            "the d = 3 range formula does not cover N = {n}"
        )));
    }
    let (m, r) = ((n + 4) / 14, (n + 4) % 14);
    Ok(match r {
        0..=3 => 6 * m - 1,
        4..=8 => 6 * m + 1,
        _ => 6 * m + 3,
    })
}

/// Index shift `s` such that `i = 6m + s` is the sign-test index for
/// `N = 14m + ℓ`.
pub fn qutrit_sign_shift(ell: i64) -> Result<usize> {
    match ell {
        -4..=-1 => Ok(0),
        0..=4 => Ok(2),
        5..=9 => Ok(4),
        _ => Err(Error::range("ell", ell, "-4..=9")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignFact {
    pub m: usize,
    pub ell: i64,
    pub n: usize,
    pub index: usize,
    /// `false` when the index exceeds `⌊N/2⌋`.
    pub applicable: bool,
    /// `(-1)^i α_i(N) < 0`; `i` is even here so this is `α_i(N) < 0`.
    pub fires: bool,
}

/// Sign of `α_{6m+s}(14m+ℓ)` over `1 <= m <= m_max`, `-4 <= ℓ <= 9`.
pub fn qutrit_sign_facts(m_max: usize) -> Result<Vec<SignFact>> {
    let grid: Vec<(usize, i64)> = (1..=m_max)
        .flat_map(|m| (-4..=9).map(move |l| (m, l)))
        .collect();
    grid.par_iter()
        .map(|&(m, ell)| {
            let n = (14 * m as i64 + ell) as usize;
            let index = 6 * m + qutrit_sign_shift(ell)?;
            let applicable = index <= n / 2;
            let fires = applicable && {
                let a = alpha_closed_form(n, 3, index)?;
                num_traits::Signed::is_negative(&a)
            };
            Ok(SignFact {
                m,
                ell,
                n,
                index,
                applicable,
                fires,
            })
        })
        .collect()
}

/// Conjectured piecewise bound for `d = 4` (`N >= 22`) and `d = 5` (`N >= 180`).
/// `None` outside the conjectured range, including the excluded `d = 4, N = 38`.
pub fn conjecture_formula(d: u32, n: usize) -> Result<Option<usize>> {
    match d {
        4 => {
            let (m, r) = ((n + 12) / 17, (n + 12) % 17);
            if m < 2 || n == 38 {
                return Ok(None);
            }
            Ok(Some(match r {
                0..=3 => 8 * m - 5,
                4..=7 => 8 * m - 3,
                8..=11 => 8 * m - 1,
                _ => 8 * m + 1,
            }))
        }
        5 => {
            let m = n / 4;
            Ok((m >= 45).then(|| 2 * m - 1))
        }
        _ => Err(Error::range("d", d, "4 or 5")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureRow {
    pub n: usize,
    pub formula: Option<usize>,
    pub computed: usize,
    /// `None` when the formula does not apply.
    pub agree: Option<bool>,
    /// `d = 4, N = 38`.
    pub exception: bool,
}

/// Tabulates the conjectured formula against [`k_upper_bound`].
pub fn conjecture_scan(
    d: u32,
    range: std::ops::RangeInclusive<usize>,
) -> Result<Vec<ConjectureRow>> {
    if !(4..=5).contains(&d) {
        return Err(Error::range("d", d, "4 or 5"));
    }
    let ns: Vec<usize> = range.collect();
    ns.par_iter()
        .map(|&n| {
            let formula = conjecture_formula(d, n)?;
            let computed = k_upper_bound(n, d)?.k_max;
            Ok(ConjectureRow {
                n,
                formula,
                computed,
                agree: formula.map(|f| f == computed),
                exception: d == 4 && n == 38,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qutrit_range_examples() {
        assert_eq!(qutrit_range_formula(28).unwrap(), 13);
        assert_eq!(qutrit_range_formula(88).unwrap(), 37);
        assert_eq!(qutrit_range_formula(10).unwrap(), 5);
        assert_eq!(qutrit_range_formula(24).unwrap(), 11);
        assert!(matches!(qutrit_range_formula(23), Err(Error::NotApplicable(_))));
        assert!(matches!(qutrit_range_formula(9), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn conjecture_examples() {
        assert_eq!(conjecture_formula(4, 77).unwrap(), Some(37));
        assert_eq!(conjecture_formula(4, 161).unwrap(), Some(75));
        assert_eq!(conjecture_formula(4, 38).unwrap(), None);
        assert_eq!(conjecture_formula(4, 21).unwrap(), None);
        assert_eq!(conjecture_formula(5, 183).unwrap(), Some(89));
        assert_eq!(conjecture_formula(5, 179).unwrap(), None);
        assert!(conjecture_formula(3, 10).is_err());
    }

    #[test]
    fn scan_flags_exception() {
        let rows = conjecture_scan(4, 36..=40).unwrap();
        let r38 = rows.iter().find(|r| r.n == 38).unwrap();
        assert!(r38.exception && r38.agree.is_none());
        assert!(conjecture_scan(3, 1..=2).is_err());
    }

    #[test]
    fn sign_facts_first_rows() {
        let facts = qutrit_sign_facts(1).unwrap();
        assert_eq!(facts.len(), 14);
        let f = facts.iter().find(|f| f.ell == -1).unwrap();
        assert_eq!((f.n, f.index), (13, 6));
        assert!(f.applicable && f.fires);
    }
}
