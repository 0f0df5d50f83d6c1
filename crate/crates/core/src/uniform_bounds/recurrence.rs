//! Shipped three-term recurrences for the `d = 3` sign sums, checked numerically.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binom, fmt_rat, parse_rat, Rat};

const RECURRENCE_DATA: &str = include_str!("../../data/recurrences.txt");

/// Product of integer polynomials in `n`, each stored with ascending powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredPoly(pub Vec<Vec<BigInt>>);

impl FactoredPoly {
    pub fn eval(&self, n: i64) -> BigInt {
        let x = BigInt::from(n);
        self.0
            .iter()
            .map(|f| f.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c))
            .product()
    }

    fn parse(text: &str) -> Result<Self> {
        text.split('|')
            .map(|f| {
                let coeffs: Vec<BigInt> = f
                    .split_whitespace()
                    .map(|c| {
                        c.parse()
                            .map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))
                    })
                    .collect::<Result<_>>()?;
                if coeffs.is_empty() {
                    return Err(Error::Parse(format!("empty factor in {text:?}")));
                }
                Ok(coeffs)
            })
            .collect::<Result<_>>()
            .map(FactoredPoly)
    }
}

/// Summand families the specs can refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Summand {
    /// `p(n) = Σ_{j<i} (-2)^j [y^j](1-y)^{-(r+1)} C(2i-2-j, i-1)` with
    /// `N = 7n+ℓ`, `i = 3n+shift`, `r = N-2i`.
    AlphaSum,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceSpec {
    pub ell: i64,
    pub shift: i64,
    pub summand: Summand,
    /// Coefficient of `p(n+2)`.
    pub h2: FactoredPoly,
    /// Coefficient of `p(n+1)`.
    pub h1: FactoredPoly,
    /// Coefficient of `p(n)`.
    pub h0: FactoredPoly,
    pub initial_terms: Vec<(i64, Rat)>,
    /// All three coefficients are positive from this `n` on.
    pub positive_from: i64,
}

/// `[y^j] (1-y)^{-(r+1)}` for any integer `r`.
fn negative_binomial(r: i64, j: i64) -> BigInt {
    if r >= 0 {
        binom((j + r) as u64, r)
    } else {
        let v = binom((-r - 1) as u64, j);
        if j % 2 == 1 {
            -v
        } else {
            v
        }
    }
}

impl RecurrenceSpec {
    /// `p(n)` by direct summation.
    pub fn term(&self, n: i64) -> BigInt {
        match self.summand {
            Summand::AlphaSum => {
                let i = 3 * n + self.shift;
                let r = 7 * n + self.ell - 2 * i;
                let mut acc = BigInt::zero();
                let mut pw = BigInt::one();
                for j in 0..i.max(0) {
                    let c = binom((2 * i - 2 - j) as u64, i - 1);
                    acc += &pw * negative_binomial(r, j) * c;
                    pw *= -2;
                }
                acc
            }
        }
    }

    /// Does the recurrence hold at `n`?
    pub fn holds_at(&self, n: i64) -> bool {
        self.h2.eval(n) * self.term(n + 2)
            == self.h1.eval(n) * self.term(n + 1) + self.h0.eval(n) * self.term(n)
    }
}

/// Parses every block of the data format.
pub fn parse_specs(text: &str) -> Result<Vec<RecurrenceSpec>> {
    #[derive(Default)]
    struct Partial {
        ell: Option<i64>,
        shift: Option<i64>,
        summand: Option<Summand>,
        h: [Option<FactoredPoly>; 3],
        init: Vec<(i64, Rat)>,
        positive_from: Option<i64>,
    }
    let mut out = Vec::new();
    let mut cur: Option<Partial> = None;
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let bad =
            |why: &str| Error::Parse(format!("recurrence data line {}: {why}: {raw:?}", no + 1));
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let int = |s: &str| s.parse::<i64>().map_err(|_| bad("expected an integer"));
        if key == "ell" {
            if cur.is_some() {
                return Err(bad("block not closed"));
            }
            cur = Some(Partial {
                ell: Some(int(rest)?),
                ..Default::default()
            });
            continue;
        }
        let p = cur.as_mut().ok_or_else(|| bad("outside a block"))?;
        match key {
            "shift" => p.shift = Some(int(rest)?),
            "summand" => match rest {
                "alpha-sum" => p.summand = Some(Summand::AlphaSum),
                _ => return Err(bad("unknown summand")),
            },
            "init" => {
                let (n, v) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| bad("init"))?;
                p.init.push((int(n)?, parse_rat(v)?));
            }
            "h2" | "h1" | "h0" => {
                let idx = (b'2' - key.as_bytes()[1]) as usize;
                p.h[idx] = Some(FactoredPoly::parse(rest)?);
            }
            "positive_from" => p.positive_from = Some(int(rest)?),
            "end" => {
                let p = cur.take().unwrap();
                let missing = |what: &str| bad(&format!("block without {what}"));
                let [h2, h1, h0] = p.h;
                out.push(RecurrenceSpec {
                    ell: p.ell.unwrap(),
                    shift: p.shift.ok_or_else(|| missing("shift"))?,
                    summand: p.summand.ok_or_else(|| missing("summand"))?,
                    h2: h2.ok_or_else(|| missing("h2"))?,
                    h1: h1.ok_or_else(|| missing("h1"))?,
                    h0: h0.ok_or_else(|| missing("h0"))?,
                    initial_terms: p.init,
                    positive_from: p.positive_from.ok_or_else(|| missing("positive_from"))?,
                });
            }
            _ => return Err(bad("unknown key")),
        }
    }
    if cur.is_some() {
        return Err(Error::Parse("recurrence data ends inside a block".into()));
    }
    Ok(out)
}

/// The 14 bundled specs, `ℓ = -4..=9`.
pub fn bundled_specs() -> &'static [RecurrenceSpec] {
    static SPECS: OnceLock<Vec<RecurrenceSpec>> = OnceLock::new();
    SPECS.get_or_init(|| parse_specs(RECURRENCE_DATA).expect("bundled recurrence data"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InitialMismatch {
    pub n: i64,
    pub expected: String,
    pub computed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecurrenceReport {
    pub ell: i64,
    pub n_max: i64,
    /// Values of `n` where the recurrence fails, ascending.
    pub recurrence_failures: Vec<i64>,
    pub initial_mismatches: Vec<InitialMismatch>,
    /// Values of `n >= positive_from` where some coefficient is not positive.
    pub positivity_failures: Vec<i64>,
}

impl RecurrenceReport {
    pub fn passed(&self) -> bool {
        self.recurrence_failures.is_empty()
            && self.initial_mismatches.is_empty()
            && self.positivity_failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<i64> {
        self.recurrence_failures.first().copied()
    }
}

/// Checks the recurrence for `0 <= n <= n_max`, the initial terms, and
/// positivity of the coefficients from `positive_from` to `n_max`.
pub fn verify_recurrence(spec: &RecurrenceSpec, n_max: i64) -> RecurrenceReport {
    let recurrence_failures = (0..=n_max).filter(|&n| !spec.holds_at(n)).collect();
    let initial_mismatches = spec
        .initial_terms
        .iter()
        .filter_map(|(n, v)| {
            let got = Rat::from_integer(spec.term(*n));
            (got != *v).then(|| InitialMismatch {
                n: *n,
                expected: fmt_rat(v),
                computed: fmt_rat(&got),
            })
        })
        .collect();
    let positivity_failures = (spec.positive_from..=n_max)
        .filter(|&n| {
            [&spec.h2, &spec.h1, &spec.h0]
                .iter()
                .any(|h| !h.eval(n).is_positive())
        })
        .collect();
    RecurrenceReport {
        ell: spec.ell,
        n_max,
        recurrence_failures,
        initial_mismatches,
        positivity_failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn spec(ell: i64) -> &'static RecurrenceSpec {
        bundled_specs().iter().find(|s| s.ell == ell).unwrap()
    }

    #[test]
    fn bundled_blocks() {
        let ells: Vec<i64> = bundled_specs().iter().map(|s| s.ell).collect();
        assert_eq!(ells, (-4..=9).collect::<Vec<_>>());
    }

    #[test]
    fn known_terms() {
        let s = spec(-1);
        assert_eq!(s.term(1), BigInt::from(4));
        assert_eq!(s.term(2), BigInt::from(36));
        let s = spec(-2);
        let got: Vec<BigInt> = (1..=4).map(|n| s.term(n)).collect();
        assert_eq!(got, [6, 120, 3150, 80304].map(BigInt::from));
        assert_eq!(s.initial_terms.len(), 4);
    }

    #[test]
    fn factored_eval() {
        let p = FactoredPoly::parse("2 | -1 1 | 0 0 3").unwrap();
        // 2 (n - 1) 3n^2 at n = 4
        assert_eq!(p.eval(4), BigInt::from(2 * 3 * 48));
        assert!(FactoredPoly::parse("1 | ").is_err());
    }

    #[test]
    fn small_report() {
        let r = verify_recurrence(spec(-1), 12);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn corrupted_coefficient_is_reported() {
        let mut s = spec(-1).clone();
        s.h0.0[0][0] += 1;
        let r = verify_recurrence(&s, 10);
        assert!(!r.passed());
        // p(0) = 0 for this block, so n = 0 cannot see the change
        assert_eq!(r.first_failure(), Some(1));
        let mut s = spec(-2).clone();
        s.initial_terms[2].1 = rat(3151, 1);
        let r = verify_recurrence(&s, 5);
        assert_eq!(r.initial_mismatches.len(), 1);
        assert_eq!(r.initial_mismatches[0].n, 3);
    }

    #[test]
    fn malformed_data() {
        assert!(parse_specs("shift 0\n").is_err());
        assert!(parse_specs("ell 1\nshift 0\nend\n").is_err());
        assert!(parse_specs("ell 1\nshift 0\n").is_err());
    }
}
