//! Cross-validation suites behind `kuniform verify`.

use clap::ValueEnum;
use kuniform::hetero::{ame_purities, hetero_shadow, DimensionProfile};
use kuniform::oracle::shadow_from_purities;
use kuniform::uniform_bounds::{
    alpha_closed_form, alpha_oracle_vector, bundled_specs, verify_recurrence,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::{Output, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Closed-form alpha against the triangular solve, N <= 60, d = 2..5
    Alpha,
    /// Bundled three-term recurrences, n <= 30
    Recurrence,
    /// Closed-form heterogeneous shadow against the subset sum, odd N <= 11, dims <= 4
    ShadowOracle,
}

pub const ALPHA_MAX_N: usize = 60;
pub const RECURRENCE_MAX_N: i64 = 30;
pub const SHADOW_MAX_N: usize = 11;

#[derive(Serialize)]
struct Report {
    suite: &'static str,
    checked: usize,
    failures: Vec<String>,
}

fn alpha() -> Report {
    let grid: Vec<(u32, usize)> = (2..=5)
        .flat_map(|d| (1..=ALPHA_MAX_N).map(move |n| (d, n)))
        .collect();
    let results: Vec<(usize, Vec<String>)> = grid
        .par_iter()
        .map(|&(d, n)| {
            let oracle = match alpha_oracle_vector(n, d) {
                Ok(v) => v,
                Err(e) => return (0, vec![format!("N = {n}, d = {d}: {e}")]),
            };
            let bad = oracle
                .iter()
                .enumerate()
                .filter(|(i, v)| alpha_closed_form(n, d, *i).ok().as_ref() != Some(*v))
                .map(|(i, _)| format!("alpha_{i}(N = {n}), d = {d}"))
                .collect();
            (oracle.len(), bad)
        })
        .collect();
    Report {
        suite: "alpha",
        checked: results.iter().map(|r| r.0).sum(),
        failures: results.into_iter().flat_map(|r| r.1).collect(),
    }
}

fn recurrence() -> Report {
    let specs = bundled_specs();
    let failures = specs
        .iter()
        .map(|s| verify_recurrence(s, RECURRENCE_MAX_N))
        .filter(|r| !r.passed())
        .map(|r| {
            format!(
                "ell = {}: first failure at n = {:?}",
                r.ell,
                r.first_failure()
            )
        })
        .collect();
    Report {
        suite: "recurrence",
        checked: specs.len(),
        failures,
    }
}

fn multisets(len: usize, dims: &[u32]) -> Vec<Vec<u32>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &d) in dims.iter().enumerate() {
        for mut rest in multisets(len - 1, &dims[i..]) {
            rest.insert(0, d);
            out.push(rest);
        }
    }
    out
}

fn shadow_oracle() -> Report {
    let profiles: Vec<Vec<u32>> = (3..=SHADOW_MAX_N)
        .step_by(2)
        .flat_map(|n| multisets(n, &[2, 3, 4]))
        .collect();
    let failures = profiles
        .par_iter()
        .filter_map(|dims| {
            let check = || -> kuniform::Result<bool> {
                let p = DimensionProfile::new(dims.clone())?;
                let direct = shadow_from_purities(p.n_parties(), &ame_purities(&p)?)?;
                Ok(hetero_shadow(&p)?.s == direct)
            };
            match check() {
                Ok(true) => None,
                Ok(false) => Some(format!("{dims:?}: values differ")),
                Err(e) => Some(format!("{dims:?}: {e}")),
            }
        })
        .collect();
    Report {
        suite: "shadow-oracle",
        checked: profiles.len(),
        failures,
    }
}

pub fn run(suite: Suite) -> Output {
    let report = match suite {
        Suite::Alpha => alpha(),
        Suite::Recurrence => recurrence(),
        Suite::ShadowOracle => shadow_oracle(),
    };
    let status = if report.failures.is_empty() {
        Status::Ok
    } else {
        Status::Error
    };
    let mut out = Output::json(status, &report);
    if !report.failures.is_empty() {
        out.payload["message"] = format!("{} check(s) failed", report.failures.len()).into();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(3, &[2, 3, 4]).len(), 10);
        assert_eq!(multisets(0, &[2]).len(), 1);
    }

    #[test]
    fn recurrence_suite_passes() {
        let r = recurrence();
        assert!(r.failures.is_empty(), "{:?}", r.failures);
        assert_eq!(r.checked, 14);
    }
}
