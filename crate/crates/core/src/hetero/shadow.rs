//! Shadow coefficients of a hypothetical AME state with odd `N`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::DimensionProfile;
use crate::error::{Error, Result};
use crate::exact::{binom, elem_sym, serde_rat_vec, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeteroShadow {
    pub profile: DimensionProfile,
    #[serde(with = "serde_rat_vec")]
    pub a_prime: Vec<Rat>,
    #[serde(with = "serde_rat_vec")]
    pub s: Vec<Rat>,
}

impl HeteroShadow {
    /// First `j` with `s_j < 0`.
    pub fn first_negative(&self) -> Option<(usize, &Rat)> {
        self.s.iter().enumerate().find(|(_, v)| v.is_negative())
    }

    pub fn all_nonnegative(&self) -> bool {
        self.first_negative().is_none()
    }

    pub fn min(&self) -> &Rat {
        self.s.iter().min().expect("N >= 2")
    }
}

/// `Σ_α (-1)^α C(N-k, N-j-α) C(k, α)`.
fn kernel(n: usize, j: usize, k: usize) -> BigInt {
    let lo = k.saturating_sub(j);
    let hi = k.min(n - j);
    let mut acc = BigInt::zero();
    for a in lo..=hi {
        let t = binom((n - k) as u64, (n - j - a) as i64) * binom(k as u64, a as i64);
        if a % 2 == 1 {
            acc -= t;
        } else {
            acc += t;
        }
    }
    acc
}

/// `A'_k` and `s_j` for an AME state in an odd-`N` profile.
pub fn hetero_shadow(profile: &DimensionProfile) -> Result<HeteroShadow> {
    let n = profile.n_parties();
    if n.is_multiple_of(2) {
        return Err(Error::NotApplicable(format!(
            "the heterogeneous shadow coefficients need odd N, got N = {n}"
        )));
    }
    let recips: Vec<Rat> = profile
        .dims()
        .iter()
        .map(|&d| Rat::new(BigInt::one(), BigInt::from(d)))
        .collect();
    let mut a_prime = vec![Rat::zero(); n + 1];
    for k in 0..=(n - 1) / 2 {
        let v = elem_sym(&recips, k)?;
        a_prime[n - k] = v.clone();
        a_prime[k] = v;
    }
    debug_assert!((0..=n).all(|k| a_prime[k] == a_prime[n - k]));
    let s = (0..=n)
        .map(|j| {
            (0..=n)
                .map(|k| Rat::from_integer(kernel(n, j, k)) * &a_prime[k])
                .sum()
        })
        .collect();
    Ok(HeteroShadow {
        profile: profile.clone(),
        a_prime,
        s,
    })
}

/// Purities `Tr ρ_S²` of an AME state, indexed by the bitmask of `S`: the
/// reduction to any set of at most `⌊N/2⌋` parties is maximally mixed, and a
/// larger set has the purity of its complement.
pub fn ame_purities(profile: &DimensionProfile) -> Result<Vec<Rat>> {
    let n = profile.n_parties();
    if n > 24 {
        return Err(Error::range("N", n, "N <= 24 for subset enumeration"));
    }
    let full = (1usize << n) - 1;
    Ok((0..=full)
        .map(|mask| {
            let small = if (mask.count_ones() as usize) <= n / 2 {
                mask
            } else {
                full ^ mask
            };
            let dim = (0..n)
                .filter(|i| small >> i & 1 == 1)
                .fold(BigInt::one(), |acc, i| acc * profile.dims()[i]);
            Rat::new(BigInt::one(), dim)
        })
        .collect())
}
