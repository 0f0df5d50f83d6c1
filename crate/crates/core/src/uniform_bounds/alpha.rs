//! The coefficients `α_i(N)`: the value of `c_i` forced by `a_0 = 1`,
//! `a_1 = ... = a_{⌊N/2⌋} = 0`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::enumerators::{a_to_c, WeightEnumerator};
use crate::error::{Error, Result};
use crate::exact::{serde_rat, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaCoefficient {
    pub n_parties: usize,
    pub local_dim: u32,
    pub index: usize,
    #[serde(with = "serde_rat")]
    pub value: Rat,
}

fn check(n: usize, d: u32, i: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::range("N", n, "N >= 1"));
    }
    if d < 2 {
        return Err(Error::range("d", d, "d >= 2"));
    }
    if i > n / 2 {
        return Err(Error::range("i", i, format!("0..={}", n / 2)));
    }
    Ok(())
}

/// Integer part `Σ_{j<i} (1-d)^j C(N-2i+j, N-2i) C(2i-2-j, i-1)`, with both
/// binomials updated incrementally along `j`.
fn alpha_sum(n: usize, d: u32, i: usize) -> BigInt {
    let r = (n - 2 * i) as u64;
    let top = (2 * i - 2) as u64;
    let kk = (i - 1) as u64;
    let step = BigInt::from(1i64 - d as i64);
    let mut first = BigInt::one(); // C(r + j, r)
    let mut second = crate::exact::binom(top, kk as i64); // C(2i-2-j, i-1)
    let mut pw = BigInt::one();
    let mut acc = BigInt::zero();
    for j in 0..i as u64 {
        acc += &pw * &first * &second;
        if j + 1 == i as u64 {
            break;
        }
        first *= r + j + 1;
        first /= j + 1;
        let m = top - j;
        second *= m - kk;
        second /= m;
        pw *= &step;
    }
    acc
}

fn alpha_unchecked(n: usize, d: u32, i: usize) -> Rat {
    if i == 0 {
        return Rat::one();
    }
    let scale = Rat::new(BigInt::from(n as u64 * (d as u64 - 1)), BigInt::from(i));
    -(scale * Rat::from_integer(alpha_sum(n, d, i)))
}

/// `α_i(N)` from the closed form.
pub fn alpha_closed_form(n: usize, d: u32, i: usize) -> Result<Rat> {
    check(n, d, i)?;
    Ok(alpha_unchecked(n, d, i))
}

/// `α_i(N)` by forward substitution in the invariant basis; independent of the
/// closed form.
pub fn alpha_oracle(n: usize, d: u32, i: usize) -> Result<Rat> {
    check(n, d, i)?;
    Ok(alpha_oracle_vector(n, d)?.swap_remove(i))
}

/// All of `α_0(N)..α_{⌊N/2⌋}(N)` by forward substitution.
pub fn alpha_oracle_vector(n: usize, d: u32) -> Result<Vec<Rat>> {
    check(n, d, 0)?;
    let mut a = vec![Rat::zero(); n + 1];
    a[0] = Rat::one();
    let c = a_to_c(&WeightEnumerator::new(n, d, a)?);
    Ok(c.coeffs().to_vec())
}

/// All of `α_0(N)..α_{⌊N/2⌋}(N)` from the closed form.
pub fn alpha_vector(n: usize, d: u32) -> Result<Vec<Rat>> {
    check(n, d, 0)?;
    Ok((0..=n / 2).map(|i| alpha_unchecked(n, d, i)).collect())
}

/// True when `(-1)^i α < 0`.
pub fn sign_test_fires(i: usize, alpha: &Rat) -> bool {
    if i.is_multiple_of(2) {
        alpha.is_negative()
    } else {
        alpha.is_positive()
    }
}

/// Smallest `i ≥ 1` with `(-1)^i α_i(N) < 0`, together with the witness value.
/// Stops at the first hit.
pub fn first_sign_violation(n: usize, d: u32) -> Result<Option<AlphaCoefficient>> {
    check(n, d, 0)?;
    for i in 1..=n / 2 {
        let value = alpha_unchecked(n, d, i);
        if sign_test_fires(i, &value) {
            return Ok(Some(AlphaCoefficient {
                n_parties: n,
                local_dim: d,
                index: i,
                value,
            }));
        }
    }
    Ok(None)
}
