//! Weight-enumerator algebra for homogeneous systems `(C^d)^{⊗N}`.
//!
//! Every enumerator is a homogeneous polynomial of degree `N` in `x, y`; we store
//! the coefficient of `x^{N-j} y^j` at index `j`, which is the same as working with
//! the dehomogenized polynomial in `y` at `x = 1`. All substitutions are done by
//! exact expansion of powers of linear forms.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binom, ipow, serde_rat_vec, Rat};

/// Wire form shared by [`WeightEnumerator`] and [`ShadowEnumerator`]:
/// `{"n": N, "d": d, "coeffs": ["p/q", ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnumeratorRecord {
    pub n: usize,
    pub d: u32,
    #[serde(with = "serde_rat_vec")]
    pub coeffs: Vec<Rat>,
}

fn check_shape(n: usize, d: u32, len: usize, expected: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::range("N", n, "N >= 1"));
    }
    if d < 2 {
        return Err(Error::range("d", d, "d >= 2"));
    }
    if len != expected {
        return Err(Error::Invalid(format!(
            "{what} for N = {n} needs {expected} coefficients, got {len}"
        )));
    }
    Ok(())
}

macro_rules! homogeneous_enumerator {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
        #[serde(try_from = "EnumeratorRecord", into = "EnumeratorRecord")]
        pub struct $name {
            n_parties: usize,
            local_dim: u32,
            coeffs: Vec<Rat>,
        }

        impl $name {
            pub fn new(n_parties: usize, local_dim: u32, coeffs: Vec<Rat>) -> Result<Self> {
                check_shape(
                    n_parties,
                    local_dim,
                    coeffs.len(),
                    n_parties + 1,
                    stringify!($name),
                )?;
                Ok($name {
                    n_parties,
                    local_dim,
                    coeffs,
                })
            }

            pub fn n_parties(&self) -> usize {
                self.n_parties
            }

            pub fn local_dim(&self) -> u32 {
                self.local_dim
            }

            pub fn coeffs(&self) -> &[Rat] {
                &self.coeffs
            }

            pub fn into_coeffs(self) -> Vec<Rat> {
                self.coeffs
            }
        }

        impl TryFrom<EnumeratorRecord> for $name {
            type Error = Error;
            fn try_from(r: EnumeratorRecord) -> Result<Self> {
                $name::new(r.n, r.d, r.coeffs)
            }
        }

        impl From<$name> for EnumeratorRecord {
            fn from(e: $name) -> Self {
                EnumeratorRecord {
                    n: e.n_parties,
                    d: e.local_dim,
                    coeffs: e.coeffs,
                }
            }
        }
    };
}

homogeneous_enumerator!(
    WeightEnumerator,
    "Shor–Laflamme enumerator `A(x,y) = Σ_j a_j x^{N-j} y^j`."
);
homogeneous_enumerator!(
    ShadowEnumerator,
    "Shadow enumerator `S(x,y) = Σ_j s_j x^{N-j} y^j`."
);

/// Coordinates `c_0..c_{⌊N/2⌋}` of `A(x,y)` in the MacWilliams-invariant basis
/// `(x+(d-1)y)^{N-2i} (y(x-y))^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantBasisCoeffs {
    n_parties: usize,
    local_dim: u32,
    coeffs: Vec<Rat>,
}

impl InvariantBasisCoeffs {
    pub fn new(n_parties: usize, local_dim: u32, coeffs: Vec<Rat>) -> Result<Self> {
        check_shape(
            n_parties,
            local_dim,
            coeffs.len(),
            n_parties / 2 + 1,
            "InvariantBasisCoeffs",
        )?;
        Ok(InvariantBasisCoeffs {
            n_parties,
            local_dim,
            coeffs,
        })
    }

    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    pub fn local_dim(&self) -> u32 {
        self.local_dim
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }
}

/// The nonzero shadow coefficients `b_j = s_{2j+t}`, `t ≡ N (mod 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowCompressed {
    n_parties: usize,
    coeffs: Vec<Rat>,
}

impl ShadowCompressed {
    pub fn new(n_parties: usize, coeffs: Vec<Rat>) -> Result<Self> {
        check_shape(
            n_parties,
            2,
            coeffs.len(),
            n_parties / 2 + 1,
            "ShadowCompressed",
        )?;
        Ok(ShadowCompressed { n_parties, coeffs })
    }

    /// Reads `b_j = s_{2j+t}` off a full shadow enumerator. The remaining
    /// coefficients are not inspected.
    pub fn from_shadow(s: &ShadowEnumerator) -> Self {
        let n = s.n_parties();
        let t = n % 2;
        ShadowCompressed {
            n_parties: n,
            coeffs: (0..=n / 2).map(|j| s.coeffs()[2 * j + t].clone()).collect(),
        }
    }

    pub fn n_parties(&self) -> usize {
        self.n_parties
    }

    pub fn parity(&self) -> usize {
        self.n_parties % 2
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }
}

fn poly_mul(p: &[BigInt], q: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Coefficients of `(c0 + c1 y)^e` for `e = 0..=max`.
fn linear_powers(c0: i64, c1: i64, max: usize) -> Vec<Vec<BigInt>> {
    (0..=max)
        .map(|e| {
            (0..=e)
                .map(|j| binom(e as u64, j as i64) * ipow(c0, (e - j) as u32) * ipow(c1, j as u32))
                .collect()
        })
        .collect()
}

/// Column `j` holds the coefficients of `(p0 + p1 y)^{N-j} (q0 + q1 y)^j`.
fn substitution_columns(n: usize, p: (i64, i64), q: (i64, i64)) -> Vec<Vec<BigInt>> {
    let pp = linear_powers(p.0, p.1, n);
    let qp = linear_powers(q.0, q.1, n);
    (0..=n).map(|j| poly_mul(&pp[n - j], &qp[j])).collect()
}

fn apply_columns(cols: &[Vec<BigInt>], coeffs: &[Rat], scale: &BigInt) -> Vec<Rat> {
    let n = coeffs.len() - 1;
    let mut out = vec![Rat::zero(); n + 1];
    for (col, a) in cols.iter().zip(coeffs) {
        if a.is_zero() {
            continue;
        }
        for (r, k) in col.iter().enumerate() {
            if !k.is_zero() {
                out[r] += a * Rat::from_integer(k.clone());
            }
        }
    }
    let scale = Rat::from_integer(scale.clone());
    out.into_iter().map(|v| v / &scale).collect()
}

/// `A((x + (d²-1)y)/d, (x - y)/d)`.
pub fn macwilliams_transform(a: &WeightEnumerator) -> WeightEnumerator {
    let (n, d) = (a.n_parties, a.local_dim as i64);
    let cols = substitution_columns(n, (1, d * d - 1), (1, -1));
    WeightEnumerator {
        n_parties: n,
        local_dim: a.local_dim,
        coeffs: apply_columns(&cols, &a.coeffs, &ipow(d, n as u32)),
    }
}

/// `S(x,y) = A(((d-1)x + (d+1)y)/d, (y - x)/d)`.
pub fn shadow_transform(a: &WeightEnumerator) -> ShadowEnumerator {
    let (n, d) = (a.n_parties, a.local_dim as i64);
    let cols = substitution_columns(n, (d - 1, d + 1), (-1, 1));
    ShadowEnumerator {
        n_parties: n,
        local_dim: a.local_dim,
        coeffs: apply_columns(&cols, &a.coeffs, &ipow(d, n as u32)),
    }
}

/// Coefficients (in `y`, length `N+1`) of the basis element
/// `y^i (1 + (d-1)y)^{N-2i} (1-y)^i`.
pub(crate) fn basis_polynomial(n: usize, d: u32, i: usize) -> Vec<BigInt> {
    let front = linear_powers(1, d as i64 - 1, n - 2 * i).pop().unwrap();
    let back = linear_powers(1, -1, i).pop().unwrap();
    let mut out = vec![BigInt::zero(); i];
    out.extend(poly_mul(&front, &back));
    debug_assert_eq!(out.len(), n + 1);
    out
}

/// Forward substitution through the unitriangular system relating `a_0..a_{⌊N/2⌋}`
/// to `c_0..c_{⌊N/2⌋}`. Coefficients above `⌊N/2⌋` are ignored.
pub fn a_to_c(a: &WeightEnumerator) -> InvariantBasisCoeffs {
    let (n, d) = (a.n_parties, a.local_dim);
    let p = n / 2;
    let basis: Vec<Vec<BigInt>> = (0..=p).map(|i| basis_polynomial(n, d, i)).collect();
    let mut c: Vec<Rat> = Vec::with_capacity(p + 1);
    for j in 0..=p {
        let mut cj = a.coeffs[j].clone();
        for (i, ci) in c.iter().enumerate() {
            let m = &basis[i][j];
            if !m.is_zero() {
                cj -= ci * Rat::from_integer(m.clone());
            }
        }
        debug_assert!(basis[j][j].is_one());
        c.push(cj);
    }
    InvariantBasisCoeffs {
        n_parties: n,
        local_dim: d,
        coeffs: c,
    }
}

/// Expands `Σ_i c_i (x+(d-1)y)^{N-2i} (y(x-y))^i`.
pub fn c_to_a(c: &InvariantBasisCoeffs) -> WeightEnumerator {
    let (n, d) = (c.n_parties, c.local_dim);
    let mut a = vec![Rat::zero(); n + 1];
    for (i, ci) in c.coeffs.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        for (j, m) in basis_polynomial(n, d, i).into_iter().enumerate() {
            if !m.is_zero() {
                a[j] += ci * Rat::from_integer(m);
            }
        }
    }
    WeightEnumerator {
        n_parties: n,
        local_dim: d,
        coeffs: a,
    }
}

fn pow_rat(base: i64, exp: i64) -> Rat {
    let mag = Rat::from_integer(ipow(base, exp.unsigned_abs() as u32));
    if exp >= 0 {
        mag
    } else {
        mag.recip()
    }
}

/// `b_j = Σ_{m=0}^{j} 2^{2m+t} d^{-(p-m)} C(p-m, p-j) (-1)^{p-j} c_{p-m}`, `p = ⌊N/2⌋`.
pub fn c_to_b(c: &InvariantBasisCoeffs) -> ShadowCompressed {
    let n = c.n_parties;
    let d = c.local_dim as i64;
    let (p, t) = (n / 2, n % 2);
    let b = (0..=p)
        .map(|j| {
            let mut acc = Rat::zero();
            for m in 0..=j {
                let cm = &c.coeffs[p - m];
                if cm.is_zero() {
                    continue;
                }
                let mut w = Rat::from_integer(binom((p - m) as u64, (p - j) as i64))
                    * pow_rat(2, (2 * m + t) as i64)
                    * pow_rat(d, -((p - m) as i64));
                if (p - j) % 2 == 1 {
                    w = -w;
                }
                acc += w * cm;
            }
            acc
        })
        .collect();
    ShadowCompressed {
        n_parties: n,
        coeffs: b,
    }
}

/// `c_i = (-1)^i 2^{2i-N} d^i Σ_{j=0}^{p-i} C(p-j, i) b_j`.
pub fn b_to_c(b: &ShadowCompressed, local_dim: u32) -> InvariantBasisCoeffs {
    let n = b.n_parties;
    let p = n / 2;
    let d = local_dim as i64;
    let c = (0..=p)
        .map(|i| {
            let mut sum = Rat::zero();
            for j in 0..=(p - i) {
                if !b.coeffs[j].is_zero() {
                    sum += &b.coeffs[j] * Rat::from_integer(binom((p - j) as u64, i as i64));
                }
            }
            let mut v = sum * pow_rat(2, 2 * i as i64 - n as i64) * pow_rat(d, i as i64);
            if i % 2 == 1 {
                v = -v;
            }
            v
        })
        .collect();
    InvariantBasisCoeffs {
        n_parties: n,
        local_dim,
        coeffs: c,
    }
}

/// One of the necessary conditions on the enumerators of a pure state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Constraint {
    /// `a_0 = 1`
    Normalized,
    /// `a_j >= 0`
    NonnegativeWeights,
    /// `A` is fixed by the MacWilliams transform.
    MacWilliamsInvariant,
    /// `s_j >= 0`
    NonnegativeShadow,
    /// `s_{N-j} = 0` for odd `j`
    ShadowParity,
    /// `a_1 = ... = a_k = 0`
    KUniform(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintCheck {
    pub constraint: Constraint,
    pub passed: bool,
    /// Offending coefficient indices, when the check is index-wise.
    pub violations: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintReport {
    pub checks: Vec<ConstraintCheck>,
}

impl ConstraintReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, constraint: Constraint) -> Option<&ConstraintCheck> {
        self.checks.iter().find(|c| c.constraint == constraint)
    }
}

fn indexed_check(constraint: Constraint, violations: Vec<usize>) -> ConstraintCheck {
    ConstraintCheck {
        constraint,
        passed: violations.is_empty(),
        violations,
    }
}

/// Checks the pure-state constraints on `A` (and, given `k`, the `k`-uniformity zeros).
/// Violations are reported, never raised.
pub fn validate_state_constraints(a: &WeightEnumerator, k: Option<usize>) -> ConstraintReport {
    let n = a.n_parties;
    let mut checks = vec![indexed_check(
        Constraint::Normalized,
        if a.coeffs[0].is_one() {
            vec![]
        } else {
            vec![0]
        },
    )];
    checks.push(indexed_check(
        Constraint::NonnegativeWeights,
        (0..=n).filter(|&j| a.coeffs[j].is_negative()).collect(),
    ));
    let m = macwilliams_transform(a);
    checks.push(indexed_check(
        Constraint::MacWilliamsInvariant,
        (0..=n).filter(|&j| m.coeffs[j] != a.coeffs[j]).collect(),
    ));
    let s = shadow_transform(a);
    checks.push(indexed_check(
        Constraint::NonnegativeShadow,
        (0..=n).filter(|&j| s.coeffs[j].is_negative()).collect(),
    ));
    checks.push(indexed_check(
        Constraint::ShadowParity,
        (1..=n)
            .step_by(2)
            .map(|j| n - j)
            .filter(|&idx| !s.coeffs[idx].is_zero())
            .collect(),
    ));
    if let Some(k) = k {
        checks.push(indexed_check(
            Constraint::KUniform(k),
            (1..=k.min(n)).filter(|&j| !a.coeffs[j].is_zero()).collect(),
        ));
    }
    ConstraintReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn w(n: usize, d: u32, c: &[i64]) -> WeightEnumerator {
        WeightEnumerator::new(n, d, c.iter().map(|&v| rat(v, 1)).collect()).unwrap()
    }

    fn rats(v: &[(i64, i64)]) -> Vec<Rat> {
        v.iter().map(|&(p, q)| rat(p, q)).collect()
    }

    #[test]
    fn macwilliams_examples() {
        let bell = w(2, 2, &[1, 0, 3]);
        assert_eq!(macwilliams_transform(&bell), bell);
        let single = w(1, 2, &[1, 0]);
        assert_eq!(
            macwilliams_transform(&single).coeffs(),
            rats(&[(1, 2), (3, 2)]).as_slice()
        );
        let back = macwilliams_transform(&macwilliams_transform(&single));
        assert_eq!(back, single);
    }

    #[test]
    fn shadow_examples() {
        assert_eq!(
            shadow_transform(&w(2, 2, &[1, 0, 3])).coeffs(),
            rats(&[(1, 1), (0, 1), (3, 1)]).as_slice()
        );
        assert_eq!(
            shadow_transform(&w(3, 2, &[1, 0, 3, 4])).coeffs(),
            rats(&[(0, 1), (3, 1), (0, 1), (5, 1)]).as_slice()
        );
    }

    #[test]
    fn basis_conversions_on_bell() {
        let bell = w(2, 2, &[1, 0, 3]);
        let c = a_to_c(&bell);
        assert_eq!(c.coeffs(), rats(&[(1, 1), (-2, 1)]).as_slice());
        assert_eq!(c_to_a(&c), bell);
        let b = c_to_b(&c);
        assert_eq!(b.coeffs(), rats(&[(1, 1), (3, 1)]).as_slice());
        assert_eq!(b_to_c(&b, 2), c);
        let product = w(2, 2, &[1, 2, 1]);
        assert_eq!(
            a_to_c(&product).coeffs(),
            rats(&[(1, 1), (0, 1)]).as_slice()
        );
    }

    #[test]
    fn ghz3_compressed_shadow() {
        let c = a_to_c(&w(3, 2, &[1, 0, 3, 4]));
        assert_eq!(c_to_b(&c).coeffs(), rats(&[(3, 1), (5, 1)]).as_slice());
    }

    #[test]
    fn forced_prefix_gives_c1() {
        for n in 1..12usize {
            for d in 2..6u32 {
                let mut a = vec![Rat::zero(); n + 1];
                a[0] = rat(1, 1);
                let c = a_to_c(&WeightEnumerator::new(n, d, a).unwrap());
                assert_eq!(c.coeffs()[0], rat(1, 1));
                if n >= 2 {
                    assert_eq!(c.coeffs()[1], rat(-((n as i64) * (d as i64 - 1)), 1));
                }
            }
        }
    }

    #[test]
    fn single_basis_term_is_binomial() {
        let (n, d) = (5usize, 3u32);
        let c = InvariantBasisCoeffs::new(n, d, vec![rat(1, 1), rat(0, 1), rat(0, 1)]).unwrap();
        let a = c_to_a(&c);
        for j in 0..=n {
            let expect = binom(n as u64, j as i64) * ipow(2, j as u32);
            assert_eq!(a.coeffs()[j], Rat::from_integer(expect));
        }
    }

    #[test]
    fn degenerate_single_party() {
        let c = InvariantBasisCoeffs::new(1, 3, vec![rat(2, 5)]).unwrap();
        let a = c_to_a(&c);
        assert_eq!(a.coeffs(), rats(&[(2, 5), (4, 5)]).as_slice());
        assert_eq!(a_to_c(&a), c);
        let b = c_to_b(&c);
        assert_eq!(b.coeffs().len(), 1);
        assert_eq!(b_to_c(&b, 3), c);
    }

    #[test]
    fn zero_shadow_gives_zero_c() {
        let b = ShadowCompressed::new(6, vec![Rat::zero(); 4]).unwrap();
        assert!(b_to_c(&b, 4).coeffs().iter().all(|v| v.is_zero()));
    }

    #[test]
    fn constraint_report() {
        let bell = w(2, 2, &[1, 0, 3]);
        assert!(validate_state_constraints(&bell, Some(1)).all_passed());
        let neg = w(2, 2, &[1, -1, 3]);
        let r = validate_state_constraints(&neg, None);
        assert!(!r.get(Constraint::NonnegativeWeights).unwrap().passed);
        let ghz = w(3, 2, &[1, 0, 3, 4]);
        let r = validate_state_constraints(&ghz, Some(2));
        let ku = r.get(Constraint::KUniform(2)).unwrap();
        assert!(!ku.passed);
        assert_eq!(ku.violations, vec![2]);
        assert!(r.get(Constraint::MacWilliamsInvariant).unwrap().passed);
    }

    #[test]
    fn record_json_shape() {
        let bell = w(2, 2, &[1, 0, 3]);
        let js = serde_json::to_string(&bell).unwrap();
        assert_eq!(js, r#"{"n":2,"d":2,"coeffs":["1/1","0/1","3/1"]}"#);
        let back: WeightEnumerator = serde_json::from_str(&js).unwrap();
        assert_eq!(back, bell);
        assert!(
            serde_json::from_str::<WeightEnumerator>(r#"{"n":2,"d":2,"coeffs":["1"]}"#).is_err()
        );
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-40i64..40, 1i64..12).prop_map(|(p, q)| rat(p, q))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn macwilliams_is_involution(n in 1usize..9, d in 2u32..6,
                                     seed in proptest::collection::vec(small_rat(), 9)) {
            let a = WeightEnumerator::new(n, d, seed[..=n].to_vec()).unwrap();
            prop_assert_eq!(macwilliams_transform(&macwilliams_transform(&a)), a);
        }

        #[test]
        fn invariant_basis_is_macwilliams_fixed(n in 1usize..10, d in 2u32..6,
                                                seed in proptest::collection::vec(small_rat(), 5)) {
            let c = InvariantBasisCoeffs::new(n, d, seed[..=n / 2].to_vec()).unwrap();
            let a = c_to_a(&c);
            prop_assert_eq!(macwilliams_transform(&a), a.clone());
            // S(x,y) = S(-x,y) for invariant A
            let s = shadow_transform(&a);
            for j in (1..=n).step_by(2) {
                prop_assert!(s.coeffs()[n - j].is_zero());
            }
            prop_assert_eq!(c_to_b(&c), ShadowCompressed::from_shadow(&s));
        }

        #[test]
        fn conversions_round_trip(n in 1usize..16, d in 2u32..6,
                                  seed in proptest::collection::vec(small_rat(), 8)) {
            let c = InvariantBasisCoeffs::new(n, d, seed[..=n / 2].to_vec()).unwrap();
            prop_assert_eq!(a_to_c(&c_to_a(&c)), c.clone());
            prop_assert_eq!(b_to_c(&c_to_b(&c), d), c);
        }
    }
}
