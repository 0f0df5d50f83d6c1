//! Exact feasibility of the full enumerator constraint system.
//!
//! With `c_0..c_k` pinned to `α_0..α_k`, the remaining coordinates
//! `c_{k+1}..c_{⌊N/2⌋}` are free and every `a_j` (`j > k`) and every `b_j` is
//! affine in them. A `k`-uniform state can only exist if all of those are
//! simultaneously nonnegative. Feasibility is decided by a phase-one simplex over
//! rationals with Bland's rule, so the answer is exact.

use num_traits::{Signed, Zero};

use super::alpha::alpha_vector;
use crate::enumerators::{basis_polynomial, c_to_b, InvariantBasisCoeffs};
use crate::error::{Error, Result};
use crate::exact::Rat;

/// Is there a real `x` with `G x >= h`?
fn feasible(g: &[Vec<Rat>], h: &[Rat]) -> bool {
    let m = g.len();
    if m == 0 {
        return true;
    }
    let n = g[0].len();
    if n == 0 {
        return h.iter().all(|v| !v.is_positive());
    }
    // columns: x+ (n), x- (n), surplus (m), artificial (m)
    let nv = 2 * n + m;
    let tot = nv + m;
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rat> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![Rat::zero(); tot];
        for j in 0..n {
            row[j] = g[i][j].clone();
            row[n + j] = -&g[i][j];
        }
        row[2 * n + i] = Rat::from_integer((-1).into());
        let mut b = h[i].clone();
        if b.is_negative() {
            for v in row.iter_mut() {
                *v = -&*v;
            }
            b = -b;
        }
        row[nv + i] = Rat::from_integer(1.into());
        rows.push(row);
        rhs.push(b);
    }
    let mut basis: Vec<usize> = (nv..tot).collect();
    loop {
        // reduced cost of column j for the objective "sum of artificials"
        let enter = (0..tot).find(|&j| {
            let mut red = if j >= nv {
                Rat::from_integer(1.into())
            } else {
                Rat::zero()
            };
            for i in 0..m {
                if basis[i] >= nv && !rows[i][j].is_zero() {
                    red -= &rows[i][j];
                }
            }
            red.is_negative()
        });
        let Some(enter) = enter else { break };
        let mut best: Option<(Rat, usize)> = None;
        for i in 0..m {
            if rows[i][enter].is_positive() {
                let ratio = &rhs[i] / &rows[i][enter];
                let better = match &best {
                    None => true,
                    Some((r, bi)) => ratio < *r || (ratio == *r && basis[i] < basis[*bi]),
                };
                if better {
                    best = Some((ratio, i));
                }
            }
        }
        // phase one is bounded below by zero, so a pivot row always exists
        let (_, piv) = best.expect("bounded phase-one objective");
        let pv = rows[piv][enter].clone();
        for v in rows[piv].iter_mut() {
            *v /= &pv;
        }
        rhs[piv] /= &pv;
        let prow = rows[piv].clone();
        let prhs = rhs[piv].clone();
        for i in 0..m {
            if i == piv || rows[i][enter].is_zero() {
                continue;
            }
            let f = rows[i][enter].clone();
            for (v, p) in rows[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
            rhs[i] -= &f * &prhs;
        }
        basis[piv] = enter;
    }
    (0..m).filter(|&i| basis[i] >= nv).all(|i| rhs[i].is_zero())
}

/// True unless the enumerator constraints rule out `k`-uniform states in
/// `(C^d)^{⊗N}`.
pub fn shadow_lp_feasible(n: usize, d: u32, k: usize) -> Result<bool> {
    let alpha = alpha_vector(n, d)?;
    feasible_with(n, d, k, &alpha)
}

fn feasible_with(n: usize, d: u32, k: usize, alpha: &[Rat]) -> Result<bool> {
    let p = n / 2;
    if k > p {
        return Err(Error::range("k", k, format!("0..={p}")));
    }
    let basis: Vec<_> = (0..=p).map(|i| basis_polynomial(n, d, i)).collect();
    let mut fixed = vec![Rat::zero(); p + 1];
    fixed[..=k].clone_from_slice(&alpha[..=k]);
    let a0: Vec<Rat> = (0..=n)
        .map(|j| {
            (0..=k)
                .map(|i| &fixed[i] * Rat::from_integer(basis[i][j].clone()))
                .sum()
        })
        .collect();
    let b0 = c_to_b(&InvariantBasisCoeffs::new(n, d, fixed)?);
    let free: Vec<usize> = (k + 1..=p).collect();
    let b_cols: Vec<Vec<Rat>> = free
        .iter()
        .map(|&i| {
            let mut e = vec![Rat::zero(); p + 1];
            e[i] = Rat::from_integer(1.into());
            Ok(c_to_b(&InvariantBasisCoeffs::new(n, d, e)?)
                .coeffs()
                .to_vec())
        })
        .collect::<Result<_>>()?;
    let mut g = Vec::new();
    let mut h = Vec::new();
    for j in k + 1..=n {
        g.push(
            free.iter()
                .map(|&i| Rat::from_integer(basis[i][j].clone()))
                .collect(),
        );
        h.push(-&a0[j]);
    }
    for j in 0..=p {
        g.push(b_cols.iter().map(|col| col[j].clone()).collect());
        h.push(-&b0.coeffs()[j]);
    }
    Ok(feasible(&g, &h))
}

/// Largest `k <= start` that the linear program does not exclude. Feasibility is
/// monotone in `k`, so the scan stops at the first feasible level.
pub fn shadow_lp_bound(n: usize, d: u32, start: usize) -> Result<usize> {
    let alpha = alpha_vector(n, d)?;
    let mut k = start.min(n / 2);
    while k > 0 && !feasible_with(n, d, k, &alpha)? {
        k -= 1;
    }
    Ok(k)
}
