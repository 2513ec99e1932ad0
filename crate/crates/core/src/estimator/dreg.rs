//! Degree of regularity of semi-regular systems: the index of the first
//! non-positive coefficient of a Hilbert-style generating series.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};

use super::monomial_count;

/// Truncated expansion of (1 − z^degree)^n_eq / (1 − z)^n_var, computed by
/// repeated multiplication and prefix summation.
pub fn semi_regular_series(n_eq: usize, n_var: usize, degree: usize, len: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); len];
    if len == 0 {
        return s;
    }
    s[0] = BigInt::one();
    for _ in 0..n_eq {
        for i in (degree..len).rev() {
            let t = s[i - degree].clone();
            s[i] -= t;
        }
    }
    for _ in 0..n_var {
        for i in 1..len {
            let t = s[i - 1].clone();
            s[i] += t;
        }
    }
    s
}

/// Index of the first coefficient ≤ 0.
pub fn series_first_nonpositive(coeffs: &[BigInt]) -> Option<usize> {
    coeffs.iter().position(|c| c.sign() != Sign::Plus)
}

/// Coefficient of z^i in (1 − z^d)^n_eq / (1 − z)^n_var:
/// Σ_j (−1)^j C(n_eq, j) · #M_{i−dj}(n_var).
fn coefficient(n_eq: usize, n_var: usize, d: usize, i: usize) -> BigInt {
    let mut acc = BigInt::zero();
    let mut binom = BigInt::one();
    for j in 0..=n_eq {
        if j > 0 {
            binom = binom * BigInt::from(n_eq - j + 1) / BigInt::from(j);
        }
        let Some(rest) = i.checked_sub(d * j) else { break };
        let term = &binom * BigInt::from(monomial_count(n_var, rest));
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// First index whose coefficient in (1 − z^degree)^n_eq / (1 − z)^n_var is
/// ≤ 0. `None` when n_eq < n_var (every coefficient is then positive) or
/// when `degree` is 0.
pub fn degree_of_regularity(n_eq: usize, n_var: usize, degree: usize) -> Option<usize> {
    if degree == 0 || n_eq < n_var {
        return None;
    }
    // The series is a polynomial of degree n_eq·degree − n_var.
    let limit = n_eq * degree - n_var + 1;
    (0..=limit).find(|&i| coefficient(n_eq, n_var, degree, i).sign() != Sign::Plus)
}

/// First non-positive coefficient of (Σ_{i=0}^{q^r} z^i)(1 − z)^{kr−n}.
/// `None` when kr < n (all coefficients positive) or q^r exceeds 2^24.
pub fn degree_of_regularity_paper_variant(q: u32, r: usize, k: usize, n: usize) -> Option<usize> {
    let top = (q as u64).checked_pow(r as u32).filter(|&t| t <= 1 << 24)? as usize;
    let e = (k * r).checked_sub(n)?;
    // C(e, j) with alternating sign.
    let mut binoms = Vec::with_capacity(e + 1);
    let mut b = BigInt::one();
    for j in 0..=e {
        if j > 0 {
            b = b * BigInt::from(e - j + 1) / BigInt::from(j);
        }
        binoms.push(if j % 2 == 0 { b.clone() } else { -b.clone() });
    }
    (0..=top + e + 1).find(|&i| {
        let lo = i.saturating_sub(top);
        let c: BigInt = (lo..=i.min(e)).map(|j| &binoms[j]).sum();
        c.sign() != Sign::Plus
    })
}
