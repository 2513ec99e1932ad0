//! Dense univariate polynomials over the prime field Z/qZ.
//!
//! Coefficients are stored in ascending degree order and kept trimmed
//! (no trailing zeros); the zero polynomial is the empty vector.

pub(crate) type Poly = Vec<u32>;

pub(crate) fn trim(p: &mut Poly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub(crate) fn degree(p: &[u32]) -> Option<usize> {
    p.iter().rposition(|&c| c != 0)
}

/// Inverse of `a` modulo the prime `q`. `a` must be nonzero mod `q`.
pub(crate) fn inv_mod(a: u32, q: u32) -> u32 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (q as i64, (a % q) as i64);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    debug_assert_eq!(r, 1, "{a} is not invertible mod {q}");
    t.rem_euclid(q as i64) as u32
}

pub(crate) fn sub(a: &[u32], b: &[u32], q: u32) -> Poly {
    let len = a.len().max(b.len());
    let mut out: Poly = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + q - y) % q
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u32], b: &[u32], q: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let q64 = q as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % q64;
        }
    }
    let mut out: Poly = out.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by nonzero `b`.
pub(crate) fn divrem(a: &[u32], b: &[u32], q: u32) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = inv_mod(b[db], q) as u64;
    let mut rem: Poly = a.to_vec();
    trim(&mut rem);
    let mut quot = vec![0u32; rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let coef = (rem[dr] as u64 * lead_inv % q as u64) as u32;
        let shift = dr - db;
        quot[shift] = coef;
        for (i, &bc) in b.iter().enumerate().take(db + 1) {
            let s = (coef as u64 * bc as u64 % q as u64) as u32;
            rem[i + shift] = (rem[i + shift] + q - s) % q;
        }
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

pub(crate) fn rem(a: &[u32], b: &[u32], q: u32) -> Poly {
    divrem(a, b, q).1
}

pub(crate) fn gcd(a: &[u32], b: &[u32], q: u32) -> Poly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, q);
        x = y;
        y = r;
    }
    x
}

/// Inverse of `a` modulo `modulus` by the extended Euclidean algorithm.
/// Returns `None` when `gcd(a, modulus) != 1`.
pub(crate) fn inv_mod_poly(a: &[u32], modulus: &[u32], q: u32) -> Option<Poly> {
    let (mut r0, mut r1) = (modulus.to_vec(), a.to_vec());
    trim(&mut r1);
    let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (quot, r2) = divrem(&r0, &r1, q);
        let s2 = sub(&s0, &mul(&quot, &s1, q), q);
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = inv_mod(r0[0], q);
    Some(mul(&s0, &[c], q))
}

fn powmod(base: &[u32], mut exp: u64, modulus: &[u32], q: u32) -> Poly {
    let mut result: Poly = rem(&[1], modulus, q);
    let mut b = rem(base, modulus, q);
    while exp > 0 {
        if exp & 1 == 1 {
            result = rem(&mul(&result, &b, q), modulus, q);
        }
        b = rem(&mul(&b, &b, q), modulus, q);
        exp >>= 1;
    }
    result
}

/// Ben-Or irreducibility test for a polynomial of degree >= 1.
pub(crate) fn is_irreducible(f: &[u32], q: u32) -> bool {
    let Some(d) = degree(f) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    let x: Poly = vec![0, 1];
    let mut h = rem(&x, f, q);
    for _ in 0..d / 2 {
        h = powmod(&h, q as u64, f, q);
        let g = gcd(f, &sub(&h, &x, q), q);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}
