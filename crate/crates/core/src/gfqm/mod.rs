//! Arithmetic in GF(q) and GF(q^m) for prime q.
//!
//! Elements of GF(q^m) are represented over the polynomial basis
//! 1, α, …, α^{m−1}, where α is a root of the lexicographically smallest
//! monic irreducible polynomial of degree m. An element is carried around as
//! its integer encoding `Σ coords[i]·q^i`, which is also the serialization
//! used by every file format in this crate.
//!
//! GF(q) itself is the case m = 1 (modulus `x`), so one [`Field`] type serves
//! both the extension field and its prime subfield.

mod poly;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::linalg::Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("q = {0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field GF({q}^{m}) does not fit in 64-bit element encodings")]
    TooLarge { q: u32, m: usize },
    #[error("modulus must be monic of degree {expected}")]
    BadModulus { expected: usize },
    #[error("modulus coefficient {0} out of range")]
    CoefficientOutOfRange(u32),
    #[error("modulus is not irreducible over GF({0})")]
    Reducible(u32),
    #[error("element encoding {value} is outside [0, {order})")]
    OutOfRange { value: u64, order: u64 },
    #[error("zero has no multiplicative inverse")]
    DivisionByZero,
}

/// Trial-division primality test; q is always small here.
pub fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= q as u64 {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `m`
/// over GF(q), coefficients in ascending degree order (length m+1).
///
/// Candidates `c_0 + c_1 x + … + c_{m−1} x^{m−1} + x^m` are visited in
/// increasing order of `Σ c_i q^i`.
pub fn find_modulus(q: u32, m: usize) -> Result<Vec<u32>, FieldError> {
    if !is_prime(q) {
        return Err(FieldError::NotPrime(q));
    }
    if m == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let mut tail = vec![0u32; m];
    loop {
        let mut candidate = tail.clone();
        candidate.push(1);
        if poly::is_irreducible(&candidate, q) {
            return Ok(candidate);
        }
        // base-q increment, least significant digit first
        let mut i = 0;
        loop {
            if i == m {
                // every monic degree-m polynomial tried; cannot happen for a prime q
                unreachable!("no irreducible polynomial of degree {m} over GF({q})");
            }
            tail[i] += 1;
            if tail[i] < q {
                break;
            }
            tail[i] = 0;
            i += 1;
        }
    }
}

/// An element of some [`Field`], stored as its integer encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps an encoding without range checking; see [`Field::element`].
    pub const fn from_raw(value: u64) -> Self {
        FieldElement(value)
    }

    pub const fn value(self) -> u64 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug)]
struct FieldInner {
    q: u32,
    m: usize,
    modulus: Vec<u32>,
    order: u64,
    /// q = 2 only: modulus packed as a bit mask including the leading term.
    modulus_bits: u64,
}

/// GF(q^m) with a fixed polynomial basis. Cheap to clone and shareable
/// across threads.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.q(), self.m(), self.modulus())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.q == other.0.q && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl Field {
    /// GF(q^m) with the canonical modulus from [`find_modulus`].
    pub fn new(q: u32, m: usize) -> Result<Self, FieldError> {
        let modulus = find_modulus(q, m)?;
        Self::build(q, modulus)
    }

    /// The prime field GF(q).
    pub fn prime(q: u32) -> Result<Self, FieldError> {
        Self::new(q, 1)
    }

    /// GF(q^m) with an explicit modulus (ascending coefficients, monic,
    /// irreducible). Used when reading instance files.
    pub fn with_modulus(q: u32, modulus: &[u32]) -> Result<Self, FieldError> {
        if !is_prime(q) {
            return Err(FieldError::NotPrime(q));
        }
        if modulus.len() < 2 {
            return Err(FieldError::ZeroDegree);
        }
        let m = modulus.len() - 1;
        if let Some(&c) = modulus.iter().find(|&&c| c >= q) {
            return Err(FieldError::CoefficientOutOfRange(c));
        }
        if modulus[m] != 1 {
            return Err(FieldError::BadModulus { expected: m });
        }
        if !poly::is_irreducible(modulus, q) {
            return Err(FieldError::Reducible(q));
        }
        Self::build(q, modulus.to_vec())
    }

    fn build(q: u32, modulus: Vec<u32>) -> Result<Self, FieldError> {
        let m = modulus.len() - 1;
        let order = (q as u64)
            .checked_pow(m as u32)
            .filter(|&o| o < (1u64 << 63))
            .ok_or(FieldError::TooLarge { q, m })?;
        let modulus_bits = if q == 2 {
            modulus
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &c)| acc | ((c as u64) << i))
        } else {
            0
        };
        Ok(Field(Arc::new(FieldInner {
            q,
            m,
            modulus,
            order,
            modulus_bits,
        })))
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn m(&self) -> usize {
        self.0.m
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Number of elements, q^m.
    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// The prime subfield GF(q) as its own [`Field`].
    pub fn base_field(&self) -> Field {
        if self.m() == 1 {
            self.clone()
        } else {
            Field::prime(self.q()).expect("q already validated")
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Range-checked conversion from an integer encoding.
    pub fn element(&self, value: u64) -> Result<FieldElement, FieldError> {
        if value < self.order() {
            Ok(FieldElement(value))
        } else {
            Err(FieldError::OutOfRange {
                value,
                order: self.order(),
            })
        }
    }

    /// The constant `c ∈ GF(q)` viewed as an element of this field.
    pub fn embed(&self, c: u32) -> FieldElement {
        FieldElement((c % self.q()) as u64)
    }

    /// The basis element α^i.
    pub fn basis_element(&self, i: usize) -> FieldElement {
        assert!(i < self.m());
        FieldElement((self.q() as u64).pow(i as u32))
    }

    /// Coordinates over the polynomial basis (length m).
    pub fn coords(&self, a: FieldElement) -> Vec<u32> {
        let q = self.q() as u64;
        let mut v = a.0;
        (0..self.m())
            .map(|_| {
                let c = (v % q) as u32;
                v /= q;
                c
            })
            .collect()
    }

    /// Inverse of [`Field::coords`]; coordinates are reduced mod q and
    /// missing high coordinates are taken as zero.
    pub fn from_coords(&self, coords: &[u32]) -> FieldElement {
        assert!(coords.len() <= self.m(), "too many coordinates");
        let q = self.q() as u64;
        FieldElement(
            coords
                .iter()
                .rev()
                .fold(0u64, |acc, &c| acc * q + (c as u64 % q)),
        )
    }

    pub fn is_in_base_field(&self, a: FieldElement) -> bool {
        a.0 < self.q() as u64
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let q = self.q();
        if q == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if self.m() == 1 {
            return FieldElement((a.0 + b.0) % q as u64);
        }
        self.digitwise(a, b, |x, y| (x + y) % q)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let q = self.q();
        if q == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if self.m() == 1 {
            return FieldElement((a.0 + q as u64 - b.0) % q as u64);
        }
        self.digitwise(a, b, |x, y| (x + q - y) % q)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.sub(FieldElement::ZERO, a)
    }

    fn digitwise(
        &self,
        a: FieldElement,
        b: FieldElement,
        op: impl Fn(u32, u32) -> u32,
    ) -> FieldElement {
        let q = self.q() as u64;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.m() {
            let d = op((x % q) as u32, (y % q) as u32) as u64;
            out += d * place;
            x /= q;
            y /= q;
            place = place.wrapping_mul(q);
        }
        FieldElement(out)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let q = self.q();
        if self.m() == 1 {
            return FieldElement(a.0 * b.0 % q as u64);
        }
        if q == 2 {
            return FieldElement(self.mul_binary(a.0, b.0));
        }
        let prod = poly::mul(&self.coords(a), &self.coords(b), q);
        let reduced = poly::rem(&prod, self.modulus(), q);
        self.from_coords(&reduced)
    }

    fn mul_binary(&self, mut a: u64, mut b: u64) -> u64 {
        let m = self.m();
        let top = 1u64 << m;
        let modulus = self.0.modulus_bits;
        let mut acc = 0u64;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= modulus;
            }
        }
        acc
    }

    /// Multiplication by a prime-field scalar.
    pub fn scale(&self, c: u32, a: FieldElement) -> FieldElement {
        self.mul(self.embed(c), a)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let q = self.q();
        if self.m() == 1 {
            return Ok(FieldElement(poly::inv_mod(a.0 as u32, q) as u64));
        }
        if q == 2 {
            return Ok(FieldElement(self.inv_binary(a.0)));
        }
        let inv = poly::inv_mod_poly(&self.coords(a), self.modulus(), q)
            .expect("nonzero element of a field is invertible");
        Ok(self.from_coords(&inv))
    }

    fn inv_binary(&self, a: u64) -> u64 {
        // extended Euclid on GF(2)[x] polynomials packed in u128
        let deg = |x: u128| 127 - x.leading_zeros() as i32;
        let (mut r0, mut r1) = (self.0.modulus_bits as u128, a as u128);
        let (mut s0, mut s1) = (0u128, 1u128);
        while r1 != 0 {
            let mut r = r0;
            let mut s = s0;
            while r != 0 && deg(r) >= deg(r1) {
                let shift = deg(r) - deg(r1);
                r ^= r1 << shift;
                s ^= s1 << shift;
            }
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        debug_assert_eq!(r0, 1);
        // s0 has degree < m, so no final reduction is needed
        s0 as u64
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut exp: u128) -> FieldElement {
        let mut result = FieldElement::ONE;
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        result
    }

    /// a^{q^i}, with i reduced modulo m.
    pub fn frobenius(&self, a: FieldElement, i: usize) -> FieldElement {
        let steps = i % self.m();
        let q = self.q() as u128;
        (0..steps).fold(a, |x, _| self.pow(x, q))
    }

    /// The m×n matrix over GF(q) whose column j holds the coordinates of v_j.
    pub fn expand(&self, v: &[FieldElement]) -> Matrix {
        let m = self.m();
        let mut out = Matrix::zeros(m, v.len());
        for (j, &x) in v.iter().enumerate() {
            for (i, c) in self.coords(x).into_iter().enumerate() {
                out.set(i, j, FieldElement(c as u64));
            }
        }
        out
    }

    /// Inverse of [`Field::expand`].
    pub fn collapse(&self, mat: &Matrix) -> Vec<FieldElement> {
        assert_eq!(mat.rows(), self.m(), "expanded matrix must have m rows");
        (0..mat.cols())
            .map(|j| {
                let coords: Vec<u32> = (0..mat.rows()).map(|i| mat.get(i, j).0 as u32).collect();
                self.from_coords(&coords)
            })
            .collect()
    }

    /// Iterator over every element in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order()).map(FieldElement)
    }

    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(0..self.order()))
    }

    pub fn random_nonzero<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(1..self.order()))
    }

    // vector helpers

    pub fn add_vec(&self, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(&x, &y)| self.add(x, y)).collect()
    }

    pub fn sub_vec(&self, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(&x, &y)| self.sub(x, y)).collect()
    }

    pub fn scale_vec(&self, c: FieldElement, a: &[FieldElement]) -> Vec<FieldElement> {
        a.iter().map(|&x| self.mul(c, x)).collect()
    }

    pub fn dot(&self, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
        assert_eq!(a.len(), b.len());
        a.iter()
            .zip(b)
            .fold(FieldElement::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}
