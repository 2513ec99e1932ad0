//! q-polynomials (linearized polynomials) over GF(q^m).
//!
//! `P(x) = Σ p_i x^{q^i}` acts as a GF(q)-linear map on GF(q^m). Under
//! addition and composition these form a non-commutative ring, and every
//! r-dimensional GF(q)-subspace is the root space of exactly one monic
//! q-polynomial of q-degree r (its annihilator).

use thiserror::Error;

use crate::gfqm::{Field, FieldElement};
use crate::linalg::{Matrix, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QPolyError {
    #[error("basis element {index} is in the span of the previous ones")]
    DependentBasis { index: usize },
    #[error("the zero q-polynomial has no root space")]
    ZeroPolynomial,
}

/// Coefficients `p_0, …, p_r` with `p_r ≠ 0`; the zero polynomial has no
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial {
    coeffs: Vec<FieldElement>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    /// P(x) = x.
    pub fn identity() -> Self {
        QPolynomial {
            coeffs: vec![FieldElement::ONE],
        }
    }

    /// x^{q^i}.
    pub fn frobenius_power(i: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; i + 1];
        coeffs[i] = FieldElement::ONE;
        QPolynomial { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// q-degree; `None` for the zero polynomial.
    pub fn qdeg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&FieldElement::ONE)
    }

    pub fn evaluate(&self, field: &Field, x: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        let mut power = x;
        for (i, &p) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = field.frobenius(power, 1);
            }
            acc = field.add(acc, field.mul(p, power));
        }
        acc
    }

    pub fn add(&self, field: &Field, other: &QPolynomial) -> QPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        QPolynomial::from_coeffs((0..len).map(|i| field.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, field: &Field, other: &QPolynomial) -> QPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        QPolynomial::from_coeffs((0..len).map(|i| field.sub(self.coeff(i), other.coeff(i))).collect())
    }

    /// Left multiplication by a scalar: (c·P)(x) = c·P(x).
    pub fn scale(&self, field: &Field, c: FieldElement) -> QPolynomial {
        QPolynomial::from_coeffs(self.coeffs.iter().map(|&p| field.mul(c, p)).collect())
    }

    /// (P ∘ Q)(x) = P(Q(x)); coefficient k is Σ_{i+j=k} p_i · q_j^{q^i}.
    pub fn compose(&self, field: &Field, other: &QPolynomial) -> QPolynomial {
        if self.is_zero() || other.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, &qc) in other.coeffs.iter().enumerate() {
                let term = field.mul(p, field.frobenius(qc, i));
                out[i + j] = field.add(out[i + j], term);
            }
        }
        QPolynomial::from_coeffs(out)
    }

    /// Unique monic q-polynomial of q-degree `basis.len()` vanishing on the
    /// GF(q)-span of `basis`, by Ore's induction
    /// `P_0 = x`, `P_{i+1} = P_i^q − P_i(g_{i+1})^{q−1}·P_i`.
    pub fn annihilator(field: &Field, basis: &[FieldElement]) -> Result<QPolynomial, QPolyError> {
        let mut p = QPolynomial::identity();
        for (index, &g) in basis.iter().enumerate() {
            let v = p.evaluate(field, g);
            if v.is_zero() {
                return Err(QPolyError::DependentBasis { index });
            }
            let factor = field.pow(v, field.q() as u128 - 1);
            // (x^q − factor·x) ∘ P
            let step = QPolynomial::from_coeffs(vec![field.neg(factor), FieldElement::ONE]);
            p = step.compose(field, &p);
        }
        Ok(p)
    }

    /// Annihilator of a subspace given in canonical form.
    pub fn annihilator_of(field: &Field, space: &Subspace) -> QPolynomial {
        Self::annihilator(field, &space.basis_elements()).expect("canonical basis is independent")
    }

    /// Matrix over GF(q) of the linear map z ↦ P(z); column j is the
    /// expansion of P(α^j).
    pub fn linear_map_matrix(&self, field: &Field) -> Matrix {
        let images: Vec<_> = (0..field.m())
            .map(|j| self.evaluate(field, field.basis_element(j)))
            .collect();
        field.expand(&images)
    }

    /// The GF(q)-subspace of roots of P in GF(q^m).
    pub fn root_space(&self, field: &Field) -> Result<Subspace, QPolyError> {
        if self.is_zero() {
            return Err(QPolyError::ZeroPolynomial);
        }
        let base = field.base_field();
        let kernel = self.linear_map_matrix(field).kernel(&base);
        Ok(Subspace::from_vectors(&base, field.m(), &kernel))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::sample_subspace;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fe(v: u64) -> FieldElement {
        FieldElement::from_raw(v)
    }

    fn random_qpoly(field: &Field, max_qdeg: usize, rng: &mut ChaCha8Rng) -> QPolynomial {
        let d = rng.gen_range(0..=max_qdeg);
        QPolynomial::from_coeffs((0..=d).map(|_| field.random(rng)).collect())
    }

    #[test]
    fn evaluate_examples() {
        let f = Field::new(2, 3).unwrap();
        for a in f.elements() {
            assert_eq!(QPolynomial::identity().evaluate(&f, a), a);
        }
        let p = QPolynomial::from_coeffs(vec![fe(1), fe(1)]);
        assert_eq!(p.evaluate(&f, f.one()), f.zero());
    }

    #[test]
    fn composition_examples() {
        let f = Field::new(2, 6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = random_qpoly(&f, 3, &mut rng);
        assert_eq!(p.compose(&f, &QPolynomial::identity()), p);
        let xq = QPolynomial::frobenius_power(1);
        assert_eq!(xq.compose(&f, &xq), QPolynomial::frobenius_power(2));
    }

    #[test]
    fn composition_matches_evaluation_exhaustively() {
        let f = Field::new(2, 6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let p = random_qpoly(&f, 3, &mut rng);
            let q = random_qpoly(&f, 3, &mut rng);
            let pq = p.compose(&f, &q);
            if !p.is_zero() && !q.is_zero() && pq.qdeg().is_some() {
                assert_eq!(pq.qdeg().unwrap(), p.qdeg().unwrap() + q.qdeg().unwrap());
            }
            for x in f.elements() {
                assert_eq!(pq.evaluate(&f, x), p.evaluate(&f, q.evaluate(&f, x)));
            }
        }
    }

    #[test]
    fn ring_laws() {
        let f = Field::new(3, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let (a, b, c) = (
                random_qpoly(&f, 3, &mut rng),
                random_qpoly(&f, 3, &mut rng),
                random_qpoly(&f, 3, &mut rng),
            );
            assert_eq!(a.compose(&f, &b).compose(&f, &c), a.compose(&f, &b.compose(&f, &c)));
            // composition distributes over addition on the left factor sum
            assert_eq!(
                a.compose(&f, &b.add(&f, &c)),
                a.compose(&f, &b).add(&f, &a.compose(&f, &c))
            );
            assert_eq!(
                a.add(&f, &b).compose(&f, &c),
                a.compose(&f, &c).add(&f, &b.compose(&f, &c))
            );
        }
    }

    #[test]
    fn gf_q_linearity() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for &(q, m) in &[(2, 8), (3, 4), (5, 3)] {
            let f = Field::new(q, m).unwrap();
            for _ in 0..500 {
                let p = random_qpoly(&f, 4, &mut rng);
                let (x, y) = (f.random(&mut rng), f.random(&mut rng));
                let (al, be) = (f.embed(rng.gen_range(0..q)), f.embed(rng.gen_range(0..q)));
                let lhs = p.evaluate(&f, f.add(f.mul(al, x), f.mul(be, y)));
                let rhs = f.add(f.mul(al, p.evaluate(&f, x)), f.mul(be, p.evaluate(&f, y)));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn annihilator_examples() {
        let f = Field::new(2, 3).unwrap();
        assert_eq!(QPolynomial::annihilator(&f, &[]).unwrap(), QPolynomial::identity());
        let p = QPolynomial::annihilator(&f, &[f.one()]).unwrap();
        assert_eq!(p, QPolynomial::from_coeffs(vec![fe(1), fe(1)]));
        let roots: Vec<_> = f.elements().filter(|&x| p.evaluate(&f, x).is_zero()).collect();
        assert_eq!(roots, vec![fe(0), fe(1)]);
        assert_eq!(
            QPolynomial::annihilator(&f, &[fe(3), fe(5), fe(6)]),
            Err(QPolyError::DependentBasis { index: 2 })
        );
    }

    #[test]
    fn root_space_examples() {
        let f = Field::new(2, 3).unwrap();
        let base = f.base_field();
        assert_eq!(QPolynomial::identity().root_space(&f).unwrap(), Subspace::zero(&base, 3));
        let p = QPolynomial::from_coeffs(vec![fe(1), fe(1)]);
        let s = p.root_space(&f).unwrap();
        assert_eq!(s, Subspace::span_of(&f, &[f.one()]));
        assert_eq!(QPolynomial::zero().root_space(&f), Err(QPolyError::ZeroPolynomial));
    }

    #[test]
    fn annihilator_is_exact_on_gf256() {
        let f = Field::new(2, 8).unwrap();
        let base = f.base_field();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let d = rng.gen_range(0..=4);
            let e = sample_subspace(&base, 8, d, &mut rng);
            let p = QPolynomial::annihilator_of(&f, &e);
            assert!(p.is_monic());
            assert_eq!(p.qdeg(), Some(d));
            let members: std::collections::HashSet<_> = e.elements().into_iter().collect();
            for x in f.elements() {
                assert_eq!(p.evaluate(&f, x).is_zero(), members.contains(&x));
            }
            assert_eq!(p.root_space(&f).unwrap(), e);
        }
    }

    #[test]
    fn annihilator_independent_of_basis_choice() {
        let f = Field::new(3, 5).unwrap();
        let base = f.base_field();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..30 {
            let e = sample_subspace(&base, 5, 3, &mut rng);
            let canonical = QPolynomial::annihilator_of(&f, &e);
            // a different basis: random invertible recombination
            let b = e.basis_elements();
            let other: Vec<_> = loop {
                let cand: Vec<_> = (0..3)
                    .map(|_| {
                        b.iter().fold(f.zero(), |acc, &x| f.add(acc, f.scale(rng.gen_range(0..3), x)))
                    })
                    .collect();
                if Subspace::span_of(&f, &cand).dim() == 3 {
                    break cand;
                }
            };
            assert_eq!(QPolynomial::annihilator(&f, &other).unwrap(), canonical);
        }
    }

    #[test]
    fn root_space_dimension_bounded_by_qdeg() {
        let f = Field::new(2, 7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let p = random_qpoly(&f, 5, &mut rng);
            if p.is_zero() {
                continue;
            }
            assert!(p.root_space(&f).unwrap().dim() <= p.qdeg().unwrap());
        }
    }
}
