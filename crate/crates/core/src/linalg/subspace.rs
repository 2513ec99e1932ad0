use std::hash::{Hash, Hasher};

use rand::Rng;

use super::Matrix;
use crate::gfqm::{Field, FieldElement};

/// A GF(q)-subspace of GF(q)^m, stored as a canonical RREF basis so that
/// equal subspaces have identical representations.
///
/// Vectors of GF(q)^m are identified with elements of GF(q^m) through their
/// polynomial-basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    base: Field,
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.base.q().hash(state);
        self.ambient.hash(state);
        self.basis.hash(state);
    }
}

impl Subspace {
    pub fn zero(base: &Field, ambient: usize) -> Self {
        Self::from_vectors(base, ambient, &[])
    }

    pub fn full(base: &Field, ambient: usize) -> Self {
        Self::from_rref(base, ambient, Matrix::identity(ambient))
    }

    /// Span of arbitrary (possibly dependent) vectors of GF(q)^m.
    pub fn from_vectors(base: &Field, ambient: usize, vectors: &[Vec<FieldElement>]) -> Self {
        assert_eq!(base.m(), 1, "subspaces live over the prime field");
        let rref = Matrix::from_rows(ambient, vectors).rref(base);
        let basis = Matrix::from_rows(ambient, &rref.matrix.to_rows()[..rref.rank]);
        Subspace {
            base: base.clone(),
            ambient,
            basis,
            pivots: rref.pivots,
        }
    }

    fn from_rref(base: &Field, ambient: usize, basis: Matrix) -> Self {
        Self::from_vectors(base, ambient, &basis.to_rows())
    }

    /// GF(q)-span of extension-field elements.
    pub fn span_of(field: &Field, elements: &[FieldElement]) -> Self {
        let vectors: Vec<Vec<FieldElement>> = elements
            .iter()
            .map(|&e| field.coords(e).into_iter().map(|c| FieldElement::from_raw(c as u64)).collect())
            .collect();
        Self::from_vectors(&field.base_field(), field.m(), &vectors)
    }

    pub fn base_field(&self) -> &Field {
        &self.base
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The RREF basis, one row per basis vector.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors read as GF(q^m) elements (integer encodings).
    pub fn basis_elements(&self) -> Vec<FieldElement> {
        (0..self.dim()).map(|i| self.encode(self.basis.row(i))).collect()
    }

    fn encode(&self, v: &[FieldElement]) -> FieldElement {
        let q = self.base.q() as u64;
        FieldElement::from_raw(v.iter().rev().fold(0u64, |acc, c| acc * q + c.value()))
    }

    fn decode(&self, e: FieldElement) -> Vec<FieldElement> {
        let q = self.base.q() as u64;
        let mut x = e.value();
        (0..self.ambient)
            .map(|_| {
                let c = x % q;
                x /= q;
                FieldElement::from_raw(c)
            })
            .collect()
    }

    pub fn contains_vector(&self, v: &[FieldElement]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let f = &self.base;
        let mut residue = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = residue[p];
            if c.is_zero() {
                continue;
            }
            for (r, &b) in residue.iter_mut().zip(self.basis.row(i)) {
                *r = f.sub(*r, f.mul(c, b));
            }
        }
        residue.iter().all(|x| x.is_zero())
    }

    pub fn contains_element(&self, e: FieldElement) -> bool {
        self.contains_vector(&self.decode(e))
    }

    /// True iff `inner ⊆ self`.
    pub fn contains(&self, inner: &Subspace) -> bool {
        assert_eq!(self.ambient, inner.ambient, "ambient dimensions differ");
        assert_eq!(self.base.q(), inner.base.q(), "base fields differ");
        (0..inner.dim()).all(|i| self.contains_vector(inner.basis.row(i)))
    }

    /// All q^dim members as GF(q^m) encodings, in counter order over the
    /// basis coefficients.
    pub fn elements(&self) -> Vec<FieldElement> {
        let f = &self.base;
        let q = f.q() as u64;
        let count = q.pow(self.dim() as u32);
        (0..count)
            .map(|mut idx| {
                let mut acc = vec![FieldElement::ZERO; self.ambient];
                for i in 0..self.dim() {
                    let c = FieldElement::from_raw(idx % q);
                    idx /= q;
                    if c.is_zero() {
                        continue;
                    }
                    for (a, &b) in acc.iter_mut().zip(self.basis.row(i)) {
                        *a = f.add(*a, f.mul(c, b));
                    }
                }
                self.encode(&acc)
            })
            .collect()
    }

    /// Image under multiplication by a nonzero scalar of GF(q^m).
    pub fn scaled(&self, field: &Field, by: FieldElement) -> Subspace {
        let elems: Vec<_> = self.basis_elements().into_iter().map(|e| field.mul(by, e)).collect();
        Subspace::span_of(field, &elems)
    }
}

/// Uniform d-dimensional subspace of GF(q)^m: random d×m matrices are drawn
/// until one has full rank, then canonicalized.
pub fn sample_subspace<R: Rng + ?Sized>(base: &Field, ambient: usize, d: usize, rng: &mut R) -> Subspace {
    assert!(d <= ambient, "dimension {d} exceeds ambient {ambient}");
    loop {
        let m = Matrix::random(base, d, ambient, rng);
        let s = Subspace::from_vectors(base, ambient, &m.to_rows());
        if s.dim() == d {
            return s;
        }
    }
}

/// Uniform d-dimensional subspace containing the nonzero vector `fixed`.
pub fn sample_subspace_containing<R: Rng + ?Sized>(
    base: &Field,
    ambient: usize,
    d: usize,
    fixed: &[FieldElement],
    rng: &mut R,
) -> Subspace {
    assert!(d >= 1 && d <= ambient);
    assert!(fixed.iter().any(|x| !x.is_zero()), "fixed vector must be nonzero");
    loop {
        let mut rows = vec![fixed.to_vec()];
        rows.extend(Matrix::random(base, d - 1, ambient, rng).to_rows());
        let s = Subspace::from_vectors(base, ambient, &rows);
        if s.dim() == d {
            return s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashMap;

    fn gf2() -> Field {
        Field::prime(2).unwrap()
    }

    fn unit(m: usize, i: usize) -> Vec<FieldElement> {
        let mut v = vec![FieldElement::ZERO; m];
        v[i] = FieldElement::ONE;
        v
    }

    #[test]
    fn extreme_dimensions() {
        let f = gf2();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let z = sample_subspace(&f, 5, 0, &mut rng);
        assert_eq!(z, Subspace::zero(&f, 5));
        assert_eq!(z.elements(), vec![FieldElement::ZERO]);
        let full = sample_subspace(&f, 5, 5, &mut rng);
        assert_eq!(full.basis(), &Matrix::identity(5));
    }

    #[test]
    fn containment_basics() {
        let f = gf2();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = sample_subspace(&f, 6, 3, &mut rng);
        assert!(s.contains(&s));
        assert!(!Subspace::zero(&f, 6).contains(&s));
        assert!(s.contains(&Subspace::zero(&f, 6)));
        for e in s.elements() {
            assert!(s.contains_element(e));
        }
        assert_eq!(s.elements().len(), 8);
    }

    #[test]
    fn canonical_form_independent_of_spanning_set() {
        let f = Field::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let s = sample_subspace(&f, 5, 3, &mut rng);
            // mix basis rows with a random invertible transform
            let t = loop {
                let t = Matrix::random(&f, 3, 3, &mut rng);
                if t.rank(&f) == 3 {
                    break t;
                }
            };
            let mixed = t.mul(&f, s.basis());
            assert_eq!(Subspace::from_vectors(&f, 5, &mixed.to_rows()), s);
        }
    }

    #[test]
    fn containing_sampler_keeps_fixed_vector() {
        let f = gf2();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let fixed = unit(6, 0);
        let line = sample_subspace_containing(&f, 6, 1, &fixed, &mut rng);
        assert_eq!(line, Subspace::from_vectors(&f, 6, std::slice::from_ref(&fixed)));
        for _ in 0..1000 {
            let s = sample_subspace_containing(&f, 6, 3, &fixed, &mut rng);
            assert_eq!(s.dim(), 3);
            assert!(s.contains_vector(&fixed));
        }
    }

    /// The 7 planes of GF(2)^4 through e1, counted by brute force over pairs
    /// {e1, w} modulo span, then checked for uniform sampling.
    #[test]
    fn containing_sampler_uniform_m4_d2() {
        let f = gf2();
        let fixed = unit(4, 0);
        let mut planes = std::collections::HashSet::new();
        for w in 1u64..16 {
            let wv: Vec<_> = (0..4).map(|i| FieldElement::from_raw((w >> i) & 1)).collect();
            let s = Subspace::from_vectors(&f, 4, &[fixed.clone(), wv]);
            if s.dim() == 2 {
                planes.insert(s);
            }
        }
        assert_eq!(planes.len(), 7);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 7000usize;
        let mut counts: HashMap<Subspace, usize> = HashMap::new();
        for _ in 0..n {
            *counts.entry(sample_subspace_containing(&f, 4, 2, &fixed, &mut rng)).or_default() += 1;
        }
        assert_eq!(counts.len(), 7);
        let p = 1.0 / 7.0;
        let sigma = (n as f64 * p * (1.0 - p)).sqrt();
        for &c in counts.values() {
            assert!((c as f64 - n as f64 * p).abs() <= 3.0 * sigma, "count {c}");
        }
    }

    #[test]
    fn scaling_preserves_dimension() {
        let field = Field::new(2, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let s = sample_subspace(&field.base_field(), 8, 3, &mut rng);
        let b = field.random_nonzero(&mut rng);
        let t = s.scaled(&field, b);
        assert_eq!(t.dim(), 3);
        for e in s.elements() {
            assert!(t.contains_element(field.mul(b, e)));
        }
    }
}
