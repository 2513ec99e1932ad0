//! Dense linear algebra over a [`Field`] (either GF(q) or GF(q^m)).

mod subspace;

pub use subspace::{sample_subspace, sample_subspace_containing, Subspace};

use crate::gfqm::{Field, FieldElement};

/// Row-major dense matrix. Entries are interpreted in whichever field is
/// passed to the arithmetic methods.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// Output of [`Matrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Result of solving `A·x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Inconsistent,
    Consistent {
        particular: Vec<FieldElement>,
        kernel: Vec<Vec<FieldElement>>,
    },
}

impl Solution {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Solution::Consistent { .. })
    }

    /// The particular solution when the kernel is trivial.
    pub fn unique(&self) -> Option<&[FieldElement]> {
        match self {
            Solution::Consistent { particular, kernel } if kernel.is_empty() => Some(particular),
            _ => None,
        }
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<FieldElement>) -> Self {
        assert_eq!(rows * cols, data.len(), "entry count must equal rows*cols");
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors; `cols` is needed for the empty case.
    pub fn from_rows(cols: usize, rows: &[Vec<FieldElement>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn random<R: rand::Rng + ?Sized>(field: &Field, rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| field.random(rng)).collect();
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, field: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, field.add(cur, field.mul(a, other.get(l, j))));
                }
            }
        }
        out
    }

    /// `A·v` for a column vector `v`.
    pub fn mul_vec(&self, field: &Field, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows).map(|i| field.dot(self.row(i), v)).collect()
    }

    /// `v·A` for a row vector `v`.
    pub fn vec_mul(&self, field: &Field, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(self.rows, v.len(), "dimension mismatch in vector-matrix product");
        let mut out = vec![FieldElement::ZERO; self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.row(i)) {
                *o = field.add(*o, field.mul(c, x));
            }
        }
        out
    }

    /// Appends the columns of `other` to the right.
    pub fn hconcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Matrix { rows: self.rows, cols, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Gauss–Jordan reduction in place over the first `limit` columns;
    /// returns the pivot columns. Pivots are taken on the first row at or
    /// below the current one with a nonzero entry.
    fn reduce_in_place(&mut self, field: &Field, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = field.inv(self.get(r, c)).expect("pivot is nonzero");
            if inv != FieldElement::ONE {
                for j in c..self.cols {
                    let v = self.get(r, j);
                    self.set(r, j, field.mul(inv, v));
                }
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = field.sub(self.get(i, j), field.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form, rank and pivot columns.
    pub fn rref(&self, field: &Field) -> Rref {
        let mut matrix = self.clone();
        let pivots = matrix.reduce_in_place(field, self.cols);
        Rref {
            rank: pivots.len(),
            matrix,
            pivots,
        }
    }

    pub fn rank(&self, field: &Field) -> usize {
        self.rref(field).rank
    }

    /// Basis of `{v : A·v = 0}`, one vector per free column.
    pub fn kernel(&self, field: &Field) -> Vec<Vec<FieldElement>> {
        let Rref { matrix, pivots, .. } = self.rref(field);
        kernel_from_rref(field, &matrix, &pivots, self.cols)
    }

    /// Solves `A·x = b`: a particular solution plus a kernel basis, or
    /// [`Solution::Inconsistent`].
    pub fn solve(&self, field: &Field, b: &[FieldElement]) -> Solution {
        assert_eq!(self.rows, b.len(), "right-hand side length must equal row count");
        let aug = self.hconcat(&Matrix::from_vec(b.len(), 1, b.to_vec()));
        let mut reduced = aug;
        let pivots = reduced.reduce_in_place(field, self.cols);
        let rank = pivots.len();
        if (rank..self.rows).any(|i| !reduced.get(i, self.cols).is_zero()) {
            return Solution::Inconsistent;
        }
        let mut particular = vec![FieldElement::ZERO; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            particular[p] = reduced.get(i, self.cols);
        }
        let kernel = kernel_from_rref(field, &reduced, &pivots, self.cols);
        Solution::Consistent { particular, kernel }
    }
}

fn kernel_from_rref(field: &Field, rref: &Matrix, pivots: &[usize], cols: usize) -> Vec<Vec<FieldElement>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![FieldElement::ZERO; cols];
            v[free] = FieldElement::ONE;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(rref.get(i, free));
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf2() -> Field {
        Field::prime(2).unwrap()
    }

    fn m(rows: usize, cols: usize, v: &[u64]) -> Matrix {
        Matrix::from_vec(rows, cols, v.iter().map(|&x| FieldElement::from_raw(x)).collect())
    }

    #[test]
    fn rref_examples() {
        let f = gf2();
        let id = Matrix::identity(4);
        let r = id.rref(&f);
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 4);

        let z = Matrix::zeros(3, 5);
        let r = z.rref(&f);
        assert_eq!(r.rank, 0);
        assert!(r.matrix.is_zero());

        let a = m(2, 2, &[1, 1, 1, 1]);
        let r = a.rref(&f);
        assert_eq!(r.matrix, m(2, 2, &[1, 1, 0, 0]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn solve_examples() {
        let f = Field::new(2, 4).unwrap();
        let b: Vec<_> = [3u64, 9, 14].iter().map(|&x| FieldElement::from_raw(x)).collect();
        match Matrix::identity(3).solve(&f, &b) {
            Solution::Consistent { particular, kernel } => {
                assert_eq!(particular, b);
                assert!(kernel.is_empty());
            }
            Solution::Inconsistent => panic!("identity system is consistent"),
        }
        assert_eq!(Matrix::zeros(3, 3).solve(&f, &b), Solution::Inconsistent);
    }

    #[test]
    fn solve_recovers_planted_solution() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = Field::new(2, 8).unwrap();
        for _ in 0..50 {
            let a = loop {
                let a = Matrix::random(&f, 9, 6, &mut rng);
                if a.rank(&f) == 6 {
                    break a;
                }
            };
            let x0: Vec<_> = (0..6).map(|_| f.random(&mut rng)).collect();
            let b = a.mul_vec(&f, &x0);
            assert_eq!(a.solve(&f, &b).unique(), Some(&x0[..]));
        }
    }

    #[test]
    fn kernel_examples() {
        let f = Field::new(3, 2).unwrap();
        assert!(Matrix::identity(5).kernel(&f).is_empty());
        assert_eq!(Matrix::zeros(4, 4).kernel(&f).len(), 4);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let a = Matrix::random(&f, 4, 7, &mut rng);
            let ker = a.kernel(&f);
            assert_eq!(ker.len(), 7 - a.rank(&f));
            for v in &ker {
                assert!(a.mul_vec(&f, v).iter().all(|x| x.is_zero()));
            }
            assert_eq!(Matrix::from_rows(7, &ker).rank(&f), ker.len());
        }
    }

    #[test]
    fn rref_idempotent_and_rank_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for &(q, deg) in &[(2, 1), (2, 5), (5, 1), (3, 3)] {
            let f = Field::new(q, deg).unwrap();
            for _ in 0..40 {
                let a = Matrix::random(&f, 5, 8, &mut rng);
                let r = a.rref(&f);
                assert_eq!(r.matrix.rref(&f).matrix, r.matrix);
                assert_eq!(a.transpose().rank(&f), r.rank);
            }
        }
    }

    #[test]
    fn affine_solution_set_satisfies_system() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let f = Field::new(2, 6).unwrap();
        for _ in 0..40 {
            let a = Matrix::random(&f, 4, 7, &mut rng);
            let x0: Vec<_> = (0..7).map(|_| f.random(&mut rng)).collect();
            let b = a.mul_vec(&f, &x0);
            let Solution::Consistent { particular, kernel } = a.solve(&f, &b) else {
                panic!("planted system must be consistent");
            };
            let mut x = particular.clone();
            for k in &kernel {
                let c = f.random(&mut rng);
                x = f.add_vec(&x, &f.scale_vec(c, k));
            }
            assert_eq!(a.mul_vec(&f, &x), b);
        }
    }
}
