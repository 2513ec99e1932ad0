//! The rank syndrome decoding problem: codes over GF(q^m), rank-weight
//! errors, syndromes, and planted instances.

mod io;

pub use io::{read_instance, write_instance, ParseError, ParseErrorKind};

use rand::Rng;
use thiserror::Error;

use crate::gfqm::{Field, FieldElement, FieldError};
use crate::linalg::{sample_subspace, Matrix, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RsdError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("invalid code parameters: {0}")]
    Params(String),
    #[error("Gabidulin support vector has rank weight {found}, need {needed}")]
    GabidulinSupport { found: usize, needed: usize },
    #[error("generator matrix has rank {rank}, expected {k}")]
    RankDeficientGenerator { rank: usize, k: usize },
    #[error("hidden solution does not match the instance: {0}")]
    BadHiddenSolution(Rejection),
}

/// Why a candidate solution was rejected.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Rejection {
    #[error("{what} has length {found}, expected {expected}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("y differs from x·G + e")]
    NotADecomposition,
    #[error("error has rank weight {rank}, more than {max}")]
    RankTooLarge { rank: usize, max: usize },
    #[error("error has rank weight {rank}, expected exactly {expected}")]
    RankNotExact { rank: usize, expected: usize },
}

/// (q, m, n, k, r) for an RSD instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeParams {
    pub q: u32,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub r: usize,
}

impl CodeParams {
    pub fn new(q: u32, m: usize, n: usize, k: usize, r: usize) -> Result<Self, RsdError> {
        let p = CodeParams { q, m, n, k, r };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), RsdError> {
        let CodeParams { m, n, k, r, .. } = *self;
        if !(0 < k && k < n) {
            return Err(RsdError::Params(format!("need 0 < k < n, got k = {k}, n = {n}")));
        }
        if r > m || r > n - k {
            return Err(RsdError::Params(format!(
                "need r <= min(n - k, m), got r = {r}, n - k = {}, m = {m}",
                n - k
            )));
        }
        Ok(())
    }

    pub fn field(&self) -> Result<Field, RsdError> {
        Ok(Field::new(self.q, self.m)?)
    }

    /// Heuristic check for multiple solutions: the expected number of
    /// rank-r vectors sharing a given syndrome is about
    /// `q^{r(m+n−r) − m(n−k)}`; above 1 the planted solution is unlikely to
    /// be unique.
    pub fn uniqueness_warning(&self) -> Option<String> {
        let CodeParams { m, n, k, r, .. } = *self;
        let ball = (r * (m + n - r)) as i64;
        let syndromes = (m * (n - k)) as i64;
        (ball >= syndromes).then(|| {
            format!(
                "r = {r} is at or beyond the rank Gilbert-Varshamov radius for (m, n, k) = ({m}, {n}, {k}); \
                 about q^{} solutions expected, decoding may not be unique",
                ball - syndromes
            )
        })
    }
}

/// Hidden decomposition y = x·G + e.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RsdSolution {
    pub x: Vec<FieldElement>,
    pub e: Vec<FieldElement>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeKind {
    Random,
    Gabidulin,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsdInstance {
    pub params: CodeParams,
    pub field: Field,
    /// k×n generator matrix.
    pub g: Matrix,
    /// (n−k)×n parity-check matrix with G·Hᵀ = 0.
    pub h: Matrix,
    pub y: Vec<FieldElement>,
    pub hidden: Option<RsdSolution>,
}

/// Rank over GF(q) of the coordinate expansion of `v`.
pub fn rank_weight(field: &Field, v: &[FieldElement]) -> usize {
    field.expand(v).rank(&field.base_field())
}

/// GF(q)-span of the coordinates of `v`.
pub fn support(field: &Field, v: &[FieldElement]) -> Subspace {
    Subspace::span_of(field, v)
}

/// Parity-check matrix whose rows are the canonical kernel basis of G.
pub fn parity_check(field: &Field, g: &Matrix) -> Matrix {
    Matrix::from_rows(g.cols(), &g.kernel(field))
}

/// Full-rank k×n generator drawn uniformly, with its parity-check matrix.
pub fn random_code<R: Rng + ?Sized>(field: &Field, k: usize, n: usize, rng: &mut R) -> (Matrix, Matrix) {
    let g = loop {
        let g = Matrix::random(field, k, n, rng);
        if g.rank(field) == k {
            break g;
        }
    };
    let h = parity_check(field, &g);
    (g, h)
}

/// Moore matrix `G[i][j] = g_j^{q^i}`, i < k. `g` must have rank weight
/// `g.len()`.
pub fn gabidulin_generator(field: &Field, k: usize, g: &[FieldElement]) -> Result<Matrix, RsdError> {
    let n = g.len();
    let found = rank_weight(field, g);
    if found != n {
        return Err(RsdError::GabidulinSupport { found, needed: n });
    }
    let mut out = Matrix::zeros(k, n);
    let mut row = g.to_vec();
    for i in 0..k {
        for (j, &x) in row.iter().enumerate() {
            out.set(i, j, x);
        }
        row = row.iter().map(|&x| field.frobenius(x, 1)).collect();
    }
    Ok(out)
}

/// Error of rank exactly `r`: a uniform support of dimension r combined
/// through a full-rank r×n coefficient matrix over GF(q).
pub fn sample_error<R: Rng + ?Sized>(field: &Field, n: usize, r: usize, rng: &mut R) -> Vec<FieldElement> {
    assert!(r <= field.m() && r <= n, "rank {r} impossible for m = {}, n = {n}", field.m());
    let base = field.base_field();
    let support = sample_subspace(&base, field.m(), r, rng).basis_elements();
    let coeffs = loop {
        let c = Matrix::random(&base, r, n, rng);
        if c.rank(&base) == r {
            break c;
        }
    };
    (0..n)
        .map(|i| {
            (0..r).fold(FieldElement::ZERO, |acc, j| {
                field.add(acc, field.mul(coeffs.get(j, i), support[j]))
            })
        })
        .collect()
}

/// H·vᵀ.
pub fn syndrome(field: &Field, h: &Matrix, v: &[FieldElement]) -> Vec<FieldElement> {
    h.mul_vec(field, v)
}

/// Solves x·G = c; `None` if c is not a codeword.
pub fn recover_message(field: &Field, g: &Matrix, codeword: &[FieldElement]) -> Option<Vec<FieldElement>> {
    match g.transpose().solve(field, codeword) {
        crate::linalg::Solution::Consistent { particular, .. } => Some(particular),
        crate::linalg::Solution::Inconsistent => None,
    }
}

impl RsdInstance {
    /// Assembles an instance, deriving H from G and checking the hidden
    /// solution when present.
    pub fn from_parts(
        params: CodeParams,
        field: Field,
        g: Matrix,
        y: Vec<FieldElement>,
        hidden: Option<RsdSolution>,
    ) -> Result<Self, RsdError> {
        params.validate()?;
        assert_eq!((g.rows(), g.cols()), (params.k, params.n), "generator shape");
        assert_eq!(y.len(), params.n, "received word length");
        let rank = g.rank(&field);
        if rank != params.k {
            return Err(RsdError::RankDeficientGenerator { rank, k: params.k });
        }
        let h = parity_check(&field, &g);
        let inst = RsdInstance {
            params,
            field,
            g,
            h,
            y,
            hidden: None,
        };
        if let Some(sol) = &hidden {
            inst.verify(sol, true).map_err(RsdError::BadHiddenSolution)?;
        }
        Ok(RsdInstance { hidden, ..inst })
    }

    /// Fresh code, uniform message, rank-r error; the solution is kept.
    pub fn generate<R: Rng + ?Sized>(params: CodeParams, kind: CodeKind, rng: &mut R) -> Result<Self, RsdError> {
        params.validate()?;
        let field = params.field()?;
        let CodeParams { n, k, r, .. } = params;
        let g = match kind {
            CodeKind::Random => random_code(&field, k, n, rng).0,
            CodeKind::Gabidulin => {
                if n > field.m() {
                    return Err(RsdError::Params(format!(
                        "Gabidulin codes need n <= m, got n = {n}, m = {}",
                        field.m()
                    )));
                }
                let support = loop {
                    let v: Vec<_> = (0..n).map(|_| field.random(rng)).collect();
                    if rank_weight(&field, &v) == n {
                        break v;
                    }
                };
                gabidulin_generator(&field, k, &support)?
            }
        };
        let x: Vec<_> = (0..k).map(|_| field.random(rng)).collect();
        let e = sample_error(&field, n, r, rng);
        let y = field.add_vec(&g.vec_mul(&field, &x), &e);
        Self::from_parts(params, field, g, y, Some(RsdSolution { x, e }))
    }

    pub fn syndrome(&self) -> Vec<FieldElement> {
        syndrome(&self.field, &self.h, &self.y)
    }

    /// Drops the hidden solution.
    pub fn public(&self) -> RsdInstance {
        RsdInstance {
            hidden: None,
            ..self.clone()
        }
    }

    /// Accepts iff y = x·G + e and rank(e) ≤ r (or = r when `exact_rank`).
    pub fn verify(&self, sol: &RsdSolution, exact_rank: bool) -> Result<(), Rejection> {
        let CodeParams { n, k, r, .. } = self.params;
        if sol.x.len() != k {
            return Err(Rejection::DimensionMismatch {
                what: "message",
                expected: k,
                found: sol.x.len(),
            });
        }
        if sol.e.len() != n {
            return Err(Rejection::DimensionMismatch {
                what: "error",
                expected: n,
                found: sol.e.len(),
            });
        }
        let f = &self.field;
        if f.add_vec(&self.g.vec_mul(f, &sol.x), &sol.e) != self.y {
            return Err(Rejection::NotADecomposition);
        }
        let rank = rank_weight(f, &sol.e);
        if rank > r {
            return Err(Rejection::RankTooLarge { rank, max: r });
        }
        if exact_rank && rank != r {
            return Err(Rejection::RankNotExact { rank, expected: r });
        }
        Ok(())
    }

    /// Completes an error vector into a solution by solving x·G = y − e.
    pub fn solution_from_error(&self, e: Vec<FieldElement>) -> Option<RsdSolution> {
        let c = self.field.sub_vec(&self.y, &e);
        let x = recover_message(&self.field, &self.g, &c)?;
        Some(RsdSolution { x, e })
    }
}
