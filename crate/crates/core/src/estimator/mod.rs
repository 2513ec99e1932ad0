//! Closed-form bit-complexity estimates for generic rank syndrome decoding
//! attacks, plus the counting helpers they rely on.
//!
//! Every estimate is returned as a base-2 logarithm split into a polynomial
//! part and an exponential part, tagged with the unit of operation its
//! formula counts. The linear-algebra exponent ω (default 3) replaces the
//! cubic exponent of every polynomial factor.

mod dreg;
mod tables;

pub use dreg::{
    degree_of_regularity, degree_of_regularity_paper_variant, semi_regular_series, series_first_nonpositive,
};
pub use tables::{paper_rows, render_tables, PaperRow, TableReport, TableRow};

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

pub const DEFAULT_OMEGA: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostUnit {
    /// Operations in the prime field GF(q).
    GfQ,
    /// Operations in the extension field GF(q^m).
    GfQm,
    /// The source formula counts "operations" without naming a field.
    Unstated,
}

impl fmt::Display for CostUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CostUnit::GfQ => "GF(q)-ops",
            CostUnit::GfQm => "GF(q^m)-ops",
            CostUnit::Unstated => "ops",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostEstimate {
    /// `polynomial_part + exponent_part`; +∞ when infeasible.
    pub log2_ops: f64,
    pub polynomial_part: f64,
    pub exponent_part: f64,
    pub unit: CostUnit,
    pub feasible: bool,
    /// Which branch of a min-of-several formula was selected.
    pub branch: Option<&'static str>,
}

impl CostEstimate {
    fn new(polynomial_part: f64, exponent_part: f64, unit: CostUnit) -> Self {
        CostEstimate {
            log2_ops: polynomial_part + exponent_part,
            polynomial_part,
            exponent_part,
            unit,
            feasible: true,
            branch: None,
        }
    }

    fn infeasible(unit: CostUnit) -> Self {
        CostEstimate {
            log2_ops: f64::INFINITY,
            polynomial_part: f64::INFINITY,
            exponent_part: 0.0,
            unit,
            feasible: false,
            branch: None,
        }
    }

    fn with_branch(mut self, branch: &'static str) -> Self {
        self.branch = Some(branch);
        self
    }
}

impl fmt::Display for CostEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.feasible {
            return write!(f, "inf");
        }
        write!(f, "2^{:.2} {}", self.log2_ops, self.unit)
    }
}

/// Code and field parameters for estimates. Unlike
/// [`crate::rsd::CodeParams`], no decodability constraints are enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EstimateParams {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub m: usize,
    pub q: u32,
}

impl EstimateParams {
    pub fn new(n: usize, k: usize, r: usize, m: usize, q: u32) -> Self {
        EstimateParams { n, k, r, m, q }
    }

    fn log2_q(&self) -> f64 {
        (self.q as f64).log2()
    }
}

fn log2_usize(x: usize) -> f64 {
    (x.max(1) as f64).log2()
}

/// log2 of a big integer, accurate to double precision.
pub fn log2_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").log2();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("64-bit value").log2() + shift as f64
}

/// Basis enumeration: (nr+m)^ω · q^{(m−r)(r−1)}.
pub fn cost_chabaud_stern(p: EstimateParams, omega: f64) -> CostEstimate {
    let poly = omega * log2_usize(p.n * p.r + p.m);
    let exp = (p.m.saturating_sub(p.r) * p.r.saturating_sub(1)) as f64 * p.log2_q();
    CostEstimate::new(poly, exp, CostUnit::Unstated)
}

/// Improved basis enumeration: (k+r)^ω · q^{(m−r)(r−1)+2}.
pub fn cost_oj_basis(p: EstimateParams, omega: f64) -> CostEstimate {
    let poly = omega * log2_usize(p.k + p.r);
    let exp = (p.m.saturating_sub(p.r) * p.r.saturating_sub(1) + 2) as f64 * p.log2_q();
    CostEstimate::new(poly, exp, CostUnit::Unstated)
}

/// Coordinate enumeration: (k+r)^ω r^ω · q^{(r−1)(k+1)}.
pub fn cost_oj_coords(p: EstimateParams, omega: f64) -> CostEstimate {
    let poly = omega * (log2_usize(p.k + p.r) + log2_usize(p.r));
    let exp = (p.r.saturating_sub(1) * (p.k + 1)) as f64 * p.log2_q();
    CostEstimate::new(poly, exp, CostUnit::Unstated)
}

fn es_polynomial(p: EstimateParams, omega: f64) -> f64 {
    omega * (log2_usize(p.n - p.k) + log2_usize(p.m))
}

/// Error-support attack, first branch: (n−k)^ω m^ω · q^{r⌊km/n⌋}.
pub fn cost_es_v1(p: EstimateParams, omega: f64) -> CostEstimate {
    let exp = (p.r * (p.k * p.m / p.n)) as f64 * p.log2_q();
    CostEstimate::new(es_polynomial(p, omega), exp, CostUnit::GfQ).with_branch("v1")
}

/// Error-support attack, extended-code branch: (n−k)^ω m^ω · q^{(r−1)⌊(k+1)m/n⌋}.
pub fn cost_es_v2(p: EstimateParams, omega: f64) -> CostEstimate {
    if p.r == 0 || p.n < p.k + 2 {
        return CostEstimate::infeasible(CostUnit::GfQ).with_branch("v2");
    }
    let exp = ((p.r - 1) * ((p.k + 1) * p.m / p.n)) as f64 * p.log2_q();
    CostEstimate::new(es_polynomial(p, omega), exp, CostUnit::GfQ).with_branch("v2")
}

/// The cheaper of the two error-support branches (v1 on ties).
pub fn cost_es(p: EstimateParams, omega: f64) -> CostEstimate {
    let v1 = cost_es_v1(p, omega);
    let v2 = cost_es_v2(p, omega);
    if v2.log2_ops < v1.log2_ops {
        v2
    } else {
        v1
    }
}

/// Number of linearized monomials, (r+1)(k+1)−1.
pub fn linearized_unknowns(k: usize, r: usize) -> usize {
    (r + 1) * (k + 1) - 1
}

/// Plain linearization: ((r+1)(k+1)−1)^ω GF(q^m) operations when
/// n ≥ (r+1)(k+1)−1, infeasible otherwise.
pub fn cost_linearization(p: EstimateParams, omega: f64) -> CostEstimate {
    let unknowns = linearized_unknowns(p.k, p.r);
    if p.n < unknowns {
        return CostEstimate::infeasible(CostUnit::GfQm);
    }
    CostEstimate::new(omega * log2_usize(unknowns), 0.0, CostUnit::GfQm)
}

/// Number of zero-error combinations to guess: max(0, ⌈((r+1)(k+1)−(n+1))/r⌉).
pub fn hybrid_t(n: usize, k: usize, r: usize) -> usize {
    let need = ((r + 1) * (k + 1)) as i64 - (n + 1) as i64;
    if need <= 0 || r == 0 {
        return 0;
    }
    (need as usize).div_ceil(r)
}

/// Hybrid linearization: (rk)^ω · q^{rt}, feasible when t ≤ k.
pub fn cost_hybrid(p: EstimateParams, omega: f64) -> CostEstimate {
    let t = hybrid_t(p.n, p.k, p.r);
    if t > p.k {
        return CostEstimate::infeasible(CostUnit::GfQm);
    }
    let poly = omega * log2_usize(p.r * p.k);
    let exp = (p.r * t) as f64 * p.log2_q();
    CostEstimate::new(poly, exp, CostUnit::GfQm)
}

/// Number of d-dimensional subspaces of GF(q)^m, exact.
pub fn gaussian_binomial(m: usize, d: usize, q: u32) -> BigUint {
    if d > m {
        return BigUint::zero();
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..d {
        num *= q.pow((m - i) as u32) - BigUint::one();
        den *= q.pow((i + 1) as u32) - BigUint::one();
    }
    num / den
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// #M_d(u) = C(u+d−1, d), the number of degree-d monomials in u variables.
pub fn monomial_count(u: usize, d: usize) -> BigUint {
    if u == 0 {
        return if d == 0 { BigUint::one() } else { BigUint::zero() };
    }
    binomial((u + d - 1) as u64, d as u64)
}

/// Gröbner basis bound n_eq · C(n_var + d_reg − 1, d_reg)^ω. Informational
/// only; no Gröbner solver is implemented.
pub fn f5_cost(n_eq: usize, n_var: usize, d_reg: usize, omega: f64) -> CostEstimate {
    let poly = log2_usize(n_eq) + omega * log2_big(&monomial_count(n_var, d_reg));
    CostEstimate::new(poly, 0.0, CostUnit::GfQm)
}

/// All columns for one parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateSummary {
    pub params: EstimateParams,
    pub omega: f64,
    pub chabaud_stern: CostEstimate,
    pub oj_basis: CostEstimate,
    pub oj_coords: CostEstimate,
    pub es_v1: CostEstimate,
    pub es_v2: CostEstimate,
    pub es: CostEstimate,
    pub linearization: CostEstimate,
    pub hybrid_t: usize,
    pub hybrid: CostEstimate,
}

pub fn estimate_all(p: EstimateParams, omega: f64) -> EstimateSummary {
    EstimateSummary {
        params: p,
        omega,
        chabaud_stern: cost_chabaud_stern(p, omega),
        oj_basis: cost_oj_basis(p, omega),
        oj_coords: cost_oj_coords(p, omega),
        es_v1: cost_es_v1(p, omega),
        es_v2: cost_es_v2(p, omega),
        es: cost_es(p, omega),
        linearization: cost_linearization(p, omega),
        hybrid_t: hybrid_t(p.n, p.k, p.r),
        hybrid: cost_hybrid(p, omega),
    }
}
