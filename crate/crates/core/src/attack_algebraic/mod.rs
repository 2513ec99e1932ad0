//! Annihilator-polynomial algebraic attack.
//!
//! If `e = y − x·G` has support E of dimension r, the monic q-polynomial
//! `P = x^{q^r} + Σ_{a<r} p_a x^{q^a}` vanishing on E kills every `e_j`.
//! Expanding `P(y_j − Σ_i x_i g_ij) = 0` with Frobenius additivity gives n
//! equations that are linear in the monomials `p_a x_i^{q^a}`, `x_i^{q^r}`
//! and `p_a`. When there are at least as many equations as monomials the
//! system is solved directly; otherwise the hybrid variant first guesses t
//! GF(q)-combinations of the coordinates with zero combined error.

mod export;

pub use export::{export_polynomial_system, parse_polynomial_system, PolySystem, PolyTerm};

use std::time::Instant;

use rand::Rng;

use crate::estimator::{hybrid_t, linearized_unknowns};
use crate::gfqm::{Field, FieldElement};
use crate::linalg::{Matrix, Solution};
use crate::qpoly::QPolynomial;
use crate::report::{AttackOutcome, AttackReport};
use crate::rsd::{rank_weight, CodeParams, RsdInstance, RsdSolution};
use crate::trials;

/// Kernels of the linearized system are enumerated only up to this many
/// candidate vectors.
pub const MAX_LINEARIZED_CANDIDATES: u64 = 1 << 16;

/// Tag of a linearized unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Monomial {
    /// p_a · x_i^{q^a}, a < r.
    PC { a: usize, i: usize },
    /// x_i^{q^r}.
    CR { i: usize },
    /// p_a, a < r.
    P { a: usize },
}

#[derive(Debug, Clone)]
pub struct LinearizedSystem {
    pub r: usize,
    pub k: usize,
    pub monomials: Vec<Monomial>,
    pub matrix: Matrix,
    pub rhs: Vec<FieldElement>,
}

impl LinearizedSystem {
    pub fn column(&self, mono: Monomial) -> usize {
        let (r, k) = (self.r, self.k);
        match mono {
            Monomial::PC { a, i } => a * k + i,
            Monomial::CR { i } => r * k + i,
            Monomial::P { a } => r * k + k + a,
        }
    }

    /// Values of every monomial at message `x` and monic annihilator `p`.
    pub fn monomial_values(&self, field: &Field, x: &[FieldElement], p: &QPolynomial) -> Vec<FieldElement> {
        self.monomials
            .iter()
            .map(|&mono| match mono {
                Monomial::PC { a, i } => field.mul(p.coeff(a), field.frobenius(x[i], a)),
                Monomial::CR { i } => field.frobenius(x[i], self.r),
                Monomial::P { a } => p.coeff(a),
            })
            .collect()
    }

    /// Reads a message and annihilator off a solution vector, checking the
    /// multiplicative structure and the rank of the implied error.
    pub fn extract(&self, field: &Field, g: &Matrix, y: &[FieldElement], v: &[FieldElement]) -> Option<LinSolution> {
        let (r, k, m) = (self.r, self.k, field.m());
        let back = (m - r % m) % m;
        let x: Vec<FieldElement> = (0..k)
            .map(|i| field.frobenius(v[self.column(Monomial::CR { i })], back))
            .collect();
        for a in 0..r {
            let pa = v[self.column(Monomial::P { a })];
            for (i, &xi) in x.iter().enumerate() {
                if v[self.column(Monomial::PC { a, i })] != field.mul(pa, field.frobenius(xi, a)) {
                    return None;
                }
            }
        }
        let e = field.sub_vec(y, &g.vec_mul(field, &x));
        if rank_weight(field, &e) != r {
            return None;
        }
        let mut coeffs: Vec<FieldElement> = (0..r).map(|a| v[self.column(Monomial::P { a })]).collect();
        coeffs.push(field.one());
        Some(LinSolution {
            x,
            e,
            annihilator: QPolynomial::from_coeffs(coeffs),
        })
    }
}

/// Builds the n linearized equations for `y = x·G + e`, rank(e) = r.
/// `g` is k × n; k = 0 is allowed.
pub fn build_linearized_system(field: &Field, g: &Matrix, y: &[FieldElement], r: usize) -> LinearizedSystem {
    let (k, n) = (g.rows(), g.cols());
    assert_eq!(y.len(), n, "received word length");
    let mut monomials = Vec::with_capacity(linearized_unknowns(k, r));
    for a in 0..r {
        for i in 0..k {
            monomials.push(Monomial::PC { a, i });
        }
    }
    monomials.extend((0..k).map(|i| Monomial::CR { i }));
    monomials.extend((0..r).map(|a| Monomial::P { a }));

    let mut sys = LinearizedSystem {
        r,
        k,
        matrix: Matrix::zeros(n, monomials.len()),
        monomials,
        rhs: Vec::with_capacity(n),
    };
    for (j, &yj) in y.iter().enumerate() {
        for i in 0..k {
            let mut gq = g.get(i, j);
            for a in 0..r {
                sys.matrix.set(j, sys.column(Monomial::PC { a, i }), field.neg(gq));
                gq = field.frobenius(gq, 1);
            }
            sys.matrix.set(j, sys.column(Monomial::CR { i }), field.neg(gq));
        }
        let mut yq = yj;
        for a in 0..r {
            sys.matrix.set(j, sys.column(Monomial::P { a }), yq);
            yq = field.frobenius(yq, 1);
        }
        sys.rhs.push(field.neg(yq));
    }
    sys
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinSolution {
    pub x: Vec<FieldElement>,
    pub e: Vec<FieldElement>,
    pub annihilator: QPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinFailure {
    Inconsistent,
    /// Kernel too large to enumerate.
    Underdetermined { kernel_dim: usize },
    /// No solution vector had the multiplicative structure and rank r.
    NoConsistentCandidate,
}

impl std::fmt::Display for LinFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LinFailure::Inconsistent => write!(f, "linearized system is inconsistent"),
            LinFailure::Underdetermined { kernel_dim } => {
                write!(f, "linearized system is underdetermined (kernel dimension {kernel_dim})")
            }
            LinFailure::NoConsistentCandidate => write!(f, "no solution of the linearized system has rank-r structure"),
        }
    }
}

/// Solves the linearized system of `(g, y, r)` and extracts `(x, e, P)`.
pub fn solve_linearized(field: &Field, g: &Matrix, y: &[FieldElement], r: usize) -> Result<LinSolution, LinFailure> {
    let sys = build_linearized_system(field, g, y, r);
    let (particular, kernel) = match sys.matrix.solve(field, &sys.rhs) {
        Solution::Inconsistent => return Err(LinFailure::Inconsistent),
        Solution::Consistent { particular, kernel } => (particular, kernel),
    };
    if kernel.is_empty() {
        return sys.extract(field, g, y, &particular).ok_or(LinFailure::NoConsistentCandidate);
    }
    let d = kernel.len();
    let order = field.order();
    let total = match order.checked_pow(d as u32) {
        Some(t) if t <= MAX_LINEARIZED_CANDIDATES => t,
        _ => return Err(LinFailure::Underdetermined { kernel_dim: d }),
    };
    for mut idx in 0..total {
        let mut v = particular.clone();
        for dir in &kernel {
            let c = FieldElement::from_raw(idx % order);
            idx /= order;
            if !c.is_zero() {
                v = field.add_vec(&v, &field.scale_vec(c, dir));
            }
        }
        if let Some(sol) = sys.extract(field, g, y, &v) {
            return Ok(sol);
        }
    }
    Err(LinFailure::NoConsistentCandidate)
}

/// Deterministic linearization attack; infeasible when n < (r+1)(k+1)−1.
pub fn lin_attack(inst: &RsdInstance) -> AttackReport {
    let CodeParams { n, k, r, .. } = inst.params;
    let unknowns = linearized_unknowns(k, r);
    if n < unknowns {
        return AttackReport::infeasible("lin", format!("n = {n} < {unknowns} linearized unknowns"));
    }
    let start = Instant::now();
    let outcome = match solve_linearized(&inst.field, &inst.g, &inst.y, r) {
        Ok(sol) => {
            let sol = RsdSolution { x: sol.x, e: sol.e };
            match inst.verify(&sol, true) {
                Ok(()) => AttackOutcome::Solved(sol),
                Err(why) => AttackOutcome::Failed(format!("candidate rejected: {why}")),
            }
        }
        Err(why) => AttackOutcome::Failed(why.to_string()),
    };
    let mut report = AttackReport {
        attack: "lin",
        outcome,
        trials: 1,
        trials_executed: 1,
        elapsed: start.elapsed(),
        predicted_trials: Some(1.0),
        details: Vec::new(),
    };
    report.detail("unknowns", unknowns);
    report
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HybridConfig {
    /// Number of guessed zero-error combinations; defaults to the smallest
    /// value making the reduced system linearizable.
    pub t: Option<usize>,
    /// Defaults to 64 q^{rt}.
    pub max_rounds: Option<u64>,
    pub seed: u64,
    pub workers: usize,
}

impl HybridConfig {
    pub fn new(seed: u64) -> Self {
        HybridConfig {
            t: None,
            max_rounds: None,
            seed,
            workers: 1,
        }
    }
}

/// Uniform nonzero vector of GF(q)^n.
pub fn sample_combination<R: Rng + ?Sized>(q: u32, n: usize, rng: &mut R) -> Vec<u32> {
    loop {
        let v: Vec<u32> = (0..n).map(|_| rng.gen_range(0..q)).collect();
        if v.iter().any(|&c| c != 0) {
            return v;
        }
    }
}

/// Σ_j λ_j v_j.
pub fn combine(field: &Field, lambda: &[u32], v: &[FieldElement]) -> FieldElement {
    lambda
        .iter()
        .zip(v)
        .fold(field.zero(), |acc, (&l, &x)| field.add(acc, field.scale(l, x)))
}

/// One guess-and-solve round.
#[derive(Debug, Clone)]
pub struct HybridRound {
    /// The t combinations that were assumed to have zero error.
    pub lambdas: Vec<Vec<u32>>,
    /// Solution of the reduced instance, lifted back (not yet verified
    /// against the full instance).
    pub solution: Option<RsdSolution>,
}

const MAX_GUESS_RESAMPLES: usize = 1000;

/// Guesses t zero-error combinations, restricts x to the affine solution
/// space of the implied constraints and linearizes what is left.
pub fn hybrid_round<R: Rng + ?Sized>(
    field: &Field,
    g: &Matrix,
    y: &[FieldElement],
    r: usize,
    t: usize,
    rng: &mut R,
) -> HybridRound {
    let (k, n) = (g.rows(), g.cols());
    let q = field.q();
    let mut guess = None;
    for _ in 0..MAX_GUESS_RESAMPLES {
        let lambdas: Vec<Vec<u32>> = (0..t).map(|_| sample_combination(q, n, rng)).collect();
        let rows: Vec<Vec<FieldElement>> = lambdas
            .iter()
            .map(|l| (0..k).map(|i| combine(field, l, g.row(i))).collect())
            .collect();
        let big_lambda = Matrix::from_rows(k, &rows);
        if big_lambda.rank(field) == t {
            guess = Some((lambdas, big_lambda));
            break;
        }
    }
    let Some((lambdas, big_lambda)) = guess else {
        return HybridRound {
            lambdas: Vec::new(),
            solution: None,
        };
    };
    let b: Vec<FieldElement> = lambdas.iter().map(|l| combine(field, l, y)).collect();
    let Solution::Consistent { particular: x0, kernel } = big_lambda.solve(field, &b) else {
        unreachable!("full row rank systems are consistent")
    };
    let basis = Matrix::from_rows(k, &kernel);
    let g2 = basis.mul(field, g);
    let y2 = field.sub_vec(y, &g.vec_mul(field, &x0));
    let solution = solve_linearized(field, &g2, &y2, r).ok().map(|sol| {
        let x = field.add_vec(&x0, &basis.vec_mul(field, &sol.x));
        RsdSolution { x, e: sol.e }
    });
    HybridRound { lambdas, solution }
}

/// Checks t ≤ k and n − t ≥ (r+1)(k+1−t) − 1.
pub fn hybrid_feasible(n: usize, k: usize, r: usize, t: usize) -> Result<(), String> {
    if t > k {
        return Err(format!("t = {t} exceeds k = {k}"));
    }
    let need = linearized_unknowns(k - t, r);
    if n - t.min(n) < need {
        return Err(format!("n - t = {} < {need} linearized unknowns after guessing", n - t.min(n)));
    }
    Ok(())
}

/// Repeats guess rounds until one yields a verified solution.
pub fn hybrid_attack(inst: &RsdInstance, config: &HybridConfig) -> AttackReport {
    let CodeParams { q, n, k, r, .. } = inst.params;
    let t = config.t.unwrap_or_else(|| hybrid_t(n, k, r));
    if let Err(why) = hybrid_feasible(n, k, r, t) {
        return AttackReport::infeasible("hybrid", why);
    }
    if t == 0 {
        let mut report = lin_attack(inst);
        report.attack = "hybrid";
        report.detail("t", 0);
        return report;
    }
    let predicted = (q as f64).powi((r * t) as i32);
    let cap = config
        .max_rounds
        .unwrap_or_else(|| (64.0 * predicted).ceil().clamp(64.0, u64::MAX as f64) as u64);

    let start = Instant::now();
    let search = trials::search(config.seed, config.workers, cap, |_, rng| {
        let round = hybrid_round(&inst.field, &inst.g, &inst.y, r, t, rng);
        round.solution.filter(|sol| inst.verify(sol, true).is_ok())
    });
    let outcome = match search.found {
        Some((_, sol)) => AttackOutcome::Solved(sol),
        None => AttackOutcome::Failed(format!("no guess succeeded within {cap} rounds")),
    };
    let mut report = AttackReport {
        attack: "hybrid",
        outcome,
        trials: search.trials,
        trials_executed: search.executed,
        elapsed: start.elapsed(),
        predicted_trials: Some(predicted),
        details: Vec::new(),
    };
    report.detail("t", t);
    report.detail("max_rounds", cap);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rsd::{support, CodeKind};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn instance(q: u32, m: usize, n: usize, k: usize, r: usize, seed: u64) -> RsdInstance {
        let params = CodeParams::new(q, m, n, k, r).unwrap();
        RsdInstance::generate(params, CodeKind::Random, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
    }

    fn hidden_annihilator(inst: &RsdInstance) -> QPolynomial {
        let e = &inst.hidden.as_ref().unwrap().e;
        QPolynomial::annihilator_of(&inst.field, &support(&inst.field, e))
    }

    #[test]
    fn hidden_solution_satisfies_every_row() {
        for seed in 0..100 {
            let inst = instance(2, 8, 10, 3, 2, seed);
            let f = &inst.field;
            let sys = build_linearized_system(f, &inst.g, &inst.y, 2);
            let vals = sys.monomial_values(f, &inst.hidden.as_ref().unwrap().x, &hidden_annihilator(&inst));
            assert_eq!(sys.matrix.mul_vec(f, &vals), sys.rhs);
        }
    }

    #[test]
    fn column_layout() {
        let inst = instance(2, 24, 64, 12, 6, 1);
        let sys = build_linearized_system(&inst.field, &inst.g, &inst.y, 6);
        assert_eq!(sys.matrix.cols(), 90);
        assert_eq!(sys.monomials[0], Monomial::PC { a: 0, i: 0 });
        assert_eq!(sys.monomials[1], Monomial::PC { a: 0, i: 1 });
        assert_eq!(sys.monomials[72], Monomial::CR { i: 0 });
        assert_eq!(sys.monomials[84], Monomial::P { a: 0 });
        for (c, &mono) in sys.monomials.iter().enumerate() {
            assert_eq!(sys.column(mono), c);
        }
    }

    #[test]
    fn row_entries() {
        let inst = instance(2, 8, 10, 3, 2, 5);
        let f = &inst.field;
        let sys = build_linearized_system(f, &inst.g, &inst.y, 2);
        let (j, i, a) = (4, 2, 1);
        let gij = inst.g.get(i, j);
        assert_eq!(sys.matrix.get(j, sys.column(Monomial::PC { a, i })), f.neg(f.frobenius(gij, a)));
        assert_eq!(sys.matrix.get(j, sys.column(Monomial::CR { i })), f.neg(f.frobenius(gij, 2)));
        assert_eq!(sys.matrix.get(j, sys.column(Monomial::P { a })), f.frobenius(inst.y[j], a));
        assert_eq!(sys.rhs[j], f.neg(f.frobenius(inst.y[j], 2)));
    }

    #[test]
    fn k_zero_recovers_annihilator_of_y() {
        let f = Field::new(2, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let e = crate::rsd::sample_error(&f, 7, 3, &mut rng);
        let g = Matrix::zeros(0, 7);
        let sys = build_linearized_system(&f, &g, &e, 3);
        assert_eq!(sys.matrix.cols(), 3);
        let sol = solve_linearized(&f, &g, &e, 3).unwrap();
        assert_eq!(sol.annihilator, QPolynomial::annihilator_of(&f, &support(&f, &e)));
        assert_eq!(sol.e, e);
    }

    #[test]
    fn lin_recovers_planted_solution() {
        for seed in 0..30 {
            let inst = instance(2, 10, 12, 2, 3, seed);
            let report = lin_attack(&inst);
            let hidden = inst.hidden.clone().unwrap();
            assert_eq!(report.solution(), Some(&hidden), "seed {seed}: {:?}", report.outcome);
            let sol = solve_linearized(&inst.field, &inst.g, &inst.y, 3).unwrap();
            assert_eq!(sol.annihilator, hidden_annihilator(&inst));
        }
    }

    #[test]
    fn lin_rank_zero() {
        let inst = instance(2, 6, 5, 2, 0, 9);
        let report = lin_attack(&inst);
        assert_eq!(report.solution().unwrap().e, vec![FieldElement::ZERO; 5]);
        assert_eq!(report.solution(), inst.hidden.as_ref());
    }

    #[test]
    fn lin_infeasible_below_bound() {
        let inst = instance(2, 10, 9, 2, 3, 0);
        assert!(lin_attack(&inst).is_infeasible());
    }

    #[test]
    fn hybrid_small_instance() {
        for seed in 0..10 {
            let inst = instance(2, 10, 9, 2, 3, seed);
            let report = hybrid_attack(&inst, &HybridConfig::new(seed));
            assert_eq!(report.solution(), inst.hidden.as_ref(), "{:?}", report.outcome);
            assert_eq!(report.predicted_trials, Some(8.0));
        }
    }

    #[test]
    fn hybrid_t_zero_is_lin() {
        let inst = instance(2, 10, 12, 2, 3, 4);
        let mut cfg = HybridConfig::new(0);
        cfg.t = Some(0);
        let h = hybrid_attack(&inst, &cfg);
        let l = lin_attack(&inst);
        assert_eq!(h.outcome, l.outcome);
        assert_eq!(h.trials, 1);
    }

    #[test]
    fn hybrid_feasibility_gate() {
        assert!(hybrid_feasible(9, 2, 3, 1).is_ok());
        assert!(hybrid_feasible(9, 2, 3, 0).is_err());
        assert!(hybrid_feasible(9, 2, 3, 3).is_err());
        let inst = instance(2, 10, 9, 2, 3, 0);
        let mut cfg = HybridConfig::new(0);
        cfg.t = Some(0);
        assert!(hybrid_attack(&inst, &cfg).is_infeasible());
    }

    #[test]
    fn wrong_guesses_never_accepted() {
        let inst = instance(2, 10, 9, 2, 3, 77);
        let f = &inst.field;
        let hidden = inst.hidden.clone().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (mut wrong, mut right) = (0, 0);
        for _ in 0..2000 {
            let round = hybrid_round(f, &inst.g, &inst.y, 3, 1, &mut rng);
            let zero = round.lambdas.iter().all(|l| combine(f, l, &hidden.e).is_zero());
            if zero {
                right += 1;
                assert_eq!(round.solution.as_ref(), Some(&hidden));
            } else {
                wrong += 1;
                assert!(round.solution.is_none());
            }
        }
        assert!(wrong > 1000 && right > 100);
    }

    #[test]
    fn hybrid_is_deterministic() {
        let inst = instance(2, 10, 9, 2, 3, 12);
        let a = hybrid_attack(&inst, &HybridConfig::new(99));
        let mut cfg = HybridConfig::new(99);
        cfg.workers = 3;
        let b = hybrid_attack(&inst, &cfg);
        assert_eq!(a.trials, b.trials);
        assert_eq!(a.outcome, b.outcome);
    }
}
