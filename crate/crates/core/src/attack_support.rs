//! Error-support attack.
//!
//! Guess a GF(q)-subspace E′ of dimension r′ that should contain the error
//! support, write every error coordinate as an unknown GF(q)-combination of
//! a basis of E′, and solve the syndrome equations over GF(q). A trial
//! succeeds when the support really lies in E′.
//!
//! Variant 1 works with the syndrome of `y` directly. Variant 2 appends `y`
//! to the generator (so the error becomes a codeword of the extended code),
//! normalizes the error so that its support contains 1, and only needs the
//! remaining r−1 support directions to fall inside E′.

use std::time::Instant;

use num_traits::ToPrimitive;
use rand::Rng;

use crate::estimator::gaussian_binomial;
use crate::gfqm::{Field, FieldElement};
use crate::linalg::{sample_subspace, sample_subspace_containing, Matrix, Solution};
use crate::report::{AttackOutcome, AttackReport};
use crate::rsd::{parity_check, rank_weight, RsdInstance, RsdSolution};
use crate::trials;

/// Solution sets with a kernel larger than this are not enumerated.
pub const MAX_ENUMERATED_KERNEL_DIM: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportVariant {
    V1,
    V2,
}

/// Which kernel vectors variant 2 accepts as the normalized error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// Only `e_{i0}^{-1}·e` where `i0` is the first nonzero coordinate, i.e.
    /// candidates whose first nonzero coordinate is 1.
    #[default]
    FirstNonzero,
    /// Any nonzero GF(q^m)-multiple of the error whose support fits in E′.
    AnyMultiple,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportGuessConfig {
    pub variant: SupportVariant,
    /// Guessed support dimension; defaults to the largest value keeping the
    /// linear system square or overdetermined.
    pub r_prime: Option<usize>,
    /// Defaults to 64× the predicted number of trials.
    pub max_trials: Option<u64>,
    pub seed: u64,
    pub workers: usize,
    pub normalization: Normalization,
}

impl SupportGuessConfig {
    pub fn new(variant: SupportVariant, seed: u64) -> Self {
        SupportGuessConfig {
            variant,
            r_prime: None,
            max_trials: None,
            seed,
            workers: 1,
            normalization: Normalization::default(),
        }
    }
}

/// Affine set `particular + span(directions)` of error vectors whose
/// coordinates lie in a guessed support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSolutions {
    q: u32,
    field: Field,
    pub particular: Vec<FieldElement>,
    pub directions: Vec<Vec<FieldElement>>,
}

impl SupportSolutions {
    pub fn kernel_dim(&self) -> usize {
        self.directions.len()
    }

    /// Every member, the particular solution first, then in counter order of
    /// the GF(q) coefficients on `directions`.
    pub fn iter(&self) -> impl Iterator<Item = Vec<FieldElement>> + '_ {
        assert!(
            self.kernel_dim() <= MAX_ENUMERATED_KERNEL_DIM,
            "refusing to enumerate q^{} candidates",
            self.kernel_dim()
        );
        let q = self.q as u64;
        let total = q.pow(self.kernel_dim() as u32);
        (0..total).map(move |mut idx| {
            let mut v = self.particular.clone();
            for d in &self.directions {
                let c = (idx % q) as u32;
                idx /= q;
                if c != 0 {
                    for (x, &dx) in v.iter_mut().zip(d) {
                        *x = self.field.add(*x, self.field.scale(c, dx));
                    }
                }
            }
            v
        })
    }
}

/// Solves `H·eᵀ = s` with every `e_i` restricted to the GF(q)-span of
/// `support_basis`, as a GF(q)-linear system in the `n·r′` coordinates.
/// Returns `None` when the system is inconsistent.
pub fn solve_in_support(
    field: &Field,
    h: &Matrix,
    s: &[FieldElement],
    support_basis: &[FieldElement],
) -> Option<SupportSolutions> {
    let base = field.base_field();
    let (rows, n) = (h.rows(), h.cols());
    let (m, rp) = (field.m(), support_basis.len());
    assert_eq!(s.len(), rows, "syndrome length must equal parity-check rows");

    let mut system = Matrix::zeros(rows * m, n * rp);
    for l in 0..rows {
        for i in 0..n {
            let hli = h.get(l, i);
            if hli.is_zero() {
                continue;
            }
            for (j, &b) in support_basis.iter().enumerate() {
                for (c, coord) in field.coords(field.mul(hli, b)).into_iter().enumerate() {
                    system.set(l * m + c, i * rp + j, FieldElement::from_raw(coord as u64));
                }
            }
        }
    }
    let rhs: Vec<FieldElement> = s
        .iter()
        .flat_map(|&x| field.coords(x))
        .map(|c| FieldElement::from_raw(c as u64))
        .collect();

    let Solution::Consistent { particular, kernel } = system.solve(&base, &rhs) else {
        return None;
    };
    let to_error = |coeffs: &[FieldElement]| -> Vec<FieldElement> {
        (0..n)
            .map(|i| {
                support_basis.iter().enumerate().fold(FieldElement::ZERO, |acc, (j, &b)| {
                    field.add(acc, field.scale(coeffs[i * rp + j].value() as u32, b))
                })
            })
            .collect()
    };
    Some(SupportSolutions {
        q: field.q(),
        field: field.clone(),
        particular: to_error(&particular),
        directions: kernel.iter().map(|k| to_error(k)).collect(),
    })
}

/// Per-instance state for repeated support guesses.
pub struct SupportAttack<'a> {
    inst: &'a RsdInstance,
    variant: SupportVariant,
    r_prime: usize,
    normalization: Normalization,
    /// H for variant 1, parity check of [G; y] for variant 2.
    parity: Matrix,
    target: Vec<FieldElement>,
    g_transpose: Matrix,
}

/// Largest r′ with n·r′ ≤ rows·m, where rows = n−k (v1) or n−k−1 (v2).
pub fn default_r_prime(variant: SupportVariant, n: usize, k: usize, m: usize) -> usize {
    let rows = match variant {
        SupportVariant::V1 => n - k,
        SupportVariant::V2 => (n - k).saturating_sub(1),
    };
    rows * m / n
}

impl<'a> SupportAttack<'a> {
    /// Checks the feasibility gate; `Err` carries the reason.
    pub fn new(
        inst: &'a RsdInstance,
        variant: SupportVariant,
        r_prime: Option<usize>,
        normalization: Normalization,
    ) -> Result<Self, String> {
        let p = inst.params;
        let (n, k, r, m) = (p.n, p.k, p.r, p.m);
        let r_prime = r_prime.unwrap_or_else(|| default_r_prime(variant, n, k, m));
        let field = &inst.field;
        let (parity, target, rows) = match variant {
            SupportVariant::V1 => (inst.h.clone(), inst.syndrome(), n - k),
            SupportVariant::V2 => {
                if n - k < 2 {
                    return Err(format!("variant 2 needs n - k - 1 >= 1, got n - k = {}", n - k));
                }
                if r == 0 {
                    return Err("variant 2 needs a nonzero error (r >= 1)".into());
                }
                let mut rows = inst.g.to_rows();
                rows.push(inst.y.clone());
                let extended = Matrix::from_rows(n, &rows);
                let parity = parity_check(field, &extended);
                let count = parity.rows();
                (parity, vec![FieldElement::ZERO; count], n - k - 1)
            }
        };
        if r_prime > m {
            return Err(format!("r' = {r_prime} exceeds m = {m}"));
        }
        if r > r_prime {
            return Err(format!("r = {r} exceeds r' = {r_prime}; the support can never fit"));
        }
        if n * r_prime > rows * m {
            return Err(format!(
                "n*r' = {} unknowns exceed the {} GF(q) equations",
                n * r_prime,
                rows * m
            ));
        }
        if variant == SupportVariant::V2 && r_prime == 0 {
            return Err("variant 2 needs r' >= 1 to contain 1".into());
        }
        Ok(SupportAttack {
            inst,
            variant,
            r_prime,
            normalization,
            parity,
            target,
            g_transpose: inst.g.transpose(),
        })
    }

    pub fn r_prime(&self) -> usize {
        self.r_prime
    }

    fn log_q_exponent(&self) -> usize {
        let p = self.inst.params;
        match self.variant {
            SupportVariant::V1 => (p.m - self.r_prime) * p.r,
            SupportVariant::V2 => (p.m - self.r_prime) * (p.r - 1),
        }
    }

    /// q^{(m−r′)r} (v1) or q^{(m−r′)(r−1)} (v2).
    pub fn predicted_trials(&self) -> f64 {
        (self.inst.params.q as f64).powi(self.log_q_exponent() as i32)
    }

    /// The floor-form prediction: q^{r⌊km/n⌋} (v1) or q^{(r−1)⌊(k+1)m/n⌋} (v2).
    pub fn predicted_trials_floor_form(&self) -> f64 {
        let p = self.inst.params;
        let e = match self.variant {
            SupportVariant::V1 => p.r * (p.k * p.m / p.n),
            SupportVariant::V2 => (p.r - 1) * ((p.k + 1) * p.m / p.n),
        };
        (p.q as f64).powi(e as i32)
    }

    /// Exact probability that the (normalized) support lies in a uniform E′,
    /// from Gaussian binomial counts.
    pub fn exact_inclusion_probability(&self) -> f64 {
        let p = self.inst.params;
        let (m, r, rp) = (p.m, p.r, self.r_prime);
        let ratio = |num: num_bigint::BigUint, den: num_bigint::BigUint| {
            num.to_f64().unwrap_or(f64::INFINITY) / den.to_f64().unwrap_or(f64::INFINITY)
        };
        match self.variant {
            SupportVariant::V1 => ratio(gaussian_binomial(m - r, rp - r, p.q), gaussian_binomial(m, rp, p.q)),
            SupportVariant::V2 => ratio(
                gaussian_binomial(m - r, rp - r, p.q),
                gaussian_binomial(m - 1, rp - 1, p.q),
            ),
        }
    }

    /// One guess of E′. Returns a verified solution on success.
    pub fn trial<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<RsdSolution> {
        let field = &self.inst.field;
        let base = field.base_field();
        let m = field.m();
        let guess = match self.variant {
            SupportVariant::V1 => sample_subspace(&base, m, self.r_prime, rng),
            SupportVariant::V2 => {
                let mut one = vec![FieldElement::ZERO; m];
                one[0] = FieldElement::ONE;
                sample_subspace_containing(&base, m, self.r_prime, &one, rng)
            }
        };
        self.try_support(&guess.basis_elements())
    }

    /// Runs the linear step for a given basis of E′.
    pub fn try_support(&self, basis: &[FieldElement]) -> Option<RsdSolution> {
        let sols = solve_in_support(&self.inst.field, &self.parity, &self.target, basis)?;
        if sols.kernel_dim() > MAX_ENUMERATED_KERNEL_DIM {
            return None;
        }
        match self.variant {
            SupportVariant::V1 => sols.iter().find_map(|e| self.accept_error(e)),
            SupportVariant::V2 => sols.iter().find_map(|z| self.accept_normalized(&z)),
        }
    }

    fn accept_error(&self, e: Vec<FieldElement>) -> Option<RsdSolution> {
        if rank_weight(&self.inst.field, &e) != self.inst.params.r {
            return None;
        }
        let sol = self.inst.solution_from_error(e)?;
        self.inst.verify(&sol, true).ok().map(|_| sol)
    }

    fn accept_normalized(&self, z: &[FieldElement]) -> Option<RsdSolution> {
        let first = z.iter().find(|x| !x.is_zero())?;
        if self.normalization == Normalization::FirstNonzero && *first != FieldElement::ONE {
            return None;
        }
        let field = &self.inst.field;
        if rank_weight(field, z) != self.inst.params.r {
            return None;
        }
        // y = x·G + γ·z in the k+1 unknowns (x, γ)
        let system = self.g_transpose.hconcat(&Matrix::from_vec(z.len(), 1, z.to_vec()));
        let Solution::Consistent { particular, .. } = system.solve(field, &self.inst.y) else {
            return None;
        };
        let gamma = *particular.last().expect("k+1 unknowns");
        if gamma.is_zero() {
            return None;
        }
        let sol = RsdSolution {
            x: particular[..particular.len() - 1].to_vec(),
            e: field.scale_vec(gamma, z),
        };
        self.inst.verify(&sol, true).ok().map(|_| sol)
    }
}

pub fn es_attack_v1(inst: &RsdInstance, config: &SupportGuessConfig) -> AttackReport {
    es_attack(inst, &SupportGuessConfig {
        variant: SupportVariant::V1,
        ..config.clone()
    })
}

pub fn es_attack_v2(inst: &RsdInstance, config: &SupportGuessConfig) -> AttackReport {
    es_attack(inst, &SupportGuessConfig {
        variant: SupportVariant::V2,
        ..config.clone()
    })
}

/// Repeats support guesses until one yields a verified solution.
pub fn es_attack(inst: &RsdInstance, config: &SupportGuessConfig) -> AttackReport {
    let name = match config.variant {
        SupportVariant::V1 => "es1",
        SupportVariant::V2 => "es2",
    };
    let attack = match SupportAttack::new(inst, config.variant, config.r_prime, config.normalization) {
        Ok(a) => a,
        Err(reason) => return AttackReport::infeasible(name, reason),
    };
    let predicted = attack.predicted_trials();
    let cap = config
        .max_trials
        .unwrap_or_else(|| (64.0 * predicted).ceil().clamp(64.0, u64::MAX as f64) as u64);

    let start = Instant::now();
    let search = trials::search(config.seed, config.workers, cap, |_, rng| attack.trial(rng));
    let outcome = match search.found {
        Some((_, sol)) => AttackOutcome::Solved(sol),
        None => AttackOutcome::Failed(format!("no support guess succeeded within {cap} trials")),
    };
    let mut report = AttackReport {
        attack: name,
        outcome,
        trials: search.trials,
        trials_executed: search.executed,
        elapsed: start.elapsed(),
        predicted_trials: Some(predicted),
        details: Vec::new(),
    };
    report.detail("r_prime", attack.r_prime());
    report.detail("predicted_trials_floor_form", attack.predicted_trials_floor_form());
    report.detail("exact_success_probability", attack.exact_inclusion_probability());
    report.detail("max_trials", cap);
    report
}
