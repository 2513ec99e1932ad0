//! Exhaustive RSD solver for tiny parameters: try every r-dimensional
//! GF(q)-subspace of GF(q^m) as the error support.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use thiserror::Error;

use crate::attack_support::{solve_in_support, MAX_ENUMERATED_KERNEL_DIM};
use crate::estimator::gaussian_binomial;
use crate::gfqm::{Field, FieldElement};
use crate::linalg::Subspace;
use crate::rsd::{rank_weight, RsdInstance, RsdSolution};

/// Largest number of subspaces the oracle agrees to enumerate.
pub const MAX_SUBSPACES: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration would visit {count} subspaces (limit {MAX_SUBSPACES})")]
    TooManySubspaces { count: BigUint },
    #[error("a support admits q^{dim} candidate errors, too many to enumerate")]
    KernelTooLarge { dim: usize },
}

/// Streams every d-dimensional subspace of GF(q)^m once, as canonical RREF
/// bases: pivot sets in lexicographic order, then free entries counted in
/// base q.
#[derive(Debug, Clone)]
pub struct SubspaceIterator {
    base: Field,
    m: usize,
    pivots: Vec<usize>,
    /// (row, column) of each free entry.
    free: Vec<(usize, usize)>,
    counter: u64,
    limit: u64,
    done: bool,
}

impl SubspaceIterator {
    fn new(base: Field, m: usize, d: usize) -> Self {
        let mut it = SubspaceIterator {
            base,
            m,
            pivots: (0..d).collect(),
            free: Vec::new(),
            counter: 0,
            limit: 0,
            done: d > m,
        };
        it.reset_profile();
        it
    }

    fn reset_profile(&mut self) {
        self.free.clear();
        for (row, &p) in self.pivots.iter().enumerate() {
            for col in p + 1..self.m {
                if !self.pivots.contains(&col) {
                    self.free.push((row, col));
                }
            }
        }
        self.counter = 0;
        self.limit = (self.base.q() as u64).pow(self.free.len() as u32);
    }

    /// Advances to the next pivot set; false when exhausted.
    fn next_profile(&mut self) -> bool {
        let (d, m) = (self.pivots.len(), self.m);
        let Some(i) = (0..d).rev().find(|&i| self.pivots[i] < m - d + i) else {
            return false;
        };
        self.pivots[i] += 1;
        for j in i + 1..d {
            self.pivots[j] = self.pivots[j - 1] + 1;
        }
        self.reset_profile();
        true
    }
}

impl Iterator for SubspaceIterator {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        if self.counter == self.limit && !self.next_profile() {
            self.done = true;
            return None;
        }
        let q = self.base.q() as u64;
        let mut rows = vec![vec![FieldElement::ZERO; self.m]; self.pivots.len()];
        for (row, &p) in self.pivots.iter().enumerate() {
            rows[row][p] = FieldElement::ONE;
        }
        let mut c = self.counter;
        for &(row, col) in &self.free {
            rows[row][col] = FieldElement::from_raw(c % q);
            c /= q;
        }
        self.counter += 1;
        Some(Subspace::from_vectors(&self.base, self.m, &rows))
    }
}

/// All d-dimensional subspaces of GF(q)^m, refusing beyond [`MAX_SUBSPACES`].
pub fn enumerate_subspaces(m: usize, d: usize, q: u32) -> Result<SubspaceIterator, OracleError> {
    let count = gaussian_binomial(m, d, q);
    if count > BigUint::from(MAX_SUBSPACES) {
        return Err(OracleError::TooManySubspaces { count });
    }
    let base = Field::prime(q).expect("q must be prime");
    Ok(SubspaceIterator::new(base, m, d))
}

/// Every solution with an error of rank exactly r, sorted.
pub fn brute_force(inst: &RsdInstance) -> Result<Vec<RsdSolution>, OracleError> {
    let f = &inst.field;
    let r = inst.params.r;
    let supports = enumerate_subspaces(f.m(), r, f.q())?;
    let s = inst.syndrome();
    let mut found = BTreeSet::new();
    for space in supports {
        let Some(sols) = solve_in_support(f, &inst.h, &s, &space.basis_elements()) else {
            continue;
        };
        if sols.kernel_dim() > MAX_ENUMERATED_KERNEL_DIM {
            return Err(OracleError::KernelTooLarge { dim: sols.kernel_dim() });
        }
        for e in sols.iter() {
            if rank_weight(f, &e) == r {
                if let Some(sol) = inst.solution_from_error(e) {
                    found.insert(sol);
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}
