use std::time::Duration;

use crate::rsd::RsdSolution;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AttackOutcome {
    Solved(RsdSolution),
    /// Trial or round cap exhausted, or no consistent candidate.
    Failed(String),
    /// Parameters outside the attack's regime; nothing was run.
    Infeasible(String),
}

impl AttackOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            AttackOutcome::Solved(_) => "solved",
            AttackOutcome::Failed(_) => "failed",
            AttackOutcome::Infeasible(_) => "infeasible",
        }
    }
}

/// What an attack run produced. Counts are trials for the support attack
/// and rounds for the hybrid attack.
#[derive(Debug, Clone)]
pub struct AttackReport {
    pub attack: &'static str,
    pub outcome: AttackOutcome,
    pub trials: u64,
    pub trials_executed: u64,
    pub elapsed: Duration,
    /// Expected number of trials from the success-probability analysis.
    pub predicted_trials: Option<f64>,
    /// Extra key/value details (chosen dimensions, alternative predictions).
    pub details: Vec<(String, String)>,
}

impl AttackReport {
    pub fn infeasible(attack: &'static str, reason: impl Into<String>) -> Self {
        AttackReport {
            attack,
            outcome: AttackOutcome::Infeasible(reason.into()),
            trials: 0,
            trials_executed: 0,
            elapsed: Duration::ZERO,
            predicted_trials: None,
            details: Vec::new(),
        }
    }

    pub fn solution(&self) -> Option<&RsdSolution> {
        match &self.outcome {
            AttackOutcome::Solved(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_solved(&self) -> bool {
        matches!(self.outcome, AttackOutcome::Solved(_))
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self.outcome, AttackOutcome::Infeasible(_))
    }

    pub fn detail(&mut self, key: &str, value: impl ToString) {
        self.details.push((key.to_owned(), value.to_string()));
    }
}
