use std::fmt::Write as _;

use rankforge::report::{AttackOutcome, AttackReport};
use rankforge::trials::mix64;
use rankforge::{FieldElement, RsdInstance, RsdSolution};

/// What `solve` prints: one `key: value` per line.
pub struct RunReport<'a> {
    inst: &'a RsdInstance,
    attack: AttackReport,
    seed: u64,
    workers: usize,
}

fn digest(sol: &RsdSolution) -> u64 {
    sol.x
        .iter()
        .chain(&sol.e)
        .fold(0x5253_4431, |h, v| mix64(h ^ v.value()))
}

fn join(v: &[FieldElement]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

impl<'a> RunReport<'a> {
    /// Re-verifies a solved outcome; a solution that fails verification is
    /// downgraded to a failure.
    pub fn new(inst: &'a RsdInstance, mut attack: AttackReport, seed: u64, workers: usize) -> Self {
        if let AttackOutcome::Solved(sol) = &attack.outcome {
            if let Err(why) = inst.verify(sol, true) {
                attack.outcome = AttackOutcome::Failed(format!("reported solution failed verification: {why}"));
            }
        }
        RunReport {
            inst,
            attack,
            seed,
            workers,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.attack.outcome {
            AttackOutcome::Solved(_) => 0,
            AttackOutcome::Failed(_) => 1,
            AttackOutcome::Infeasible(_) => 2,
        }
    }

    pub fn render(&self) -> String {
        let p = self.inst.params;
        let a = &self.attack;
        let mut s = String::new();
        let _ = writeln!(s, "instance: q={} m={} n={} k={} r={}", p.q, p.m, p.n, p.k, p.r);
        let _ = writeln!(s, "attack: {}", a.attack);
        let _ = writeln!(s, "seed: {}", self.seed);
        let _ = writeln!(s, "workers: {}", self.workers);
        let _ = writeln!(s, "outcome: {}", a.outcome.label());
        match &a.outcome {
            AttackOutcome::Failed(why) | AttackOutcome::Infeasible(why) => {
                let _ = writeln!(s, "reason: {why}");
            }
            AttackOutcome::Solved(_) => {}
        }
        let _ = writeln!(s, "trials: {}", a.trials);
        let _ = writeln!(s, "trials_executed: {}", a.trials_executed);
        if let Some(pred) = a.predicted_trials {
            let _ = writeln!(s, "predicted_trials: {pred:.3}");
        }
        for (k, v) in &a.details {
            let _ = writeln!(s, "{k}: {v}");
        }
        let _ = writeln!(s, "elapsed_ms: {:.3}", a.elapsed.as_secs_f64() * 1e3);
        if let AttackOutcome::Solved(sol) = &a.outcome {
            let _ = writeln!(s, "solution_digest: {:016x}", digest(sol));
            let _ = writeln!(s, "x: {}", join(&sol.x));
            let _ = writeln!(s, "e: {}", join(&sol.e));
            if let Some(h) = &self.inst.hidden {
                let _ = writeln!(s, "matches_hidden: {}", h == sol);
            }
        }
        s
    }
}
