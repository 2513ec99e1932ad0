//! Desk-scale benchmark suites. `paper-desk` runs each check at full size;
//! `smoke` runs the same checks with fewer instances and trials.

use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rankforge::attack_algebraic::{combine, hybrid_attack, lin_attack, sample_combination, HybridConfig};
use rankforge::attack_support::{es_attack, Normalization, SupportAttack, SupportGuessConfig, SupportVariant};
use rankforge::estimator::{gaussian_binomial, render_tables};
use rankforge::linalg::sample_subspace;
use rankforge::oracle::{brute_force, enumerate_subspaces};
use rankforge::trials::{derive_seed, trial_rng};
use rankforge::{CodeKind, CodeParams, Field, QPolynomial, RsdInstance};

#[derive(Debug, Clone, Copy)]
pub enum Suite {
    Smoke,
    PaperDesk,
}

struct Scale {
    lin_instances: u64,
    hybrid_runs: u64,
    rate_trials: u64,
    es_runs: u64,
    oracle_instances: u64,
    subspaces: u64,
    combinations: u64,
}

impl Suite {
    fn scale(self) -> Scale {
        match self {
            Suite::Smoke => Scale {
                lin_instances: 10,
                hybrid_runs: 20,
                rate_trials: 600,
                es_runs: 20,
                oracle_instances: 5,
                subspaces: 20,
                combinations: 600,
            },
            Suite::PaperDesk => Scale {
                lin_instances: 100,
                hybrid_runs: 100,
                rate_trials: 2000,
                es_runs: 200,
                oracle_instances: 30,
                subspaces: 100,
                combinations: 2000,
            },
        }
    }
}

fn instance(q: u32, m: usize, n: usize, k: usize, r: usize, seed: u64) -> RsdInstance {
    let params = CodeParams::new(q, m, n, k, r).expect("valid parameters");
    RsdInstance::generate(params, CodeKind::Random, &mut ChaCha8Rng::seed_from_u64(seed)).expect("instance")
}

/// Empirical rate and whether it lies within 3σ of `expected`.
fn within_3_sigma(hits: u64, n: u64, expected: f64) -> (f64, bool) {
    let rate = hits as f64 / n as f64;
    let sigma = (expected * (1.0 - expected) / n as f64).sqrt();
    (rate, (rate - expected).abs() <= 3.0 * sigma)
}

fn tables() -> (bool, String) {
    let t = render_tables(3.0);
    (t.within(2.0), format!("max deviation {:.2} bits", t.max_deviation()))
}

fn lin(s: &Scale, seed: u64) -> (bool, String) {
    let ok = (0..s.lin_instances)
        .filter(|&i| {
            let inst = instance(2, 10, 12, 2, 3, derive_seed(seed, i));
            lin_attack(&inst).solution() == inst.hidden.as_ref()
        })
        .count();
    (ok as u64 == s.lin_instances, format!("{ok}/{} recovered", s.lin_instances))
}

fn hybrid(s: &Scale, seed: u64) -> (bool, String) {
    let (mut solved, mut rounds) = (0u64, 0u64);
    for i in 0..s.hybrid_runs {
        let inst = instance(2, 10, 9, 2, 3, derive_seed(seed, i));
        let report = hybrid_attack(&inst, &HybridConfig::new(derive_seed(seed ^ 0x4859, i)));
        if report.solution() == inst.hidden.as_ref() {
            solved += 1;
        }
        rounds += report.trials;
    }
    let mean = rounds as f64 / s.hybrid_runs as f64;
    let ok = solved == s.hybrid_runs && (8.0 / 3.0..=24.0).contains(&mean);
    (ok, format!("{solved}/{} solved, mean rounds {mean:.2} (target 8)", s.hybrid_runs))
}

fn support_check(s: &Scale, seed: u64, variant: SupportVariant, n: usize, expected: f64) -> (bool, String) {
    let inst = instance(2, 6, n, 2, 2, seed);
    let attack = SupportAttack::new(&inst, variant, None, Normalization::default()).expect("feasible");
    let hits = (0..s.rate_trials)
        .filter(|&i| attack.trial(&mut trial_rng(seed, i)).is_some())
        .count() as u64;
    let (rate, rate_ok) = within_3_sigma(hits, s.rate_trials, expected);
    let solved = (0..s.es_runs)
        .filter(|&i| {
            let inst = instance(2, 6, n, 2, 2, derive_seed(seed, i));
            es_attack(&inst, &SupportGuessConfig::new(variant, derive_seed(seed ^ 0x4553, i))).is_solved()
        })
        .count();
    (
        rate_ok && solved as u64 == s.es_runs,
        format!(
            "rate {rate:.4} vs {expected:.4} (exact {:.4}), {solved}/{} runs solved",
            attack.exact_inclusion_probability(),
            s.es_runs
        ),
    )
}

fn oracle(s: &Scale, seed: u64) -> (bool, String) {
    let mut agree = 0;
    for i in 0..s.oracle_instances {
        let inst = instance(2, 5, 6, 1, 2, derive_seed(seed, i));
        let Ok(sols) = brute_force(&inst) else { continue };
        if sols.len() != 1 {
            continue;
        }
        let want = Some(&sols[0]);
        let es1 = es_attack(&inst, &SupportGuessConfig::new(SupportVariant::V1, i));
        let es2 = es_attack(&inst, &SupportGuessConfig::new(SupportVariant::V2, i));
        let l = lin_attack(&inst);
        let h = hybrid_attack(&inst, &HybridConfig::new(i));
        if es1.solution() == want
            && es2.solution() == want
            && (l.is_infeasible() || l.solution() == want)
            && h.solution() == want
        {
            agree += 1;
        }
    }
    (agree == s.oracle_instances, format!("{agree}/{} agree", s.oracle_instances))
}

fn qpoly(s: &Scale, seed: u64) -> (bool, String) {
    let f = Field::new(2, 8).expect("field");
    let base = f.base_field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut good = 0;
    for i in 0..s.subspaces {
        let space = sample_subspace(&base, 8, (i % 5) as usize, &mut rng);
        let p = QPolynomial::annihilator_of(&f, &space);
        let ok = p.is_monic()
            && p.qdeg() == Some(space.dim())
            && space.elements().iter().all(|&x| p.evaluate(&f, x).is_zero())
            && p.root_space(&f).ok().as_ref() == Some(&space);
        good += ok as u64;
    }
    (good == s.subspaces, format!("{good}/{} subspaces", s.subspaces))
}

fn zero_combinations(s: &Scale, seed: u64) -> (bool, String) {
    let inst = instance(2, 8, 10, 3, 3, seed);
    let e = &inst.hidden.as_ref().expect("planted").e;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hits = (0..s.combinations)
        .filter(|_| combine(&inst.field, &sample_combination(2, 10, &mut rng), e).is_zero())
        .count() as u64;
    let (rate, ok) = within_3_sigma(hits, s.combinations, 0.125);
    (ok, format!("rate {rate:.4} vs 0.1250"))
}

fn counting() -> (bool, String) {
    let mut ok = true;
    for m in 0..=8 {
        for d in 0..=m.min(3) {
            let count = enumerate_subspaces(m, d, 2).map(|it| it.count()).unwrap_or(0);
            ok &= gaussian_binomial(m, d, 2) == count.into();
        }
    }
    (ok, "subspace counts for m <= 8, d <= 3".into())
}

pub fn run(suite: Suite, seed: u64) -> ExitCode {
    let s = suite.scale();
    type Check<'a> = (&'static str, Box<dyn Fn() -> (bool, String) + 'a>);
    let checks: Vec<Check> = vec![
        ("tables", Box::new(tables)),
        ("lin", Box::new(|| lin(&s, seed))),
        ("hybrid", Box::new(|| hybrid(&s, seed))),
        ("es1", Box::new(|| support_check(&s, seed, SupportVariant::V1, 8, 1.0 / 16.0))),
        ("es2", Box::new(|| support_check(&s, seed, SupportVariant::V2, 9, 0.25))),
        ("oracle", Box::new(|| oracle(&s, seed))),
        ("qpoly", Box::new(|| qpoly(&s, seed))),
        ("zero_combinations", Box::new(|| zero_combinations(&s, seed))),
        ("counting", Box::new(counting)),
    ];
    let mut failures = 0;
    for (name, check) in checks {
        let start = Instant::now();
        let (ok, detail) = check();
        failures += !ok as u32;
        println!(
            "{} {name}: {detail} [{:.2}s]",
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
