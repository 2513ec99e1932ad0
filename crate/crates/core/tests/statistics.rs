//! Frequency checks for the randomized parts. Seeds are fixed, so every
//! check is deterministic; bands are 3σ.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rankforge::attack_algebraic::{combine, hybrid_attack, sample_combination, HybridConfig};
use rankforge::attack_support::{Normalization, SupportAttack, SupportVariant};
use rankforge::linalg::sample_subspace;
use rankforge::oracle::enumerate_subspaces;
use rankforge::rsd::support;
use rankforge::trials::trial_rng;
use rankforge::{CodeKind, CodeParams, Field, RsdInstance};

fn instance(q: u32, m: usize, n: usize, k: usize, r: usize, seed: u64) -> RsdInstance {
    let params = CodeParams::new(q, m, n, k, r).unwrap();
    RsdInstance::generate(params, CodeKind::Random, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

fn assert_rate(hits: u64, n: u64, p: f64, what: &str) {
    let rate = hits as f64 / n as f64;
    let sigma = (p * (1.0 - p) / n as f64).sqrt();
    assert!((rate - p).abs() <= 3.0 * sigma, "{what}: rate {rate} vs {p} (3σ = {})", 3.0 * sigma);
}

#[test]
fn subspace_sampler_is_uniform() {
    let base = Field::prime(2).unwrap();
    let all: Vec<_> = enumerate_subspaces(4, 2, 2).unwrap().collect();
    assert_eq!(all.len(), 35);
    let per_cell = 200;
    let total = 35 * per_cell;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut counts = HashMap::new();
    for _ in 0..total {
        *counts.entry(sample_subspace(&base, 4, 2, &mut rng)).or_insert(0u64) += 1;
    }
    assert_eq!(counts.len(), 35);
    let chi2: f64 = all
        .iter()
        .map(|s| {
            let o = counts[s] as f64;
            (o - per_cell as f64).powi(2) / per_cell as f64
        })
        .sum();
    // 99.9% quantile of χ² with 34 degrees of freedom
    assert!(chi2 < 65.25, "chi2 = {chi2}");
}

#[test]
fn support_guess_rates_match_exact_probability() {
    for (variant, n, exact) in [(SupportVariant::V1, 8, 35.0 / 651.0), (SupportVariant::V2, 9, 7.0 / 31.0)] {
        let inst = instance(2, 6, n, 2, 2, 5);
        let attack = SupportAttack::new(&inst, variant, None, Normalization::FirstNonzero).unwrap();
        assert!((attack.exact_inclusion_probability() - exact).abs() < 1e-12);
        let trials = 4000;
        let hits = (0..trials).filter(|&i| attack.trial(&mut trial_rng(21, i)).is_some()).count() as u64;
        assert_rate(hits, trials, exact, &format!("{variant:?}"));
    }
}

#[test]
fn success_means_support_inclusion() {
    let inst = instance(2, 6, 8, 2, 2, 8);
    let e_space = support(&inst.field, &inst.hidden.as_ref().unwrap().e);
    let base = inst.field.base_field();
    let attack = SupportAttack::new(&inst, SupportVariant::V1, Some(4), Normalization::FirstNonzero).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..500 {
        let guess = sample_subspace(&base, 6, 4, &mut rng);
        let solved = attack.try_support(&guess.basis_elements()).is_some();
        assert_eq!(solved, guess.contains(&e_space));
    }
}

#[test]
fn zero_error_combination_frequency() {
    let inst = instance(2, 8, 10, 3, 3, 4);
    let e = &inst.hidden.as_ref().unwrap().e;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let n = 4000;
    let hits = (0..n)
        .filter(|_| combine(&inst.field, &sample_combination(2, 10, &mut rng), e).is_zero())
        .count() as u64;
    assert_rate(hits, n, 1.0 / 8.0, "zero combinations");
}

#[test]
fn hybrid_round_counts_center_on_prediction() {
    let runs = 200;
    let total: u64 = (0..runs)
        .map(|i| {
            let inst = instance(2, 10, 9, 2, 3, 1000 + i);
            let rep = hybrid_attack(&inst, &HybridConfig::new(i));
            assert_eq!(rep.solution(), inst.hidden.as_ref());
            rep.trials
        })
        .sum();
    // per-round success is (2^6 − 1)/(2^9 − 1); rounds are geometric
    let p = 63.0 / 511.0;
    let mean = total as f64 / runs as f64;
    let sd = ((1.0 - p) / (p * p) / runs as f64).sqrt();
    assert!((mean - 1.0 / p).abs() <= 3.0 * sd, "mean rounds {mean}");
}

#[test]
fn scaling_y_scales_the_recovered_support() {
    let inst = instance(2, 10, 12, 2, 3, 31);
    let f = &inst.field;
    let alpha = f.element(77).unwrap();
    let hidden = inst.hidden.clone().unwrap();
    let y = f.scale_vec(alpha, &inst.y);
    let scaled = RsdInstance::from_parts(inst.params, f.clone(), inst.g.clone(), y, None).unwrap();
    let sol = rankforge::attack_algebraic::lin_attack(&scaled).solution().cloned().unwrap();
    assert_eq!(sol.e, f.scale_vec(alpha, &hidden.e));
    assert_eq!(support(f, &sol.e), support(f, &hidden.e).scaled(f, alpha));
}

#[test]
fn inclusion_rate_of_a_fixed_plane() {
    let base = Field::prime(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let plane = sample_subspace(&base, 6, 2, &mut rng);
    let n = 10_000;
    let hits = (0..n)
        .filter(|_| sample_subspace(&base, 6, 4, &mut rng).contains(&plane))
        .count() as u64;
    // exact ratio of Gaussian binomials [4 choose 2] / [6 choose 4]
    let exact = 35.0 / 651.0;
    assert_rate(hits, n, exact, "inclusion");
    // q^{-(m-r')r} = 1/16 is the leading-order approximation
    assert!((exact - 1.0 / 16.0).abs() / (1.0 / 16.0) < 0.15);
}

#[test]
fn mean_trials_within_factor_three_of_prediction() {
    use rankforge::attack_support::{es_attack, SupportGuessConfig};
    for (variant, n, predicted) in [(SupportVariant::V1, 8, 16.0), (SupportVariant::V2, 9, 4.0)] {
        let runs = 200;
        let total: u64 = (0..runs)
            .map(|i| {
                let inst = instance(2, 6, n, 2, 2, 500 + i);
                let rep = es_attack(&inst.public(), &SupportGuessConfig::new(variant, i));
                assert_eq!(rep.predicted_trials, Some(predicted));
                assert!(inst.verify(rep.solution().unwrap(), true).is_ok());
                rep.trials
            })
            .sum();
        let mean = total as f64 / runs as f64;
        assert!(mean >= predicted / 3.0 && mean <= predicted * 3.0, "{variant:?}: mean {mean}");
    }
}
