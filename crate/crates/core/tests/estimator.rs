use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use rankforge::estimator::{
    cost_es, cost_es_v1, cost_es_v2, cost_hybrid, cost_linearization, degree_of_regularity,
    degree_of_regularity_paper_variant, f5_cost, hybrid_t, log2_big, monomial_count, render_tables, EstimateParams,
};

/// Power-series long division: s = num / den with den(0) = 1.
fn divide_series(num: &[BigInt], den: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut s: Vec<BigInt> = Vec::with_capacity(len);
    for i in 0..len {
        let mut v = num.get(i).cloned().unwrap_or_default();
        for j in 1..=i.min(den.len() - 1) {
            v -= &den[j] * &s[i - j];
        }
        s.push(v);
    }
    s
}

fn poly_pow(base: &[BigInt], e: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::one()];
    for _ in 0..e {
        let mut next = vec![BigInt::zero(); acc.len() + base.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in base.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc
}

fn dreg_oracle(n_eq: usize, n_var: usize, d: usize) -> Option<usize> {
    let mut one_minus_zd = vec![BigInt::zero(); d + 1];
    one_minus_zd[0] = BigInt::one();
    one_minus_zd[d] -= BigInt::one();
    let num = poly_pow(&one_minus_zd, n_eq);
    let den = poly_pow(&[BigInt::one(), -BigInt::one()], n_var);
    let len = n_eq * d + 2;
    divide_series(&num, &den, len).iter().position(|c| !c.is_positive())
}

#[test]
fn degree_of_regularity_matches_series_division() {
    for n_var in 1..10 {
        for extra in 0..4 {
            for d in 1..5 {
                let n_eq = n_var + extra;
                assert_eq!(
                    degree_of_regularity(n_eq, n_var, d),
                    dreg_oracle(n_eq, n_var, d),
                    "n_eq={n_eq} n_var={n_var} d={d}"
                );
            }
        }
    }
}

#[test]
fn quadratic_one_extra_equation() {
    for n_var in 2..16 {
        let got = degree_of_regularity(n_var + 1, n_var, 2).unwrap();
        assert_eq!(Some(got), dreg_oracle(n_var + 1, n_var, 2));
        assert!(got >= 2 && got <= n_var + 1);
    }
}

#[test]
fn large_degree_system_is_handled() {
    // 64 equations of degree 2^6 + 1 in 18 unknowns
    let d = degree_of_regularity(64, 18, 65).unwrap();
    assert!(d > 65);
    assert!(degree_of_regularity_paper_variant(2, 6, 12, 64).is_some());
}

#[test]
fn f5_cost_is_finite_for_large_hypotheses() {
    let c = f5_cost(64, 78, 200, 2.0);
    assert!(c.feasible && c.log2_ops.is_finite());
    let m = monomial_count(78, 200);
    assert!((log2_big(&m) - (c.log2_ops - 6.0) / 2.0).abs() < 1e-9);
}

#[test]
fn published_tables_within_two_bits() {
    let t = render_tables(3.0);
    assert_eq!(t.rows.len(), 6);
    for row in &t.rows {
        assert!(!row.l.feasible);
        for (col, computed, paper) in row.numeric_columns() {
            assert!((computed - paper).abs() <= 2.0, "{col} for n={}: {computed} vs {paper}", row.paper.n);
        }
    }
}

#[test]
fn es_branch_is_the_minimum() {
    for n in 3..50 {
        for k in 1..n - 1 {
            for r in 1..5 {
                for m in [8, 24] {
                    let p = EstimateParams::new(n, k, r, m, 2);
                    let best = cost_es(p, 3.0);
                    let (a, b) = (cost_es_v1(p, 3.0).log2_ops, cost_es_v2(p, 3.0).log2_ops);
                    assert_eq!(best.log2_ops, a.min(b));
                    assert_eq!(best.branch, Some(if b < a { "v2" } else { "v1" }));
                }
            }
        }
    }
}

#[test]
fn hybrid_t_closes_the_linearization_gap() {
    for n in 2..60 {
        for k in 1..n {
            for r in 1..6 {
                let t = hybrid_t(n, k, r);
                if t > k {
                    assert!(!cost_hybrid(EstimateParams::new(n, k, r, 20, 2), 3.0).feasible);
                    continue;
                }
                // after t guesses, n − 1 + rt covers the (r+1)(k+1) − 1 unknowns
                assert!(n + r * t + 1 >= (r + 1) * (k + 1));
                if t > 0 {
                    assert!(n + r * (t - 1) + 1 < (r + 1) * (k + 1));
                }
                let lin = cost_linearization(EstimateParams::new(n, k, r, 20, 2), 3.0);
                assert_eq!(lin.feasible, n + 1 >= (r + 1) * (k + 1));
            }
        }
    }
}
