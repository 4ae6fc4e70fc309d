//! The acceptance gate: every criterion at zero tolerance, one PASS/FAIL line
//! each, with independent oracles for the headline numbers.

use std::sync::Arc;
use std::time::{Duration, Instant};

use hochcat::corpus;
use hochcat::hochschild::{HochschildComplex, HochschildSpec};
use hochcat::suite::{run_criterion, CRITERIA};
use hochcat::ScalarKind;
use num_rational::BigRational;
use num_traits::{One, Zero};

const LIMITS_SECS: [u64; 12] = [60, 10, 30, 30, 60, 30, 60, 30, 30, 60, 60, 60];

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Rank by Gaussian elimination on a dense matrix.
fn rank(mut m: Vec<Vec<Q>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// HH of `A = k[ε]/(ε²)` from the 2-periodic bimodule resolution
/// `… → A⊗A → A⊗A → A⊗A → A`, with maps `ε⊗1 − 1⊗ε` and `ε⊗1 + 1⊗ε`
/// alternating. Applying `Hom_{A-A}(A⊗A, A) = A` turns them into
/// multiplication by `εa − aε = 0` and `εa + aε = 2εa`.
fn dual_numbers_oracle(top: usize) -> Vec<usize> {
    // Multiplication by ε in the basis (1, ε): 1 ↦ ε, ε ↦ 0.
    let eps = |c: i64| vec![vec![q(0), q(0)], vec![q(c), q(0)]];
    let zero = || vec![vec![q(0), q(0)], vec![q(0), q(0)]];
    // Cochain differential from degree n to n + 1.
    let d = |n: usize| if n.is_multiple_of(2) { zero() } else { eps(2) };
    (0..=top)
        .map(|n| {
            let out = rank(d(n));
            let into = if n == 0 { 0 } else { rank(d(n - 1)) };
            2 - out - into
        })
        .collect()
}

/// Simplicial cohomology of the 4-cycle a–c–b–d–a.
fn four_cycle_oracle() -> Vec<usize> {
    let edges = [(0, 2), (2, 1), (1, 3), (3, 0)];
    let delta0: Vec<Vec<Q>> = edges
        .iter()
        .map(|&(x, y)| (0..4).map(|v| if v == y { Q::one() } else if v == x { -Q::one() } else { Q::zero() }).collect())
        .collect();
    let r = rank(delta0);
    vec![4 - r, edges.len() - r, 0]
}

fn hh(name: &str, n_max: usize) -> Vec<usize> {
    let c = Arc::new(corpus::category(name, ScalarKind::Rational).unwrap());
    let h = HochschildComplex::build(&HochschildSpec::diagonal(c, n_max)).unwrap();
    h.betti().unwrap().into_iter().take(n_max + 1).collect()
}

#[test]
fn oracles_agree_with_the_engine() {
    assert_eq!(dual_numbers_oracle(3), vec![2, 1, 1, 1]);
    assert_eq!(hh("dual_numbers", 3), dual_numbers_oracle(3));
    assert_eq!(four_cycle_oracle(), vec![1, 1, 0]);
    assert_eq!(hh("pseudocircle", 2), four_cycle_oracle());
}

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for id in 1..=CRITERIA.len() {
        let start = Instant::now();
        let outcome = run_criterion(id, ScalarKind::Rational).expect("no resource cap is hit by the corpus");
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(LIMITS_SECS[id - 1]);
        let ok = outcome.passed && in_time;
        println!(
            "{} {:>2} {} ({} checks, {:.2}s of {}s)",
            if ok { "PASS" } else { "FAIL" },
            id,
            outcome.name,
            outcome.checks,
            elapsed.as_secs_f64(),
            LIMITS_SECS[id - 1]
        );
        for f in &outcome.failures {
            println!("       {f}");
        }
        if !ok {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
