//! Constants, weight bounds and the growth-count lower bound.

use lattice_growth::analytics::epsilon0_series;
use lattice_growth::analytics::{paper_weight_bound_exact, paper_weight_bound_log, LOG_REL_BUDGET};
use lattice_growth::bigcount::ln_big;
use lattice_growth::logdomain::ln_factorial;
use lattice_growth::{
    bouch_tree, constants, epsilon0, exact_weight, structure_fractions, tree_weight,
    verify_main_bound, verify_main_bound_exact, BouchParams,
};
use std::f64::consts::LN_2;

#[test]
fn epsilon0_frozen_values() {
    // 4 * (1/4 + 4/16 + 16/2^8 + 256/2^32 + ...) computed by hand
    let want = 1.0 + 1.0 + 0.25 + 2f64.powi(-22);
    assert!((epsilon0(1) - want).abs() <= 1e-15 * want);
    assert!((epsilon0(1) - 2.2500002384185791).abs() < 1e-15);
    // a0 = 20: single term 4 * 400 / 2^40
    assert_eq!(epsilon0(20), 1600.0 / 2f64.powi(40));
    assert!(epsilon0(20) > 1.45e-9 && epsilon0(20) < 1.46e-9);
}

#[test]
fn epsilon0_partial_sums_and_tail() {
    for a0 in 1..=40u64 {
        let s = epsilon0_series(a0);
        let mut acc = 0.0;
        for t in &s.terms {
            assert!(t.value > 0.0);
            acc += t.value;
        }
        assert!((acc - s.sum).abs() <= 1e-15 * s.sum.max(1.0));
        assert!(s.tail_bound >= 0.0 && s.tail_bound <= 1e-290);
    }
}

#[test]
fn c1_second_term_for_a0_20() {
    let r = constants(20).unwrap();
    let eps = 1600.0 / 2f64.powi(40);
    let want = 8.0 * LN_2 * 400.0 / 2f64.powi(20) + 4.0 * eps.ln_1p() * 400.0 / 2f64.powi(40);
    let k2 = r.terms.iter().find(|t| t.k == 2).unwrap().value;
    assert!((k2 - want).abs() <= 1e-15 * want);
    assert!((r.c1 - 0.0021153173234861634).abs() < 1e-12);
    assert!((r.c2 - (r.c1 + ln_factorial(2f64.powi(40)) / 2f64.powi(40))).abs() < 1e-12);
}

#[test]
fn constants_exceed_one() {
    for a0 in 1..=64 {
        let r = constants(a0).unwrap();
        assert!(r.c1 > 0.0 && r.c2 > r.c1 && r.c > 1.0, "a0={a0}");
        assert!((r.c.ln() - r.c2).abs() <= 1e-12 * r.c2);
    }
}

#[test]
fn exact_weights_respect_the_recursive_bound() {
    for (a0, j) in [(1u64, 2usize), (1, 3), (2, 2), (3, 2)] {
        let p = BouchParams::new(a0, j).unwrap();
        assert!(exact_weight(&p, j).unwrap() <= paper_weight_bound_exact(&p, j).unwrap());
    }
}

#[test]
fn log_and_exact_bounds_agree() {
    for j in [2usize, 3] {
        let p = BouchParams::new(1, j).unwrap();
        let exact = ln_big(&paper_weight_bound_exact(&p, j).unwrap());
        let e = p.e(j).to_f64();
        let log = paper_weight_bound_log(1, j).unwrap().log_w_per_e * e;
        assert!(
            (exact - log).abs() <= 1e-9 * exact,
            "j={j}: {exact} vs {log}"
        );
    }
}

#[test]
fn main_bound_holds_across_generations() {
    for a0 in [1u64, 2, 3, 20] {
        for j in 1..=8 {
            let r = verify_main_bound(a0, j).unwrap();
            assert!(
                r.passed && r.margin_per_bond >= -LOG_REL_BUDGET * r.c2.max(1.0),
                "a0={a0} j={j}"
            );
        }
    }
}

#[test]
fn main_bound_exact_at_small_generations() {
    let r = verify_main_bound_exact(1, 3).unwrap();
    assert!(r.passed);
    // ln N_3 >= ln 768! - 768 ln C
    let p = BouchParams::new(1, 3).unwrap();
    let w = tree_weight(bouch_tree(&p).unwrap().tree());
    let ln_n = ln_factorial(768.0) - ln_big(&w);
    assert!(ln_n >= ln_factorial(768.0) - 768.0 * r.c2);
}

#[test]
fn structure_for_a0_one_and_twenty() {
    let s = structure_fractions(1, 3).unwrap();
    assert!(s.passed);
    assert_eq!(s.l_over_e, 3.0);
    assert!(s.l_over_e <= 1.0 + epsilon0(1));
    let s = structure_fractions(20, 2).unwrap();
    assert!(s.passed);
    assert!(s.l_over_e - 1.0 <= 1.5e-9);
    assert!(s.first_generation_fraction >= 1.0 - 1.5e-9);
}
