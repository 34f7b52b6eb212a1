//! Self-check suites run by the `verify` command.

use crate::analytics::{
    constants, epsilon0_series, exact_weight, paper_weight_bound_exact, structure_fractions,
    verify_main_bound, verify_main_bound_exact,
};
use crate::bethe::{
    bethe_existence_bound, bethe_growth_closed_form, bethe_growth_count, bethe_tree_count,
};
use crate::bigcount::{double_factorial, factorial};
use crate::counting::{enumerate_growth_orders, growth_count, orient_from_root, tree_weight};
use crate::generators::{bouch_tree, comb_tree, path_tree};
use crate::lattice::{validate_tree, Bond, Site};
use crate::params::BouchParams;
use crate::random::random_lattice_tree;
use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Core,
    Bouch,
    Bethe,
    All,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

struct Recorder {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Recorder {
    fn check(&mut self, name: impl Into<String>, outcome: Result<bool, String>) {
        let (passed, detail) = match outcome {
            Ok(p) => (p, String::new()),
            Err(e) => (false, e),
        };
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            passed,
            detail,
        });
    }
}

pub fn run(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Core => core_suite(),
        Suite::Bouch => bouch_suite(),
        Suite::Bethe => bethe_suite(),
        Suite::All => {
            let mut all = core_suite();
            all.extend(bouch_suite());
            all.extend(bethe_suite());
            all
        }
    }
}

fn core_suite() -> Vec<Check> {
    let mut r = Recorder {
        suite: "core",
        checks: Vec::new(),
    };
    let mut trees = Vec::new();
    for i in 0..200u64 {
        let bonds = 1 + (i % 9) as usize;
        match random_lattice_tree(bonds, i) {
            Ok(t) => trees.push(t),
            Err(e) => r.check(format!("random tree seed {i}"), Err(e.to_string())),
        }
    }
    let mut oracle_ok = 0;
    let mut failures = Vec::new();
    for t in &trees {
        let l = t.len() as u64;
        let brute = enumerate_growth_orders(t, None);
        let w = tree_weight(t);
        let ok = brute
            .as_ref()
            .map(|n| n * &w == factorial(l))
            .unwrap_or(false)
            && growth_count(t).ok() == brute.ok();
        if ok {
            oracle_ok += 1;
        } else {
            failures.push(t.to_json());
        }
    }
    r.check(
        format!("growth-order oracle on {} random trees", trees.len()),
        if failures.is_empty() {
            Ok(oracle_ok == 200)
        } else {
            Err(failures.join("; "))
        },
    );

    r.check(
        "a priori bounds 1 <= N <= L!",
        Ok(trees.iter().all(|t| {
            let n = growth_count(t).unwrap();
            n >= BigUint::one() && n <= factorial(t.len() as u64)
        })),
    );
    r.check(
        "local weight recursion",
        Ok(trees.iter().all(|t| {
            let f = orient_from_root(t);
            let w = f.weights();
            (0..t.len()).all(|b| w[b] == 1 + f.children(b).iter().map(|&c| w[c]).sum::<u64>())
        })),
    );
    for l in [2u64, 4, 6, 8, 10] {
        let comb = comb_tree(l).unwrap();
        let want = double_factorial(l - 1);
        let mut ok = growth_count(&comb).unwrap() == want;
        if l <= 8 {
            ok &= enumerate_growth_orders(&comb, None).unwrap() == want;
        }
        r.check(format!("comb {l}: N = (L-1)!!"), Ok(ok));
    }
    for l in 1..=10 {
        let p = path_tree(l).unwrap();
        r.check(
            format!("path {l}: N = 1"),
            Ok(growth_count(&p).unwrap().is_one()
                && enumerate_growth_orders(&p, None).unwrap().is_one()),
        );
    }
    let arms = [(1, 0), (0, 1), (-1, 0), (0, -1)];
    for k in 1..=4 {
        let bonds: Vec<Bond> = arms[..k]
            .iter()
            .map(|&(x, y)| Bond::new(Site::ORIGIN, Site::new(x, y)).unwrap())
            .collect();
        let star = validate_tree(Site::ORIGIN, bonds).unwrap();
        r.check(
            format!("star {k}: N = k!"),
            Ok(growth_count(&star).unwrap() == factorial(k as u64)),
        );
    }
    r.checks
}

fn bouch_suite() -> Vec<Check> {
    let mut r = Recorder {
        suite: "bouch",
        checks: Vec::new(),
    };
    let expected = [4u64, 32, 768];
    for j in 1..=3 {
        let outcome = (|| -> crate::Result<bool> {
            let p = BouchParams::new(1, j)?;
            let t = bouch_tree(&p)?;
            let l = p.bond_count(j)?.to_u64().unwrap();
            let w = exact_weight(&p, j)?;
            let mut ok = l == expected[j - 1] && t.tree().len() as u64 == l;
            ok &= tree_weight(t.tree()) == w;
            ok &= growth_count(t.tree())? * &w == factorial(l);
            if j >= 2 {
                ok &= w <= paper_weight_bound_exact(&p, j)?;
                ok &= BigUint::from(t.bonds_in_generation(1)) == p.e(j).to_biguint().unwrap();
            }
            Ok(ok)
        })();
        r.check(
            format!("a0=1 j={j}: tree, bond count, weight"),
            outcome.map_err(|e| e.to_string()),
        );
    }
    for (a0, jmax) in [(1u64, 6usize), (2, 5), (3, 4), (20, 3)] {
        let outcome = BouchParams::new(a0, jmax)
            .and_then(|p| (1..=jmax).try_for_each(|j| p.bond_count(j).map(|_| ())))
            .map(|_| true)
            .map_err(|e| e.to_string());
        r.check(
            format!("a0={a0}: telescoped and closed L_j agree for j <= {jmax}"),
            outcome,
        );
    }
    let eps = epsilon0_series(20);
    r.check(
        "epsilon0(20) in [1.45e-9, 1.46e-9]",
        Ok((1.45e-9..=1.46e-9).contains(&eps.sum) && eps.tail_bound < 1e-20 * eps.sum),
    );
    for (a0, jmax) in [(1u64, 8usize), (2, 8), (20, 5)] {
        for j in 1..=jmax {
            r.check(
                format!("main bound a0={a0} j={j}"),
                verify_main_bound(a0, j)
                    .map(|rep| rep.passed && rep.margin_per_bond >= 0.0)
                    .map_err(|e| e.to_string()),
            );
        }
    }
    for j in 1..=3 {
        r.check(
            format!("main bound a0=1 j={j} (exact weight)"),
            verify_main_bound_exact(1, j)
                .map(|rep| rep.passed)
                .map_err(|e| e.to_string()),
        );
    }
    r.check(
        "C > 1",
        Ok([1u64, 2, 20]
            .iter()
            .all(|&a0| constants(a0).map(|c| c.c > 1.0).unwrap_or(false))),
    );
    for (a0, jmax) in [(1u64, 6usize), (2, 6), (20, 4)] {
        for j in 2..=jmax {
            r.check(
                format!("structure fractions a0={a0} j={j}"),
                structure_fractions(a0, j)
                    .map(|s| s.passed)
                    .map_err(|e| e.to_string()),
            );
        }
    }
    r.checks
}

fn bethe_suite() -> Vec<Check> {
    let mut r = Recorder {
        suite: "bethe",
        checks: Vec::new(),
    };
    for l in 1..=7 {
        r.check(
            format!("L={l}: growth count = (L+2)!/2"),
            bethe_growth_count(l)
                .map(|g| g == bethe_growth_closed_form(l))
                .map_err(|e| e.to_string()),
        );
        r.check(
            format!("L={l}: tree count <= 9^L"),
            bethe_tree_count(l)
                .map(|c| c <= BigUint::from(9u32).pow(l as u32))
                .map_err(|e| e.to_string()),
        );
        r.check(
            format!("L={l}: partition identity and pigeonhole bound"),
            bethe_existence_bound(l)
                .map(|rep| rep.passed)
                .map_err(|e| e.to_string()),
        );
    }
    r.checks
}
