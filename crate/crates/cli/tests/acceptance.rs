//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use lattice_growth::analytics::{epsilon0_series, paper_weight_bound_exact, LOG_REL_BUDGET};
use lattice_growth::bethe::{bethe_existence_bound, bethe_growth_count, bethe_tree_count};
use lattice_growth::bigcount::{double_factorial, factorial};
use lattice_growth::lattice::bond;
use lattice_growth::BigCount as BigUint;
use lattice_growth::{
    bouch_tree, comb_tree, constants, enumerate_growth_orders, epsilon0, exact_weight,
    growth_count, path_tree, random_lattice_tree, structure_fractions, tree_weight, validate_tree,
    verify_main_bound, Bond, BouchParams, RootedTree, Site,
};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fixtures() -> Vec<RootedTree> {
    let mut v: Vec<RootedTree> = [2, 4, 6, 8]
        .iter()
        .map(|&l| comb_tree(l).unwrap())
        .collect();
    v.extend((1..=9).map(|l| path_tree(l).unwrap()));
    let arms = [(1, 0), (0, 1), (-1, 0), (0, -1)];
    for k in 1..=4 {
        v.push(validate_tree(Site::ORIGIN, arms[..k].iter().map(|&a| bond((0, 0), a))).unwrap());
    }
    v.push(
        validate_tree(
            Site::ORIGIN,
            [
                bond((0, 0), (0, 1)),
                bond((0, 1), (-1, 1)),
                bond((0, 1), (1, 1)),
                bond((1, 1), (1, 2)),
            ],
        )
        .unwrap(),
    );
    v
}

fn c1_growth_oracle() -> Outcome {
    let mut trees: Vec<RootedTree> = (0..200u64)
        .map(|s| random_lattice_tree(1 + (s % 9) as usize, s).unwrap())
        .collect();
    trees.extend(fixtures());
    for t in &trees {
        let n = enumerate_growth_orders(t, None).map_err(|e| e.to_string())?;
        ensure!(
            n * tree_weight(t) == factorial(t.len() as u64),
            "N*W != L! for {}",
            t.to_json()
        );
    }
    Ok(format!("{} trees", trees.len()))
}

fn c2_comb() -> Outcome {
    for l in [2u64, 4, 6, 8, 10] {
        let comb = comb_tree(l).map_err(|e| e.to_string())?;
        let want = double_factorial(l - 1);
        let n = growth_count(&comb).map_err(|e| e.to_string())?;
        ensure!(n == want, "formula L={l}: {n} != {want}");
        if l <= 8 {
            let b = enumerate_growth_orders(&comb, None).map_err(|e| e.to_string())?;
            ensure!(b == want, "oracle L={l}: {b} != {want}");
        }
    }
    Ok("N = 1, 3, 15, 105, 945".into())
}

fn c3_bouch_small() -> Outcome {
    let want = [4u64, 32, 768];
    for j in 1..=3 {
        let p = BouchParams::new(1, j).map_err(|e| e.to_string())?;
        let t = bouch_tree(&p).map_err(|e| e.to_string())?;
        validate_tree(Site::ORIGIN, t.tree().bonds().iter().copied()).map_err(|e| e.to_string())?;
        let tel = p.bond_count_telescoped(j).to_u64();
        let closed = p.bond_count_closed(j).map_err(|e| e.to_string())?.to_u64();
        ensure!(
            tel == Some(want[j - 1]) && closed == Some(want[j - 1]),
            "L_{j}: {tel:?} / {closed:?}"
        );
        ensure!(t.tree().len() as u64 == want[j - 1], "materialized L_{j}");
        let w = exact_weight(&p, j).map_err(|e| e.to_string())?;
        ensure!(
            w == tree_weight(t.tree()),
            "exact_weight({j}) != tree_weight"
        );
        if j >= 2 {
            let bound = paper_weight_bound_exact(&p, j).map_err(|e| e.to_string())?;
            ensure!(w <= bound, "W_{j} exceeds the recursive bound");
        }
    }
    Ok("L = 4, 32, 768".into())
}

fn c4_first_generation() -> Outcome {
    for j in [2usize, 3] {
        let p = BouchParams::new(1, j).map_err(|e| e.to_string())?;
        let t = bouch_tree(&p).map_err(|e| e.to_string())?;
        let e = p.e(j).to_u64().unwrap();
        ensure!(
            t.bonds_in_generation(1) == e,
            "j={j}: {} != {e}",
            t.bonds_in_generation(1)
        );
    }
    Ok("E_2 = 16, E_3 = 256".into())
}

fn c5_epsilon0() -> Outcome {
    let eps = epsilon0(20);
    ensure!((1.45e-9..=1.46e-9).contains(&eps), "epsilon0(20) = {eps:e}");
    for a0 in [1u64, 2, 3, 20] {
        let s = epsilon0_series(a0);
        ensure!(
            s.tail_bound < 1e-20 * s.sum,
            "a0={a0}: tail {:e}",
            s.tail_bound
        );
    }
    Ok(format!("epsilon0(20) = {eps:.6e}"))
}

fn c6_main_bound() -> Outcome {
    let mut worst = f64::INFINITY;
    let mut checked = 0;
    for (a0, min_j) in [(1u64, 6usize), (2, 6), (20, 4)] {
        let c = constants(a0).map_err(|e| e.to_string())?;
        ensure!(c.c > 1.0, "C({a0}) = {}", c.c);
        let mut reached = 0;
        for j in 1..=12 {
            let r = match verify_main_bound(a0, j) {
                Ok(r) => r,
                Err(e) => return Err(format!("a0={a0} j={j}: {e}")),
            };
            ensure!(
                r.margin_per_bond >= -LOG_REL_BUDGET * r.c2.max(1.0) && r.passed,
                "a0={a0} j={j}: margin {}",
                r.margin_per_bond
            );
            worst = worst.min(r.margin_per_bond);
            reached = j;
            checked += 1;
        }
        ensure!(reached >= min_j, "a0={a0}: only reached j={reached}");
    }
    Ok(format!(
        "{checked} generations, min margin/bond {worst:.3e}"
    ))
}

fn c7_structure() -> Outcome {
    let mut exact = 0;
    let mut total = 0;
    for a0 in [1u64, 2, 3, 20] {
        for j in 2..=6 {
            let r = structure_fractions(a0, j).map_err(|e| e.to_string())?;
            ensure!(r.passed, "a0={a0} j={j}: {r:?}");
            if r.exact {
                ensure!(
                    r.exact_sandwich_holds == Some(true) && r.exact_backbone_holds == Some(true),
                    "a0={a0} j={j}: exact checks failed"
                );
                exact += 1;
            }
            total += 1;
        }
    }
    Ok(format!("{total} cases, {exact} in exact arithmetic"))
}

fn c8_bethe() -> Outcome {
    for l in 1..=7 {
        let g = bethe_growth_count(l).map_err(|e| e.to_string())?;
        ensure!(
            g == factorial(l as u64 + 2) / BigUint::from(2u32),
            "growth L={l}"
        );
        let trees = bethe_tree_count(l).map_err(|e| e.to_string())?;
        ensure!(
            trees <= BigUint::from(9u32).pow(l as u32),
            "tree count L={l}"
        );
        let r = bethe_existence_bound(l).map_err(|e| e.to_string())?;
        ensure!(
            r.partition_holds && r.counts_agree && r.average_bound.exceeds(&r.factorial_bound),
            "report L={l}"
        );
        ensure!(
            r.maximizer_n.clone() * &r.factorial_bound.den > r.factorial_bound.num,
            "pigeonhole L={l}"
        );
    }
    Ok("L <= 7".into())
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_lattice-growth")
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

struct Run {
    code: i32,
    stdout: Vec<u8>,
    stderr: String,
}

fn run(args: &[&str], stdin: &[u8]) -> Run {
    let mut child = Command::new(bin())
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn cli");
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: out.stdout,
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

/// Runs twice and insists on identical bytes and exit 0.
fn run_stable(args: &[&str], stdin: &[u8]) -> Result<Vec<u8>, String> {
    let a = run(args, stdin);
    let b = run(args, stdin);
    ensure!(a.code == 0, "{args:?} exited {}: {}", a.code, a.stderr);
    ensure!(
        a.stdout == b.stdout,
        "{args:?} not byte-identical across runs"
    );
    Ok(a.stdout)
}

fn parse_dot(dot: &str) -> Result<RootedTree, String> {
    let site = |s: &str| -> Result<Site, String> {
        let s = s.trim().trim_end_matches(';').trim_matches('"');
        let (x, y) = s.split_once('_').ok_or(format!("bad node {s}"))?;
        Ok(Site::new(
            x.parse().map_err(|_| s.to_string())?,
            y.parse().map_err(|_| s.to_string())?,
        ))
    };
    let mut root = None;
    let mut bonds = Vec::new();
    for line in dot.lines() {
        if let Some((a, b)) = line.split_once("--") {
            bonds.push(Bond::new(site(a)?, site(b)?).map_err(|e| e.to_string())?);
        } else if line.contains("doublecircle") {
            root = Some(site(line.trim().split(' ').next().unwrap())?);
        }
    }
    validate_tree(root.ok_or("no root")?, bonds).map_err(|e| e.to_string())
}

fn c9_cli() -> Outcome {
    let cases: [(&str, &[&str]); 3] = [
        ("path", &["gen", "path", "--bonds", "4"]),
        ("comb4", &["gen", "comb", "--bonds", "4"]),
        ("bouch1_2", &["gen", "bouch", "--a0", "1", "--gen", "2"]),
    ];
    let read = |n: &str| std::fs::read(golden(n)).map_err(|e| format!("{n}: {e}"));
    for (name, gen) in cases {
        let tree = run_stable(gen, b"")?;
        ensure!(
            tree == read(&format!("{name}.json"))?,
            "gen {name} differs from golden"
        );
        let count = run_stable(&["count"], &tree)?;
        ensure!(
            count == read(&format!("{name}.count.json"))?,
            "count {name} differs"
        );
        for fmt in ["dot", "svg"] {
            let out = run_stable(&["export", "--format", fmt], &tree)?;
            ensure!(
                out == read(&format!("{name}.{fmt}"))?,
                "export {fmt} {name} differs"
            );
        }
        let dot = String::from_utf8(read(&format!("{name}.dot"))?).unwrap();
        let back = parse_dot(&dot)?;
        ensure!(
            back.to_json().as_bytes() == tree.trim_ascii_end(),
            "dot round trip {name}"
        );
    }

    let square =
        br#"{"root":[0,0],"bonds":[[[0,0],[1,0]],[[1,0],[1,1]],[[0,1],[1,1]],[[0,0],[0,1]]]}"#;
    let comb14 = run_stable(&["gen", "comb", "--bonds", "14"], b"")?;
    let big = run_stable(&["gen", "bouch", "--a0", "3", "--gen", "2"], b"")?;
    let expect: Vec<(Vec<&str>, &[u8], i32, &str)> = vec![
        (vec!["verify", "--suite", "core"], b"", 0, ""),
        (vec!["gen", "comb", "--bonds", "5"], b"", 2, "OddLength"),
        (
            vec!["gen", "bouch", "--a0", "20", "--gen", "2"],
            b"",
            2,
            "TooLarge",
        ),
        (vec!["gen", "path", "--nope"], b"", 2, ""),
        (vec!["count"], square, 2, "HasCycle"),
        (vec!["count"], b"not json", 2, ""),
        (vec!["oracle"], &comb14, 3, "TooLarge"),
        (vec!["oracle", "--cap", "10"], &comb14, 3, "CapExceeded"),
        (vec!["analyze", "--a0", "0"], b"", 2, ""),
        (
            vec!["analyze", "--a0", "1", "--gen", "6", "--mode", "exact"],
            b"",
            3,
            "TooLarge",
        ),
        (vec!["export", "--format", "svg"], &big, 3, "TooLarge"),
        (vec!["bethe", "--bonds", "0"], b"", 2, ""),
    ];
    for (args, stdin, code, name) in &expect {
        let r = run(args, stdin);
        ensure!(
            r.code == *code,
            "{args:?}: exit {} (want {code}): {}",
            r.code,
            r.stderr
        );
        ensure!(
            r.stderr.contains(name),
            "{args:?}: stderr lacks {name}: {}",
            r.stderr
        );
        if *code != 0 {
            ensure!(
                r.stderr.trim().lines().count() >= 1,
                "{args:?}: no diagnostic"
            );
        }
    }
    Ok(format!(
        "3 goldens x 4 outputs, {} exit codes",
        expect.len()
    ))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 9] = [
        (
            "growth-order oracle",
            Duration::from_secs(60),
            c1_growth_oracle,
        ),
        ("comb double factorial", Duration::from_secs(5), c2_comb),
        (
            "hierarchical small instances",
            Duration::from_secs(30),
            c3_bouch_small,
        ),
        (
            "first-generation count",
            Duration::from_secs(30),
            c4_first_generation,
        ),
        ("epsilon0", Duration::from_secs(1), c5_epsilon0),
        (
            "main bound certification",
            Duration::from_secs(5),
            c6_main_bound,
        ),
        ("structure fractions", Duration::from_secs(30), c7_structure),
        ("bethe lattice", Duration::from_secs(120), c8_bethe),
        ("cli contract", Duration::from_secs(120), c9_cli),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(d) if took > *limit => Err(format!("{d}; took {took:.2?} > {limit:?}")),
            o => o,
        };
        match outcome {
            Ok(d) => println!("PASS {} {name} ({d}; {took:.2?})", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {} {name}: {e}", i + 1);
            }
        }
    }
    println!("{} criteria, {failed} failed", criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
