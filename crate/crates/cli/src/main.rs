//! Command-line front end: generate, count, enumerate, analyze and export
//! square-lattice trees.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input,
//! 3 resource guard.

use clap::{Args, Parser, Subcommand, ValueEnum};
use lattice_growth::analytics::{structure_fractions, BoundReport, StructureReport};
use lattice_growth::bethe::bethe_existence_bound;
use lattice_growth::render::{to_dot, to_svg};
use lattice_growth::verify::{self, Suite};
use lattice_growth::{
    bouch_tree, comb_tree, constants, custom_hierarchical_tree, enumerate_growth_orders,
    growth_count, path_tree, random_lattice_tree, tree_weight, verify_main_bound,
    verify_main_bound_exact, BouchParams, Error, RootedTree,
};
use serde_json::{json, Value};
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "lattice-growth",
    version,
    about = "Growth orders of rooted lattice trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a tree as canonical JSON
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Read a tree from stdin and print L, W(T) and N(T)
    Count,
    /// Read a tree from stdin and count its growth orders by enumeration
    Oracle {
        /// Stop once more than this many orders are found
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Constants and the C^L weight bound for a hierarchical tree generation
    Analyze {
        #[arg(long, default_value_t = 20)]
        a0: u64,
        #[arg(long = "gen", default_value_t = 4)]
        generation: usize,
        #[arg(long, value_enum, default_value_t = Mode::Log)]
        mode: Mode,
    },
    /// Growth and subtree counts on the coordination-3 Bethe lattice
    Bethe {
        #[arg(long)]
        bonds: usize,
    },
    /// Run the built-in check suites
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
    /// Read a tree from stdin and render it
    Export {
        #[arg(long, value_enum)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Straight segment rooted at one end
    Path(Bonds),
    /// Comb with L/2 teeth
    Comb(Bonds),
    /// Hierarchical tree T_j for a given a0
    Bouch {
        #[arg(long)]
        a0: u64,
        #[arg(long = "gen")]
        generation: usize,
    },
    /// Random tree grown from the origin
    Random {
        #[arg(long)]
        bonds: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Hierarchical tree from explicit backbone lengths and branch counts
    Custom {
        /// Backbone lengths l_1,l_2,...
        #[arg(long, value_delimiter = ',', required = true)]
        ells: Vec<u64>,
        /// Branch counts b_2,b_3,...
        #[arg(long, value_delimiter = ',')]
        bs: Vec<u64>,
    },
}

#[derive(Args)]
struct Bonds {
    #[arg(long)]
    bonds: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Log,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Core,
    Bouch,
    Bethe,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Svg,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(e: Error) -> Self {
        Failure {
            code: 2,
            message: format!("{}: {e}", e.name()),
        }
    }

    /// Maps library errors onto the exit-code contract.
    fn classify(e: Error) -> Self {
        let code = match e {
            Error::TooLarge { .. } | Error::CapExceeded { .. } => 3,
            Error::BoundViolated(_) | Error::InternalMismatch(_) | Error::InternalNonDivisible => 1,
            _ => 2,
        };
        Failure {
            code,
            message: format!("{}: {e}", e.name()),
        }
    }
}

type CmdResult = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen { kind } => cmd_gen(kind),
        Command::Count => read_tree().and_then(cmd_count),
        Command::Oracle { cap } => read_tree().and_then(|t| cmd_oracle(t, cap)),
        Command::Analyze {
            a0,
            generation,
            mode,
        } => cmd_analyze(a0, generation, mode),
        Command::Bethe { bonds } => cmd_bethe(bonds),
        Command::Verify { suite } => cmd_verify(suite),
        Command::Export { format } => read_tree().and_then(|t| cmd_export(t, format)),
    };
    match outcome {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if f.code != 1 || !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn read_tree() -> Result<RootedTree, Failure> {
    let mut text = String::new();
    std::io::stdin()
        .read_to_string(&mut text)
        .map_err(|e| Failure {
            code: 2,
            message: format!("reading stdin: {e}"),
        })?;
    RootedTree::from_json(&text).map_err(Failure::invalid)
}

fn cmd_gen(kind: GenKind) -> CmdResult {
    let tree = match kind {
        GenKind::Path(b) => path_tree(b.bonds),
        GenKind::Comb(b) => comb_tree(b.bonds),
        GenKind::Bouch { a0, generation } => BouchParams::new(a0, generation)
            .and_then(|p| bouch_tree(&p))
            .map(|h| h.into_tree()),
        GenKind::Random { bonds, seed } => random_lattice_tree(bonds, seed),
        GenKind::Custom { ells, bs } => custom_hierarchical_tree(&ells, &bs).map(|h| h.into_tree()),
    }
    .map_err(Failure::invalid)?;
    Ok(tree.to_json() + "\n")
}

fn cmd_count(tree: RootedTree) -> CmdResult {
    let w = tree_weight(&tree);
    let n = growth_count(&tree).map_err(Failure::classify)?;
    Ok(json!({"L": tree.len(), "W": w.to_string(), "N": n.to_string()}).to_string() + "\n")
}

const ORACLE_DEFAULT_MAX_BONDS: usize = 12;

fn cmd_oracle(tree: RootedTree, cap: Option<u64>) -> CmdResult {
    if cap.is_none() && tree.len() > ORACLE_DEFAULT_MAX_BONDS {
        return Err(Failure::classify(Error::TooLarge {
            what: format!("{} bonds without --cap", tree.len()),
            limit: ORACLE_DEFAULT_MAX_BONDS.to_string(),
        }));
    }
    let n = enumerate_growth_orders(&tree, cap).map_err(Failure::classify)?;
    Ok(json!({"N_enumerated": n.to_string()}).to_string() + "\n")
}

fn cmd_analyze(a0: u64, generation: usize, mode: Mode) -> CmdResult {
    let cst = constants(a0).map_err(Failure::invalid)?;
    let bound: BoundReport = match mode {
        Mode::Log => verify_main_bound(a0, generation),
        Mode::Exact => verify_main_bound_exact(a0, generation),
    }
    .map_err(Failure::classify)?;
    let structure: Option<StructureReport> = if generation >= 2 {
        Some(structure_fractions(a0, generation).map_err(Failure::classify)?)
    } else {
        None
    };
    let exact_l = BouchParams::new(a0, generation)
        .and_then(|p| p.bond_count(generation))
        .ok()
        .map(|l| l.to_string());
    let out = json!({
        "a0": a0,
        "j": generation,
        "mode": bound.mode,
        "epsilon0": cst.epsilon0,
        "C1": cst.c1,
        "C2": cst.c2,
        "C": cst.c,
        "truncationK": cst.truncation_k,
        "L": exact_l,
        "lnL": bound.ln_l,
        "logWPerE": bound.log_w_per_e,
        "logW": bound.log_w,
        "marginPerBond": bound.margin_per_bond,
        "passed": bound.passed && structure.as_ref().map_or(true, |s| s.passed),
        "constants": cst,
        "bound": bound,
        "structure": structure,
    });
    let passed = out["passed"].as_bool().unwrap_or(false);
    let text = serde_json::to_string_pretty(&out).expect("serializable") + "\n";
    if passed {
        Ok(text)
    } else {
        print!("{text}");
        Err(Failure {
            code: 1,
            message: "bound check failed".into(),
        })
    }
}

fn cmd_bethe(bonds: usize) -> CmdResult {
    let r = bethe_existence_bound(bonds).map_err(Failure::classify)?;
    let v: Value = serde_json::to_value(&r).expect("serializable");
    let text = serde_json::to_string_pretty(&v).expect("serializable") + "\n";
    if r.passed {
        Ok(text)
    } else {
        print!("{text}");
        Err(Failure {
            code: 1,
            message: "Bethe lattice checks failed".into(),
        })
    }
}

fn cmd_verify(suite: SuiteArg) -> CmdResult {
    let suite = match suite {
        SuiteArg::Core => Suite::Core,
        SuiteArg::Bouch => Suite::Bouch,
        SuiteArg::Bethe => Suite::Bethe,
        SuiteArg::All => Suite::All,
    };
    let checks = verify::run(suite);
    let mut out = String::new();
    let mut failed = 0;
    for c in &checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        failed += usize::from(!c.passed);
        out.push_str(&format!("{status} [{}] {}", c.suite, c.name));
        if !c.detail.is_empty() {
            out.push_str(&format!(" ({})", c.detail));
        }
        out.push('\n');
    }
    out.push_str(&format!("{} checks, {} failed\n", checks.len(), failed));
    if failed == 0 {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure {
            code: 1,
            message: format!("{failed} check(s) failed"),
        })
    }
}

fn cmd_export(tree: RootedTree, format: Format) -> CmdResult {
    match format {
        Format::Dot => Ok(to_dot(&tree)),
        Format::Svg => to_svg(&tree).map_err(Failure::classify),
    }
}
