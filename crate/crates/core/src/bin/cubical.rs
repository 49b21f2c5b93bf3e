use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cubical::axioms::{check_axiom, classify_with, Axiom, CheckOptions};
use cubical::content::{state_content_oracle, StateContents};
use cubical::dot::to_dot;
use cubical::families::{
    ac_order_family, comparability_family, lattice_window, partial_order_family,
};
use cubical::format::{format_family, parse_family, parse_system, SystemDocument};
use cubical::gsystem::{build_gsystem, random_cube_graph, CubeGraph, SetFamily};
use cubical::representation::embed;
use cubical::stochastic::{
    build_chain, frequencies, merged_counts, simulate_many, stationary_closed_form,
    stationary_solve, uniform, StochasticSystem,
};
use cubical::system::TokenSystem;

#[derive(Parser)]
#[command(name = "cubical", version, about = "Cubical token systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check axioms; exits 1 if any fails.
    Check {
        file: PathBuf,
        /// Axioms to check (C1..C4, Ma, Mb); defaults to C1..C4.
        #[arg(long = "axiom", short)]
        axioms: Vec<Axiom>,
        /// Check all six axioms.
        #[arg(long, conflicts_with = "axioms")]
        all: bool,
        /// Use message enumeration up to this length.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Print medium, cubical_not_medium or not_cubical.
    Classify {
        file: PathBuf,
        /// Also print every axiom verdict.
        #[arg(long, short)]
        verbose: bool,
    },
    /// Print the cube embedding; exits 1 if the system is not cubical.
    Embed {
        file: PathBuf,
        /// Base state mapped to the empty set; defaults to the first state.
        #[arg(long)]
        base: Option<String>,
    },
    /// Print state contents.
    Content {
        file: PathBuf,
        #[arg(long)]
        state: Option<String>,
        /// Use the enumeration oracle with this length bound.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Stationary distribution as TSV: closed form, solved, and empirical
    /// when --steps is given.
    Stationary {
        file: PathBuf,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        chains: u64,
    },
    /// Simulate the chain; prints visit counts and frequencies as TSV.
    Simulate {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
        /// Independent chains with seeds seed, seed+1, ...
        #[arg(long, default_value_t = 1)]
        chains: u64,
    },
    /// Print a family in the .fam format.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Print the system graph in DOT.
    ExportDot { file: PathBuf },
}

#[derive(Subcommand)]
enum Family {
    /// Edge sets of comparability graphs on N vertices.
    Comparability {
        n: usize,
        /// Allow N above 4.
        #[arg(long)]
        large: bool,
    },
    /// Strict partial orders on N elements as sets of ordered pairs.
    PartialOrders {
        n: usize,
        #[arg(long)]
        large: bool,
    },
    /// ac-orders on N elements as sets of ordered pairs.
    AcOrders {
        n: usize,
        #[arg(long)]
        large: bool,
    },
    /// Grid {0..EXTENT}^DIMS in unary encoding.
    Lattice { dims: usize, extent: usize },
    /// All subsets of an N-element ground set.
    Cube { n: usize },
    /// Random connected cube subgraph.
    Random {
        #[arg(long, default_value_t = 4)]
        ground: usize,
        #[arg(long, default_value_t = 10)]
        members: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

const DEFAULT_RELATION_BUDGET: usize = 4;

/// Exit 1: a check failed. Exit 2: bad input.
enum Failure {
    Check(String),
    Input(String),
}

type Outcome = Result<String, Failure>;

fn input<E: std::fmt::Display>(context: &Path) -> impl Fn(E) -> Failure + '_ {
    move |e| Failure::Input(format!("{}: {e}", context.display()))
}

fn load(path: &Path) -> Result<SystemDocument, Failure> {
    let text = std::fs::read_to_string(path).map_err(input(path))?;
    if path.extension().is_some_and(|e| e == "fam") {
        let graph = parse_family(&text).map_err(input(path))?;
        let g = build_gsystem(graph).map_err(input(path))?;
        return Ok(SystemDocument {
            system: g.into_system(),
            theta: None,
            xi: None,
        });
    }
    parse_system(&text).map_err(input(path))
}

fn state(system: &TokenSystem, name: &str) -> Result<cubical::StateId, Failure> {
    system
        .state(name)
        .map_err(|e| Failure::Input(e.to_string()))
}

fn chain(doc: SystemDocument, path: &Path) -> Result<StochasticSystem, Failure> {
    let theta = doc
        .theta()
        .ok_or_else(|| Failure::Input(format!("{}: no `theta` line", path.display())))?;
    let xi = doc.xi().unwrap_or_else(|| uniform(doc.system.state_count()));
    build_chain(doc.system, xi, theta).map_err(|e| match e {
        cubical::stochastic::StochasticError::NotCubical(_) => Failure::Check(e.to_string()),
        other => Failure::Input(format!("{}: {other}", path.display())),
    })
}

fn seeds(seed: u64, chains: u64) -> Vec<u64> {
    (0..chains.max(1)).map(|i| seed.wrapping_add(i)).collect()
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Check {
            file,
            axioms,
            all,
            bound,
        } => {
            let system = load(&file)?.system;
            let axioms = if all {
                Axiom::ALL.to_vec()
            } else if axioms.is_empty() {
                Axiom::CUBICAL.to_vec()
            } else {
                axioms
            };
            let opts = bound.map_or_else(CheckOptions::default, CheckOptions::bounded);
            let mut out = String::new();
            let mut failed = false;
            for a in axioms {
                let v = check_axiom(&system, a, &opts);
                failed |= !v.holds;
                let _ = writeln!(out, "{}", v.describe(&system));
            }
            if failed {
                Err(Failure::Check(out))
            } else {
                Ok(out)
            }
        }
        Command::Classify { file, verbose } => {
            let system = load(&file)?.system;
            let c = classify_with(&system, &CheckOptions::default());
            let mut out = format!("{}\n", c.kind);
            if verbose {
                for v in &c.verdicts {
                    let _ = writeln!(out, "{}", v.describe(&system));
                }
            }
            Ok(out)
        }
        Command::Embed { file, base } => {
            let system = load(&file)?.system;
            let base = base.map(|b| state(&system, &b)).transpose()?;
            let e = embed(&system, base).map_err(|e| Failure::Check(e.to_string()))?;
            let mut out = String::new();
            for s in system.states() {
                let _ = writeln!(out, "{}\t{}", system.state_name(s), e.render_alpha(s));
            }
            for t in system.tokens() {
                let _ = writeln!(out, "{}\t{}", system.token_name(t), e.beta_name(t));
            }
            Ok(out)
        }
        Command::Content { file, state: only, bound } => {
            let system = load(&file)?.system;
            let targets = match only {
                Some(name) => vec![state(&system, &name)?],
                None => system.states().collect(),
            };
            let mut out = String::new();
            if let Some(len) = bound {
                for s in targets {
                    let c = state_content_oracle(&system, s, len)
                        .map_err(|e| Failure::Check(e.to_string()))?;
                    let _ = writeln!(out, "{}: {}", system.state_name(s), c.render(&system));
                }
            } else {
                let contents =
                    StateContents::new(&system).map_err(|e| Failure::Check(e.to_string()))?;
                for s in targets {
                    let _ = writeln!(
                        out,
                        "{}: {}",
                        system.state_name(s),
                        contents.get(s).render(&system)
                    );
                }
            }
            Ok(out)
        }
        Command::Stationary {
            file,
            steps,
            seed,
            chains,
        } => {
            let c = chain(load(&file)?, &file)?;
            let closed = stationary_closed_form(&c);
            let solved = stationary_solve(&c);
            let empirical = steps.map(|n| {
                frequencies(&merged_counts(&simulate_many(&c, &seeds(seed, chains), n)))
            });
            let mut out = String::from("state\tclosed_form\tsolved");
            if empirical.is_some() {
                out.push_str("\tempirical");
            }
            out.push('\n');
            for s in c.system().states() {
                let _ = write!(
                    out,
                    "{}\t{}\t{}",
                    c.system().state_name(s),
                    closed[s.0],
                    solved[s.0]
                );
                if let Some(e) = &empirical {
                    let _ = write!(out, "\t{}", e[s.0]);
                }
                out.push('\n');
            }
            Ok(out)
        }
        Command::Simulate {
            file,
            seed,
            steps,
            chains,
        } => {
            let c = chain(load(&file)?, &file)?;
            let counts = merged_counts(&simulate_many(&c, &seeds(seed, chains), steps));
            let freq = frequencies(&counts);
            let mut out = String::from("state\tcount\tfrequency\n");
            for s in c.system().states() {
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}",
                    c.system().state_name(s),
                    counts[s.0],
                    freq[s.0]
                );
            }
            Ok(out)
        }
        Command::Generate { family } => generate(family),
        Command::ExportDot { file } => Ok(to_dot(&load(&file)?.system)),
    }
}

fn generate(family: Family) -> Outcome {
    let budget = |n: usize, large: bool| {
        if n > DEFAULT_RELATION_BUDGET && !large {
            Err(Failure::Input(format!(
                "n = {n} exceeds the default budget of {DEFAULT_RELATION_BUDGET}; pass --large"
            )))
        } else {
            Ok(())
        }
    };
    let input = |e: &dyn std::fmt::Display| Failure::Input(e.to_string());
    let graph: CubeGraph = match family {
        Family::Comparability { n, large } => {
            budget(n, large)?;
            let f = comparability_family(n).map_err(|e| input(&e))?;
            CubeGraph::induced(f).map_err(|e| input(&e))?
        }
        Family::PartialOrders { n, large } => {
            budget(n, large)?;
            let f = partial_order_family(n).map_err(|e| input(&e))?;
            CubeGraph::induced(f).map_err(|e| input(&e))?
        }
        Family::AcOrders { n, large } => {
            budget(n, large)?;
            let f = ac_order_family(n).map_err(|e| input(&e))?;
            CubeGraph::induced(f).map_err(|e| input(&e))?
        }
        Family::Lattice { dims, extent } => {
            if dims == 0 || extent == 0 || dims > 8 {
                return Err(Failure::Input("lattice needs 1 <= dims <= 8 and extent >= 1".into()));
            }
            lattice_window(dims, extent).map_err(|e| input(&e))?.graph().clone()
        }
        Family::Cube { n } => {
            if n == 0 || n > 16 {
                return Err(Failure::Input("cube needs 1 <= n <= 16".into()));
            }
            let f = SetFamily::power_set(cubical::gsystem::numbered_ground(n))
                .map_err(|e| input(&e))?;
            CubeGraph::induced(f).map_err(|e| input(&e))?
        }
        Family::Random {
            ground,
            members,
            p,
            seed,
        } => {
            if ground == 0 || ground > 16 || !(0.0..=1.0).contains(&p) {
                return Err(Failure::Input("random needs 1 <= ground <= 16 and 0 <= p <= 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            random_cube_graph(&mut rng, ground, members, p)
        }
    };
    Ok(format_family(&graph))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check(out)) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
