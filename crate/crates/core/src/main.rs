use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};

use slat::bounded::{BoundedReport, BoundedWitness};
use slat::congruence::{all_congruences_with_cap, complementary_factor_pairs_with_cap};
use slat::directsum::{check_axioms, Axiom, SummandPair};
use slat::dot::{emit_dot, Annotation};
use slat::enumerate::{enumerate_semilattices_with_cap, independence_search_with_cap};
use slat::factorize::{factor_congruence_boolean_check_with_cap, factorize_with, refine_join, SplitStrategy};
use slat::slat::{emit_slat, parse_slat, SlatError};
use slat::{check_one_case, check_zero_case, Limits, Semilattice};

/// Direct-product decompositions of finite join-semilattices.
///
/// Exit status: 0 when the property holds, 1 when it fails (a witness is
/// printed), 2 on input errors. FILE may be `-` for standard input.
#[derive(Parser)]
#[command(name = "slat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the semilattice laws and print basic facts.
    Validate { file: PathBuf },
    /// Print the partial meet table (`-` where no meet exists).
    Meets { file: PathBuf },
    /// List all congruences.
    Congruences { file: PathBuf },
    /// List complementary factor-congruence pairs.
    FactorPairs { file: PathBuf },
    /// Check the c-direct-sum axioms for a pair of subsemilattices.
    CheckSum {
        file: PathBuf,
        #[arg(long)]
        c: String,
        #[arg(long)]
        i1: String,
        #[arg(long)]
        i2: String,
    },
    /// Check the criterion with the minimum as base element.
    CheckZero {
        file: PathBuf,
        #[arg(long)]
        i1: String,
        #[arg(long)]
        i2: String,
    },
    /// Check the criterion with the maximum as base element.
    CheckOne {
        file: PathBuf,
        #[arg(long)]
        i1: String,
        #[arg(long)]
        i2: String,
    },
    /// Split into directly indecomposable factors.
    Factorize {
        file: PathBuf,
        #[arg(long)]
        c: Option<String>,
    },
    /// Refinement join of two decompositions sharing the base element.
    Refine {
        file: PathBuf,
        #[arg(long)]
        c: String,
        #[arg(long, num_args = 2, value_names = ["I1", "I2"])]
        first: Vec<String>,
        #[arg(long, num_args = 2, value_names = ["J1", "J2"])]
        second: Vec<String>,
    },
    /// Search the corpus for a model failing exactly one axiom.
    Independence {
        #[arg(long)]
        axiom: String,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
    /// Print every semilattice of size n up to isomorphism.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Emit a Graphviz Hasse diagram.
    Dot {
        file: PathBuf,
        /// Element list drawn as a cluster; may be repeated.
        #[arg(long)]
        highlight: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command, &Limits::from_env()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load(path: &Path) -> Result<Semilattice> {
    parse_slat(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn element(a: &Semilattice, token: &str) -> Result<usize> {
    a.resolve(token.trim()).ok_or_else(|| anyhow!("{token:?} is not an element"))
}

fn elements(a: &Semilattice, list: &str) -> Result<Vec<usize>> {
    let items: Vec<usize> = list
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| element(a, t))
        .collect::<Result<_>>()?;
    if items.is_empty() {
        bail!("empty element list");
    }
    Ok(items)
}

fn labels(a: &Semilattice, set: &[usize]) -> String {
    let items: Vec<String> = set.iter().map(|&x| a.label(x)).collect();
    format!("{{{}}}", items.join(","))
}

fn blocks(a: &Semilattice, theta: &slat::Congruence) -> String {
    let items: Vec<String> = theta.blocks().iter().map(|b| labels(a, b)).collect();
    format!("{{{}}}", items.join(","))
}

fn run(command: Command, limits: &Limits) -> Result<bool> {
    match command {
        Command::Validate { file } => {
            let a = match parse_slat(&read_text(&file)?) {
                Ok(a) => a,
                Err(err @ (SlatError::Validation(_) | SlatError::NoJoinExists { .. })) => {
                    println!("invalid: {err}");
                    return Ok(false);
                }
                Err(err) => return Err(err).with_context(|| format!("parsing {}", file.display())),
            };
            println!("valid semilattice with {} elements", a.size());
            println!("top: {}", a.label(a.top()));
            match a.bottom() {
                Some(b) => println!("bottom: {}", a.label(b)),
                None => println!("bottom: none"),
            }
            Ok(true)
        }
        Command::Meets { file } => {
            let a = load(&file)?;
            for x in a.elements() {
                let row: Vec<String> = a
                    .elements()
                    .map(|y| a.meet(x, y).map_or_else(|| "-".to_string(), |m| a.label(m)))
                    .collect();
                println!("{}", row.join(" "));
            }
            Ok(true)
        }
        Command::Congruences { file } => {
            let a = load(&file)?;
            let all = all_congruences_with_cap(&a, limits.congruence_cap)?;
            for theta in &all {
                println!("{}", blocks(&a, theta));
            }
            println!("# {} congruences", all.len());
            Ok(true)
        }
        Command::FactorPairs { file } => {
            let a = load(&file)?;
            let pairs = complementary_factor_pairs_with_cap(&a, limits.congruence_cap)?;
            for p in &pairs {
                println!("theta={} delta={}", blocks(&a, &p.theta), blocks(&a, &p.delta));
            }
            println!("# {} pairs", pairs.len());
            let boolean = factor_congruence_boolean_check_with_cap(&a, limits.congruence_cap)?;
            println!("# factor congruences form a Boolean algebra: {boolean}");
            Ok(true)
        }
        Command::CheckSum { file, c, i1, i2 } => {
            let a = load(&file)?;
            let sp = SummandPair::new(&a, element(&a, &c)?, elements(&a, &i1)?, elements(&a, &i2)?)?;
            let report = check_axioms(&a, &sp)?;
            for axiom in [Axiom::Mod1, Axiom::Mod2, Axiom::Abs, Axiom::Exi, Axiom::Onto, Axiom::Ori] {
                let v = report.get(axiom);
                match v.witness {
                    None => println!("{axiom}: holds"),
                    Some(w) => println!("{axiom}: fails at {}", w.render(&a)),
                }
            }
            let holds = report.is_direct_sum();
            println!("direct sum: {holds}");
            Ok(holds)
        }
        Command::CheckZero { file, i1, i2 } => {
            let a = load(&file)?;
            let report = check_zero_case(&a, &elements(&a, &i1)?, &elements(&a, &i2)?)?;
            Ok(print_bounded(&a, &report))
        }
        Command::CheckOne { file, i1, i2 } => {
            let a = load(&file)?;
            let report = check_one_case(&a, &elements(&a, &i1)?, &elements(&a, &i2)?)?;
            Ok(print_bounded(&a, &report))
        }
        Command::Factorize { file, c } => {
            let a = load(&file)?;
            let c = match c {
                Some(c) => element(&a, &c)?,
                None => 0,
            };
            let f = factorize_with(&a, c, SplitStrategy::default(), limits.congruence_cap)?;
            println!("# {} factor(s), base {}", f.factors.len(), a.label(c));
            for (i, factor) in f.factors.iter().enumerate() {
                println!("# factor {i}");
                print!("{}", emit_slat(factor));
            }
            println!("# coordinates");
            for x in a.elements() {
                let coord: Vec<String> = f
                    .coordinates(x)
                    .iter()
                    .zip(&f.factors)
                    .map(|(&y, factor)| factor.label(y))
                    .collect();
                println!("{} = ({})", a.label(x), coord.join(", "));
            }
            Ok(true)
        }
        Command::Refine { file, c, first, second } => {
            let a = load(&file)?;
            let c = element(&a, &c)?;
            let first = SummandPair::new(&a, c, elements(&a, &first[0])?, elements(&a, &first[1])?)?;
            let second = SummandPair::new(&a, c, elements(&a, &second[0])?, elements(&a, &second[1])?)?;
            let r = refine_join(&a, c, &first, &second)?;
            println!("I1 meet J1: {}", labels(&a, &r.pair.i1));
            println!("I2 join J2: {}", labels(&a, &r.join));
            println!("direct sum: {}", r.is_direct_sum);
            Ok(r.is_direct_sum)
        }
        Command::Independence { axiom, max_n } => {
            let axiom: Axiom = axiom.parse()?;
            match independence_search_with_cap(axiom, max_n, limits.enumeration_cap)? {
                Some(w) => {
                    println!("# model of size {} (corpus index {}) failing only {axiom}", w.a.size(), w.index);
                    print!("{}", emit_slat(&w.a));
                    println!("c = {}", w.a.label(w.pair.c));
                    println!("I1 = {}", labels(&w.a, &w.pair.i1));
                    println!("I2 = {}", labels(&w.a, &w.pair.i2));
                    if let Some(wit) = w.report.get(axiom).witness {
                        println!("{axiom} fails at {}", wit.render(&w.a));
                    }
                    Ok(true)
                }
                None => {
                    println!("no model up to size {max_n} fails only {axiom}");
                    Ok(false)
                }
            }
        }
        Command::Enumerate { n } => {
            let all = enumerate_semilattices_with_cap(n, limits.enumeration_cap)?;
            for (i, a) in all.iter().enumerate() {
                println!("# {i}");
                print!("{}", emit_slat(a));
            }
            println!("# {} semilattices of size {n}", all.len());
            Ok(true)
        }
        Command::Dot { file, highlight } => {
            let a = load(&file)?;
            let groups: Vec<(String, Vec<usize>)> = highlight
                .iter()
                .enumerate()
                .map(|(i, list)| Ok((format!("S{}", i + 1), elements(&a, list)?)))
                .collect::<Result<_>>()?;
            let annotation = if groups.is_empty() { Annotation::None } else { Annotation::Subsets(&groups) };
            print!("{}", emit_dot(&a, annotation));
            Ok(true)
        }
    }
}

fn print_bounded(a: &Semilattice, report: &BoundedReport) -> bool {
    if !report.applicable {
        println!("not applicable: no minimum element");
        return false;
    }
    for (axiom, witness) in &report.verdicts {
        let l = |x: usize| a.label(x);
        match witness {
            None => println!("{axiom}: holds"),
            Some(BoundedWitness::Abs { swapped, x1, y1, z2 }) => {
                let note = if *swapped { " (interchanged)" } else { "" };
                println!("{axiom}: fails at x1={} y1={} z2={}{note}", l(*x1), l(*y1), l(*z2))
            }
            Some(BoundedWitness::Missing { x }) => println!("{axiom}: fails, {} is not reached", l(*x)),
            Some(BoundedWitness::Exi { x1, x2 }) => {
                println!("{axiom}: fails at x1={} x2={}", l(*x1), l(*x2))
            }
            Some(BoundedWitness::Mod1 { x1, x2, y }) => {
                println!("{axiom}: fails at x1={} x2={} y={}", l(*x1), l(*x2), l(*y))
            }
        }
    }
    if let Some(closed) = report.closure {
        println!("summands closed: {closed}");
    }
    println!("direct sum: {}", report.holds);
    report.holds
}
