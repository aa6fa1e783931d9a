//! Command-line front end for the multitape library.
//!
//! Exit codes: 0 success, accept or pass; 1 reject, violation, difference
//! or unbounded; 3 malformed input, bad arguments or an operation the
//! machine does not support.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use multitape::format::{load_bundle, load_machine, print_machine};
use multitape::group::{run_all, Budget, Overall};
use multitape::machine::{Kind, Machine};
use multitape::nondet::{bridge, dfaa_to_saa, exists_saa, faa_to_dfaa, saa_to_dfaa, union_saa, Saa};
use multitape::oracle::{languages_equal, oracle_accepts, BoundedDomain};
use multitape::quasi::{
    complement_sorted, exists_two_tape, forall_two_tape, is_bounded, semisorted_to_sorted, sorted_to_semisorted,
    Boundedness, SemiSortedAsync,
};
use multitape::sync::Block;
use multitape::words::WordTuple;

#[derive(Parser)]
#[command(name = "multitape", version, about = "Multi-tape automata: conversions, closure operations and group structure checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a machine on one word per tape (`eps` or `""` for the empty word).
    Accept { machine: PathBuf, words: Vec<String> },
    /// Convert a machine to another model.
    Convert {
        #[arg(long = "to")]
        to: Kind,
        machine: PathBuf,
    },
    /// Complement a synchronous, sorted or semisorted machine.
    Complement { machine: PathBuf },
    /// Union of two machines with the same tapes and alphabet.
    Union { first: PathBuf, second: PathBuf },
    /// Erase one tape (numbered from 1) by existential or universal projection.
    Project {
        machine: PathBuf,
        #[arg(long)]
        tape: usize,
        #[arg(long = "to")]
        to: Option<Target>,
        /// Universal instead of existential projection.
        #[arg(long)]
        forall: bool,
    },
    /// Deterministic semisorted machine with a new first tape that spells
    /// the non-deterministic choices.
    Bridge { machine: PathBuf },
    /// Pumping decomposition of an accepted tuple such as `x,xx`.
    Pump { machine: PathBuf, tuple: String },
    /// List accepted tuples with every component of length at most L.
    Enumerate {
        machine: PathBuf,
        #[arg(long = "max-len")]
        max_len: usize,
    },
    /// Longest run of letters read from one tape in a row.
    Bound { machine: PathBuf },
    /// Check the axioms of an asynchronous automatic structure.
    CheckStructure {
        bundle: PathBuf,
        #[arg(long = "max-len", default_value_t = 6)]
        max_len: usize,
        #[arg(long = "max-candidates", default_value_t = 20_000)]
        max_candidates: usize,
        #[arg(long = "step-limit")]
        step_limit: Option<usize>,
    },
    /// Compare two machines, or one machine's simulator against the oracle,
    /// on every tuple with components of length at most L.
    OracleCompare {
        first: PathBuf,
        second: Option<PathBuf>,
        #[arg(long = "max-len")]
        max_len: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Regular,
    Saa,
}

struct Failure(u8, String);

type Outcome = std::result::Result<u8, Failure>;

fn input(message: impl std::fmt::Display) -> Failure {
    Failure(3, message.to_string())
}

fn load(path: &Path) -> std::result::Result<Machine, Failure> {
    load_machine(path).map_err(input)
}

fn emit(m: impl Into<Machine>) -> Outcome {
    print!("{}", print_machine(&m.into()));
    Ok(0)
}

fn to_saa(m: &Machine) -> std::result::Result<Saa, Failure> {
    Ok(match m {
        Machine::SemiSorted(s) => Saa::from(s),
        Machine::Sorted(s) => Saa::from(&sorted_to_semisorted(s)),
        Machine::Faa(f) => dfaa_to_saa(&faa_to_dfaa(f)),
        Machine::Saa(s) => s.clone(),
        Machine::Sync(_) => return Err(input("synchronous machines have no partitioned form")),
    })
}

fn convert(m: Machine, to: Kind) -> Outcome {
    let unsupported = |from: Kind| input(format!("no conversion from {from} to {to}"));
    let from = m.kind();
    match (m, to) {
        (Machine::Sync(s), Kind::Sync | Kind::Fsa) => {
            if to == Kind::Fsa && s.tapes() != 1 {
                return Err(input("only one-tape machines are fsa"));
            }
            emit(s.determinize())
        }
        (Machine::SemiSorted(s), Kind::SemiSorted) => emit(s),
        (Machine::SemiSorted(s), Kind::Sorted) => emit(semisorted_to_sorted(&s)),
        (Machine::Sorted(s), Kind::Sorted) => emit(s),
        (Machine::Sorted(s), Kind::SemiSorted) => emit(sorted_to_semisorted(&s)),
        (Machine::Faa(f), Kind::Faa) => emit(faa_to_dfaa(&f).into_faa()),
        (Machine::Saa(s), Kind::Faa) => emit(saa_to_dfaa(&s).into_faa()),
        (Machine::SemiSorted(s), Kind::Faa) => emit(saa_to_dfaa(&Saa::from(&s)).into_faa()),
        (Machine::Sorted(s), Kind::Faa) => emit(saa_to_dfaa(&Saa::from(&sorted_to_semisorted(&s))).into_faa()),
        (m, Kind::Saa) => emit(to_saa(&m)?),
        _ => Err(unsupported(from)),
    }
}

fn complement(m: Machine) -> Outcome {
    match m {
        Machine::Sync(s) => emit(s.complement()),
        Machine::Sorted(s) => emit(complement_sorted(&s)),
        Machine::SemiSorted(s) => emit(sorted_to_semisorted(&complement_sorted(&semisorted_to_sorted(&s)))),
        other => Err(input(format!("complement of a {} machine is not supported", other.kind()))),
    }
}

fn union(a: Machine, b: Machine) -> Outcome {
    match (&a, &b) {
        (Machine::Sync(x), Machine::Sync(y)) => emit(x.union(y).map_err(input)?),
        _ => emit(union_saa(&to_saa(&a)?, &to_saa(&b)?).map_err(input)?),
    }
}

fn project(m: Machine, tape: usize, to: Option<Target>, forall: bool) -> Outcome {
    if tape == 0 || tape > m.tapes() {
        return Err(input(format!("--tape must be between 1 and {}", m.tapes())));
    }
    let erase = tape - 1;
    let to = to.unwrap_or(match &m {
        Machine::Sync(_) => Target::Regular,
        other if other.tapes() == 2 && matches!(other, Machine::SemiSorted(_) | Machine::Sorted(_)) => {
            Target::Regular
        }
        _ => Target::Saa,
    });
    match (to, m) {
        (Target::Regular, Machine::Sync(s)) if forall => {
            emit(s.complement().project_exists(erase).map_err(input)?.complement())
        }
        (Target::Regular, Machine::Sync(s)) => emit(s.project_exists(erase).map_err(input)?),
        (Target::Regular, Machine::SemiSorted(s)) => two_tape(&s, erase, forall),
        (Target::Regular, Machine::Sorted(s)) => two_tape(&sorted_to_semisorted(&s), erase, forall),
        (Target::Regular, other) => Err(input(format!(
            "regular projection of a {} machine is not supported; try --to saa",
            other.kind()
        ))),
        (Target::Saa, _) if forall => Err(input("--forall needs --to regular")),
        (Target::Saa, m) => emit(exists_saa(&to_saa(&m)?, erase).map_err(input)?),
    }
}

fn two_tape(s: &SemiSortedAsync, erase: usize, forall: bool) -> Outcome {
    if s.tapes() != 2 {
        return Err(input("regular projection needs a two-tape machine; try --to saa"));
    }
    let out = if forall { forall_two_tape(s, erase) } else { exists_two_tape(s, erase) };
    emit(out.map_err(input)?)
}

fn pump(m: Machine, tuple: &str) -> Outcome {
    let Machine::Sync(s) = m else {
        return Err(input("pumping needs a synchronous machine"));
    };
    let a = s.alphabet().clone();
    let t = a.parse_tuple(tuple).map_err(input)?;
    let d = s.pump(&t).map_err(input)?;
    println!("loop state {}: columns {}..={}", d.loop_state, d.k, d.k + d.l);
    for tape in 0..t.arity() {
        let block = match &d.blocks[tape] {
            Block::Letters(w) => a.render_word(w),
            Block::Pad(n) => format!("$^{n}"),
        };
        println!(
            "tape {}: {} | {} | {}",
            tape + 1,
            a.render_word(&d.prefixes[tape]),
            block,
            a.render_word(&d.suffixes[tape])
        );
    }
    for r in [0, 2, 3] {
        println!("r={r}: {}", a.render_tuple(&d.pumped(r)));
    }
    Ok(0)
}

fn enumerate(m: Machine, max_len: usize) -> Outcome {
    let d = BoundedDomain::uniform(m.alphabet().clone(), m.tapes(), max_len);
    for t in d.tuples() {
        if m.accepts(&t).map_err(input)? {
            println!("{}", m.alphabet().render_tuple(&t));
        }
    }
    Ok(0)
}

fn bound(m: Machine) -> Outcome {
    let b = match &m {
        Machine::SemiSorted(s) => s.boundedness(),
        Machine::Sorted(s) => s.boundedness(),
        Machine::Saa(s) => is_bounded(s.nfa(), |q| Some(s.class(q))),
        other => return Err(input(format!("boundedness is defined for semisorted, sorted and saa machines, not {}", other.kind()))),
    };
    match b {
        Boundedness::Bounded(k) => {
            println!("bounded {k}");
            Ok(0)
        }
        Boundedness::Unbounded => {
            println!("unbounded");
            Ok(1)
        }
    }
}

fn check_structure(bundle: &Path, budget: Budget) -> Outcome {
    let c = load_bundle(bundle).map_err(input)?;
    let report = run_all(&c, budget);
    print!("{}", report.render(c.alphabet()));
    match report.overall {
        Overall::PassedWithinBudget => Ok(0),
        Overall::NotAStructure { witness, .. } => {
            println!("witness: {}", witness.render(c.alphabet()));
            Ok(1)
        }
    }
}

fn oracle_compare(first: Machine, second: Option<Machine>, max_len: usize) -> Outcome {
    let d = BoundedDomain::uniform(first.alphabet().clone(), first.tapes(), max_len);
    let show = |t: &WordTuple| first.alphabet().render_tuple(t);
    let difference = match &second {
        Some(second) => languages_equal(&first, second, &d).map_err(input)?,
        None => {
            let mut found = None;
            for t in d.tuples() {
                if first.accepts(&t).map_err(input)? != oracle_accepts(&first, &t).map_err(input)? {
                    found = Some(t);
                    break;
                }
            }
            found
        }
    };
    let total = d.tuples().len();
    match difference {
        None => {
            println!("equal on {total} tuples");
            Ok(0)
        }
        Some(t) => {
            let side = |m: &Machine| oracle_accepts(m, &t).map(|b| if b { "accepts" } else { "rejects" });
            match &second {
                Some(second) => println!(
                    "differ at {}: first {}, second {}",
                    show(&t),
                    side(&first).map_err(input)?,
                    side(second).map_err(input)?
                ),
                None => println!(
                    "differ at {}: simulator {}, oracle {}",
                    show(&t),
                    if first.accepts(&t).map_err(input)? { "accepts" } else { "rejects" },
                    side(&first).map_err(input)?
                ),
            }
            Ok(1)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Accept { machine, words } => {
            let m = load(&machine)?;
            if words.len() != m.tapes() {
                return Err(input(format!("expected {} words, got {}", m.tapes(), words.len())));
            }
            let parsed = words
                .iter()
                .map(|w| m.alphabet().parse_word(w))
                .collect::<multitape::Result<Vec<_>>>()
                .map_err(input)?;
            if m.accepts(&WordTuple::new(parsed)).map_err(input)? {
                println!("accept");
                Ok(0)
            } else {
                println!("reject");
                Ok(1)
            }
        }
        Command::Convert { to, machine } => convert(load(&machine)?, to),
        Command::Complement { machine } => complement(load(&machine)?),
        Command::Union { first, second } => union(load(&first)?, load(&second)?),
        Command::Project { machine, tape, to, forall } => project(load(&machine)?, tape, to, forall),
        Command::Bridge { machine } => emit(bridge(&to_saa(&load(&machine)?)?)),
        Command::Pump { machine, tuple } => pump(load(&machine)?, &tuple),
        Command::Enumerate { machine, max_len } => enumerate(load(&machine)?, max_len),
        Command::Bound { machine } => bound(load(&machine)?),
        Command::CheckStructure {
            bundle,
            max_len,
            max_candidates,
            step_limit,
        } => {
            let mut budget = Budget::new(max_len, max_candidates);
            if let Some(s) = step_limit {
                budget.step_limit = s;
            }
            check_structure(&bundle, budget)
        }
        Command::OracleCompare { first, second, max_len } => {
            let second = second.as_deref().map(load).transpose()?;
            oracle_compare(load(&first)?, second, max_len)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, message)) => {
            eprintln!("multitape: {message}");
            ExitCode::from(code)
        }
    }
}
