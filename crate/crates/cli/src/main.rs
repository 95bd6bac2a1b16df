//! `isolattice` command line.
//!
//! Exit codes: 0 pass or found, 1 fail or not represented, 2 inconclusive,
//! 64 usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use isolattice::construct::{build_glue, enumerate_index_p_sublattices, named_lattice, parse_glue};
use isolattice::exactlin::linalg::Rat;
use isolattice::exactlin::DEFAULT_NODE_BUDGET;
use isolattice::localsym::{hilbert_symbol, Place};
use isolattice::reduce::{g_table, hermite_reduce, lower_bound_iso, peel_off, prime_count_t, sfrak_bound, upper_bound_iso};
use isolattice::represent::{find_representation_with, RepOutcome};
use isolattice::{run_claim, ClaimOptions, Error, GramMatrix, Verdict, CLAIMS};

const EXIT_FAIL: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "isolattice", version, about = "Exact checks on isolations of cubic lattices")]
struct Cli {
    /// Worker threads for independent checks (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one of the catalogued claims.
    Verify {
        /// Claim name; `list` prints the catalogue.
        claim: String,
        #[arg(long)]
        max_square: Option<i64>,
        #[arg(long)]
        prime_bound: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: u64,
        #[arg(long)]
        mod_exponent: Option<u32>,
        /// Write the JSON report here.
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
        /// Write the TSV report here.
        #[arg(long, value_name = "OUT")]
        tsv: Option<PathBuf>,
        /// Include wall-clock times in the JSON report.
        #[arg(long)]
        timings: bool,
    },
    /// Decide whether TARGET is represented by HOST.
    ///
    /// Each argument is a file or an inline value holding Gram JSON
    /// (`{"rank": n, "gram": [[..]]}`), `glue:<notation>` or a catalogue name.
    Rep {
        target: String,
        host: String,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: u64,
    },
    /// Isometry classes of index-p sublattices of I_n.
    Sublattices {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
    },
    /// Hermite reduction and peel-off decomposition of a lattice.
    Reduce { input: String },
    /// Lower and upper bounds for the isolation rank of I_n.
    Bounds {
        #[arg(long)]
        n: u64,
        /// Value of g(n) when it is not tabulated.
        #[arg(long)]
        g: Option<u64>,
    },
    /// Hilbert symbols (a, b)_v at 2, the primes dividing a or b, and infinity.
    #[command(allow_negative_numbers = true)]
    Hilbert { a: String, b: String },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } | Error::Overflow | Error::SizeExceeded(_) => EXIT_INCONCLUSIVE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = Result<u8, Failure>;

fn load_lattice(arg: &str) -> Result<GramMatrix, Failure> {
    let text = if Path::new(arg).is_file() {
        fs::read_to_string(arg).map_err(|e| usage(format!("{arg}: {e}")))?
    } else {
        arg.to_string()
    };
    let text = text.trim();
    let parsed = if let Some(glue) = text.strip_prefix("glue:") {
        parse_glue(glue.trim()).and_then(|s| build_glue(&s)).map(|l| l.gram().clone())
    } else if text.starts_with('{') {
        GramMatrix::from_json_str(text)
    } else {
        named_lattice(text)
    };
    parsed.map_err(|e| usage(format!("{arg}: {e}")))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| usage(format!("{}: {e}", path.display())))
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    claim: &str,
    max_square: Option<i64>,
    prime_bound: Option<u64>,
    node_budget: u64,
    mod_exponent: Option<u32>,
    json: Option<&Path>,
    tsv: Option<&Path>,
    timings: bool,
) -> CmdResult {
    if claim == "list" {
        for c in CLAIMS {
            println!("{c}");
        }
        return Ok(0);
    }
    let mut opts = ClaimOptions {
        prime_bound,
        node_budget,
        mod_exponent,
        ..ClaimOptions::default()
    };
    if let Some(m) = max_square {
        opts.max_square = m;
    }
    let report = run_claim(claim, &opts)?;
    let table = report.to_tsv();
    print!("{table}");
    for n in &report.notes {
        println!("# {n}");
    }
    println!("verdict\t{}", report.verdict.as_str());
    if let Some(p) = json {
        let mut s = serde_json::to_string_pretty(&report.to_json(timings)).expect("serializable");
        s.push('\n');
        write_file(p, &s)?;
    }
    if let Some(p) = tsv {
        write_file(p, &table)?;
    }
    Ok(match report.verdict {
        Verdict::Pass => 0,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    })
}

fn cmd_rep(target: &str, host: &str, node_budget: u64) -> CmdResult {
    let target = load_lattice(target)?;
    let host = load_lattice(host)?;
    let r = find_representation_with(&target, &host, node_budget)?;
    println!("status\t{}", r.outcome.status());
    println!("nodes\t{}", r.nodes);
    Ok(match r.outcome {
        RepOutcome::Found(rep) => {
            for (i, c) in rep.columns().iter().enumerate() {
                let c: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                println!("column{}\t{}", i + 1, c.join(" "));
            }
            0
        }
        RepOutcome::NotRepresented => EXIT_FAIL,
        RepOutcome::Unknown { .. } => EXIT_INCONCLUSIVE,
    })
}

fn cmd_sublattices(n: usize, p: u64) -> CmdResult {
    let classes = enumerate_index_p_sublattices(n, p)?;
    println!("# {} classes", classes.len());
    for (i, g) in classes.iter().enumerate() {
        println!("{}\t{}", i + 1, g.to_json_string());
    }
    Ok(0)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn cmd_reduce(input: &str) -> CmdResult {
    let g = load_lattice(input)?;
    let r = hermite_reduce(&g)?;
    println!("h\t{}", join(&r.h));
    for (i, row) in r.c.iter().enumerate() {
        println!("c{}\t{}", i + 1, join(row));
    }
    for j in 0..g.rank() {
        let col: Vec<_> = r.u.iter().map(|row| row[j].clone()).collect();
        println!("basis{}\t{}", j + 1, join(&col));
    }
    println!("reduced\t{}", r.gram.to_json_string());
    match peel_off(&g) {
        Ok(p) => {
            println!("peel\t{}", p.count());
            for (i, a) in p.forms.iter().enumerate() {
                println!("form{}\t{}", i + 1, join(a));
            }
            println!("residual\t{}", p.residual.to_json_string());
        }
        Err(Error::MinTooSmall(m)) => println!("# no peel-off: minimum {m} is smaller than 2"),
        Err(e) => return Err(e.into()),
    }
    Ok(0)
}

fn cmd_bounds(n: u64, g: Option<u64>) -> CmdResult {
    if n == 0 {
        return Err(usage("n must be positive"));
    }
    let g = g.or_else(|| usize::try_from(n).ok().and_then(|n| g_table(n).ok()));
    let upper = match g {
        Some(g) => upper_bound_iso(n, Some(g))?.to_string(),
        None => "unknown".to_string(),
    };
    println!("n\tt\tlower\tupper\tsfrak");
    println!("{n}\t{}\t{}\t{upper}\t{}", prime_count_t(n), lower_bound_iso(n), sfrak_bound(n));
    Ok(0)
}

fn prime_divisors(x: &Rat, into: &mut Vec<u64>) {
    for part in [x.numer(), x.denom()] {
        let mut m: u64 = match part.magnitude().try_into() {
            Ok(m) => m,
            Err(_) => continue,
        };
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                into.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            into.push(m);
        }
    }
}

fn cmd_hilbert(a: &str, b: &str) -> CmdResult {
    let parse = |s: &str| -> Result<Rat, Failure> {
        let x: Rat = s.parse().map_err(|_| usage(format!("not a rational number: {s}")))?;
        if x == Rat::from_integer(0.into()) {
            return Err(usage("arguments must be nonzero"));
        }
        Ok(x)
    };
    let (a, b) = (parse(a)?, parse(b)?);
    let mut ps = vec![2];
    prime_divisors(&a, &mut ps);
    prime_divisors(&b, &mut ps);
    ps.sort_unstable();
    ps.dedup();
    println!("place\tsymbol");
    let places = ps.into_iter().map(Place::Prime).chain([Place::Infinity]);
    for v in places {
        println!("{v}\t{}", hilbert_symbol(&a, &b, v)?);
    }
    Ok(0)
}

fn run(cli: Cli) -> CmdResult {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| usage(e.to_string()))?;
    }
    match cli.command {
        Command::Verify {
            claim,
            max_square,
            prime_bound,
            node_budget,
            mod_exponent,
            json,
            tsv,
            timings,
        } => cmd_verify(
            &claim,
            max_square,
            prime_bound,
            node_budget,
            mod_exponent,
            json.as_deref(),
            tsv.as_deref(),
            timings,
        ),
        Command::Rep {
            target,
            host,
            node_budget,
        } => cmd_rep(&target, &host, node_budget),
        Command::Sublattices { n, p } => cmd_sublattices(n, p),
        Command::Reduce { input } => cmd_reduce(&input),
        Command::Bounds { n, g } => cmd_bounds(n, g),
        Command::Hilbert { a, b } => cmd_hilbert(&a, &b),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
