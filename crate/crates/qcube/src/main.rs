use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use qcube::bounds::{bounds_report, BoundsOptions};
use qcube::codes::{forbidden_weight_greedy, gv_greedy, hamming_code, simplex_code, LinearCode, Matrix};
use qcube::coloring::{
    coset_coloring, exact_d1_coloring, m_matrix_coloring, slab_coloring, verify_coloring,
    VerifyOutcome,
};
use qcube::cube::format_vertex;
use qcube::exact::{chromatic_number, max_clique, max_code_size, SearchBudget, SearchResult};
use qcube::{Coloring, Elem, Error, Field, Mode, ProblemSpec, Result};

/// Distance colorings of the q-ary n-cube: constructions, bounds, and exact
/// searches with stable tab-separated output.
#[derive(Parser)]
#[command(name = "qcube", version, disable_help_subcommand = true)]
struct Cli {
    /// Worker threads for parallel verification; results do not depend on it.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every applicable palette bound, one entry per line.
    Bounds(BoundsArgs),
    /// Build a coloring with a named construction, verify it, and emit it.
    Color(ColorArgs),
    /// Check a coloring file and report the least violation if any.
    Verify(VerifyArgs),
    /// Exact search for chromatic number, clique number, or best code size.
    Exact(ExactArgs),
    /// Print parameters, weight spectrum, and matrices of a named code.
    #[command(name = "code-info")]
    CodeInfo(CodeInfoArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Atmost,
    Exactly,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Atmost => Mode::AtMost,
            ModeArg::Exactly => Mode::Exactly,
        }
    }
}

#[derive(Args)]
struct FieldArgs {
    /// Field order, factored into (p, m); must be a prime power.
    #[arg(long, conflicts_with_all = ["p", "m"])]
    q: Option<u64>,
    /// Field characteristic; requires --m.
    #[arg(long, requires = "m")]
    p: Option<u64>,
    /// Extension degree; requires --p.
    #[arg(long, requires = "p")]
    m: Option<u32>,
}

impl FieldArgs {
    fn build(&self) -> Result<Arc<Field>> {
        match (self.q, self.p, self.m) {
            (Some(q), None, None) => Ok(Arc::new(Field::from_order(q)?)),
            (None, Some(p), Some(m)) => Ok(Arc::new(Field::new(p, m)?)),
            _ => Err(Error::InvalidArgument(
                "the field must be given as --q Q or as --p P --m M".into(),
            )),
        }
    }
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Cube dimension.
    #[arg(long)]
    n: Option<usize>,
    /// Distance parameter.
    #[arg(long)]
    d: Option<usize>,
    /// Distance constraint: conflicting pairs lie at distance <= d or = d.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Append one WITNESS line per lower bound that carries one.
    #[arg(long)]
    witness: bool,
    /// Known A_q(n, >= d+1); enables the partition lower bound.
    #[arg(long, value_name = "A", value_parser = clap::value_parser!(u64).range(1..))]
    a_value: Option<u64>,
    /// Sweep prime powers q <= QMAX, n <= NMAX, d <= n, both modes, to TSV.
    #[arg(long, num_args = 2, value_names = ["QMAX", "NMAX"], conflicts_with_all = ["q", "p", "m", "n", "d", "mode", "witness", "a_value"])]
    grid: Option<Vec<u64>>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Hamming,
    Simplex,
    Gv,
    Forbidden,
    MMatrix,
    ExactD1,
    Slab,
}

#[derive(Args)]
struct ColorArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Cube dimension.
    #[arg(long)]
    n: usize,
    /// Distance parameter.
    #[arg(long)]
    d: usize,
    /// Distance constraint: conflicting pairs lie at distance <= d or = d.
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Construction to run.
    #[arg(long, value_enum)]
    method: MethodArg,
    /// Code redundancy (hamming) or dimension (simplex).
    #[arg(long)]
    r: Option<u32>,
    /// Output file; the coloring streams to stdout when absent.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Coloring file to check; "-" reads stdin.
    #[arg(long = "in", value_name = "FILE")]
    input: String,
}

#[derive(Args)]
struct ExactArgs {
    #[command(subcommand)]
    target: ExactTarget,
}

#[derive(Subcommand)]
enum ExactTarget {
    /// Exact chromatic number by clique seeding and k-colorability descent.
    Chromatic(ChromaticArgs),
    /// Maximum pairwise-conflicting vertex set.
    Clique(CliqueArgs),
    /// Best size of a code with minimum distance >= d.
    Codesize(CodesizeArgs),
}

#[derive(Args)]
struct ChromaticArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Cube dimension.
    #[arg(long)]
    n: usize,
    /// Distance parameter.
    #[arg(long)]
    d: usize,
    /// Distance constraint: conflicting pairs lie at distance <= d or = d.
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Branch-and-bound node budget per search phase.
    #[arg(long, value_name = "N")]
    max_nodes: Option<u64>,
    /// Write the optimal coloring here when the search finishes exactly.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CliqueArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Cube dimension.
    #[arg(long)]
    n: usize,
    /// Distance parameter.
    #[arg(long)]
    d: usize,
    /// Distance constraint: conflicting pairs lie at distance <= d or = d.
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Branch-and-bound node budget per search phase.
    #[arg(long, value_name = "N")]
    max_nodes: Option<u64>,
    /// Print the witness vertices, one per line, after the result.
    #[arg(long)]
    witness: bool,
}

#[derive(Args)]
struct CodesizeArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Code length.
    #[arg(long)]
    n: usize,
    /// Minimum distance requirement.
    #[arg(long)]
    d: usize,
    /// Branch-and-bound node budget per search phase.
    #[arg(long, value_name = "N")]
    max_nodes: Option<u64>,
    /// Print the witness codewords, one per line, after the result.
    #[arg(long)]
    witness: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CodeMethodArg {
    Hamming,
    Simplex,
    Gv,
    Forbidden,
}

#[derive(Args)]
struct CodeInfoArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Code length (gv and forbidden).
    #[arg(long)]
    n: Option<usize>,
    /// Distance parameter (gv and forbidden).
    #[arg(long)]
    d: Option<usize>,
    /// Code family to build.
    #[arg(long, value_enum)]
    method: CodeMethodArg,
    /// Code redundancy (hamming) or dimension (simplex).
    #[arg(long)]
    r: Option<u32>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs as usize).build_global();
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("qcube: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::NonPrime(_)
        | Error::NonPrimePower(_)
        | Error::InvalidArgument(_)
        | Error::Format(_) => 2,
        _ => 1,
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Bounds(args) => run_bounds(args),
        Command::Color(args) => run_color(args),
        Command::Verify(args) => run_verify(args),
        Command::Exact(args) => match args.target {
            ExactTarget::Chromatic(a) => run_chromatic(a),
            ExactTarget::Clique(a) => run_clique(a),
            ExactTarget::Codesize(a) => run_codesize(a),
        },
        Command::CodeInfo(args) => run_code_info(args),
    }
}

fn require<T>(value: Option<T>, what: &str) -> Result<T> {
    value.ok_or_else(|| Error::InvalidArgument(format!("{what} is required")))
}

fn run_bounds(args: BoundsArgs) -> Result<ExitCode> {
    if let Some(grid) = &args.grid {
        return run_bounds_grid(grid[0], grid[1] as usize);
    }
    let field = args.field.build()?;
    let n = require(args.n, "--n")?;
    let d = require(args.d, "--d")?;
    let mode = require(args.mode, "--mode")?;
    let spec = ProblemSpec::new(field, n, d, mode.into())?;
    let opts = BoundsOptions {
        witnesses: args.witness,
        partition_a: args.a_value.map(BigUint::from),
    };
    let report = bounds_report(&spec, &opts)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for entry in report.entries() {
        writeln!(out, "{}\t{}\t{}", entry.direction, entry.value, entry.source)?;
        if args.witness {
            if let Some(witness) = &entry.witness {
                let joined: Vec<String> =
                    witness.iter().map(|v| format_vertex(spec.q(), v)).collect();
                writeln!(out, "WITNESS\t{}\t{}", entry.source, joined.join(" "))?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_bounds_grid(qmax: u64, nmax: usize) -> Result<ExitCode> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "q\tn\td\tmode\tlower\tupper")?;
    for q in 2..=qmax {
        let field = match Field::from_order(q) {
            Ok(f) => Arc::new(f),
            Err(Error::NonPrimePower(_)) => continue,
            Err(e) => return Err(e),
        };
        for n in 1..=nmax {
            for d in 1..=n {
                for mode in [Mode::AtMost, Mode::Exactly] {
                    let spec = ProblemSpec::new(field.clone(), n, d, mode)?;
                    let report = bounds_report(&spec, &BoundsOptions::default())?;
                    let lower =
                        report.best_lower().map_or_else(|| "-".to_string(), |v| v.to_string());
                    let upper =
                        report.best_upper().map_or_else(|| "-".to_string(), |v| v.to_string());
                    writeln!(
                        out,
                        "{}\t{}\t{}\t{}\t{}\t{}",
                        q,
                        n,
                        d,
                        mode.as_str(),
                        lower,
                        upper
                    )?;
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn require_r(r: Option<u32>, method: &str) -> Result<u32> {
    r.ok_or_else(|| Error::InvalidArgument(format!("--r is required for method {method}")))
}

fn check_length(code: &LinearCode, n: usize, what: &str) -> Result<()> {
    if code.n() != n {
        return Err(Error::InvalidArgument(format!(
            "{} has length {}, but --n is {}",
            what,
            code.n(),
            n
        )));
    }
    Ok(())
}

fn check_claim(spec: &ProblemSpec, d: usize, mode: Mode, method: &str) -> Result<()> {
    if spec.d() != d || spec.mode() != mode {
        return Err(Error::InvalidArgument(format!(
            "method {} colors for mode {} at d = {}; requested mode {} at d = {}",
            method,
            mode.as_str(),
            d,
            spec.mode().as_str(),
            spec.d()
        )));
    }
    Ok(())
}

fn run_color(args: ColorArgs) -> Result<ExitCode> {
    let field = args.field.build()?;
    let spec = ProblemSpec::new(field.clone(), args.n, args.d, args.mode.into())?;
    let coloring = match args.method {
        MethodArg::Hamming => {
            let r = require_r(args.r, "hamming")?;
            let code = hamming_code(field, r)?;
            check_length(&code, args.n, "the hamming code")?;
            coset_coloring(&code, &spec)?
        }
        MethodArg::Simplex => {
            let r = require_r(args.r, "simplex")?;
            let code = simplex_code(field, r)?;
            check_length(&code, args.n, "the simplex code")?;
            coset_coloring(&code, &spec)?
        }
        MethodArg::Gv => {
            let code = gv_greedy(field, args.n, args.d)?;
            coset_coloring(&code, &spec)?
        }
        MethodArg::Forbidden => {
            let code = forbidden_weight_greedy(field, args.n, args.d)?;
            coset_coloring(&code, &spec)?
        }
        MethodArg::MMatrix => {
            check_claim(&spec, 2, Mode::AtMost, "m-matrix")?;
            m_matrix_coloring(field, args.n)?
        }
        MethodArg::ExactD1 => {
            check_claim(&spec, 1, Mode::Exactly, "exact-d1")?;
            exact_d1_coloring(field, args.n)?
        }
        MethodArg::Slab => {
            check_claim(&spec, args.n, Mode::Exactly, "slab")?;
            slab_coloring(field, args.n)?
        }
    };
    match verify_coloring(&coloring)? {
        VerifyOutcome::Valid => {}
        VerifyOutcome::Invalid(v) => {
            eprintln!(
                "qcube: construction violates the constraint at a={} b={} distance={}",
                v.rank_a, v.rank_b, v.distance
            );
            return Ok(ExitCode::from(1));
        }
    }
    match &args.out {
        Some(path) => {
            let file = File::create(path)?;
            let mut w = BufWriter::new(file);
            coloring.write_to(&mut w)?;
            w.flush()?;
            println!("COLORS\t{}", coloring.palette_size());
        }
        None => {
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            coloring.write_to(&mut out)?;
            out.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode> {
    let coloring = if args.input == "-" {
        let stdin = std::io::stdin();
        Coloring::read_from(stdin.lock())?
    } else {
        let file = File::open(&args.input)?;
        Coloring::read_from(BufReader::new(file))?
    };
    match verify_coloring(&coloring)? {
        VerifyOutcome::Valid => {
            println!("VALID colors={}", coloring.palette_size());
            Ok(ExitCode::SUCCESS)
        }
        VerifyOutcome::Invalid(v) => {
            println!("INVALID a={} b={} distance={}", v.rank_a, v.rank_b, v.distance);
            Ok(ExitCode::from(1))
        }
    }
}

fn budget_from(max_nodes: Option<u64>) -> SearchBudget {
    match max_nodes {
        Some(max_nodes) => SearchBudget { max_nodes },
        None => SearchBudget::default(),
    }
}

fn print_result(value_or_bracket: &SearchResult<impl Sized>) {
    match value_or_bracket {
        SearchResult::Exact { value, .. } => println!("EXACT {value}"),
        SearchResult::Exhausted { lower, upper } => println!("BRACKET {lower} {upper}"),
    }
}

fn print_vertices(q: u64, vertices: &[Vec<Elem>]) {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for v in vertices {
        let _ = writeln!(out, "{}", format_vertex(q, v));
    }
}

fn run_chromatic(args: ChromaticArgs) -> Result<ExitCode> {
    let field = args.field.build()?;
    let spec = ProblemSpec::new(field, args.n, args.d, args.mode.into())?;
    let result = chromatic_number(&spec, &budget_from(args.max_nodes))?;
    print_result(&result);
    if let (SearchResult::Exact { witness, .. }, Some(path)) = (&result, &args.out) {
        let file = File::create(path)?;
        let mut w = BufWriter::new(file);
        witness.write_to(&mut w)?;
        w.flush()?;
    }
    Ok(ExitCode::SUCCESS)
}

fn run_clique(args: CliqueArgs) -> Result<ExitCode> {
    let field = args.field.build()?;
    let spec = ProblemSpec::new(field, args.n, args.d, args.mode.into())?;
    let result = max_clique(&spec, &budget_from(args.max_nodes))?;
    print_result(&result);
    if args.witness {
        if let SearchResult::Exact { witness, .. } = &result {
            print_vertices(spec.q(), witness);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_codesize(args: CodesizeArgs) -> Result<ExitCode> {
    let field = args.field.build()?;
    let result = max_code_size(&field, args.n, args.d, &budget_from(args.max_nodes))?;
    print_result(&result);
    if args.witness {
        if let SearchResult::Exact { witness, .. } = &result {
            print_vertices(field.q(), witness);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn format_matrix_rows(out: &mut impl Write, m: &Matrix) -> std::io::Result<()> {
    for row in m.row_iter() {
        let encoded: Vec<String> = row.iter().map(|e| e.to_string()).collect();
        writeln!(out, "{}", encoded.join(" "))?;
    }
    Ok(())
}

fn run_code_info(args: CodeInfoArgs) -> Result<ExitCode> {
    let field = args.field.build()?;
    let code = match args.method {
        CodeMethodArg::Hamming => {
            let r = require_r(args.r, "hamming")?;
            let code = hamming_code(field, r)?;
            if let Some(n) = args.n {
                check_length(&code, n, "the hamming code")?;
            }
            code
        }
        CodeMethodArg::Simplex => {
            let r = require_r(args.r, "simplex")?;
            let code = simplex_code(field, r)?;
            if let Some(n) = args.n {
                check_length(&code, n, "the simplex code")?;
            }
            code
        }
        CodeMethodArg::Gv => {
            let n = require(args.n, "--n")?;
            let d = require(args.d, "--d")?;
            gv_greedy(field, n, d)?
        }
        CodeMethodArg::Forbidden => {
            let n = require(args.n, "--n")?;
            let d = require(args.d, "--d")?;
            forbidden_weight_greedy(field, n, d)?
        }
    };
    let spectrum = code.weight_spectrum()?.to_vec();
    let min_distance = code.min_distance()?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "n\t{}", code.n())?;
    writeln!(out, "k\t{}", code.k())?;
    writeln!(out, "min_distance\t{}", min_distance)?;
    let counts: Vec<String> = spectrum.iter().map(|c| c.to_string()).collect();
    writeln!(out, "spectrum\t{}", counts.join(" "))?;
    writeln!(out, "generator")?;
    format_matrix_rows(&mut out, code.generator())?;
    writeln!(out, "parity")?;
    format_matrix_rows(&mut out, code.parity())?;
    Ok(ExitCode::SUCCESS)
}
