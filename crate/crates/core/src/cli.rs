//! Command-line front end.
//!
//! Three subcommands:
//!
//! * `check FILE [--t T]` recognizes the matrix in a matrix file.
//! * `make [COEFFS] --field F [--block FILE] [--out FILE]` writes `F_p` or
//!   `F_P`.
//! * `verify --theorem ID --field F --n N [--t T] (--exhaustive | --trials T
//!   --seed S) [--budget B]` tests one equivalence.
//!
//! Exit codes: 0 when the matrix is a companion matrix or no mismatch was
//! found, 1 when refuted (a witness is printed), 2 on usage or input errors.
//! Every report ends with a `[result]` section of `key = value` lines.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::bilinear::{
    check_crossover, check_crossover_universal, check_h_symmetry, check_jmtrs, check_u_symmetry,
    h_map, recognize, rows_below_first_are_companion, u_map, Counterexample, ExtendedCoeffVector,
    TheoremId, TheoremVerdict,
};
use crate::block::{
    check_block_crg, crg_certified_test, is_block_companion_structural, make_block_companion,
    recognize_block, BlockColumn,
};
use crate::companion::{
    is_companion_structural, krylov_basis_test, krylov_full_test, make_companion, CoeffVector,
    CompanionReport, Witness,
};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec, Scalar};
use crate::format::MatrixFile;
use crate::matrix::Matrix;
use crate::oracle::{self, EnumerationTask};
use crate::random::{self, Lcg64};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "companion",
    version,
    about = "Recognize and build companion matrices exactly"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report every companion criterion for a matrix file.
    Check(CheckArgs),
    /// Write a companion or block companion matrix file.
    Make(MakeArgs),
    /// Test one equivalence on random or exhaustively enumerated matrices.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub path: PathBuf,
    /// Block size; overrides the file's `block` line.
    #[arg(long)]
    pub t: Option<usize>,
}

#[derive(Debug, Args)]
pub struct MakeArgs {
    /// Comma-separated coefficients p_0,...,p_{n-1}.
    #[arg(allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    #[arg(long, default_value = "Q")]
    pub field: FieldSpec,
    /// Matrix file holding the block column P (nt x t).
    #[arg(long)]
    pub block: Option<PathBuf>,
    /// Block size for --block when the file has no `block` line.
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub theorem: TheoremId,
    #[arg(long, default_value = "Q")]
    pub field: FieldSpec,
    /// Matrix dimension, or number of blocks for `crg`.
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub t: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub exhaustive: bool,
    #[arg(long, default_value_t = oracle::DEFAULT_BUDGET)]
    pub budget: u128,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn report(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_ERROR
            } else {
                EXIT_HOLDS
            };
            let text = e.render().to_string();
            if code == EXIT_HOLDS {
                Outcome::report(code, text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Check(a) => cmd_check(a),
        Command::Make(a) => cmd_make(a),
        Command::Verify(a) => cmd_verify(a),
    };
    result.unwrap_or_else(|e| Outcome {
        code: EXIT_ERROR,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    })
}

fn read_matrix_file(path: &PathBuf) -> Result<MatrixFile> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    MatrixFile::parse(&text)
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn write_criteria<T: Scalar, P>(out: &mut String, report: &CompanionReport<T, P>) {
    for (c, holds) in report.criteria() {
        let _ = writeln!(
            out,
            "  {:<22} {}",
            c.name(),
            if *holds { "holds" } else { "fails" }
        );
    }
}

fn write_witness_prose(out: &mut String, w: &Witness<FieldElement>) {
    let _ = writeln!(out, "witness: {w}");
}

fn write_witness_fields(out: &mut String, w: &Witness<FieldElement>) {
    let _ = writeln!(out, "witness.row = {}", w.row);
    let _ = writeln!(out, "witness.column = {}", w.column);
    let _ = writeln!(out, "witness.expected = {}", w.expected);
    let _ = writeln!(out, "witness.found = {}", w.found);
}

pub fn cmd_check(args: &CheckArgs) -> Result<Outcome> {
    let file = read_matrix_file(&args.path)?;
    let a = &file.matrix;
    let n = a.ensure_square()?;
    let mut out = String::new();
    let _ = writeln!(out, "{n}x{n} matrix over {}", a.spec());

    match args.t.or(file.block_size) {
        Some(t) => {
            let report = recognize_block(a, t)?;
            let verdict = if report.is_companion() {
                "is"
            } else {
                "is not"
            };
            let _ = writeln!(
                out,
                "The matrix {verdict} a block companion matrix with t = {t}."
            );
            write_criteria(&mut out, &report);
            if let Some(p) = report.extracted() {
                for (i, b) in p.blocks().iter().enumerate() {
                    let rows: Vec<String> = (0..b.rows()).map(|r| join(b.row(r), " ")).collect();
                    let _ = writeln!(out, "P_{i} = [{}]", rows.join("; "));
                }
            }
            if let Some(w) = report.witness() {
                write_witness_prose(&mut out, w);
            }
            let _ = writeln!(out, "\n[result]");
            let _ = writeln!(out, "kind = block");
            let _ = writeln!(out, "t = {t}");
            let _ = writeln!(out, "companion = {}", report.is_companion());
            for (c, holds) in report.criteria() {
                let _ = writeln!(out, "criterion.{} = {holds}", c.name());
            }
            if let Some(p) = report.extracted() {
                for (i, b) in p.blocks().iter().enumerate() {
                    let rows: Vec<String> = (0..b.rows()).map(|r| join(b.row(r), ",")).collect();
                    let _ = writeln!(out, "P_{i} = {}", rows.join(";"));
                }
            }
            if let Some(w) = report.witness() {
                write_witness_fields(&mut out, w);
            }
            Ok(Outcome::report(exit_for(report.is_companion()), out))
        }
        None => {
            let report = recognize(a)?;
            let verdict = if report.is_companion() {
                "is"
            } else {
                "is not"
            };
            let _ = writeln!(out, "The matrix {verdict} a second companion matrix.");
            write_criteria(&mut out, &report);
            if let Some(p) = report.extracted_p() {
                let _ = writeln!(out, "p = {p}");
            }
            if let Some(w) = report.witness() {
                write_witness_prose(&mut out, w);
            }
            let _ = writeln!(out, "\n[result]");
            let _ = writeln!(out, "kind = scalar");
            let _ = writeln!(out, "companion = {}", report.is_companion());
            for (c, holds) in report.criteria() {
                let _ = writeln!(out, "criterion.{} = {holds}", c.name());
            }
            if let Some(p) = report.extracted_p() {
                let _ = writeln!(out, "p = {}", join(p.entries(), ","));
            }
            if let Some(w) = report.witness() {
                write_witness_fields(&mut out, w);
            }
            Ok(Outcome::report(exit_for(report.is_companion()), out))
        }
    }
}

fn exit_for(holds: bool) -> i32 {
    if holds {
        EXIT_HOLDS
    } else {
        EXIT_REFUTED
    }
}

/// Splits `"1, -2/3,0"` into field elements.
pub fn parse_coefficients(list: &str, spec: &FieldSpec) -> Result<Vec<FieldElement>> {
    let items: Vec<&str> = list.split(',').map(str::trim).collect();
    if items.iter().any(|s| s.is_empty()) {
        return Err(Error::Parse(format!("empty coefficient in {list:?}")));
    }
    items.iter().map(|s| FieldElement::parse(s, spec)).collect()
}

pub fn cmd_make(args: &MakeArgs) -> Result<Outcome> {
    let file = match (&args.coeffs, &args.block) {
        (Some(list), None) => {
            let p = CoeffVector::new(parse_coefficients(list, &args.field)?, args.field)?;
            MatrixFile::new(make_companion(&p))
        }
        (None, Some(path)) => {
            let source = read_matrix_file(path)?;
            args.field.ensure_same(&source.field())?;
            let t = args.t.or(source.block_size).unwrap_or(source.matrix.cols());
            if source.matrix.cols() != t {
                return Err(Error::DimensionMismatch(format!(
                    "block column has {} columns, expected t = {t}",
                    source.matrix.cols()
                )));
            }
            let p = BlockColumn::from_matrix(&source.matrix, t)?;
            MatrixFile::new(make_block_companion(&p)?).with_block_size(t)?
        }
        (Some(_), Some(_)) => {
            return Err(Error::Parse(
                "give either coefficients or --block, not both".into(),
            ))
        }
        (None, None) => return Err(Error::Parse("no coefficients given".into())),
    };
    let text = file.render();
    match &args.out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let n = file.matrix.rows();
            Ok(Outcome::report(
                EXIT_HOLDS,
                format!("wrote {n}x{n} matrix to {}\n", path.display()),
            ))
        }
        None => Ok(Outcome::report(EXIT_HOLDS, text)),
    }
}

#[derive(Debug, Default)]
struct Tally {
    total: u64,
    companions: u64,
    mismatches: u64,
    first: Option<String>,
}

impl Tally {
    fn record(&mut self, companion: bool, verdict: bool, a: &Matrix<FieldElement>, detail: String) {
        self.total += 1;
        self.companions += companion as u64;
        if companion != verdict {
            self.mismatches += 1;
            if self.first.is_none() {
                let expected = if companion { "holds" } else { "fails" };
                self.first = Some(format!(
                    "trial {}: criterion should {} but {}\n{a}{detail}",
                    self.total - 1,
                    expected.trim_end_matches('s'),
                    if verdict { "holds" } else { "fails" },
                ));
            }
        }
    }
}

fn describe(cx: &Counterexample<FieldElement>) -> String {
    let mut s = String::new();
    for (name, m) in &cx.inputs {
        let _ = writeln!(s, "{name} = [{}]", join(m.entries(), ", "));
    }
    let _ = writeln!(s, "lhs = [{}]", join(cx.lhs.entries(), ", "));
    let _ = writeln!(s, "rhs = [{}]", join(cx.rhs.entries(), ", "));
    s
}

fn verdict_detail(v: &TheoremVerdict<FieldElement>) -> String {
    v.counterexample().map(describe).unwrap_or_default()
}

/// One random trial: the library's decision for `a`, combined with extra
/// random instances of the identity when `a` is a companion matrix.
fn random_verdict(
    theorem: TheoremId,
    a: &Matrix<FieldElement>,
    t: usize,
    rng: &mut Lcg64,
) -> Result<(bool, String)> {
    let spec = a.spec();
    let n = a.rows();
    let vec = |rng: &mut Lcg64| random::coeff_vector::<FieldElement>(n, spec, rng);
    Ok(match theorem {
        TheoremId::Reachability => {
            let samples: Vec<_> = (0..4).map(|_| vec(rng)).collect();
            let full = krylov_full_test(a, &samples)?;
            (krylov_basis_test(a)? && full, String::new())
        }
        TheoremId::HSymmetry => {
            let v = check_h_symmetry(a)?;
            let (b, g) = (vec(rng), vec(rng));
            let sample = h_map(a, &b, &g)? == h_map(a, &g, &b)?;
            (v.holds() && (sample || !v.holds()), verdict_detail(&v))
        }
        TheoremId::USymmetry => {
            let v = check_u_symmetry(a)?;
            let (b, g) = (vec(rng), vec(rng));
            let sample = u_map(a, &b, &g)? == u_map(a, &g, &b)?;
            (v.holds() && sample, verdict_detail(&v))
        }
        TheoremId::Jmtrs => {
            let v = check_jmtrs(a)?;
            (v.holds(), verdict_detail(&v))
        }
        TheoremId::Crossover => {
            let v = check_crossover_universal(a)?;
            let ext = |rng: &mut Lcg64| {
                let e = random::coeff_vector::<FieldElement>(n + 1, spec, rng);
                ExtendedCoeffVector::from_entries(e.entries().to_vec(), spec)
            };
            let (b, g) = (ext(rng)?, ext(rng)?);
            let sample = check_crossover(a, &b, &g)?;
            (v.holds() && sample, verdict_detail(&v))
        }
        TheoremId::BlockCrg => {
            let blocks = n / t;
            let mut holds = crg_certified_test(a, t)?;
            for _ in 0..4 {
                let (b, g) = random::commuting_pair::<FieldElement>(blocks, t, spec, rng)?;
                holds &= check_block_crg(a, &b, &g)?;
            }
            (holds, String::new())
        }
    })
}

fn random_matrix(
    theorem: TheoremId,
    n: usize,
    t: usize,
    spec: FieldSpec,
    companion: bool,
    rng: &mut Lcg64,
) -> Result<Matrix<FieldElement>> {
    if theorem == TheoremId::BlockCrg {
        if companion {
            let p = random::block_column::<FieldElement>(n, t, t, spec, rng);
            return make_block_companion(&p);
        }
        loop {
            let a = random::matrix::<FieldElement>(n * t, n * t, spec, rng);
            if !is_block_companion_structural(&a, t)?.is_companion() {
                return Ok(a);
            }
        }
    }
    if companion {
        Ok(make_companion(&random::coeff_vector(n, spec, rng)))
    } else {
        Ok(random::non_companion(n, spec, rng))
    }
}

fn is_companion_for(theorem: TheoremId, a: &Matrix<FieldElement>, t: usize) -> Result<bool> {
    if theorem == TheoremId::BlockCrg {
        Ok(is_block_companion_structural(a, t)?.is_companion())
    } else {
        Ok(is_companion_structural(a)?.is_companion())
    }
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Outcome> {
    if args.n == 0 || args.t == 0 {
        return Err(Error::Parse("--n and --t must be positive".into()));
    }
    let theorem = args.theorem;
    let t = if theorem == TheoremId::BlockCrg {
        args.t
    } else {
        1
    };
    let mut out = String::new();
    let dims = if theorem == TheoremId::BlockCrg {
        format!("n = {}, t = {t}", args.n)
    } else {
        format!("n = {}", args.n)
    };

    if args.exhaustive {
        let task = EnumerationTask::new(args.field, args.n, theorem)
            .with_block_size(t)
            .with_budget(args.budget);
        let r = oracle::run_equivalence::<FieldElement>(&task)?;
        let _ = writeln!(
            out,
            "verify {theorem} over {}, {dims}, exhaustive",
            args.field
        );
        let _ = writeln!(
            out,
            "{} matrices, {} companions, {} mismatches",
            r.total,
            r.companion_count,
            r.mismatches.len()
        );
        if let Some(m) = r.mismatches.first() {
            let _ = write!(
                out,
                "first mismatch (matrix {}): structural {}, exhaustive {}, library {}\n{}",
                m.index, m.structural, m.brute_force, m.library, m.matrix
            );
        }
        let shape = if matches!(theorem, TheoremId::Jmtrs | TheoremId::USymmetry) {
            let s = oracle::run_against::<FieldElement, _>(&task, rows_below_first_are_companion)?;
            let _ = writeln!(
                out,
                "against the shape of rows 1..n-1 alone: {} matrices, {} mismatches",
                s.companion_count,
                s.mismatches.len()
            );
            Some(s)
        } else {
            None
        };
        let _ = writeln!(out, "\n[result]");
        let _ = writeln!(out, "theorem = {theorem}");
        let _ = writeln!(out, "field = {}", args.field);
        let _ = writeln!(out, "mode = exhaustive");
        let _ = writeln!(out, "matrices = {}", r.total);
        let _ = writeln!(out, "companions = {}", r.companion_count);
        let _ = writeln!(out, "predicate_holds = {}", r.predicate_pass_count);
        let _ = writeln!(out, "mismatches = {}", r.mismatches.len());
        if let Some(s) = shape {
            let _ = writeln!(out, "row_shape_matrices = {}", s.companion_count);
            let _ = writeln!(out, "row_shape_mismatches = {}", s.mismatches.len());
        }
        return Ok(Outcome::report(exit_for(r.mismatches.is_empty()), out));
    }

    let mut rng = Lcg64::new(args.seed);
    let mut tally = Tally::default();
    let always_companion = theorem != TheoremId::BlockCrg && args.n == 1
        || theorem == TheoremId::BlockCrg && args.n == 1;
    for _ in 0..args.trials {
        let want_companion = always_companion || rng.coin();
        let a = random_matrix(theorem, args.n, t, args.field, want_companion, &mut rng)?;
        let companion = is_companion_for(theorem, &a, t)?;
        let (verdict, detail) = random_verdict(theorem, &a, t, &mut rng)?;
        tally.record(companion, verdict, &a, detail);
    }
    let _ = writeln!(
        out,
        "verify {theorem} over {}, {dims}, {} random trials, seed {}",
        args.field, args.trials, args.seed
    );
    let _ = writeln!(
        out,
        "{} trials, {} companions, {} mismatches",
        tally.total, tally.companions, tally.mismatches
    );
    if let Some(first) = &tally.first {
        let _ = write!(out, "first mismatch, {first}");
    }
    let _ = writeln!(out, "\n[result]");
    let _ = writeln!(out, "theorem = {theorem}");
    let _ = writeln!(out, "field = {}", args.field);
    let _ = writeln!(out, "mode = random");
    let _ = writeln!(out, "seed = {}", args.seed);
    let _ = writeln!(out, "trials = {}", tally.total);
    let _ = writeln!(out, "companions = {}", tally.companions);
    let _ = writeln!(out, "mismatches = {}", tally.mismatches);
    Ok(Outcome::report(exit_for(tally.mismatches == 0), out))
}
