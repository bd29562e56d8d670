//! qspace: construct, bound and verify subspace codes and q-analog designs.
//!
//! Exit codes: 0 success / verdict true, 1 verdict false, 2 usage error,
//! 3 cap exceeded. Identical invocations produce byte-identical output.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use qspace::bounds;
use qspace::construct::{self, OrbitGenerator, SkeletonCode, SkeletonDistance};
use qspace::error::Error;
use qspace::field::Field;
use qspace::io as qio;
use qspace::projections;
use qspace::rank;
use qspace::space::{self, Metric};
use qspace::verify;

mod render;

#[derive(Parser)]
#[command(
    name = "qspace",
    about = "Codes and designs in projective spaces over finite fields",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a field descriptor and print the field's parameters.
    Field {
        /// e.g. "GF(2^6)/1,1,0,0,0,0,1" or "GF(7)"
        #[arg(long)]
        field: String,
    },
    /// Print the Gaussian coefficient [n, k]_q.
    Gauss {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        q: u64,
    },
    /// Enumerate G_q(n, k) (or all of P_q(n)) in canonical order.
    Enum {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        /// Omit to stream every dimension.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        cap: Option<u64>,
        /// json (a code file) or text (row blocks)
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Report the exhaustive minimum distance of a code file.
    Dist {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        metric: String,
    },
    /// Build codes.
    Construct {
        #[command(subcommand)]
        what: ConstructCmd,
    },
    /// Evaluate bounds.
    Bounds {
        #[command(subcommand)]
        what: BoundsCmd,
    },
    /// Verify claimed properties; exit 0 iff the verdict is true.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// The projections method for hypothetical q-Steiner systems.
    Projections {
        #[command(subcommand)]
        what: ProjectionsCmd,
    },
    /// Complement census |V_q(n)| / |P_q(n)| and the limit constant.
    Complements {
        #[arg(long)]
        q: u64,
        /// single n or inclusive range like 2..8
        #[arg(long)]
        n: String,
        #[arg(long)]
        cap: Option<u64>,
    },
}

#[derive(Args)]
struct InputArg {
    /// Input path; "-" or omitted reads stdin.
    #[arg(long, short = 'i')]
    r#in: Option<String>,
}

impl InputArg {
    fn read(&self) -> Result<String, Error> {
        match self.r#in.as_deref() {
            None | Some("-") => {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| Error::ParseError {
                        context: "stdin".into(),
                        message: e.to_string(),
                    })?;
                Ok(buf)
            }
            Some(path) => std::fs::read_to_string(path).map_err(|e| Error::ParseError {
                context: path.to_string(),
                message: e.to_string(),
            }),
        }
    }
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Gabidulin MRD rank-metric code as a matrix-list JSON file.
    Mrd {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        cols: u32,
        #[arg(long)]
        delta: u32,
    },
    /// Lift a rank-metric code file into a Grassmannian code.
    Lift {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// The multilevel construction over a skeleton code.
    Multilevel {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        delta: u32,
        #[arg(long)]
        metric: String,
        /// Skeleton file (one binary word per line); omit to use the greedy
        /// default for --n/--k.
        #[arg(long)]
        skeleton: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// The normal spread of k-subspaces (k divides n).
    Spread {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Maximal-known partial spread (k not dividing n).
    PartialSpread {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Cyclic orbit code from generator exponent sets.
    Cyclic {
        /// Field descriptor of F_{q^n}, e.g. "GF(2^6)/1,1,0,0,0,0,1".
        #[arg(long)]
        field: String,
        /// Comma-separated exponents; repeat per generator (e.g. --gens 0,21,42).
        #[arg(long, required = true)]
        gens: Vec<String>,
        /// Also add the null space and the full space.
        #[arg(long)]
        add_trivial: bool,
        #[arg(long, default_value = "injection")]
        metric: String,
    },
    /// Puncture a code: exhaustive best hyperplane unless --hyperplane given.
    Puncture {
        #[command(flatten)]
        input: InputArg,
        /// Hyperplane rows separated by ';' (e.g. "10000;01000;00100;00010").
        #[arg(long)]
        hyperplane: Option<String>,
        /// Vector outside the hyperplane (digits), required with --hyperplane.
        #[arg(long)]
        v: Option<String>,
    },
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Best lower and upper bounds on A_q(n, delta, k).
    Single {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        delta: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// CSV table over parameter ranges (single values or lo..hi).
    Table {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: String,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        k: String,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Exhaustive minimum distance; verdict true iff it meets --at-least
    /// (or the file's claimed distance when --at-least is omitted).
    Mindist {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        metric: String,
        #[arg(long)]
        at_least: Option<usize>,
    },
    /// Every t-subspace covered exactly once.
    Steiner {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        t: usize,
    },
    /// Every t-subspace covered exactly lambda times.
    Design {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        lambda: u64,
    },
    /// Every r-subspace covered at least once.
    Covering {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        r: usize,
    },
    /// Pairwise-disjoint words covering everything (or --partial).
    Spread {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        partial: bool,
    },
    /// The five subspace-transversal-design properties.
    Std {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        strength: usize,
    },
    /// Every 1-subspace of the ambient space lies in some codeword.
    Cover {
        #[command(flatten)]
        input: InputArg,
    },
}

#[derive(Subcommand)]
enum ProjectionsCmd {
    /// Emit the equation system for S_q(t, k, n) projected to width rho.
    Gen {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        rho: u32,
    },
    /// Solve a system file for nonnegative integer solutions.
    Solve {
        #[command(flatten)]
        input: InputArg,
        /// Pin a variable, e.g. --pin 0=1 (label=value); repeatable.
        #[arg(long)]
        pin: Vec<String>,
        /// Search node budget.
        #[arg(long, default_value_t = 1_000_000)]
        cap: u64,
    },
    /// Consolidated per-rho feasibility summary.
    Report {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        q: u64,
        /// rho values 1..=rho_max; above 4 requires an explicit --budget.
        #[arg(long, default_value_t = 4)]
        rho_max: u32,
        #[arg(long)]
        budget: Option<u64>,
    },
}

fn parse_range(s: &str) -> Result<(u32, u32), Error> {
    let bad = || Error::ParseError {
        context: s.to_string(),
        message: "expected N or LO..HI".into(),
    };
    if let Some((lo, hi)) = s.split_once("..") {
        let lo = lo.trim().parse::<u32>().map_err(|_| bad())?;
        let hi = hi.trim().parse::<u32>().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        Ok((lo, hi))
    } else {
        let v = s.trim().parse::<u32>().map_err(|_| bad())?;
        Ok((v, v))
    }
}

fn emit(out: &Option<std::path::PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        None => {
            use std::io::Write;
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            match writeln!(lock, "{}", text.trim_end()) {
                Ok(()) => Ok(()),
                // a closed pipe (e.g. piping into `head`) is not an error
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {
                    std::process::exit(0);
                }
                Err(e) => Err(Error::ParseError {
                    context: "stdout".into(),
                    message: e.to_string(),
                }),
            }
        }
        Some(path) => std::fs::write(path, text).map_err(|e| Error::ParseError {
            context: path.display().to_string(),
            message: e.to_string(),
        }),
    }
}

/// Command outcome: output text plus the verdict (None = not a verdict run).
struct Outcome {
    text: String,
    verdict: Option<bool>,
}

impl Outcome {
    fn plain(text: String) -> Outcome {
        Outcome {
            text,
            verdict: None,
        }
    }
    fn verdict(text: String, verdict: bool) -> Outcome {
        Outcome {
            text,
            verdict: Some(verdict),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(outcome) => {
            if let Err(e) = emit(&cli.out, &outcome.text) {
                eprintln!("error: {}", e);
                return ExitCode::from(2);
            }
            match outcome.verdict {
                Some(false) => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            match e {
                Error::CapExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cmd: &Command) -> Result<Outcome, Error> {
    match cmd {
        Command::Field { field } => {
            let f = Field::parse_descriptor(field)?;
            Ok(Outcome::plain(render::field_info(&f)))
        }
        Command::Gauss { n, k, q } => Ok(Outcome::plain(
            space::gaussian_binomial(*n, *k, *q).to_string(),
        )),
        Command::Enum {
            q,
            n,
            k,
            cap,
            format,
        } => {
            let field = field_of_order(*q)?;
            let words: Vec<space::Subspace> = match k {
                Some(k) => space::enumerate_grassmannian(&field, *n, *k, *cap)?.collect(),
                None => space::enumerate_projective(&field, *n, *cap)?.collect(),
            };
            match format.as_str() {
                "text" => Ok(Outcome::plain(render::subspace_blocks(&words))),
                "json" => {
                    let metric = if k.is_some() {
                        Metric::Grassmannian
                    } else {
                        Metric::Subspace
                    };
                    let code = space::SubspaceCode::new(field, *n, metric, words, None)?;
                    Ok(Outcome::plain(qio::write_code(&code)?))
                }
                other => Err(Error::ParseError {
                    context: other.to_string(),
                    message: "expected json or text".into(),
                }),
            }
        }
        Command::Dist { input, metric } => {
            let (code, _) = qio::read_code(&input.read()?)?;
            let metric = Metric::parse(metric)?;
            let d = space::code_min_distance(&code, metric)?;
            Ok(Outcome::plain(format!(
                "size {} min_{} {}",
                code.len(),
                metric.tag(),
                d
            )))
        }
        Command::Construct { what } => run_construct(what),
        Command::Bounds { what } => run_bounds(what),
        Command::Verify { what } => run_verify(what),
        Command::Projections { what } => run_projections(what),
        Command::Complements { q, n, cap } => {
            let (lo, hi) = parse_range(n)?;
            let mut rows = Vec::new();
            for n in lo..=hi {
                rows.push(verify::complements_census(n, *q, *cap)?);
            }
            Ok(Outcome::plain(render::complement_table(&rows, *q)))
        }
    }
}

fn field_of_order(q: u64) -> Result<Field, Error> {
    let p = u32::try_from(q).map_err(|_| Error::BadParams(format!("bad field order {}", q)))?;
    // prime fields directly; prime powers through the default modulus
    if let Ok(f) = Field::new(p, 1, None) {
        return Ok(f);
    }
    let (prime, m) = factor_prime_power(q)?;
    Field::new(prime, m, None)
}

fn factor_prime_power(q: u64) -> Result<(u32, u32), Error> {
    let mut n = q;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut m = 0u32;
            while n % d == 0 {
                n /= d;
                m += 1;
            }
            if n != 1 {
                return Err(Error::BadParams(format!("{} is not a prime power", q)));
            }
            return Ok((d as u32, m));
        }
        d += 1;
    }
    Ok((q as u32, 1))
}

fn run_construct(cmd: &ConstructCmd) -> Result<Outcome, Error> {
    match cmd {
        ConstructCmd::Mrd { q, k, cols, delta } => {
            let code = rank::gabidulin(*k, *cols, *delta, *q)?;
            Ok(Outcome::plain(qio::write_rank_code(&code, None)?))
        }
        ConstructCmd::Lift { input, cap } => {
            let (code, _) = qio::read_rank_code(&input.read()?)?;
            let lifted = rank::lift_code(&code, *cap)?;
            Ok(Outcome::plain(qio::write_code(&lifted)?))
        }
        ConstructCmd::Multilevel {
            q,
            delta,
            metric,
            skeleton,
            n,
            k,
            seed,
        } => {
            let metric = Metric::parse(metric)?;
            let skeleton = match (skeleton, n, k) {
                (Some(path), _, _) => {
                    let (n, words) = qio::read_skeleton_words(&std::fs::read_to_string(path)
                        .map_err(|e| Error::ParseError {
                            context: path.clone(),
                            message: e.to_string(),
                        })?)?;
                    let kind = match metric {
                        Metric::Injection => SkeletonDistance::Asymmetric,
                        _ => SkeletonDistance::Hamming,
                    };
                    let weight = words.first().map(|w| w.count_ones());
                    let constant = words
                        .iter()
                        .all(|w| Some(w.count_ones()) == weight)
                        .then_some(weight.unwrap_or(0));
                    SkeletonCode::new(n, words, kind, 0, constant)?
                }
                (None, Some(n), Some(k)) => construct::skeleton_default(*n, *k, *delta, metric)?,
                _ => {
                    return Err(Error::BadParams(
                        "need --skeleton FILE or both --n and --k".into(),
                    ))
                }
            };
            let code = construct::multilevel(&skeleton, *delta, *q, metric, *seed)?;
            Ok(Outcome::plain(qio::write_code(&code)?))
        }
        ConstructCmd::Spread { q, n, k } => {
            let code = construct::spread(*n, *k, *q)?;
            Ok(Outcome::plain(qio::write_code(&code)?))
        }
        ConstructCmd::PartialSpread { q, n, k } => {
            let code = construct::partial_spread(*n, *k, *q)?;
            Ok(Outcome::plain(qio::write_code(&code)?))
        }
        ConstructCmd::Cyclic {
            field,
            gens,
            add_trivial,
            metric,
        } => {
            let ext = Field::parse_descriptor(field)?;
            let metric = Metric::parse(metric)?;
            let gens: Result<Vec<OrbitGenerator>, Error> = gens
                .iter()
                .map(|g| {
                    let exps: Result<Vec<u64>, _> =
                        g.split(',').map(|e| e.trim().parse::<u64>()).collect();
                    Ok(OrbitGenerator::new(exps.map_err(|_| Error::ParseError {
                        context: g.clone(),
                        message: "expected comma-separated exponents".into(),
                    })?))
                })
                .collect();
            let code = construct::cyclic_orbit_code(&ext, &gens?, *add_trivial, metric)?;
            Ok(Outcome::plain(qio::write_code(&code)?))
        }
        ConstructCmd::Puncture {
            input,
            hyperplane,
            v,
        } => {
            let (code, _) = qio::read_code(&input.read()?)?;
            let punctured = match (hyperplane, v) {
                (Some(h), Some(v)) => {
                    let n = code.ambient();
                    let q = code.field().q();
                    let rows: Result<Vec<Vec<u32>>, Error> = h
                        .split(';')
                        .map(|r| qio::parse_row(r.trim(), n, q))
                        .collect();
                    let q_sub = space::Subspace::span(code.field(), n, &rows?)?;
                    let v = qio::parse_row(v.trim(), n, q)?;
                    construct::puncture_code(&code, &q_sub, &v)?
                }
                (None, None) => construct::choose_q(&code)?.2,
                _ => {
                    return Err(Error::BadParams(
                        "--hyperplane and --v go together".into(),
                    ))
                }
            };
            Ok(Outcome::plain(qio::write_code(&punctured)?))
        }
    }
}

fn run_bounds(cmd: &BoundsCmd) -> Result<Outcome, Error> {
    match cmd {
        BoundsCmd::Single {
            q,
            n,
            delta,
            k,
            format,
        } => {
            let (lower, upper) = bounds::best_bounds(*n, *delta, *k, *q)?;
            match format.as_str() {
                "json" => Ok(Outcome::plain(render::bounds_json(&lower, &upper))),
                "text" => Ok(Outcome::plain(render::bounds_text(
                    *q, *n, *delta, *k, &lower, &upper,
                ))),
                other => Err(Error::ParseError {
                    context: other.to_string(),
                    message: "expected json or text".into(),
                }),
            }
        }
        BoundsCmd::Table { q, n, delta, k } => {
            let table = bounds::emit_table(*q, parse_range(n)?, parse_range(delta)?, parse_range(k)?)?;
            Ok(Outcome::plain(table.to_csv()))
        }
    }
}

fn run_verify(cmd: &VerifyCmd) -> Result<Outcome, Error> {
    match cmd {
        VerifyCmd::Mindist {
            input,
            metric,
            at_least,
        } => {
            let (code, warned) = qio::read_code(&input.read()?)?;
            let metric = Metric::parse(metric)?;
            let d = space::code_min_distance(&code, metric)?;
            let required = at_least.or(code.claimed_min_distance());
            let verdict = required.is_none_or(|r| d >= r);
            Ok(Outcome::verdict(
                render::verdict_block(
                    "mindist",
                    verdict,
                    &[
                        ("size", code.len().to_string()),
                        (
                            &format!("min_{}", metric.tag()),
                            d.to_string(),
                        ),
                        (
                            "required",
                            required.map_or("none".into(), |r| r.to_string()),
                        ),
                        ("canonicalized_input", warned.to_string()),
                    ],
                ),
                verdict,
            ))
        }
        VerifyCmd::Steiner { input, t } => {
            let (code, _) = qio::read_code(&input.read()?)?;
            let report = verify::coverage(&code, *t, None)?;
            let verdict = report.is_steiner;
            Ok(Outcome::verdict(
                render::coverage_block("steiner", verdict, &report, code.len()),
                verdict,
            ))
        }
        VerifyCmd::Design { input, t, lambda } => {
            let (code, _) = qio::read_code(&input.read()?)?;
            let report = verify::coverage(&code, *t, None)?;
            let verdict = report.design_lambda == Some(*lambda);
            Ok(Outcome::verdict(
                render::coverage_block("design", verdict, &report, code.len()),
                verdict,
            ))
        }
        VerifyCmd::Covering { input, r } => {
            let (code, _) = qio::read_code(&input.read()?)?;
            let report = verify::coverage(&code, *r, None)?;
            let verdict = report.is_covering;
            Ok(Outcome::verdict(
                render::coverage_block("covering", verdict, &report, code.len()),
                verdict,
            ))
        }
        VerifyCmd::Spread { input, partial } => {
            let (code, _) = qio::read_code(&input.read()?)?;
            let verdict = if *partial {
                verify::verify_partial_spread(&code)?
            } else {
                verify::verify_spread(&code)?
            };
            let kind = if *partial { "partial-spread" } else { "spread" };
            Ok(Outcome::verdict(
                render::verdict_block(kind, verdict, &[("size", code.len().to_string())]),
                verdict,
            ))
        }
        VerifyCmd::Std { input, strength } => {
            let (code, _) = qio::read_code(&input.read()?)?;
            let report = verify::verify_std(&code, *strength)?;
            let verdict = report.all_pass();
            Ok(Outcome::verdict(render::std_block(&report), verdict))
        }
        VerifyCmd::Cover { input } => {
            let (code, _) = qio::read_code(&input.read()?)?;
            let verdict = verify::cover_check(&code)?;
            Ok(Outcome::verdict(
                render::verdict_block("cover", verdict, &[("size", code.len().to_string())]),
                verdict,
            ))
        }
    }
}

fn run_projections(cmd: &ProjectionsCmd) -> Result<Outcome, Error> {
    match cmd {
        ProjectionsCmd::Gen { n, k, t, q, rho } => {
            let sys = projections::build_system(*n, *k, *t, *q, *rho)?;
            Ok(Outcome::plain(qio::write_system(&sys)))
        }
        ProjectionsCmd::Solve { input, pin, cap } => {
            let sys = qio::read_system(&input.read()?)?;
            let pins: Result<Vec<(String, BigUint)>, Error> = pin
                .iter()
                .map(|p| {
                    let (label, value) = p.split_once('=').ok_or_else(|| Error::ParseError {
                        context: p.clone(),
                        message: "expected label=value".into(),
                    })?;
                    let value: BigUint =
                        value.trim().parse().map_err(|_| Error::ParseError {
                            context: p.clone(),
                            message: "pin value must be a nonnegative integer".into(),
                        })?;
                    Ok((label.trim().to_string(), value))
                })
                .collect();
            let outcome = projections::solve(&sys, &pins?, *cap)?;
            Ok(Outcome::plain(render::solve_block(&sys, &outcome)))
        }
        ProjectionsCmd::Report {
            n,
            k,
            t,
            q,
            rho_max,
            budget,
        } => {
            if *rho_max > 4 && budget.is_none() {
                return Err(Error::BadParams(
                    "rho_max > 4 needs an explicit --budget".into(),
                ));
            }
            // a few hundred nodes conclude the narrow projections exactly and
            // sample the wide ones; solution counts carry a completeness flag
            let cap = budget.unwrap_or(300);
            let report = projections::feasibility_report(*n, *k, *t, *q, *rho_max, cap)?;
            Ok(Outcome::plain(render::feasibility_block(&report)))
        }
    }
}
