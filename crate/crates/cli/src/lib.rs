//! Command-line front end: run one problem file through a chosen algorithm,
//! or run a whole corpus against expected support sizes.

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use clap::{Args, ValueEnum};
use thiserror::Error;

use implicitize::budget::Budget;
use implicitize::coeff::{Field, PrimePool, DEFAULT_PRIME_START, QQ};
use implicitize::direct::{DirectError, DirectOptions};
use implicitize::elim::ElimError;
use implicitize::modular::{
    classify_prime, mod_implicit, single_prime_guess, verify, GuessFailure, ModularError, ModularOptions,
};
use implicitize::parse::{load_problem_file, parse_polynomial, ParamSystem, ParseError, Parametrization};
use implicitize::ratpar::{rat_par, Engine, ImplicitError};
use implicitize::ring::Polynomial;

/// Exit code for a Direct run that reached its degree cap.
pub const EXIT_CAP_EXCEEDED: i32 = 3;
/// Exit code for a modular run that ran out of primes.
pub const EXIT_PRIME_POOL_EXHAUSTED: i32 = 4;
/// Exit code for a run that exceeded its time budget.
pub const EXIT_BUDGET: i32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum)]
pub enum Algorithm {
    /// Truncated homogeneous elimination (rational input goes through RatPar).
    Elimth,
    /// First-dependency search (rational input goes through RatPar).
    Direct,
    RatparElimth,
    RatparDirect,
    /// Full elimination; returns every generator.
    Classical,
    /// Multi-modular over ℚ with ElimTH per prime.
    ModularElimth,
    /// Multi-modular over ℚ with Direct per prime.
    ModularDirect,
    /// Support from one prime, coefficients from random points over ℚ.
    SinglePrime,
}

impl Algorithm {
    fn engine(self) -> Engine {
        match self {
            Algorithm::Elimth | Algorithm::RatparElimth | Algorithm::ModularElimth | Algorithm::SinglePrime => {
                Engine::ElimTh
            }
            Algorithm::Direct | Algorithm::RatparDirect | Algorithm::ModularDirect => Engine::Direct,
            Algorithm::Classical => Engine::Classical,
        }
    }

    fn is_modular(self) -> bool {
        matches!(self, Algorithm::ModularElimth | Algorithm::ModularDirect | Algorithm::SinglePrime)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_possible_value().expect("no skipped variants");
        f.write_str(v.get_name())
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Implicit(#[from] ImplicitError),
    #[error(transparent)]
    Modular(#[from] ModularError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    /// Process exit code: distinct codes for a reached degree cap, an
    /// exhausted prime pool and an exceeded time budget; 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        fn implicit(e: &ImplicitError) -> i32 {
            match e {
                ImplicitError::Direct(DirectError::CapExceeded(_)) => EXIT_CAP_EXCEEDED,
                ImplicitError::Direct(DirectError::Budget(_)) | ImplicitError::Elim(ElimError::Budget(_)) => {
                    EXIT_BUDGET
                }
                _ => 1,
            }
        }
        match self {
            CliError::Implicit(e) => implicit(e),
            CliError::Modular(ModularError::Implicit(e)) => implicit(e),
            CliError::Modular(ModularError::PrimePoolExhausted) => EXIT_PRIME_POOL_EXHAUSTED,
            CliError::Modular(ModularError::Budget(_)) => EXIT_BUDGET,
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    fn is_budget(&self) -> bool {
        self.exit_code() == EXIT_BUDGET
    }
}

/// Options shared by `run` and `corpus`.
#[derive(Args, Clone, Debug)]
pub struct EngineArgs {
    #[arg(long, value_enum, default_value_t = Algorithm::Direct)]
    pub algorithm: Algorithm,
    /// 0 for ℚ, or a prime below 2³²; defaults to the problem's `char:` header.
    #[arg(long = "char")]
    pub characteristic: Option<u64>,
    /// Seed for randomized checks and sampling.
    #[arg(long, default_value_t = implicitize::modular::DEFAULT_SEED)]
    pub seed: u64,
    /// Cap on the weighted degree explored by Direct (required when there
    /// are at least as many parameters as coordinates).
    #[arg(long)]
    pub max_degree: Option<u64>,
    /// Prime pool for the modular algorithms: `start` or `start,count`
    /// (primes below `start`, descending).
    #[arg(long, value_parser = parse_primes)]
    pub primes: Option<(u64, Option<usize>)>,
}

fn parse_primes(s: &str) -> Result<(u64, Option<usize>), String> {
    let mut it = s.split(',');
    let start = it
        .next()
        .and_then(|x| x.trim().parse().ok())
        .ok_or_else(|| format!("bad prime start in `{s}`"))?;
    let count = match it.next() {
        Some(c) => Some(c.trim().parse().map_err(|_| format!("bad prime count in `{s}`"))?),
        None => None,
    };
    if it.next().is_some() {
        return Err(format!("expected `start[,count]`, got `{s}`"));
    }
    Ok((start, count))
}

#[derive(Args, Clone, Debug)]
pub struct RunArgs {
    /// Problem file.
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Check the result by exact substitution.
    #[arg(long)]
    pub verify: bool,
    /// Time budget in seconds (unlimited when absent).
    #[arg(long)]
    pub budget: Option<f64>,
    /// Also print machine-readable `key=value` lines.
    #[arg(long)]
    pub kv: bool,
}

/// Verification outcome of a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verification {
    Verified,
    Failed,
    Skipped,
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verification::Verified => "verified",
            Verification::Failed => "FAILED",
            Verification::Skipped => "skipped",
        })
    }
}

/// The outcome of one run.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub input: String,
    pub algorithm: Algorithm,
    pub characteristic: u64,
    pub elapsed: Duration,
    /// Rendered generators (one for every algorithm except `classical`).
    pub result: Vec<String>,
    /// Support size of each generator.
    pub len: Vec<usize>,
    /// Present whenever there is a result.
    pub verification: Option<Verification>,
    /// Primes combined into a modular result.
    pub primes: Option<usize>,
}

impl RunReport {
    fn joined_len(&self) -> String {
        let v: Vec<String> = self.len.iter().map(|l| l.to_string()).collect();
        v.join(",")
    }

    /// `key=value` lines.
    pub fn key_values(&self) -> String {
        let mut out = format!(
            "input={}\nalgorithm={}\nchar={}\nelapsed={:.6}\nlen={}\n",
            self.input,
            self.algorithm,
            self.characteristic,
            self.elapsed.as_secs_f64(),
            self.joined_len()
        );
        if let Some(v) = self.verification {
            out += &format!("verification={v}\n");
        }
        if let Some(p) = self.primes {
            out += &format!("primes={p}\n");
        }
        for r in &self.result {
            out += &format!("result={r}\n");
        }
        out
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "input:          {}", self.input)?;
        writeln!(f, "algorithm:      {}", self.algorithm)?;
        writeln!(f, "characteristic: {}", self.characteristic)?;
        writeln!(f, "time:           {:.3}s", self.elapsed.as_secs_f64())?;
        writeln!(f, "len:            {}", self.joined_len())?;
        if let Some(v) = self.verification {
            writeln!(f, "verification:   {v}")?;
        }
        if let Some(p) = self.primes {
            writeln!(f, "primes:         {p}")?;
        }
        for r in &self.result {
            writeln!(f, "result:         {r}")?;
        }
        Ok(())
    }
}

/// Generators and verification of a computation over one field.
struct Computed {
    result: Vec<String>,
    len: Vec<usize>,
    verification: Option<Verification>,
    primes: Option<usize>,
}

fn over_field<F: Field>(
    par: &Parametrization<F>,
    engine: Engine,
    opts: &DirectOptions,
    budget: &Budget,
    check: impl Fn(&Polynomial<F>) -> bool,
    do_verify: bool,
) -> Result<Computed, CliError> {
    let out = rat_par(par, engine, opts, budget)?;
    let verification = if out.generators.is_empty() {
        None
    } else if do_verify {
        let ok = out.generators.iter().all(&check);
        Some(if ok { Verification::Verified } else { Verification::Failed })
    } else {
        Some(Verification::Skipped)
    };
    Ok(Computed {
        result: out.generators.iter().map(|g| g.to_string()).collect(),
        len: out.generators.iter().map(|g| g.len()).collect(),
        verification,
        primes: None,
    })
}

fn prime_pool(args: &EngineArgs) -> PrimePool {
    let (start, count) = args.primes.unwrap_or((DEFAULT_PRIME_START, None));
    PrimePool::descending(start, count)
}

fn compute(sys: &ParamSystem, args: &EngineArgs, budget: &Budget, do_verify: bool) -> Result<(u64, Computed), CliError> {
    let characteristic = args.characteristic.unwrap_or(sys.characteristic());
    let opts = DirectOptions {
        max_degree: args.max_degree,
        ..DirectOptions::default()
    };
    let alg = args.algorithm;
    let engine = alg.engine();
    if alg.is_modular() {
        if characteristic != 0 {
            return Err(CliError::Usage(format!("{alg} computes over ℚ; use --char 0")));
        }
        let mut mopts = ModularOptions::new(engine);
        mopts.seed = args.seed;
        mopts.direct = opts;
        let g = if alg == Algorithm::SinglePrime {
            single_prime(sys, &mopts, prime_pool(args), budget)?
        } else {
            let out = mod_implicit(sys, &mopts, prime_pool(args), budget)?;
            let primes = Some(out.primes_used);
            let g = out.generator;
            return Ok((
                0,
                Computed {
                    result: vec![g.to_string()],
                    len: vec![g.len()],
                    verification: Some(Verification::Verified),
                    primes,
                },
            ));
        };
        return Ok((
            0,
            Computed {
                result: vec![g.to_string()],
                len: vec![g.len()],
                verification: Some(Verification::Verified),
                primes: Some(1),
            },
        ));
    }
    let computed = if characteristic == 0 {
        let par = sys.over_rationals();
        over_field(par, engine, &opts, budget, |g| verify(g, par), do_verify)?
    } else {
        let par = sys
            .over_prime(characteristic)
            .ok_or_else(|| CliError::Usage(format!("the problem is not defined modulo {characteristic}")))?;
        over_field(&par, engine, &opts, budget, |g| par.vanishes_on(g).unwrap_or(false), do_verify)?
    };
    Ok((characteristic, computed))
}

/// Try suitable primes of the pool in turn until a guess verifies.
fn single_prime(
    sys: &ParamSystem,
    opts: &ModularOptions,
    pool: PrimePool,
    budget: &Budget,
) -> Result<Polynomial<QQ>, CliError> {
    for p in pool {
        budget.check().map_err(ModularError::from)?;
        if !classify_prime(p, sys).is_suitable() {
            continue;
        }
        match single_prime_guess(sys, p, opts, budget) {
            Ok(g) => return Ok(g),
            Err(GuessFailure::Modular(e)) => return Err(e.into()),
            Err(_) => continue,
        }
    }
    Err(ModularError::PrimePoolExhausted.into())
}

/// Load, compute and report one problem.
pub fn run(args: &RunArgs) -> Result<RunReport, CliError> {
    let sys = load_problem_file(&args.input)?;
    let budget = match args.budget {
        Some(s) => Budget::with_timeout(Duration::from_secs_f64(s)),
        None => Budget::unlimited(),
    };
    let start = Instant::now();
    let (characteristic, c) = compute(&sys, &args.engine, &budget, args.verify)?;
    Ok(RunReport {
        input: args.input.display().to_string(),
        algorithm: args.engine.algorithm,
        characteristic,
        elapsed: start.elapsed(),
        result: c.result,
        len: c.len,
        verification: c.verification,
        primes: c.primes,
    })
}

#[derive(Args, Clone, Debug)]
pub struct CorpusArgs {
    /// Directory holding `<name>.prob` files.
    #[arg(long)]
    pub dir: PathBuf,
    /// Expectations file: lines `name<TAB>len`.
    #[arg(long)]
    pub expect: PathBuf,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Per-example time budget in seconds.
    #[arg(long, default_value_t = 60.0)]
    pub budget: f64,
    /// Number of examples run in parallel.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Also print machine-readable `key=value` lines.
    #[arg(long)]
    pub kv: bool,
}

/// Read an expectations file; `#` starts a comment.
pub fn load_expectations(path: &Path) -> Result<Vec<(String, usize)>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(name), Some(len), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(CliError::Usage(format!("{}:{}: expected `name<TAB>len`", path.display(), k + 1)));
        };
        let len = len
            .parse()
            .map_err(|_| CliError::Usage(format!("{}:{}: bad length `{len}`", path.display(), k + 1)))?;
        out.push((name.to_string(), len));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Pass,
    Fail,
    /// The time budget ran out.
    Skip,
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowStatus::Pass => "PASS",
            RowStatus::Fail => "FAIL",
            RowStatus::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CorpusRow {
    pub name: String,
    pub expected: usize,
    pub len: Option<usize>,
    pub elapsed: Duration,
    pub verification: Option<Verification>,
    pub primes: Option<usize>,
    pub status: RowStatus,
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct CorpusReport {
    pub algorithm: Algorithm,
    pub characteristic: Option<u64>,
    pub rows: Vec<CorpusRow>,
}

impl CorpusReport {
    /// No executed row failed.
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status != RowStatus::Fail)
    }

    pub fn key_values(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            out += &format!(
                "name={} expected={} len={} elapsed={:.6} verification={} status={}\n",
                r.name,
                r.expected,
                r.len.map_or("-".into(), |l| l.to_string()),
                r.elapsed.as_secs_f64(),
                r.verification.map_or("-".into(), |v| v.to_string()),
                r.status
            );
        }
        out
    }
}

impl fmt::Display for CorpusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ch = self.characteristic.map_or("file".into(), |c| c.to_string());
        writeln!(f, "algorithm {} / char {}", self.algorithm, ch)?;
        writeln!(
            f,
            "{:<12} {:>8} {:>8} {:>10} {:>8} {:<10} {:<6} note",
            "example", "expected", "len", "time[s]", "primes", "verify", "status"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<12} {:>8} {:>8} {:>10.3} {:>8} {:<10} {:<6} {}",
                r.name,
                r.expected,
                r.len.map_or("-".into(), |l| l.to_string()),
                r.elapsed.as_secs_f64(),
                r.primes.map_or("-".into(), |p| p.to_string()),
                r.verification.map_or("-".into(), |v| v.to_string()),
                r.status,
                r.note
            )?;
        }
        Ok(())
    }
}

fn corpus_row(dir: &Path, name: &str, expected: usize, args: &CorpusArgs) -> CorpusRow {
    let start = Instant::now();
    let mut row = CorpusRow {
        name: name.to_string(),
        expected,
        len: None,
        elapsed: Duration::ZERO,
        verification: None,
        primes: None,
        status: RowStatus::Fail,
        note: String::new(),
    };
    let sys = match load_problem_file(dir.join(format!("{name}.prob"))) {
        Ok(s) => s,
        Err(e) => {
            row.note = e.to_string();
            return row;
        }
    };
    let budget = Budget::with_timeout(Duration::from_secs_f64(args.budget));
    let result = compute(&sys, &args.engine, &budget, true);
    row.elapsed = start.elapsed();
    match result {
        Err(e) if e.is_budget() => {
            row.status = RowStatus::Skip;
            row.note = "time budget exceeded".into();
        }
        Err(e) => row.note = e.to_string(),
        Ok((_, c)) => {
            row.verification = c.verification;
            row.primes = c.primes;
            let Some(rendered) = c.result.first() else {
                row.note = "no relation found".into();
                return row;
            };
            let len = c.len[0];
            row.len = Some(len);
            let reparsed = parse_polynomial(rendered, sys.over_rationals().target_ring()).map(|g| g.len());
            let round_trip = reparsed.as_ref().ok() == Some(&len);
            let verified = c.verification == Some(Verification::Verified);
            row.status = if len == expected && round_trip && verified && c.result.len() == 1 {
                RowStatus::Pass
            } else {
                RowStatus::Fail
            };
            if !round_trip {
                row.note = "rendered polynomial does not re-parse to the same support".into();
            } else if c.result.len() != 1 {
                row.note = format!("{} generators", c.result.len());
            }
        }
    }
    row
}

/// Run every example of an expectations file.
pub fn corpus(args: &CorpusArgs) -> Result<CorpusReport, CliError> {
    let expectations = load_expectations(&args.expect)?;
    let next = AtomicUsize::new(0);
    let rows: Mutex<Vec<Option<CorpusRow>>> = Mutex::new(vec![None; expectations.len()]);
    let workers = args.workers.max(1).min(expectations.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some((name, expected)) = expectations.get(i) else {
                    break;
                };
                let row = corpus_row(&args.dir, name, *expected, args);
                rows.lock().expect("no worker panicked")[i] = Some(row);
            });
        }
    });
    let rows = rows
        .into_inner()
        .expect("no worker panicked")
        .into_iter()
        .map(|r| r.expect("every row was run"))
        .collect();
    Ok(CorpusReport {
        algorithm: args.engine.algorithm,
        characteristic: args.engine.characteristic,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_flag() {
        assert_eq!(parse_primes("32003"), Ok((32003, None)));
        assert_eq!(parse_primes("32003,5"), Ok((32003, Some(5))));
        assert!(parse_primes("x").is_err());
        assert!(parse_primes("1,2,3").is_err());
    }

    #[test]
    fn algorithm_names() {
        assert_eq!(Algorithm::RatparElimth.to_string(), "ratpar-elimth");
        assert_eq!(Algorithm::SinglePrime.to_string(), "single-prime");
        assert_eq!(Algorithm::from_str("modular-direct", false), Ok(Algorithm::ModularDirect));
    }

    #[test]
    fn exit_codes() {
        let cap = CliError::Implicit(ImplicitError::Direct(DirectError::CapExceeded(4)));
        assert_eq!(cap.exit_code(), EXIT_CAP_EXCEEDED);
        assert_eq!(CliError::Modular(ModularError::PrimePoolExhausted).exit_code(), EXIT_PRIME_POOL_EXHAUSTED);
        let budget = CliError::Implicit(ImplicitError::Elim(ElimError::Budget(implicitize::budget::BudgetExceeded)));
        assert_eq!(budget.exit_code(), EXIT_BUDGET);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
    }
}
