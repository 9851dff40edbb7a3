//! Command-line front end for reproducible experiments and table generation.
//!
//! Every run echoes its full configuration into the output header and is
//! byte-identical for identical configuration and seed. Randomized commands
//! require an explicit seed. Exit codes: 2 invalid parameters, 3 malformed
//! code file, 4 enumeration cap exceeded, 1 anything else.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use tracecode::codes::DEFAULT_ENUMERATION_CAP;
use tracecode::lambda::{
    bound_from_defect, bound_from_divisor_degree, format_rational, lambda_average_form, lambda_ng_form,
    lambda_weight_form, rational_to_decimal, LambdaValue,
};
use tracecode::probability::{
    exact_pc, first_max_trace_multiplier, format_significant, monte_carlo_pc,
    random_alternant_experiment, s1, s2, s_limit, sample_multiplier, sample_support,
};
use tracecode::{Error, FieldTower, LinearCode, Multiplier, ProbabilityResult, RngSpec, Support};

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exact toolkit for trace codes of linear codes over extension fields.
#[derive(Parser)]
#[command(name = "tracecode", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate S1(n,q), S2(n,q) and S1(n,q)-S(q) as CSV
    SqTable {
        /// Field size q >= 2
        #[arg(long)]
        q: u64,
        /// Comma-separated list of n values
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u32>,
        /// Output file (stdout when absent)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute lambda for a code file by one or more formulas
    Lambda {
        /// Code file (extension-field level)
        #[arg(long)]
        code: PathBuf,
        /// "all" or a comma list of weight,average,ng
        #[arg(long, default_value = "all")]
        methods: String,
        /// Enumeration cap
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// Measure the proportion of multipliers giving maximum trace dimension
    Pc {
        /// Code file (extension-field level)
        #[arg(long)]
        code: PathBuf,
        /// exact or monte-carlo
        #[arg(long, value_enum)]
        mode: PcMode,
        /// Trial count (monte-carlo only)
        #[arg(long)]
        trials: Option<u64>,
        /// Seed (monte-carlo only; required, no wall-clock default)
        #[arg(long)]
        seed: Option<u64>,
        /// Enumeration cap (exact only)
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// Evaluate the closed-form probability bounds
    Bound {
        /// Subfield size q >= 2
        #[arg(long)]
        q: u64,
        /// Extension degree m
        #[arg(long)]
        m: u32,
        /// Code dimension k (omit when --deg-g is used)
        #[arg(long, conflicts_with = "deg_g")]
        k: Option<u64>,
        /// Singleton defect h (omit when --deg-g is used)
        #[arg(long, conflicts_with = "deg_g")]
        h: Option<u64>,
        /// Code length n
        #[arg(long)]
        n: u64,
        /// Divisor degree for the evaluation-code form of the bound
        #[arg(long)]
        deg_g: Option<u64>,
    },
    /// Random alternant dimension experiment (CSV)
    Alternant {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        trials: Option<u64>,
        /// Seed (required, no wall-clock default)
        #[arg(long)]
        seed: Option<u64>,
        /// key=value config file supplying any missing flag
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output file (stdout when absent)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search random codes for counterexamples to the converse of the
    /// support-weight criterion: d_i >= i*m for all i, yet P_C = 0
    DijSearch {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Number of random codes to scan
        #[arg(long)]
        codes: Option<u64>,
        /// Seed (required, no wall-clock default)
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        cap: Option<u64>,
        /// key=value config file supplying any missing flag
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Construct a code and write its code file
    CodeBuild {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        /// Length (rs/grs/repetition; defaults to the support length)
        #[arg(long)]
        n: Option<usize>,
        /// Dimension (rs/grs/counterexample)
        #[arg(long)]
        k: Option<usize>,
        /// Whitespace-separated element encodings for the support
        #[arg(long, conflicts_with = "support_seed")]
        support_file: Option<PathBuf>,
        /// Sample the support uniformly with this seed
        #[arg(long)]
        support_seed: Option<u64>,
        /// Whitespace-separated element encodings for the multiplier
        #[arg(long, conflicts_with = "multiplier_seed")]
        multiplier_file: Option<PathBuf>,
        /// Sample the multiplier uniformly with this seed
        #[arg(long)]
        multiplier_seed: Option<u64>,
        /// First summand code file (sum family)
        #[arg(long)]
        a: Option<PathBuf>,
        /// Second summand code file (sum family)
        #[arg(long)]
        b: Option<PathBuf>,
        /// Output file (stdout when absent)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PcMode {
    Exact,
    MonteCarlo,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Rs,
    Grs,
    Repetition,
    Sum,
    Counterexample,
}

struct CliError {
    message: String,
    code: u8,
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::MalformedCodeFile(_) => 3,
            Error::CapExceeded { .. } => 4,
            _ => 2,
        };
        CliError {
            message: err.to_string(),
            code,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError {
            message: err.to_string(),
            code: 1,
        }
    }
}

fn invalid(message: impl Into<String>) -> CliError {
    CliError {
        message: message.into(),
        code: 2,
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::SqTable { q, n, out } => cmd_sq_table(q, &n, out.as_deref()),
        Command::Lambda { code, methods, cap } => cmd_lambda(&code, &methods, cap),
        Command::Pc {
            code,
            mode,
            trials,
            seed,
            cap,
        } => cmd_pc(&code, mode, trials, seed, cap),
        Command::Bound { q, m, k, h, n, deg_g } => cmd_bound(q, m, k, h, n, deg_g),
        Command::Alternant {
            p,
            s,
            m,
            k,
            n,
            trials,
            seed,
            config,
            out,
        } => {
            let cfg = ConfigMap::load(config.as_deref())?;
            cmd_alternant(
                resolve(p, &cfg, "p")?,
                resolve(s, &cfg, "s")?,
                resolve(m, &cfg, "m")?,
                resolve(k, &cfg, "k")?,
                resolve(n, &cfg, "n")?,
                resolve(trials, &cfg, "trials")?,
                resolve(seed, &cfg, "seed")?,
                out.as_deref(),
            )
        }
        Command::DijSearch {
            p,
            s,
            m,
            n,
            k,
            codes,
            seed,
            cap,
            config,
        } => {
            let cfg = ConfigMap::load(config.as_deref())?;
            cmd_dij_search(
                resolve(p, &cfg, "p")?,
                resolve(s, &cfg, "s")?,
                resolve(m, &cfg, "m")?,
                resolve(n, &cfg, "n")?,
                resolve(k, &cfg, "k")?,
                resolve(codes, &cfg, "codes")?,
                resolve(seed, &cfg, "seed")?,
                resolve_or(cap, &cfg, "cap", DEFAULT_ENUMERATION_CAP)?,
            )
        }
        Command::CodeBuild {
            family,
            p,
            s,
            m,
            n,
            k,
            support_file,
            support_seed,
            multiplier_file,
            multiplier_seed,
            a,
            b,
            out,
        } => cmd_code_build(CodeBuildArgs {
            family,
            p,
            s,
            m,
            n,
            k,
            support_file,
            support_seed,
            multiplier_file,
            multiplier_seed,
            a,
            b,
            out,
        }),
    }
}

/// Plain key=value config file; '#' starts a comment.
struct ConfigMap(BTreeMap<String, String>);

impl ConfigMap {
    fn load(path: Option<&Path>) -> CliResult<Self> {
        let mut map = BTreeMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let Some((key, value)) = line.split_once('=') else {
                    return Err(invalid(format!(
                        "config line {} is not key=value: {line:?}",
                        lineno + 1
                    )));
                };
                map.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(ConfigMap(map))
    }
}

/// Flag value, else config-file value, else an invalid-parameter error.
fn resolve<T: FromStr + Copy>(flag: Option<T>, cfg: &ConfigMap, key: &str) -> CliResult<T> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match cfg.0.get(key) {
        Some(raw) => raw
            .parse()
            .map_err(|_| invalid(format!("bad config value for {key}: {raw:?}"))),
        None => Err(invalid(format!("missing parameter {key}"))),
    }
}

fn resolve_or<T: FromStr + Copy>(
    flag: Option<T>,
    cfg: &ConfigMap,
    key: &str,
    default: T,
) -> CliResult<T> {
    match resolve(flag, cfg, key) {
        Ok(v) => Ok(v),
        Err(e) if e.message.starts_with("missing parameter") => Ok(default),
        Err(e) => Err(e),
    }
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn header(config: &str) -> String {
    format!("# tracecode v{VERSION}\n# config: {config}\n")
}

fn cmd_sq_table(q: u64, n_list: &[u32], out: Option<&Path>) -> CliResult<()> {
    if q < 2 {
        return Err(invalid("q must be at least 2"));
    }
    if n_list.contains(&0) {
        return Err(invalid("n values must be positive"));
    }
    let n_str = n_list
        .iter()
        .map(|n| n.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let mut text = header(&format!("cmd=sq-table q={q} n={n_str}"));
    text.push_str("n,s1,s2,s1_minus_s\n");
    let limit = s_limit(q);
    for &n in n_list {
        let v1 = s1(n, q);
        let v2 = s2(n, q);
        writeln!(
            text,
            "{n},{},{},{}",
            format_significant(v1),
            format_significant(v2),
            format_significant(v1 - limit)
        )
        .expect("writing to String cannot fail");
    }
    emit(out, &text)
}

fn parse_methods(spec: &str) -> CliResult<Vec<&'static str>> {
    if spec == "all" {
        return Ok(vec!["weight", "average", "ng"]);
    }
    let mut out = Vec::new();
    for name in spec.split(',') {
        match name.trim() {
            "weight" => out.push("weight"),
            "average" => out.push("average"),
            "ng" => out.push("ng"),
            other => {
                return Err(invalid(format!(
                    "unknown method {other:?} (expected weight, average, ng or all)"
                )))
            }
        }
    }
    if out.is_empty() {
        return Err(invalid("no methods selected"));
    }
    Ok(out)
}

fn cmd_lambda(code_path: &Path, methods: &str, cap: u64) -> CliResult<()> {
    let selected = parse_methods(methods)?;
    let code = LinearCode::from_text(&std::fs::read_to_string(code_path)?)?;
    let mut text = header(&format!(
        "cmd=lambda code={} methods={} cap={}",
        code_path.display(),
        methods,
        cap
    ));
    for method in selected {
        let value: LambdaValue = match method {
            "weight" => lambda_weight_form(&code, cap)?,
            "average" => lambda_average_form(&code, cap)?,
            "ng" => lambda_ng_form(&code, cap)?,
            _ => unreachable!(),
        };
        writeln!(
            text,
            "{}: {} ({})",
            value.method,
            format_rational(&value.value),
            rational_to_decimal(&value.value, 15)
        )
        .expect("writing to String cannot fail");
    }
    emit(None, &text)
}

fn cmd_pc(
    code_path: &Path,
    mode: PcMode,
    trials: Option<u64>,
    seed: Option<u64>,
    cap: u64,
) -> CliResult<()> {
    let code = LinearCode::from_text(&std::fs::read_to_string(code_path)?)?;
    match mode {
        PcMode::Exact => {
            let text = header(&format!(
                "cmd=pc code={} mode=exact cap={}",
                code_path.display(),
                cap
            ));
            let result = exact_pc(&code, cap)?;
            let ProbabilityResult::Exact {
                successes,
                total,
                value,
            } = &result
            else {
                unreachable!()
            };
            emit(
                None,
                &format!(
                    "{text}{successes}/{total} ({})\n",
                    rational_to_decimal(value, 15)
                ),
            )
        }
        PcMode::MonteCarlo => {
            let trials = trials.ok_or_else(|| invalid("monte-carlo mode requires --trials"))?;
            let seed = seed.ok_or_else(|| invalid("monte-carlo mode requires --seed"))?;
            let text = header(&format!(
                "cmd=pc code={} mode=monte-carlo trials={} seed={}",
                code_path.display(),
                trials,
                seed
            ));
            let result = monte_carlo_pc(&code, trials, &RngSpec::new(seed))?;
            let ProbabilityResult::MonteCarlo {
                successes,
                trials,
                estimate,
                ..
            } = &result
            else {
                unreachable!()
            };
            emit(
                None,
                &format!(
                    "{text}{successes}/{trials} ({})\n",
                    format_significant(*estimate)
                ),
            )
        }
    }
}

fn cmd_bound(
    q: u64,
    m: u32,
    k: Option<u64>,
    h: Option<u64>,
    n: u64,
    deg_g: Option<u64>,
) -> CliResult<()> {
    if q < 2 || m == 0 || n == 0 {
        return Err(invalid("need q >= 2, m >= 1, n >= 1"));
    }
    let (config, value) = match (deg_g, k, h) {
        (Some(deg_g), None, None) => (
            format!("cmd=bound q={q} m={m} n={n} deg-g={deg_g}"),
            bound_from_divisor_degree(q, m, n, deg_g)?,
        ),
        (None, Some(k), Some(h)) => {
            if k == 0 {
                return Err(invalid("k must be positive"));
            }
            (
                format!("cmd=bound q={q} m={m} k={k} h={h} n={n}"),
                bound_from_defect(q, m, k, h, n),
            )
        }
        _ => {
            return Err(invalid(
                "provide either --k and --h, or --deg-g for the evaluation-code form",
            ))
        }
    };
    emit(
        None,
        &format!(
            "{}{} ({})\n",
            header(&config),
            format_rational(&value),
            rational_to_decimal(&value, 15)
        ),
    )
}

#[allow(clippy::too_many_arguments)]
fn cmd_alternant(
    p: u64,
    s: u32,
    m: u32,
    k: usize,
    n: usize,
    trials: u64,
    seed: u64,
    out: Option<&Path>,
) -> CliResult<()> {
    let tower = FieldTower::new(p, s, m)?;
    let report = random_alternant_experiment(tower, k, n, trials, &RngSpec::new(seed))?;
    let params = format!("p={p} s={s} m={m} k={k} n={n}");
    let mut text = header(&format!(
        "cmd=alternant {params} trials={trials} seed={seed}"
    ));
    text.push_str("experiment,parameters,trials,successes,estimate,bound,seed\n");
    writeln!(
        text,
        "alternant,{params},{},{},{},{},{}",
        report.trials,
        report.successes,
        format_significant(report.frequency()),
        format_rational(&report.bound),
        report.seed
    )
    .expect("writing to String cannot fail");
    emit(out, &text)
}

#[allow(clippy::too_many_arguments)]
fn cmd_dij_search(
    p: u64,
    s: u32,
    m: u32,
    n: usize,
    k: usize,
    codes: u64,
    seed: u64,
    cap: u64,
) -> CliResult<()> {
    let tower = FieldTower::new(p, s, m)?;
    if k == 0 || k > n {
        return Err(invalid("need 1 <= k <= n"));
    }
    let spec = RngSpec::new(seed);
    let mut candidates = 0u64;
    let mut counterexamples: Vec<String> = Vec::new();
    for index in 0..codes {
        let mut rng = spec.stream(index)?;
        let code = LinearCode::random(tower.clone(), n, k, &mut rng)?;
        let mut meets_support_weights = true;
        for i in 1..=k {
            if code.d_i(i, cap)? < i * m as usize {
                meets_support_weights = false;
                break;
            }
        }
        if !meets_support_weights {
            continue;
        }
        candidates += 1;
        if first_max_trace_multiplier(&code, cap)?.is_none() {
            counterexamples.push(code.to_text());
        }
    }
    let mut text = header(&format!(
        "cmd=dij-search p={p} s={s} m={m} n={n} k={k} codes={codes} seed={seed} cap={cap}"
    ));
    writeln!(
        text,
        "scanned={codes} candidates={candidates} counterexamples={}",
        counterexamples.len()
    )
    .expect("writing to String cannot fail");
    for ce in &counterexamples {
        text.push_str("counterexample:\n");
        text.push_str(ce);
    }
    emit(None, &text)
}

struct CodeBuildArgs {
    family: Family,
    p: Option<u64>,
    s: Option<u32>,
    m: Option<u32>,
    n: Option<usize>,
    k: Option<usize>,
    support_file: Option<PathBuf>,
    support_seed: Option<u64>,
    multiplier_file: Option<PathBuf>,
    multiplier_seed: Option<u64>,
    a: Option<PathBuf>,
    b: Option<PathBuf>,
    out: Option<PathBuf>,
}

fn read_codes_file(path: &Path) -> CliResult<Vec<u64>> {
    let text = std::fs::read_to_string(path)?;
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|_| invalid(format!("bad element encoding {tok:?} in {}", path.display())))
        })
        .collect()
}

fn cmd_code_build(args: CodeBuildArgs) -> CliResult<()> {
    let need_tower = || -> CliResult<_> {
        let p = args.p.ok_or_else(|| invalid("missing parameter p"))?;
        let s = args.s.ok_or_else(|| invalid("missing parameter s"))?;
        let m = args.m.ok_or_else(|| invalid("missing parameter m"))?;
        Ok(FieldTower::new(p, s, m)?)
    };
    let support_for = |tower: &FieldTower, n: usize| -> CliResult<Support> {
        if let Some(path) = &args.support_file {
            let codes = read_codes_file(path)?;
            return Ok(Support::from_codes(tower, codes)?);
        }
        if let Some(seed) = args.support_seed {
            let mut rng = RngSpec::new(seed).stream(0).map_err(CliError::from)?;
            return Ok(sample_support(tower, n, &mut rng)?);
        }
        Ok(Support::canonical(tower, n)?)
    };
    let code = match args.family {
        Family::Rs | Family::Grs => {
            let tower = need_tower()?;
            let k = args.k.ok_or_else(|| invalid("missing parameter k"))?;
            let support = match &args.support_file {
                Some(path) => Support::from_codes(&tower, read_codes_file(path)?)?,
                None => {
                    let n = args.n.ok_or_else(|| invalid("missing parameter n"))?;
                    support_for(&tower, n)?
                }
            };
            let n = support.len();
            if args.family == Family::Rs {
                LinearCode::reed_solomon(tower, k, &support)?
            } else {
                let multiplier = if let Some(path) = &args.multiplier_file {
                    Multiplier::from_codes(&tower, read_codes_file(path)?)?
                } else if let Some(seed) = args.multiplier_seed {
                    let mut rng = RngSpec::new(seed).stream(0).map_err(CliError::from)?;
                    sample_multiplier(&tower, n, &mut rng)?
                } else {
                    Multiplier::all_ones(n)
                };
                LinearCode::generalized_reed_solomon(tower, k, &support, &multiplier)?
            }
        }
        Family::Repetition => {
            let tower = need_tower()?;
            let n = args.n.ok_or_else(|| invalid("missing parameter n"))?;
            LinearCode::repetition(tower, n)?
        }
        Family::Sum => {
            let a_path = args.a.as_ref().ok_or_else(|| invalid("sum needs --a"))?;
            let b_path = args.b.as_ref().ok_or_else(|| invalid("sum needs --b"))?;
            let a = LinearCode::from_text(&std::fs::read_to_string(a_path)?)?;
            let b = LinearCode::from_text(&std::fs::read_to_string(b_path)?)?;
            a.sum_code(&b)?
        }
        Family::Counterexample => {
            let tower = need_tower()?;
            let k = args.k.ok_or_else(|| invalid("missing parameter k"))?;
            let n = tower.m() as usize * k;
            let support = support_for(&tower, n)?;
            LinearCode::counterexample(tower, k, &support)?
        }
    };
    emit(args.out.as_deref(), &code.to_text())
}
