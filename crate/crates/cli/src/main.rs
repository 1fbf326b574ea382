use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qwz::exact::{parse_rational, Rational};
use qwz::identity::{identity_by_id, IDENTITY_IDS};
use qwz::report::{emit, run, CheckKind, Format, RunConfig, Transform};
use qwz::wz::PAIR_IDS;

const EXIT_ERROR: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "qwz",
    version,
    about = "Exact checks of q-WZ pairs, q-series identities and q-congruences"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,

    /// Write the report to a file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Decimal digits for numeric checks.
    #[arg(long, env = "QWZ_PRECISION", default_value_t = 30, global = true)]
    precision: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// WZ pair relations.
    #[command(subcommand)]
    Wz(WzCommand),
    /// Series identities.
    #[command(subcommand)]
    Identity(IdentityCommand),
    /// Congruences of truncated sums.
    #[command(subcommand)]
    Congruence(CongruenceCommand),
    /// Run suites with their default parameters.
    Report(ReportArgs),
}

#[derive(Args, Debug)]
struct GridArgs {
    /// Pair ids (default: all registered pairs).
    #[arg(long, value_delimiter = ',')]
    pair: Vec<String>,
    #[arg(long, default_value_t = 12)]
    nmax: i64,
    #[arg(long, default_value_t = 12)]
    kmax: i64,
    /// Exponents e of a = q^e for the parameterized pairs.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "0"
    )]
    a: Vec<i64>,
    /// Multiply G by q (negative control).
    #[arg(long)]
    corrupt: bool,
}

#[derive(Subcommand, Debug)]
enum WzCommand {
    /// Check the relation on a grid.
    Check(GridArgs),
    /// Check transformed pairs on a grid.
    Transform {
        #[command(flatten)]
        grid: GridArgs,
        /// Any of p1, p3, p2p3.
        #[arg(long, value_delimiter = ',', default_value = "p1,p3,p2p3")]
        transform: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
enum IdentityCommand {
    /// Partial sums against the closed form.
    Verify {
        /// Identity ids (default: all q-series).
        #[arg(long, value_delimiter = ',')]
        id: Vec<String>,
        /// Exact q samples as num/den.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            default_value = "1/2"
        )]
        q: Vec<String>,
        #[arg(long, default_value_t = 40)]
        terms: i64,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            default_value = "0"
        )]
        a: Vec<i64>,
        /// Multiply the n = 1 summand by q (negative control).
        #[arg(long)]
        perturb: bool,
    },
    /// Exact q -> 1 limits of the summands.
    Limit {
        #[arg(long, value_delimiter = ',')]
        id: Vec<String>,
        #[arg(long, default_value_t = 15)]
        nmax: i64,
        #[arg(long)]
        perturb: bool,
    },
    /// Classical series against their 1/pi constants.
    Classical {
        #[arg(long, value_delimiter = ',')]
        id: Vec<String>,
        #[arg(long)]
        terms: Option<i64>,
        #[arg(long)]
        perturb: bool,
    },
}

#[derive(Subcommand, Debug)]
enum CongruenceCommand {
    /// The q-congruence theorems.
    Qtheorem {
        #[arg(long, value_parser = ["1", "2"])]
        which: String,
        #[arg(long, value_delimiter = ',')]
        m: Vec<i64>,
        /// Also test the modulus [m] Phi_m^2 for the second theorem (not asserted).
        #[arg(long)]
        stronger: bool,
    },
    /// Supercongruences of the classical sums.
    Super {
        #[arg(long, value_parser = ["1", "2"])]
        which: String,
        #[arg(long, value_delimiter = ',')]
        p: Vec<u64>,
    },
    /// Terminating evaluations at a = q^m and a = q^-m.
    Asub {
        #[arg(long, value_parser = ["level1-q-a", "28n3-q-a"])]
        id: String,
        #[arg(long, value_delimiter = ',')]
        m: Vec<i64>,
    },
    /// Partial sums modulo [m].
    Cyclo {
        #[arg(long, value_delimiter = ',')]
        m: Vec<i64>,
        #[arg(long)]
        upper: Option<i64>,
    },
}

#[derive(Args, Debug)]
struct ReportArgs {
    /// Run every suite.
    #[arg(long, conflicts_with = "suite")]
    all: bool,
    /// Any of wz, identity, congruence.
    #[arg(long, value_delimiter = ',')]
    suite: Vec<String>,
    /// Also test the stronger modulus for the second theorem (not asserted).
    #[arg(long)]
    stronger: bool,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("qwz: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn ids_or(given: Vec<String>, keep: impl Fn(&str) -> bool) -> Vec<String> {
    if given.is_empty() {
        IDENTITY_IDS
            .iter()
            .filter(|id| keep(id))
            .map(|s| s.to_string())
            .collect()
    } else {
        given
    }
}

fn is_classical(id: &str) -> bool {
    identity_by_id(id).is_ok_and(|s| s.is_classical())
}

fn grid_config(c: &mut RunConfig, g: GridArgs) {
    c.pairs = if g.pair.is_empty() {
        PAIR_IDS.iter().map(|s| s.to_string()).collect()
    } else {
        g.pair
    };
    c.n_max = g.nmax;
    c.k_max = g.kmax;
    c.a_exps = g.a;
    c.corrupt = g.corrupt;
}

fn config(cli: Cli) -> Result<RunConfig, String> {
    let mut c = RunConfig::empty();
    c.precision = cli.precision;
    c.output = cli.output;
    c.format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    match cli.command {
        Command::Wz(WzCommand::Check(g)) => {
            grid_config(&mut c, g);
            c.checks = vec![CheckKind::WzGrid];
            c.transforms = vec![Transform::None];
        }
        Command::Wz(WzCommand::Transform { grid, transform }) => {
            grid_config(&mut c, grid);
            c.checks = vec![CheckKind::WzGrid];
            c.transforms = transform
                .iter()
                .map(|t| Transform::parse(t))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
        }
        Command::Identity(IdentityCommand::Verify {
            id,
            q,
            terms,
            a,
            perturb,
        }) => {
            c.checks = vec![CheckKind::IdentityNumeric, CheckKind::IdentityClassical];
            c.identities = ids_or(id, |s| !is_classical(s));
            c.q_samples = q
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<Rational>, _>>()
                .map_err(|e| e.to_string())?;
            c.n_terms = terms;
            c.classical_terms = Some(terms);
            c.a_exps = a;
            c.perturb = perturb;
        }
        Command::Identity(IdentityCommand::Limit { id, nmax, perturb }) => {
            c.checks = vec![CheckKind::IdentityLimit];
            c.identities = ids_or(id, |s| !is_classical(s));
            c.limit_n_max = nmax;
            c.perturb = perturb;
        }
        Command::Identity(IdentityCommand::Classical { id, terms, perturb }) => {
            c.checks = vec![CheckKind::IdentityClassical];
            c.identities = ids_or(id, is_classical);
            c.classical_terms = terms;
            c.perturb = perturb;
        }
        Command::Congruence(CongruenceCommand::Qtheorem { which, m, stronger }) => {
            if which == "1" {
                c.checks = vec![CheckKind::Theorem1];
                if !m.is_empty() {
                    c.theorem1_m = m;
                }
            } else {
                c.checks = vec![CheckKind::Theorem2];
                if !m.is_empty() {
                    c.theorem2_m = m;
                }
            }
            c.stronger = stronger;
        }
        Command::Congruence(CongruenceCommand::Super { which, p }) => {
            if which == "1" {
                c.checks = vec![CheckKind::Super1];
                if !p.is_empty() {
                    c.super1_p = p;
                }
            } else {
                c.checks = vec![CheckKind::Super2];
                if !p.is_empty() {
                    c.super2_p = p;
                }
            }
        }
        Command::Congruence(CongruenceCommand::Asub { id, m }) => {
            c.checks = vec![CheckKind::Terminating];
            if id == "level1-q-a" {
                c.terminating_level2_m.clear();
                if !m.is_empty() {
                    c.terminating_level1_m = m;
                }
            } else {
                c.terminating_level1_m.clear();
                if !m.is_empty() {
                    c.terminating_level2_m = m;
                }
            }
        }
        Command::Congruence(CongruenceCommand::Cyclo { m, upper }) => {
            c.checks = vec![CheckKind::Cyclotomic];
            if !m.is_empty() {
                c.cyclotomic_m = m;
            }
            c.cyclotomic_upper = upper;
        }
        Command::Report(r) => {
            if !r.all && r.suite.is_empty() {
                return Err("report needs --all or --suite".into());
            }
            for s in &r.suite {
                if !["wz", "identity", "congruence"].contains(&s.as_str()) {
                    return Err(format!("unknown suite {s}"));
                }
            }
            c.checks = CheckKind::ALL
                .into_iter()
                .filter(|k| r.all || r.suite.iter().any(|s| s == k.suite()))
                .collect();
            c.stronger = r.stronger;
            let defaults = RunConfig::default();
            c.identities = defaults.identities;
            c.a_exps = defaults.a_exps;
        }
    }
    Ok(c)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let config = match config(cli) {
        Ok(c) => c,
        Err(msg) => return usage(msg),
    };
    let (format, output) = (config.format, config.output.clone());
    let report = match run(config) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let text = emit(&report, format);
    match output {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text) {
                eprintln!("qwz: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_ERROR);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
