//! Command-line front end: every library operation behind a subcommand,
//! with machine-readable output for table reproduction.
//!
//! Exit codes: 0 success, 1 domain error (error name on stderr), 2 usage
//! error (clap's default).

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use genus3::arith::odd_prime_power;
use genus3::classify::{self, AchievabilityVerdict};
use genus3::curves::{self, CurveCount, QUARTIC_CAP_DEFAULT};
use genus3::error::Error;
use genus3::finite_field::{Field, FieldSpec};
use genus3::poly_fp::hasse_polynomial;
use genus3::search::{self, FindMethod, SWEEP_CAP_DEFAULT};

#[derive(Parser)]
#[command(name = "genus3", version, about = "Genus 3 quartics with many points over odd finite fields")]
struct Cli {
    /// Worker threads (default: THREADS env var, else machine parallelism)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for the randomized polynomial splitting
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Budget override for O(q^2) family sweeps
    #[arg(long, global = true, default_value_t = SWEEP_CAP_DEFAULT)]
    sweep_cap: u64,
    /// Budget override for the O(q^2) quartic verification sweep
    #[arg(long, global = true, default_value_t = QUARTIC_CAP_DEFAULT)]
    quartic_cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical field construction for F_{p^n}
    Field {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Count points on one curve
    Count {
        #[command(subcommand)]
        kind: CountKind,
    },
    /// Best twisted Legendre curve (and quartic) over F_q
    Best {
        #[arg(long)]
        q: u64,
    },
    /// Which 4-divisible group orders the family attains over F_q
    Survey {
        #[arg(long, conflicts_with = "q_max")]
        q: Option<u64>,
        /// Survey every odd prime power up to this bound
        #[arg(long)]
        q_max: Option<u64>,
    },
    /// Find a lambda whose twisted family count equals the target
    Find {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        target: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Naive)]
        method: MethodArg,
    },
    /// Table reproduction
    Table {
        #[command(subcommand)]
        which: TableKind,
    },
    /// Characteristic-3 verification walk for q = 3^n
    Char3 {
        #[arg(long, default_value_t = 8)]
        n_max: u32,
    },
    /// Closed-form bounds for one field size
    Bounds {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 3)]
        genus: u64,
    },
    /// Is a target count reachable by a Legendre curve over F_q?
    Achievable {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        target: u64,
    },
    /// Print the coefficients of the Hasse polynomial H_p
    HassePoly {
        #[arg(long)]
        p: u64,
    },
}

#[derive(Subcommand)]
enum CountKind {
    Legendre(CountArgs),
    Twisted(CountArgs),
    Quartic(CountArgs),
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("lam").required(true).args(["lambda", "lambda_poly"]))]
struct CountArgs {
    #[arg(long)]
    q: u64,
    /// Lambda as a canonical element index
    #[arg(long)]
    lambda: Option<u64>,
    /// Lambda as comma-separated polynomial-basis coefficients
    #[arg(long, allow_hyphen_values = true)]
    lambda_poly: Option<String>,
    /// Twist parameter d as a canonical index (default: lambda + 3)
    #[arg(long)]
    twist: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Naive,
    Hasse,
}

#[derive(Subcommand)]
enum TableKind {
    /// Lower bounds for N_q(3) from the family
    Nq3 {
        /// Comma-separated odd prime powers
        #[arg(long, value_delimiter = ',')]
        q_list: Vec<u64>,
    },
}

#[derive(Serialize)]
struct FindResult {
    q: u64,
    target: u64,
    method: String,
    found: bool,
    lambda: Option<u64>,
    count: Option<u64>,
}

#[derive(Serialize)]
struct BoundsOut {
    q: u64,
    m: u64,
    genus: u64,
    hws: u64,
    hws_g3: u64,
    nq1: u64,
    nq2: u64,
}

#[derive(Serialize)]
struct HassePolyOut {
    p: u64,
    coeffs: Vec<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli
        .threads
        .or_else(|| std::env::var("THREADS").ok().and_then(|v| v.parse().ok()))
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    if rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global().is_err() {
        // the global pool can only be initialized once; fine under tests
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn field_for(q: u64) -> Result<Field, Error> {
    let (p, n) = odd_prime_power(q).ok_or(Error::NotOddPrimePower(q))?;
    Field::for_params(p, n as usize)
}

fn parse_lambda(field: &Field, args: &CountArgs) -> Result<u64, Error> {
    if let Some(idx) = args.lambda {
        if idx >= field.q() {
            return Err(Error::BadIndex(idx));
        }
        return Ok(idx);
    }
    let poly = args.lambda_poly.as_deref().expect("clap group requires one form");
    let spec = field.spec();
    // index(a) = sum coeffs[i] p^i, so the index can be assembled directly
    let mut idx = 0u64;
    let mut pw = 1u64;
    for (i, part) in poly.split(',').enumerate() {
        let c: i64 = part.trim().parse().map_err(|_| Error::BadIndex(u64::MAX))?;
        if i >= spec.n() {
            if c.rem_euclid(spec.p() as i64) != 0 {
                return Err(Error::BadIndex(u64::MAX));
            }
            continue;
        }
        idx += c.rem_euclid(spec.p() as i64) as u64 * pw;
        pw *= spec.p();
    }
    Ok(idx)
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(value).expect("serializable")),
        Format::Csv | Format::Text => println!("{}", text()),
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    match &cli.command {
        Command::Field { p, n } => {
            let spec = FieldSpec::new(*p, *n)?;
            emit(cli.format, &spec, || {
                format!(
                    "q={} p={} n={} modulus={:?}",
                    spec.q(),
                    spec.p(),
                    spec.n(),
                    spec.modulus()
                )
            });
        }
        Command::Count { kind } => {
            let record = match kind {
                CountKind::Legendre(args) => {
                    let field = field_for(args.q)?;
                    let lambda = parse_lambda(&field, args)?;
                    let count = curves::legendre_count(&field, lambda)?;
                    curves::curve_record(&field, lambda, 1, count)
                }
                CountKind::Twisted(args) => {
                    let field = field_for(args.q)?;
                    let lambda = parse_lambda(&field, args)?;
                    let twist = match args.twist {
                        Some(d) => d,
                        None => field.add_idx(lambda, field.index_of_int(3)),
                    };
                    let count = curves::twisted_count(&field, lambda, twist)?;
                    curves::curve_record(&field, lambda, twist, count)
                }
                CountKind::Quartic(args) => {
                    let field = field_for(args.q)?;
                    let lambda = parse_lambda(&field, args)?;
                    let count = curves::quartic_count_capped(&field, lambda, cli.quartic_cap)?;
                    let twist = field.add_idx(lambda, field.index_of_int(3));
                    CurveCount {
                        q: field.q(),
                        lambda,
                        twist,
                        count,
                        trace: curves::frobenius_trace(field.q(), count),
                    }
                }
            };
            emit(cli.format, &record, || {
                format!(
                    "q={} lambda={} twist={} count={} trace={}",
                    record.q, record.lambda, record.twist, record.count, record.trace
                )
            });
        }
        Command::Best { q } => {
            let field = field_for(*q)?;
            let best = search::best_curve_capped(&field, cli.sweep_cap)?;
            emit(cli.format, &best, || {
                format!(
                    "q={} best_lambda={} elliptic_count={} quartic_count_predicted={} hws_gap={}",
                    best.q,
                    best.best_lambda,
                    best.elliptic_count,
                    best.quartic_count_predicted,
                    best.hws_gap
                )
            });
        }
        Command::Survey { q, q_max } => {
            let qs: Vec<u64> = match (q, q_max) {
                (Some(q), None) => vec![*q],
                (None, Some(max)) => genus3::arith::odd_prime_powers(*max),
                _ => vec![],
            };
            if qs.is_empty() {
                return Err(Error::NotOddPrimePower(0));
            }
            for q in qs {
                let field = field_for(q)?;
                let report = search::family_survey_capped(&field, cli.sweep_cap)?;
                emit(cli.format, &report, || report.csv_row());
            }
        }
        Command::Find { q, target, method } => {
            let field = field_for(*q)?;
            let m = match method {
                MethodArg::Naive => FindMethod::Naive,
                MethodArg::Hasse => FindMethod::Hasse,
            };
            let lambda = search::find_lambda(&field, *target, m, cli.seed)?;
            let count = match lambda {
                Some(l) => Some(curves::family_count(&field, l)?),
                None => None,
            };
            let result = FindResult {
                q: *q,
                target: *target,
                method: match method {
                    MethodArg::Naive => "naive".into(),
                    MethodArg::Hasse => "hasse".into(),
                },
                found: lambda.is_some(),
                lambda,
                count,
            };
            emit(cli.format, &result, || match result.lambda {
                Some(l) => format!("q={} target={} lambda={}", result.q, result.target, l),
                None => format!("q={} target={} not-attained", result.q, result.target),
            });
        }
        Command::Table { which } => match which {
            TableKind::Nq3 { q_list } => {
                let fields: Result<Vec<Field>, Error> =
                    q_list.iter().map(|&q| field_for(q)).collect();
                let rows = search::nq3_lower_table(&fields?, cli.sweep_cap)?;
                for row in rows {
                    emit(cli.format, &row, || {
                        format!(
                            "{},{},{},{},{}",
                            row.q,
                            row.family_best,
                            row.best_lambda,
                            row.known_value.map_or_else(|| "-".into(), |v| v.to_string()),
                            row.gap_to_hws
                        )
                    });
                }
            }
        },
        Command::Char3 { n_max } => {
            let rows = search::char3_verify(*n_max, cli.sweep_cap)?;
            for row in rows {
                emit(cli.format, &row, || {
                    format!(
                        "{},{},{},{},{},{},{}",
                        row.n,
                        row.q,
                        row.hws,
                        row.family_best,
                        row.gap,
                        row.guaranteed_gap,
                        row.proof_predicted
                    )
                });
            }
        }
        Command::Bounds { q, genus } => {
            let rec = classify::bounds_record(*q)?;
            let out = BoundsOut {
                q: *q,
                m: rec.m,
                genus: *genus,
                hws: classify::hws_bound(*q, *genus),
                hws_g3: rec.hws_g3,
                nq1: rec.nq1,
                nq2: rec.nq2,
            };
            emit(cli.format, &out, || {
                format!(
                    "q={} m={} hws(g={})={} nq1={} nq2={}",
                    out.q, out.m, out.genus, out.hws, out.nq1, out.nq2
                )
            });
        }
        Command::Achievable { q, target } => {
            let verdict: AchievabilityVerdict = classify::legendre_achievable(*q, *target)?;
            emit(cli.format, &verdict, || {
                format!(
                    "q={} target={} achievable={} reason={}",
                    verdict.q,
                    verdict.target_count,
                    verdict.achievable,
                    serde_json::to_value(verdict.reason)
                        .expect("serializable")
                        .as_str()
                        .unwrap_or("?")
                )
            });
        }
        Command::HassePoly { p } => {
            let h = hasse_polynomial(*p)?;
            let out = HassePolyOut { p: *p, coeffs: h.coeffs().to_vec() };
            emit(cli.format, &out, || {
                out.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
            });
        }
    }
    Ok(())
}
