//! Command-line front end: check / oracle / scan / cheby / families, with
//! machine-readable JSON and CSV output.
//!
//! Exit codes: 0 = certified (dynamically monogenic / bounded ok / pass),
//! 1 = fails (or not applicable: reducible), 2 = conditional, 64 = usage.

use clap::{Parser, Subcommand, ValueEnum};
use monodyn::arith::FactorBudget;
use monodyn::density::{self, Family, ScanRow};
use monodyn::dyncrit::{self, CertifyConfig, CertifyMode, OverallVerdict};
use monodyn::families;
use monodyn::intpoly::IntPoly;
use monodyn::irreducibility::{self, Irreducibility};
use monodyn::maximality::{self, IrredInput, OracleConclusion};
use num_bigint::BigInt;
use std::io::Write;
use std::process::ExitCode;
use std::time::Duration;

const EXIT_OK: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_CONDITIONAL: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "monodyn",
    about = "Certify monogenicity of iterated integer polynomials f^n(x) - a"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for scans and per-prime certification
    #[arg(long, global = true, default_value_t = 8)]
    workers: usize,
    /// Seed perturbing the factorization splitting stream (verdicts do not
    /// depend on it)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Trial-division bound for integer factorizations
    #[arg(long, global = true, default_value_t = 1_000_000)]
    prime_budget: u64,
    /// Wall-clock budget for each integer factorization (rho stage)
    #[arg(long, global = true, default_value_t = 2000)]
    timeout_ms: u64,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Certify the pair (f, a) across iterates
    Check {
        #[arg(long)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// "all-n" or "up-to N"
        #[arg(long, num_args = 1..=2, default_values_t = vec!["up-to".to_string(), "3".to_string()])]
        mode: Vec<String>,
    },
    /// Brute-force monogenicity oracle for a single polynomial
    Oracle {
        #[arg(long)]
        f: String,
    },
    /// Density scan of a family checker over a range of values
    Scan {
        /// one-minus-xd | chebyshev | unicritical | radical-tower | real-tower
        #[arg(long)]
        family: String,
        #[arg(long)]
        d: u32,
        /// u coefficient for the unicritical family (+1 or -1)
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        u: i8,
        /// b parameter for the unicritical family
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        b: String,
        /// Inclusive range "A..B"
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        /// Euler-product truncation prime for the prediction
        #[arg(long, default_value_t = 10_000)]
        truncation: u64,
    },
    /// Chebyshev pair check plus the totally-real classification
    Cheby {
        #[arg(long)]
        d: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Run a single family checker
    Families {
        #[arg(long)]
        family: String,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        u: i8,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a: String,
        /// Attach the truncated Euler-product density prediction
        #[arg(long)]
        density: bool,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn parse_poly(s: &str) -> Result<IntPoly, String> {
    s.parse::<IntPoly>().map_err(|e| e.to_string())
}

fn parse_bigint(s: &str) -> Result<BigInt, String> {
    s.parse::<BigInt>().map_err(|e| format!("bad integer {s:?}: {e}"))
}

fn max_degree_from_env() -> usize {
    std::env::var("MONODYN_MAX_DEGREE")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(monodyn::DEFAULT_MAX_DEGREE)
}

fn budget(cli: &Cli) -> FactorBudget {
    FactorBudget {
        trial_bound: cli.prime_budget,
        timeout: Duration::from_millis(cli.timeout_ms),
    }
}

fn run_check(cli: &Cli, f: &str, a: &str, mode: &[String]) -> Result<u8, String> {
    let f = parse_poly(f)?;
    let a = parse_bigint(a)?;
    let mode = match mode {
        [m] if m == "all-n" => CertifyMode::AllN,
        [m, n] if m == "up-to" => {
            CertifyMode::UpTo(n.parse().map_err(|_| format!("bad bound {n:?}"))?)
        }
        [m] if m == "up-to" => CertifyMode::UpTo(3),
        other => return Err(format!("bad --mode {:?}", other.join(" "))),
    };
    let cfg = CertifyConfig {
        max_degree: max_degree_from_env(),
        budget: budget(cli),
        seed: cli.seed,
        ..CertifyConfig::default()
    };
    let verdict = dyncrit::certify_pair(&f, &a, mode, &cfg).map_err(|e| e.to_string())?;
    match cli.format {
        Format::Json | Format::Csv => {
            println!("{}", serde_json::to_string_pretty(&verdict).unwrap())
        }
        Format::Text => {
            println!(
                "pair: f = {}, a = {}, mode = {}",
                verdict.f, verdict.a, verdict.mode
            );
            for it in &verdict.irreducibility {
                println!("  f^{} - a irreducibility: {:?}", it.n, it.status);
            }
            for cert in &verdict.primes {
                println!("  prime {}: {:?}", cert.prime, cert.verdict);
            }
            for notice in &verdict.notices {
                println!("  notice: {notice}");
            }
            println!("verdict: {:?}", verdict.verdict);
        }
    }
    Ok(match verdict.verdict {
        OverallVerdict::DynamicallyMonogenic | OverallVerdict::BoundedOk => EXIT_OK,
        OverallVerdict::Fails | OverallVerdict::NotApplicableReducible => EXIT_FAIL,
        OverallVerdict::Conditional => EXIT_CONDITIONAL,
    })
}

fn run_oracle(cli: &Cli, f: &str) -> Result<u8, String> {
    let f = parse_poly(f)?;
    let irred = irreducibility::generic_status(&f, &Default::default());
    let input = match irred.status {
        Irreducibility::Proven => IrredInput::Proven,
        Irreducibility::Disproven => IrredInput::Disproven,
        Irreducibility::Unknown => IrredInput::Unknown,
    };
    let report =
        maximality::is_monogenic_oracle(&f, input, &budget(cli)).map_err(|e| e.to_string())?;
    match cli.format {
        Format::Json | Format::Csv => {
            println!("{}", serde_json::to_string_pretty(&report).unwrap())
        }
        Format::Text => {
            let word = match report.conclusion {
                OracleConclusion::Monogenic => "monogenic".to_string(),
                OracleConclusion::NonMonogenic => {
                    let p = report
                        .certificates
                        .iter()
                        .find(|c| !c.is_maximal())
                        .map(|c| c.prime.to_string())
                        .unwrap_or_default();
                    format!("non-monogenic (fails at {p})")
                }
                OracleConclusion::ConditionallyMonogenic => "conditionally monogenic".into(),
                OracleConclusion::NotApplicableReducible => "not applicable: reducible".into(),
            };
            println!("{word}");
        }
    }
    Ok(match report.conclusion {
        OracleConclusion::Monogenic => EXIT_OK,
        OracleConclusion::NonMonogenic | OracleConclusion::NotApplicableReducible => EXIT_FAIL,
        OracleConclusion::ConditionallyMonogenic => EXIT_CONDITIONAL,
    })
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("bad range {s:?}"))?;
    let lo = lo.trim().parse().map_err(|_| format!("bad range start {lo:?}"))?;
    let hi = hi.trim().parse().map_err(|_| format!("bad range end {hi:?}"))?;
    Ok((lo, hi))
}

fn family_from_args(name: &str, d: u32, u: i8, b: &str) -> Result<Family, String> {
    match name {
        "one-minus-xd" => Ok(Family::OneMinusXd { d }),
        "chebyshev" => Ok(Family::Chebyshev { d }),
        "unicritical" => Ok(Family::Unicritical {
            u,
            d,
            b: parse_bigint(b)?,
        }),
        "radical-tower" => Ok(Family::RadicalTower { d }),
        "real-tower" => Ok(Family::RealTower { d }),
        other => Err(format!("unknown family {other:?}")),
    }
}

fn run_scan(
    cli: &Cli,
    family: &str,
    d: u32,
    u: i8,
    b: &str,
    range: &str,
    trunc: u64,
) -> Result<u8, String> {
    let family = family_from_args(family, d, u, b)?;
    let (lo, hi) = parse_range(range)?;
    match cli.format {
        Format::Csv => {
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            writeln!(out, "a,verdict,first_failing_condition,witness_prime").unwrap();
            let mut sink = |rows: &[ScanRow]| {
                for r in rows {
                    writeln!(
                        out,
                        "{},{},{},{}",
                        r.a,
                        match r.verdict {
                            density::ScanVerdict::Pass => "pass",
                            density::ScanVerdict::Fail => "fail",
                            density::ScanVerdict::Conditional => "conditional",
                        },
                        r.first_failing_condition.as_deref().unwrap_or(""),
                        r.witness_prime.map(|p| p.to_string()).unwrap_or_default(),
                    )
                    .unwrap();
                }
            };
            let report =
                density::scan_with_rows(&family, lo, hi, cli.workers, trunc, Some(&mut sink))
                    .map_err(|e| e.to_string())?;
            eprintln!("{}", serde_json::to_string(&report).unwrap());
        }
        Format::Json => {
            let report = density::scan_report(&family, lo, hi, cli.workers, trunc)
                .map_err(|e| e.to_string())?;
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
        }
        Format::Text => {
            let report = density::scan_report(&family, lo, hi, cli.workers, trunc)
                .map_err(|e| e.to_string())?;
            println!(
                "family {} on [{}, {}]: pass {}, fail {}, conditional {}",
                report.family, lo, hi, report.pass, report.fail, report.conditional
            );
            println!("empirical density {:.6}", report.empirical);
            if let (Some(p), Some(dev)) = (report.predicted, report.deviation) {
                println!(
                    "predicted density {:.6} (truncated at {}), |deviation| {:.6}",
                    p, report.truncation_prime, dev
                );
            }
        }
    }
    Ok(EXIT_OK)
}

fn run_cheby(cli: &Cli, d: u32, a: &str) -> Result<u8, String> {
    if d < 2 {
        return Err("cheby needs d >= 2".into());
    }
    let a = parse_bigint(a)?;
    let verdict = families::cheby_check(d, &a, &budget(cli));
    let class = families::totally_real_classify(d, &a);
    match cli.format {
        Format::Json | Format::Csv => {
            let mut v = serde_json::to_value(&verdict).unwrap();
            v["totally_real_case"] = serde_json::json!(class);
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
        }
        Format::Text => {
            println!("(T_{}, {}): {:?}", d, a, verdict.overall);
            match class {
                Some(c) => println!("totally-real monogenic classification: case {c}"),
                None => println!("totally-real monogenic classification: none"),
            }
        }
    }
    Ok(match verdict.overall {
        families::FamilyOutcome::Pass => EXIT_OK,
        families::FamilyOutcome::Fail => EXIT_FAIL,
        families::FamilyOutcome::Conditional => EXIT_CONDITIONAL,
    })
}

fn run_families(
    cli: &Cli,
    name: &str,
    d: u32,
    u: i8,
    b: &str,
    a: &str,
    density_flag: bool,
) -> Result<u8, String> {
    let family = family_from_args(name, d, u, b)?;
    let point = match &family {
        Family::RadicalTower { .. } | Family::RealTower { .. } => parse_bigint(b)?,
        _ => parse_bigint(a)?,
    };
    let mut verdict = family
        .check_point(&point, &budget(cli))
        .ok_or_else(|| format!("parameter {point} outside the domain of {name}"))?;
    if density_flag {
        verdict.density_prediction = density::predicted_density(&family, 10_000);
    }
    match cli.format {
        Format::Json | Format::Csv => {
            println!("{}", serde_json::to_string_pretty(&verdict).unwrap())
        }
        Format::Text => {
            println!(
                "family {} at {}: {:?}",
                verdict.family, point, verdict.overall
            );
            for c in &verdict.conditions {
                println!(
                    "  [{}] {}{}",
                    match c.status {
                        families::CondStatus::Pass => "pass",
                        families::CondStatus::Fail => "FAIL",
                        families::CondStatus::Unknown => "????",
                    },
                    c.label,
                    c.witness
                        .as_deref()
                        .map(|w| format!(" (witness {w})"))
                        .unwrap_or_default()
                );
            }
            if let Some(p) = verdict.density_prediction {
                println!("predicted family density: {p:.6}");
            }
        }
    }
    Ok(match verdict.overall {
        families::FamilyOutcome::Pass => EXIT_OK,
        families::FamilyOutcome::Fail => EXIT_FAIL,
        families::FamilyOutcome::Conditional => EXIT_CONDITIONAL,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help/version requests are not usage errors
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(EXIT_USAGE);
            }
            print!("{e}");
            return ExitCode::from(EXIT_OK);
        }
    };
    let result = match &cli.cmd {
        Cmd::Check { f, a, mode } => run_check(&cli, f, a, mode),
        Cmd::Oracle { f } => run_oracle(&cli, f),
        Cmd::Scan {
            family,
            d,
            u,
            b,
            range,
            truncation,
        } => run_scan(&cli, family, *d, *u, b, range, *truncation),
        Cmd::Cheby { d, a } => run_cheby(&cli, *d, a),
        Cmd::Families {
            family,
            d,
            u,
            b,
            a,
            density,
        } => run_families(&cli, family, *d, *u, b, a, *density),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => usage_error(&msg),
    }
}
