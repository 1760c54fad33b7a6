//! `relnum`: certify relation numbers from the command line.
//!
//! Every command prints one JSON object per line on stdout:
//! `{"command", "status", "payload", "timing_ms"}` with status `certified`,
//! `inconclusive` or `failed`. The exit code is 1 for `failed`, 2 for usage
//! and parse errors, 0 otherwise.

mod check;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};

use relnum::convergence::{
    alpha_sequence, certify, default_targets, find_n_for_epsilon, gap_to_four,
    rotation_density_scan,
};
use relnum::farey::{check_certificate, explore_ball, find_cycle, find_cycle_scalar};
use relnum::orbit::{orbit_bfs, verify_table, verify_witness, SearchBudget};
use relnum::relation::relation_poly;
use relnum::roots::{isolate_all, max_root, refine};
use relnum::scalar::{format_decimal, parse_rational, rational_to_string};
use relnum::{Error, Scalar};

#[derive(Parser)]
#[command(
    name = "relnum",
    version,
    about = "Exact certification of relation numbers for <A, B_alpha>"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search the orbits of 0 and inf for a half-odd integer
    OrbitTest {
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        /// Maximum number of generator applications
        #[arg(long, default_value_t = 14)]
        depth: usize,
        /// Maximum bit size of a visited point
        #[arg(long, default_value_t = 256)]
        height: u64,
    },
    /// Explore a ball of the generalized Farey graph
    FareyBall {
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 6)]
        syllables: usize,
        #[arg(long, default_value_t = 4)]
        exponents: i64,
        /// List every edge with its word
        #[arg(long)]
        edges: bool,
    },
    /// Search the generalized Farey graph for a cycle
    FareyCycle {
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 6)]
        syllables: usize,
        #[arg(long, default_value_t = 4)]
        exponents: i64,
    },
    /// Print the relation polynomial p_n
    RelationPoly {
        n: usize,
        /// Isolate the real roots
        #[arg(long)]
        roots: bool,
        #[arg(long, default_value = "1e-12")]
        width: String,
    },
    /// Maximal roots alpha_1, ..., alpha_N
    Alphas {
        #[arg(default_value_t = 25)]
        n: usize,
        #[arg(long, default_value = "1e-12")]
        width: String,
    },
    /// Upper bound on 4 - alpha_n, or the least n with gap below --epsilon
    Gap {
        n: Option<usize>,
        #[arg(long, default_value = "1e-12")]
        width: String,
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long, default_value_t = 25)]
        cap: usize,
    },
    /// Clockwise, winding, distinct-root and bound certificates for n = 1..N
    Certify {
        #[arg(default_value_t = 25)]
        n: usize,
    },
    /// Replay the bundled table of rational relation numbers
    VerifyTable,
    /// Rotation number of B_alpha A^-1, or a scan over [lo, hi)
    Rotation {
        #[arg(allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, num_args = 3, value_names = ["LO", "HI", "SAMPLES"])]
        scan: Option<Vec<String>>,
    },
    /// Re-verify certificates from JSON lines (file or "-" for stdin)
    Check {
        #[arg(default_value = "-")]
        input: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Certified,
    Inconclusive,
    Failed,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Certified => "certified",
            Status::Inconclusive => "inconclusive",
            Status::Failed => "failed",
        }
    }
}

/// Input that could not be parsed; exits with code 2.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(Status, Value), Usage>;

fn failed(e: Error) -> (Status, Value) {
    (Status::Failed, json!({ "error": e.to_string() }))
}

fn alpha_arg(text: &str) -> Result<Scalar, Usage> {
    Ok(Scalar::parse(text)?)
}

fn rational_arg(text: &str) -> Result<BigRational, Usage> {
    Ok(parse_rational(text)?)
}

fn positive_rational_arg(text: &str) -> Result<BigRational, Usage> {
    let q = rational_arg(text)?;
    if q <= BigRational::from_integer(0.into()) {
        return Err(Usage(format!("expected a positive number, got {text}")));
    }
    Ok(q)
}

fn orbit_test(alpha: &str, depth: usize, height: u64) -> Outcome {
    let alpha = alpha_arg(alpha)?;
    let budget = SearchBudget {
        max_depth: depth,
        max_height: height,
    };
    Ok(match orbit_bfs(&alpha, budget) {
        Err(e) => failed(e),
        Ok(None) => (
            Status::Inconclusive,
            json!({ "alpha": alpha, "budget": budget, "witness": null }),
        ),
        Ok(Some(w)) => {
            let normalized = w.normalized();
            let ok = verify_witness(&w) && verify_witness(&normalized);
            let status = if ok {
                Status::Certified
            } else {
                Status::Failed
            };
            (
                status,
                json!({
                    "alpha": alpha,
                    "budget": budget,
                    "witness": w,
                    "normalized": normalized,
                    "word": normalized.word,
                    "value": normalized.value,
                    "verified": ok,
                }),
            )
        }
    })
}

fn farey_ball(alpha: &str, syllables: usize, exponents: i64, edges: bool) -> Outcome {
    let alpha = alpha_arg(alpha)?;
    let result = match &alpha {
        Scalar::Rational(a) => {
            explore_ball(a, syllables, exponents).map(|b| (b.to_json(edges), find_cycle(&b)))
        }
        Scalar::Quadratic(a) => {
            explore_ball(a, syllables, exponents).map(|b| (b.to_json(edges), find_cycle(&b)))
        }
    };
    Ok(match result {
        Err(e) => failed(e),
        Ok((mut ball, cycle)) => {
            let checked = cycle
                .as_ref()
                .map(|c| check_certificate(c).unwrap_or(false));
            let status = match checked {
                Some(true) => Status::Certified,
                Some(false) => Status::Failed,
                None => Status::Inconclusive,
            };
            ball["certificate"] = json!(cycle);
            (status, ball)
        }
    })
}

fn farey_cycle(alpha: &str, syllables: usize, exponents: i64) -> Outcome {
    let alpha = alpha_arg(alpha)?;
    Ok(match find_cycle_scalar(&alpha, syllables, exponents) {
        Err(e) => failed(e),
        Ok(None) => (
            Status::Inconclusive,
            json!({ "alpha": alpha, "syllables": syllables, "exponents": exponents, "certificate": null }),
        ),
        Ok(Some((cert, used))) => {
            let ok = check_certificate(&cert).unwrap_or(false);
            let status = if ok {
                Status::Certified
            } else {
                Status::Failed
            };
            (
                status,
                json!({
                    "alpha": alpha,
                    "syllables": used,
                    "exponents": exponents,
                    "edges": cert.edge_words.len(),
                    "certificate": cert,
                    "verified": ok,
                }),
            )
        }
    })
}

fn relation_poly_cmd(n: usize, roots: bool, width: &str) -> Outcome {
    if n == 0 {
        return Err(Usage("n must be at least 1".into()));
    }
    let width = positive_rational_arg(width)?;
    let p = relation_poly(n);
    let mut payload = json!({ "n": n, "coefficients": p, "text": p.to_string() });
    if roots {
        let iso = match isolate_all(&p) {
            Ok(iso) => iso,
            Err(e) => return Ok(failed(e)),
        };
        let refined: Vec<_> = iso
            .intervals
            .iter()
            .map(|iv| refine(&p, iv, &width))
            .collect::<Result<_, _>>()?;
        payload["squarefree"] = json!(iso.squarefree);
        payload["roots"] = json!(refined);
        payload["max_root"] = json!(max_root(&p, &width)?);
        payload["exact_roots"] = refined
            .iter()
            .filter_map(|iv| iv.exact.as_ref().map(rational_to_string))
            .collect();
    }
    Ok((Status::Certified, payload))
}

fn alphas(n: usize, width: &str) -> Outcome {
    if n == 0 {
        return Err(Usage("N must be at least 1".into()));
    }
    let width = positive_rational_arg(width)?;
    Ok(match alpha_sequence(n, &width) {
        Err(e) => failed(e),
        Ok(seq) => (
            Status::Certified,
            json!({ "increasing": true, "below_four": true, "alphas": seq }),
        ),
    })
}

fn gap(n: Option<usize>, width: &str, epsilon: Option<&str>, cap: usize) -> Outcome {
    let width = positive_rational_arg(width)?;
    if let Some(eps) = epsilon {
        let eps = positive_rational_arg(eps)?;
        return Ok(match find_n_for_epsilon(&eps, cap) {
            Err(e) => failed(e),
            Ok(None) => (
                Status::Inconclusive,
                json!({ "epsilon": rational_to_string(&eps), "cap": cap, "n": null }),
            ),
            Ok(Some(found)) => (
                Status::Certified,
                json!({ "epsilon": rational_to_string(&eps), "cap": cap, "n": found }),
            ),
        });
    }
    let Some(n) = n.filter(|&n| n >= 1) else {
        return Err(Usage("gap needs n >= 1 or --epsilon".into()));
    };
    Ok(match gap_to_four(n, &width) {
        Err(e) => failed(e),
        Ok(g) => (
            Status::Certified,
            json!({ "n": n, "gap_upper_bound": rational_to_string(&g), "approx:gap": format_decimal(&g, 20) }),
        ),
    })
}

fn certify_cmd(n: usize) -> Outcome {
    if n == 0 {
        return Err(Usage("N must be at least 1".into()));
    }
    Ok(match certify(n, &default_targets()) {
        Err(e) => failed(e),
        Ok(certs) => {
            let all = certs.iter().all(|c| c.all_ok());
            let status = if all {
                Status::Certified
            } else {
                Status::Failed
            };
            (status, json!({ "all_ok": all, "certificates": certs }))
        }
    })
}

fn verify_table_cmd() -> Outcome {
    Ok(match verify_table() {
        Err(e) => failed(e),
        Ok(report) => {
            let status = if report.passed == report.total {
                Status::Certified
            } else {
                Status::Failed
            };
            (status, json!(report))
        }
    })
}

fn rotation(alpha: Option<&str>, scan: Option<&[String]>) -> Outcome {
    if let Some(args) = scan {
        let lo = rational_arg(&args[0])?;
        let hi = rational_arg(&args[1])?;
        let samples: usize = args[2]
            .parse()
            .map_err(|_| Usage(format!("invalid sample count {}", args[2])))?;
        return Ok(match rotation_density_scan(&lo, &hi, samples) {
            Err(e) => failed(e),
            Ok(report) => (Status::Inconclusive, json!({ "samples": report })),
        });
    }
    let Some(alpha) = alpha else {
        return Err(Usage("rotation needs ALPHA or --scan".into()));
    };
    let alpha = alpha_arg(alpha)?;
    let r = match &alpha {
        Scalar::Rational(a) => relnum::matrix::rotation_number(a),
        Scalar::Quadratic(a) => relnum::matrix::rotation_number(a),
    };
    Ok(match r {
        Err(e) => failed(e),
        // floating point: informational, never a certificate
        Ok(x) => (
            Status::Inconclusive,
            json!({ "alpha": alpha, "approx:rotation": x }),
        ),
    })
}

fn run(command: &Command) -> Outcome {
    match command {
        Command::OrbitTest {
            alpha,
            depth,
            height,
        } => orbit_test(alpha, *depth, *height),
        Command::FareyBall {
            alpha,
            syllables,
            exponents,
            edges,
        } => farey_ball(alpha, *syllables, *exponents, *edges),
        Command::FareyCycle {
            alpha,
            syllables,
            exponents,
        } => farey_cycle(alpha, *syllables, *exponents),
        Command::RelationPoly { n, roots, width } => relation_poly_cmd(*n, *roots, width),
        Command::Alphas { n, width } => alphas(*n, width),
        Command::Gap {
            n,
            width,
            epsilon,
            cap,
        } => gap(*n, width, epsilon.as_deref(), *cap),
        Command::Certify { n } => certify_cmd(*n),
        Command::VerifyTable => verify_table_cmd(),
        Command::Rotation { alpha, scan } => rotation(alpha.as_deref(), scan.as_deref()),
        Command::Check { input } => check::run(input),
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::OrbitTest { .. } => "orbit-test",
        Command::FareyBall { .. } => "farey-ball",
        Command::FareyCycle { .. } => "farey-cycle",
        Command::RelationPoly { .. } => "relation-poly",
        Command::Alphas { .. } => "alphas",
        Command::Gap { .. } => "gap",
        Command::Certify { .. } => "certify",
        Command::VerifyTable => "verify-table",
        Command::Rotation { .. } => "rotation",
        Command::Check { .. } => "check",
    }
}

fn configure_threads() {
    let Ok(text) = std::env::var("RELNUM_THREADS") else {
        return;
    };
    match text.trim().parse::<usize>() {
        Ok(n) if n >= 1 => {
            if let Err(e) = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
            {
                eprintln!("relnum: RELNUM_THREADS ignored: {e}");
            }
        }
        _ => eprintln!("relnum: RELNUM_THREADS must be a positive integer, got {text:?}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let start = Instant::now();
    match run(&cli.command) {
        Err(Usage(msg)) => {
            eprintln!("relnum: {msg}");
            ExitCode::from(2)
        }
        Ok((status, payload)) => {
            let line = json!({
                "command": command_name(&cli.command),
                "status": status.as_str(),
                "payload": payload,
                "timing_ms": start.elapsed().as_millis() as u64,
            });
            println!("{line}");
            if status == Status::Failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}
