//! Command-line front end: `gen`, `lift`, `verify`, `pushforward`, `pullback`.
//!
//! Exit codes: 0 success, 1 verification below `--expect-strength`, 2 usage
//! error, 3 interval solver gave up, 4 unreadable or malformed input,
//! 5 off-sphere input.

use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::generators::{
    antipodal_pair, default_node_hint, product_design_s2_with, regular_gon,
    weighted_product_design_s2, LatitudePhases,
};
use crate::hopf::{pullback_monomial, pushforward_monomial, Section};
use crate::io::{any_design_to_json, design_to_json, parse_design, AnyDesign};
use crate::lift::{cardinality_report, lift_design, LiftConfig, PhaseMode};
use crate::sphere::{MonomialS2, MonomialS3, SpherePoint, WeightedDesign};
use crate::verify::{certify, certify_until_failure, StrengthReport, DEFAULT_TOL};

/// Highest degree probed when the strength of a lift input is inferred.
const INFER_MAX_DEGREE: usize = 40;

#[derive(Debug, Parser)]
#[command(
    name = "hopf-designs",
    version,
    about = "Spherical designs on S^3 lifted through the Hopf map"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an input design.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Lift an S^2 design to S^3.
    Lift(LiftArgs),
    /// Certify the strength of a design.
    Verify(VerifyArgs),
    /// Print the fiber average of a^i ā^j b^k b̄^l as a polynomial in ξ, η, η̄.
    Pushforward {
        i: u32,
        j: u32,
        k: u32,
        l: u32,
        /// Rewrite η·η̄ as 1 - ξ^2.
        #[arg(long)]
        reduce: bool,
    },
    /// Print the pullback of ξ^p η^q η̄^r as a polynomial in a, ā, b, b̄.
    Pullback { p: u32, q: u32, r: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PhaseChoice {
    Zero,
    Random,
}

#[derive(Debug, Args)]
pub struct OutputArg {
    /// Output file (standard output when omitted).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Regular n-gon on S^1.
    S1Gon {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phase: f64,
        #[command(flatten)]
        out: OutputArg,
    },
    /// The antipodal pair {(±1, 0)} on S^2.
    S2Antipodal {
        #[command(flatten)]
        out: OutputArg,
    },
    /// Latitude-circle product t-design on S^2.
    S2Product {
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = PhaseChoice::Zero)]
        phases: PhaseChoice,
        #[arg(long, env = "HOPF_DESIGNS_SEED", default_value_t = 0)]
        seed: u64,
        /// Starting node count for the interval-design search.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        nodes: Option<u64>,
        /// Fall back to Gauss-Legendre latitudes (unequal weights) if no
        /// equal-weight interval design is found.
        #[arg(long)]
        weighted_fallback: bool,
        #[command(flatten)]
        out: OutputArg,
    },
}

#[derive(Debug, Args)]
pub struct LiftArgs {
    /// S^2 design file (standard input when omitted).
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArg,
    /// Strength of the input; inferred by certification when omitted.
    #[arg(long)]
    pub t: Option<usize>,
    /// Points per fiber; defaults to 2t+1.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub gon_size: Option<u64>,
    #[arg(long, value_enum, default_value_t = PhaseChoice::Zero)]
    pub phases: PhaseChoice,
    #[arg(long, env = "HOPF_DESIGNS_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Height above which the northern chart picks the base point.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub threshold: f64,
    /// Merge coincident output points.
    #[arg(long)]
    pub merge: bool,
    /// Project off-sphere input points onto the sphere instead of failing.
    #[arg(long)]
    pub renormalize: bool,
    /// Tolerance used when inferring t.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Design file (standard input when omitted).
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub max_degree: usize,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Exit with status 1 unless the certified strength reaches this value.
    #[arg(long)]
    pub expect_strength: Option<usize>,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub renormalize: bool,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) => 2,
        Error::NoConvergence { .. } => 3,
        Error::Parse(_) | Error::InvalidDesign(_) | Error::Io(_) => 4,
        Error::OffSphere { .. } => 5,
        Error::QuadratureFailure { .. } => 1,
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String> {
    match path {
        Some(p) => Ok(std::fs::read_to_string(p)?),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn emit(out: &OutputArg, text: &str) -> Result<()> {
    match &out.output {
        Some(p) => std::fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::InvalidArgument(format!(
            "--{name} must be positive, got {v}"
        )))
    }
}

/// Runs one command and returns the process exit status.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Gen { kind } => run_gen(kind).map(|_| 0),
        Command::Lift(args) => run_lift(args).map(|_| 0),
        Command::Verify(args) => run_verify(args),
        Command::Pushforward { i, j, k, l, reduce } => {
            let p = pushforward_monomial(MonomialS3::new(i, j, k, l));
            let p = if reduce { p.reduced() } else { p };
            println!("{p}");
            Ok(0)
        }
        Command::Pullback { p, q, r } => {
            println!("{}", pullback_monomial(MonomialS2::new(p, q, r)));
            Ok(0)
        }
    }
}

fn run_gen(kind: GenKind) -> Result<()> {
    match kind {
        GenKind::S1Gon { n, phase, out } => {
            let g = regular_gon(n as usize, phase)?;
            let meta = json!({"construction": "regular-gon", "n": n, "phase": phase});
            emit(&out, &design_to_json(&g, Some(&meta)))
        }
        GenKind::S2Antipodal { out } => {
            let meta = json!({"construction": "antipodal-pair", "t": 1});
            emit(&out, &design_to_json(&antipodal_pair(), Some(&meta)))
        }
        GenKind::S2Product {
            t,
            phases,
            seed,
            nodes,
            weighted_fallback,
            out,
        } => {
            let latitude = match phases {
                PhaseChoice::Zero => LatitudePhases::Zero,
                PhaseChoice::Random => LatitudePhases::Random { seed },
            };
            let hint = nodes.map_or_else(|| default_node_hint(t), |n| n as usize);
            let (design, rule) = match product_design_s2_with(t, hint, latitude) {
                Ok(d) => (d, "equal-weight"),
                Err(Error::NoConvergence { .. }) if weighted_fallback => {
                    (weighted_product_design_s2(t, latitude)?, "gauss-legendre")
                }
                Err(e) => return Err(e),
            };
            let mut meta = json!({
                "construction": "latitude-product",
                "t": t,
                "latitudes": design.len() / (t + 1),
                "interval_rule": rule,
                "phases": format!("{phases:?}").to_lowercase(),
            });
            if phases == PhaseChoice::Random {
                meta["seed"] = json!(seed);
            }
            emit(&out, &design_to_json(&design, Some(&meta)))
        }
    }
}

fn run_lift(args: LiftArgs) -> Result<()> {
    let text = read_input(&args.input)?;
    let doc = parse_design(&text, args.renormalize)?;
    let y = match doc.design {
        AnyDesign::S2(y) => y,
        other => {
            return Err(Error::Parse(format!(
                "lift needs an s2 design, input holds {}",
                other.sphere()
            )))
        }
    };
    let tol = positive("tol", args.tol)?;
    let t = match args.t {
        Some(t) => t,
        None => certify_until_failure(&y, INFER_MAX_DEGREE, tol)
            .certified_strength
            .ok_or_else(|| Error::InvalidDesign("input fails the degree-0 condition".into()))?,
    };
    let gon_size = args.gon_size.map_or(2 * t + 1, |g| g as usize);
    let phase_mode = match args.phases {
        PhaseChoice::Zero => PhaseMode::Zero,
        PhaseChoice::Random => PhaseMode::Random { seed: args.seed },
    };
    let cfg = LiftConfig::new(gon_size)
        .with_phases(phase_mode)
        .with_section(Section::new(args.threshold)?)
        .with_merge(args.merge);
    let x = lift_design(&y, &cfg)?;
    let mut meta = json!({
        "construction": "hopf-lift",
        "t": t,
        "gon_size": gon_size,
        "base_points": y.len(),
        "phases": format!("{:?}", args.phases).to_lowercase(),
        "threshold": args.threshold,
    });
    if args.phases == PhaseChoice::Random {
        meta["seed"] = json!(args.seed);
    }
    emit(&args.out, &design_to_json(&x, Some(&meta)))?;
    let report = cardinality_report(t, &x);
    if args.out.output.is_some() {
        println!("{report}");
    } else {
        eprintln!("{report}");
    }
    Ok(())
}

fn report_for<P: SpherePoint>(d: &WeightedDesign<P>, args: &VerifyArgs) -> StrengthReport {
    certify(d, args.max_degree, args.tol)
}

fn run_verify(args: VerifyArgs) -> Result<i32> {
    positive("tol", args.tol)?;
    let text = read_input(&args.input)?;
    let doc = parse_design(&text, args.renormalize)?;
    let report = match &doc.design {
        AnyDesign::S1(d) => report_for(d, &args),
        AnyDesign::S2(d) => report_for(d, &args),
        AnyDesign::S3(d) => report_for(d, &args),
    };
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else {
        println!("{report}");
    }
    let ok = match args.expect_strength {
        Some(t) => report.certified_strength.is_some_and(|s| s >= t),
        None => true,
    };
    Ok(if ok { 0 } else { 1 })
}

/// Re-serializes a parsed document; used to check that emitted files are
/// stable under a read/write cycle.
pub fn normalize_document(text: &str) -> Result<String> {
    let doc = parse_design(text, false)?;
    Ok(any_design_to_json(&doc.design, doc.meta.as_ref()))
}
