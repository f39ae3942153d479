use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use ndescent::algebra::{partial, rho_from_point, validate_rho, Csa, RhoTable, TrivMode, Trivialisation};
use ndescent::curve::{Curve, Point, TorsionTable};
use ndescent::descent::{EmbeddingData, EpsilonTable, GBasis};
use ndescent::field::parse_rational;
use ndescent::geometry::{descend, quadrics_for_c};
use ndescent::io;
use ndescent::verify::verify_artifact;

const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser)]
#[command(name = "ndescent", version, about = "Explicit 3-descent on elliptic curves with split 3-torsion")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct Common {
    /// Curve file.
    #[arg(long)]
    curve: PathBuf,
    /// Descent degree (odd); the plane model needs n = 3.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Output file (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print progress to stderr.
    #[arg(short, long)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate E[n] over the curve's field.
    Torsion(Common),
    /// Quadrics cutting out the covering in P(R).
    Quadrics {
        #[command(flatten)]
        common: Common,
        /// rho file (rho = 1 if absent).
        #[arg(long)]
        rho: Option<PathBuf>,
    },
    /// Structure constants and certification of the obstruction algebra.
    Algebra {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        rho: Option<PathBuf>,
    },
    /// The cocycle r(Q) of a rational point, as "x,y" or a JSON pair.
    RhoFromPoint {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// The coboundary of an element z of R.
    Coboundary {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        z: PathBuf,
    },
    /// Build and certify a trivialisation of the obstruction algebra.
    Trivialize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        rho: Option<PathBuf>,
        /// standard, z-twist or user.
        #[arg(long, default_value = "standard")]
        mode: String,
        /// z for z-twist mode.
        #[arg(long)]
        z: Option<PathBuf>,
        /// Images for user mode: a trivialisation file or a list of matrices.
        #[arg(long)]
        triv: Option<PathBuf>,
    },
    /// Plane cubic model of the covering.
    Descend {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        rho: Option<PathBuf>,
        /// Trivialisation file (standard images if absent).
        #[arg(long)]
        triv: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Re-run every check on stored artifacts.
    Verify {
        #[command(flatten)]
        common: Common,
        files: Vec<PathBuf>,
    },
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| ndescent::Error::Parse(format!("{}: {e}", path.display())).into())
}

fn write_json(out: &Option<PathBuf>, v: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(v)? + "\n";
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

struct Ctx {
    curve: Curve,
    table: TorsionTable,
    verbose: bool,
}

impl Ctx {
    fn new(c: &Common) -> Result<Ctx> {
        let curve = io::curve_from_json(&read_json(&c.curve)?)?;
        let table = TorsionTable::new(&curve, c.n)?;
        Ok(Ctx { curve, table, verbose: c.verbose })
    }

    fn log(&self, msg: &str) {
        if self.verbose {
            eprintln!("{msg}");
        }
    }

    fn rho(&self, path: &Option<PathBuf>) -> Result<RhoTable> {
        let raw = match path {
            Some(p) => io::rho_from_json(&self.table, &read_json(p)?)?,
            None => RhoTable::ones(self.curve.field(), self.table.len()),
        };
        Ok(validate_rho(&self.table, &raw)?.normalized)
    }

    fn eps(&self) -> Result<EpsilonTable> {
        self.log("computing epsilon");
        Ok(EpsilonTable::compute(&self.table)?)
    }
}

fn parse_point(curve: &Curve, s: &str) -> Result<Point> {
    let k = curve.field();
    if s.trim_start().starts_with('[') {
        let v: Value = serde_json::from_str(s).map_err(|e| ndescent::Error::Parse(e.to_string()))?;
        return Ok(io::point_from_json(k, &v)?);
    }
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        bail!(ndescent::Error::Parse(format!("point must be \"x,y\", got {s:?}")));
    }
    Ok(Point::affine(k.from_rational(parse_rational(parts[0])?), k.from_rational(parse_rational(parts[1])?)))
}

fn user_images(ctx: &Ctx, path: &Path) -> Result<Vec<ndescent::field::ExactMatrix>> {
    let v = read_json(path)?;
    if v.is_array() {
        return v.as_array().unwrap().iter().map(|m| Ok(io::matrix_from_json(ctx.curve.field(), m)?)).collect();
    }
    let (_, t) = io::triv_from_json(&ctx.table, &v)?;
    Ok(t.images)
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Command::Torsion(c) => {
            let ctx = Ctx::new(&c)?;
            write_json(&c.out, &io::torsion_to_json(&ctx.table))
        }
        Command::Quadrics { common, rho } => {
            let ctx = Ctx::new(&common)?;
            let rho = ctx.rho(&rho)?;
            let q = quadrics_for_c(&ctx.table, &rho)?;
            write_json(&common.out, &io::quadrics_to_json(&ctx.table, &rho, &q))
        }
        Command::Algebra { common, rho } => {
            let ctx = Ctx::new(&common)?;
            let rho = ctx.rho(&rho)?;
            let csa = Csa::build(&ctx.table, &ctx.eps()?, &rho)?;
            write_json(&common.out, &io::csa_to_json(&ctx.curve, &csa))
        }
        Command::RhoFromPoint { common, point } => {
            let ctx = Ctx::new(&common)?;
            let q = parse_point(&ctx.curve, &point)?;
            let rho = rho_from_point(&ctx.table, &q)?;
            validate_rho(&ctx.table, &rho)?;
            write_json(&common.out, &io::rho_to_json(&ctx.table, &rho))
        }
        Command::Coboundary { common, z } => {
            let ctx = Ctx::new(&common)?;
            let z = io::relement_from_json(&ctx.curve, &read_json(&z)?)?;
            let rho = partial(&ctx.table, &z)?;
            write_json(&common.out, &io::rho_to_json(&ctx.table, &rho))
        }
        Command::Trivialize { common, rho, mode, z, triv } => {
            let ctx = Ctx::new(&common)?;
            let rho = ctx.rho(&rho)?;
            let eps = ctx.eps()?;
            let csa = Csa::build(&ctx.table, &eps, &rho)?;
            let mode =
                TrivMode::parse(&mode).ok_or_else(|| ndescent::Error::Parse(format!("unknown mode {mode:?}")))?;
            let t = match mode {
                TrivMode::Standard => Trivialisation::standard(&csa, &EmbeddingData::compute(&ctx.table, &eps)?)?,
                TrivMode::ZTwist => {
                    let zp = z.ok_or_else(|| ndescent::Error::Parse("z-twist mode needs --z".into()))?;
                    let z = io::relement_from_json(&ctx.curve, &read_json(&zp)?)?;
                    Trivialisation::z_twist(&csa, &EmbeddingData::compute(&ctx.table, &eps)?, &z)?
                }
                TrivMode::User => {
                    let tp = triv.ok_or_else(|| ndescent::Error::Parse("user mode needs --triv".into()))?;
                    Trivialisation::user(&csa, user_images(&ctx, &tp)?)?
                }
            };
            write_json(&common.out, &io::triv_to_json(&ctx.curve, &csa, &t))
        }
        Command::Descend { common, rho, triv, seed } => {
            let ctx = Ctx::new(&common)?;
            let rho = ctx.rho(&rho)?;
            let eps = ctx.eps()?;
            let t = match triv {
                Some(p) => io::triv_from_json(&ctx.table, &read_json(&p)?)?.1,
                None => Trivialisation {
                    mode: TrivMode::Standard,
                    images: EmbeddingData::compute(&ctx.table, &eps)?.matrices().to_vec(),
                },
            };
            ctx.log("computing G basis");
            let g = GBasis::compute(&ctx.table)?;
            ctx.log("descending");
            let out = descend(&ctx.table, &eps, &g, &rho, &t, seed)?;
            eprintln!("cubic: {}", out.equation);
            if out.report.all_pass() {
                eprintln!("all checks pass");
            }
            write_json(&common.out, &io::descent_to_json(&ctx.curve, &ctx.table, &out, &t))
        }
        Command::Verify { common, files } => {
            let ctx = Ctx::new(&common)?;
            let mut worst: Option<anyhow::Error> = None;
            for f in &files {
                match read_json(f).and_then(|v| Ok(verify_artifact(&ctx.table, &v)?)) {
                    Ok(what) => println!("ok   {}: {what}", f.display()),
                    Err(e) => {
                        println!("FAIL {}: {e}", f.display());
                        if worst.as_ref().is_none_or(|w| exit_code(&e) > exit_code(w)) {
                            worst = Some(e);
                        }
                    }
                }
            }
            match worst {
                Some(e) => Err(e),
                None => Ok(()),
            }
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    e.downcast_ref::<ndescent::Error>().map_or(1, |err| err.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
