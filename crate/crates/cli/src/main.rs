use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use ainf_cli::fixtures::{self, member_seed};
use ainf_cli::input::{compute, frames_to_csv, load_frames, FramePathFile};
use ainf_cli::suites;
use ainf_cli::{CliError, Options, Recorder, Status, VerificationReport, Versioned};
use ainf_core::ainfty::{CategoryFile, Convention};
use ainf_core::branes::{maslov_winding, PhasePath};
use ainf_core::cubical::CubicalFile;
use ainf_core::strata::{
    check_formal_mod2, check_mod2_z, codim1_r, codim1_z, formal_symbols, hasse_dot, signed_residues, stasheff_strata, strata_z,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[derive(Parser)]
#[command(name = "ainf", version, about = "Exact checks for A∞ structures, moduli strata, brane data and C⁰ numerics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate and check boundary strata.
    Strata(StrataArgs),
    /// Brane computations.
    Branes {
        #[command(subcommand)]
        command: BranesCommand,
    },
    /// C⁰-estimate numerics.
    C0 {
        #[command(subcommand)]
        command: C0Command,
    },
    /// Fixture generation.
    Fixtures {
        #[command(subcommand)]
        command: FixturesCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Cubical,
    Pontryagin,
    Ainfty,
    Functor,
    Strata,
    Branes,
    C0,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    PaperLiteral,
    Koszul,
}

#[derive(Args, Clone)]
struct Common {
    /// Fixture to check instead of the built-in family.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Largest arity of A∞ relations checked.
    #[arg(long, default_value_t = 4)]
    dmax: usize,
    /// Points of the C⁰ grid scans.
    #[arg(long, default_value_t = 100_000)]
    grid: usize,
    #[arg(long, value_enum, default_value_t = ConventionArg::PaperLiteral)]
    convention: ConventionArg,
    /// Longest path (in edges) kept in loop models.
    #[arg(long, default_value_t = 4)]
    max_path_len: usize,
    /// Record wall time per check (makes reports run-dependent).
    #[arg(long)]
    timings: bool,
}

impl Common {
    fn options(&self) -> Options {
        Options {
            seed: self.seed,
            d_max: self.dmax,
            max_path_len: self.max_path_len,
            grid: self.grid,
            convention: match self.convention {
                ConventionArg::PaperLiteral => Convention::PaperLiteral,
                ConventionArg::Koszul => Convention::Koszul,
            },
            input: self.input.clone(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Space {
    #[value(name = "Z", alias = "z")]
    Z,
    #[value(name = "R", alias = "r")]
    R,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrataCheck {
    Mod2,
}

#[derive(Clone, Copy, ValueEnum)]
enum Assign {
    Random,
    Zero,
}

#[derive(Args)]
struct StrataArgs {
    #[arg(long, value_enum, default_value_t = Space::Z)]
    space: Space,
    #[arg(long)]
    d: usize,
    /// Print the codimension-1 strata.
    #[arg(long)]
    list: bool,
    #[arg(long, value_enum)]
    check: Option<StrataCheck>,
    /// Signed residues of the formal second boundary (diagnostic).
    #[arg(long)]
    signed: bool,
    #[arg(long, value_enum, default_value_t = Assign::Random)]
    assign: Assign,
    /// Print the Hasse diagram of the Z strata as DOT.
    #[arg(long)]
    dot: bool,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum BranesCommand {
    /// Maslov winding of a sampled path of Lagrangian frames.
    Maslov {
        #[arg(long = "in")]
        input: PathBuf,
        /// The path is a loop; its winding must be an integer.
        #[arg(long)]
        closed: bool,
        /// Largest admissible lift jump between samples.
        #[arg(long, default_value_t = 0.5)]
        max_jump: f64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum C0Command {
    /// Run every C⁰ check.
    Verify {
        /// Run all checks (the default; accepted for clarity).
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 100_000)]
        grid: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FixtureKind {
    DigraphSquares,
    RandomDg,
    TransferredAinfty,
    FramePath,
    Cubical,
}

#[derive(Subcommand)]
enum FixturesCommand {
    /// Write a reproducible fixture.
    Gen {
        #[arg(value_enum)]
        kind: FixtureKind,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        vertices: usize,
        #[arg(long, default_value_t = 4)]
        dmax: usize,
        #[arg(long, default_value_t = 3)]
        max_path_len: usize,
        /// Frame dimension for frame paths.
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        turns: i64,
        /// Output path; `.csv` selects CSV for frame paths.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(text: &str, path: Option<&PathBuf>) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.display().to_string(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn finish(report: VerificationReport, path: Option<&PathBuf>) -> Result<u8, CliError> {
    emit(&report.to_json(), path)?;
    let failed: Vec<&str> = report.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.id.as_str()).collect();
    if failed.is_empty() {
        eprintln!("{}: pass ({} checks)", report.suite, report.checks.len());
        Ok(0)
    } else {
        eprintln!("{}: FAIL ({})", report.suite, failed.join(", "));
        Ok(1)
    }
}

fn verify(suite: Suite, common: &Common) -> Result<u8, CliError> {
    let opt = common.options();
    let mut rec = Recorder::new(common.timings);
    let name = match suite {
        Suite::Cubical => (suites::cubical(&mut rec, &opt)?, "cubical").1,
        Suite::Pontryagin => (suites::pontryagin(&mut rec, &opt)?, "pontryagin").1,
        Suite::Ainfty => (suites::ainfty(&mut rec, &opt)?, "ainfty").1,
        Suite::Functor => (suites::functor(&mut rec, &opt)?, "functor").1,
        Suite::Strata => (suites::strata(&mut rec, &opt)?, "strata").1,
        Suite::Branes => (suites::branes(&mut rec, &opt)?, "branes").1,
        Suite::C0 => (suites::c0(&mut rec, &opt)?, "c0").1,
        Suite::All => {
            if opt.input.is_some() {
                return Err(CliError::Usage("verify all runs the built-in fixtures; --in is not accepted".into()));
            }
            (suites::all(&mut rec, &opt)?, "all").1
        }
    };
    finish(rec.finish(name, opt.seed), common.report.as_ref())
}

fn strata_cmd(a: &StrataArgs) -> Result<u8, CliError> {
    let mut rec = Recorder::new(false);
    let d = a.d;
    if a.list {
        let list: Vec<String> = match a.space {
            Space::Z => codim1_z(d).map_err(compute)?.iter().map(|f| f.stratum().to_string()).collect(),
            Space::R => codim1_r(d).map_err(compute)?.iter().map(|f| f.tree.to_string()).collect(),
        };
        for l in &list {
            println!("{l}");
        }
        rec.run("strata.list", || Ok((Status::Diagnostic, json!({ "d": d, "codim1": list.len(), "strata": list }))))?;
        let levels: Vec<usize> = match a.space {
            Space::Z => strata_z(d).map_err(compute)?.iter().map(|l| l.len()).collect(),
            Space::R => stasheff_strata(d).map_err(compute)?.iter().map(|l| l.len()).collect(),
        };
        rec.run("strata.levels", || Ok((Status::Diagnostic, json!({ "d": d, "by_codim": levels }))))?;
    }
    if let Some(StrataCheck::Mod2) = a.check {
        if matches!(a.space, Space::R) {
            return Err(CliError::Usage("--check mod2 applies to --space Z".into()));
        }
        rec.run("strata.mod2", || {
            let g = check_mod2_z(d).map_err(compute)?;
            let f = check_formal_mod2(d).map_err(compute)?;
            Ok((Status::from_bool(g.passed && f.passed), json!({ "geometric": g, "formal": f })))
        })?;
    }
    if a.signed {
        rec.run("strata.signed_residues", || {
            let mut rng = ChaCha8Rng::seed_from_u64(member_seed(a.seed, 0x5157));
            let assign: BTreeMap<String, i64> = formal_symbols(d)
                .map_err(compute)?
                .into_iter()
                .map(|s| {
                    let v = match a.assign {
                        Assign::Random => rng.random_range(0..=2),
                        Assign::Zero => 0,
                    };
                    (s, v)
                })
                .collect();
            let t = signed_residues(d, &assign).map_err(compute)?;
            Ok((Status::Diagnostic, serde_json::to_value(t).expect("serializable")))
        })?;
    }
    if a.dot {
        print!("{}", hasse_dot(d).map_err(compute)?);
    }
    let report = rec.finish("strata", a.seed);
    match &a.report {
        Some(p) => finish(report, Some(p)),
        // Listings and DOT go to stdout, so the JSON report needs --report.
        None => {
            eprintln!("strata: {} ({} checks)", if report.passed { "pass" } else { "FAIL" }, report.checks.len());
            Ok(u8::from(!report.passed))
        }
    }
}

fn maslov(input: &PathBuf, closed: bool, max_jump: f64, report: Option<&PathBuf>) -> Result<u8, CliError> {
    let frames = load_frames(input)?;
    let mut rec = Recorder::new(false);
    rec.run("branes.maslov", || {
        let path = match PhasePath::from_frames(&frames) {
            Ok(p) if max_jump < 0.5 => PhasePath::with_max_jump(p.samples().to_vec(), max_jump),
            other => other,
        };
        let path = match path {
            Ok(p) => p,
            Err(e) => return Ok((Status::Fail, json!({ "error": e.to_string() }))),
        };
        let lift = path.lift_difference();
        Ok(match maslov_winding(&path, closed) {
            Ok(w) => (
                Status::Pass,
                json!({ "samples": frames.len(), "n": frames[0].n(), "closed": closed, "winding": w, "lift_difference": lift }),
            ),
            Err(e) if !closed => {
                (Status::Diagnostic, json!({ "samples": frames.len(), "closed": false, "lift_difference": lift, "note": e.to_string() }))
            }
            Err(e) => (Status::Fail, json!({ "samples": frames.len(), "closed": true, "error": e.to_string() })),
        })
    })?;
    finish(rec.finish("branes", 0), report)
}

fn gen(
    kind: FixtureKind,
    seed: u64,
    vertices: usize,
    dmax: usize,
    max_path_len: usize,
    n: usize,
    samples: usize,
    turns: i64,
    out: Option<&PathBuf>,
) -> Result<u8, CliError> {
    let text = match kind {
        FixtureKind::DigraphSquares => Versioned::new(fixtures::digraph_squares(vertices, seed)).to_json(),
        FixtureKind::RandomDg => {
            let c = fixtures::random_dg(vertices, max_path_len, seed).map_err(CliError::Compute)?;
            Versioned::new(CategoryFile::from_category(&c)).to_json()
        }
        FixtureKind::TransferredAinfty => Versioned::new(fixtures::transferred_ainfty(seed, dmax)).to_json(),
        FixtureKind::Cubical => Versioned::new(CubicalFile::from_set(&fixtures::random_cubical(seed))).to_json(),
        FixtureKind::FramePath => {
            let frames = fixtures::frame_path(n, samples, turns, seed);
            if out.is_some_and(|p| p.extension().is_some_and(|e| e == "csv")) {
                frames_to_csv(&frames)
            } else {
                Versioned::new(FramePathFile { rows: frames.iter().map(|f| f.to_row()).collect() }).to_json()
            }
        }
    };
    emit(&text, out)?;
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match &cli.command {
        Command::Verify { suite, common } => verify(*suite, common),
        Command::Strata(a) => strata_cmd(a),
        Command::Branes { command: BranesCommand::Maslov { input, closed, max_jump, report } } => {
            maslov(input, *closed, *max_jump, report.as_ref())
        }
        Command::C0 { command: C0Command::Verify { all: _, grid, seed, report, timings } } => {
            let opt = Options { seed: *seed, grid: *grid, ..Options::default() };
            let mut rec = Recorder::new(*timings);
            suites::c0(&mut rec, &opt)?;
            finish(rec.finish("c0", *seed), report.as_ref())
        }
        Command::Fixtures { command: FixturesCommand::Gen { kind, seed, vertices, dmax, max_path_len, n, samples, turns, out } } => {
            gen(*kind, *seed, *vertices, *dmax, *max_path_len, *n, *samples, *turns, out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    if let Some(t) = std::env::var("AINF_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // Ignored if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
