//! `rootradii`: real root isolation, complex root clustering and root
//! radii from the command line.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use dashu_ratio::RBig;
use rootradii::gens::FamilySpec;
use rootradii::rootradii::{annuli_cover, default_delta};
use rootradii::subdiv::{cluster_complex, isolate_real, ComplexOptions, Mode, RealOptions};
use rootradii::{Dyadic, Error, GaussInt, IntPolynomial, RunStats};

#[derive(Parser)]
#[command(name = "rootradii", version, about = "Certified root finding with root radii covers")]
struct Cli {
    /// Worker threads for the per-depth tests (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Isolate the real roots.
    Risolate(SolveArgs),
    /// Cluster the complex roots into discs of radius at most epsilon.
    Ccluster(ClusterArgs),
    /// Print an annuli cover of the roots around a center.
    Radii(RadiiArgs),
    /// Print a polynomial in the text format.
    Gen(InputArgs),
    /// Run solvers over families and sizes and print a CSV table.
    Bench(BenchArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Polynomial file (`d` then lines `j re [im]`).
    #[arg(long, conflicts_with = "gen", required_unless_present = "gen")]
    poly: Option<PathBuf>,

    /// Family spec such as `bernoulli:64`, `grid:2`, `mignotte:64:14`,
    /// `random:8:8:1`.
    #[arg(long)]
    gen: Option<String>,

    /// Seed for the `random` family; replaces the seed in the spec.
    #[arg(long)]
    seed: Option<u64>,

    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,

    #[arg(long, default_value = "radii")]
    mode: String,

    /// Relative width of the annuli covers (default 1/d^2).
    #[arg(long)]
    delta: Option<String>,

    /// Append the run statistics as `key value` lines.
    #[arg(long)]
    stats: bool,
}

#[derive(Args)]
struct ClusterArgs {
    #[command(flatten)]
    solve: SolveArgs,

    /// Largest radius of an output disc, a dyadic such as `2^-53` or
    /// `1/1024`.
    #[arg(long, default_value = "2^-53")]
    epsilon: String,
}

#[derive(Args)]
struct RadiiArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Gaussian-integer center such as `0`, `1`, `i`, `2-3i`.
    #[arg(long, default_value = "0")]
    center: String,

    #[arg(long)]
    delta: Option<String>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated families: bernoulli, wilkinson, grid, mignotte,
    /// random.
    #[arg(long, value_delimiter = ',', required = true)]
    families: Vec<String>,

    /// Comma-separated sizes: the degree, or `n` for grid.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,

    /// Comma-separated modes.
    #[arg(long, value_delimiter = ',', default_value = "classic,radii")]
    modes: Vec<String>,

    /// Bitsize for mignotte and random.
    #[arg(long, default_value_t = 14)]
    tau: u32,

    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Cluster complex roots instead of isolating real roots.
    #[arg(long)]
    complex: bool,

    #[arg(long, default_value = "2^-53")]
    epsilon: String,

    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::PrecisionCap { .. } => 3,
        _ => 2,
    }
}

fn run(cmd: Cmd) -> Result<(), Error> {
    match cmd {
        Cmd::Risolate(a) => {
            let p = load(&a.input)?;
            let opts = RealOptions { mode: mode(&a.mode)?, delta: delta(a.delta.as_deref())? };
            let (roots, stats) = isolate_real(&p, &opts)?;
            let mut s = String::new();
            for r in &roots {
                let (l, h) = (r.segment.lo(), r.segment.hi());
                writeln!(s, "{} {} {}", frac(&l), frac(&h), r.multiplicity).unwrap();
            }
            emit(&a.input.out, s, a.stats.then_some(&stats))
        }
        Cmd::Ccluster(a) => {
            let p = load(&a.solve.input)?;
            let opts = ComplexOptions {
                mode: mode(&a.solve.mode)?,
                delta: delta(a.solve.delta.as_deref())?,
                epsilon: epsilon(&a.epsilon)?,
            };
            let (clusters, stats) = cluster_complex(&p, &opts)?;
            let mut s = String::new();
            for c in &clusters {
                let d = &c.disc;
                writeln!(s, "{} {} {} {}", frac(&d.re), frac(&d.im), frac(&d.radius), c.multiplicity).unwrap();
            }
            emit(&a.solve.input.out, s, a.solve.stats.then_some(&stats))
        }
        Cmd::Radii(a) => {
            let p = load(&a.input)?;
            let c = GaussInt::from_str(&a.center)?;
            let delta = delta(a.delta.as_deref())?.unwrap_or_else(|| default_delta(p.degree()));
            let cover = annuli_cover(&p, &c, &delta)?;
            emit(&a.input.out, cover.to_string(), None)
        }
        Cmd::Gen(a) => {
            let p = load(&a)?;
            emit(&a.out, p.to_text(), None)
        }
        Cmd::Bench(a) => bench(&a),
    }
}

fn bench(a: &BenchArgs) -> Result<(), Error> {
    let modes = a.modes.iter().map(|m| mode(m)).collect::<Result<Vec<_>, _>>()?;
    let eps = epsilon(&a.epsilon)?;
    let count = if a.complex { "clusters" } else { "real_roots" };
    let mut s = format!("family,mode,d,tau,{count},n_t0,n_tstar,t_radii,t_total\n");
    for fam in &a.families {
        for &n in &a.sizes {
            let spec = match fam.as_str() {
                "bernoulli" => FamilySpec::Bernoulli { d: n },
                "wilkinson" => FamilySpec::Wilkinson { d: n },
                "grid" => FamilySpec::Grid { n },
                "mignotte" => FamilySpec::Mignotte { d: n, tau: a.tau },
                "random" => FamilySpec::Random { d: n, tau: a.tau, seed: a.seed },
                _ => return Err(Error::InvalidInput(format!("unknown family `{fam}`"))),
            };
            let p = spec.generate()?;
            for &m in &modes {
                let (k, st) = if a.complex {
                    let opts = ComplexOptions { mode: m, delta: None, epsilon: eps.clone() };
                    let (c, st) = cluster_complex(&p, &opts)?;
                    (c.len(), st)
                } else {
                    let (r, st) = isolate_real(&p, &RealOptions { mode: m, delta: None })?;
                    (r.len(), st)
                };
                writeln!(
                    s,
                    "{fam},{m},{},{},{k},{},{},{:.6},{:.6}",
                    p.degree(),
                    p.bitsize(),
                    st.n_t0,
                    st.n_tstar,
                    st.t_radii,
                    st.t_total
                )
                .unwrap();
            }
        }
    }
    emit(&a.out, s, None)
}

fn load(a: &InputArgs) -> Result<IntPolynomial, Error> {
    if let Some(path) = &a.poly {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        return IntPolynomial::parse_text(&text);
    }
    let mut spec: FamilySpec = a.gen.as_deref().unwrap_or_default().parse()?;
    if let (FamilySpec::Random { seed, .. }, Some(s)) = (&mut spec, a.seed) {
        *seed = s;
    }
    spec.generate()
}

fn mode(s: &str) -> Result<Mode, Error> {
    s.parse()
}

fn delta(s: Option<&str>) -> Result<Option<RBig>, Error> {
    let Some(s) = s else { return Ok(None) };
    let d = RBig::from_str(s.trim()).map_err(|_| Error::InvalidInput(format!("bad delta `{s}`")))?;
    if d <= RBig::ZERO {
        return Err(Error::InvalidInput("delta must be positive".into()));
    }
    Ok(Some(d))
}

fn epsilon(s: &str) -> Result<Dyadic, Error> {
    let e: Dyadic = s.parse()?;
    if e.signum() <= 0 {
        return Err(Error::InvalidInput("epsilon must be positive".into()));
    }
    Ok(e)
}

/// `num den` of a dyadic in lowest terms.
fn frac(x: &Dyadic) -> String {
    let (n, d) = x.to_fraction();
    format!("{n} {d}")
}

fn emit(out: &Option<PathBuf>, mut body: String, stats: Option<&RunStats>) -> Result<(), Error> {
    if let Some(st) = stats {
        body.push_str(&st.to_string());
    }
    let res = match out {
        Some(path) => fs::write(path, body),
        None => io::stdout().lock().write_all(body.as_bytes()),
    };
    res.map_err(|e| Error::InvalidInput(format!("cannot write output: {e}")))
}
