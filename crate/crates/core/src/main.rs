use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use tvlab::complexes::{build_vnk, injections, quillen_map_and_fibers, summarize, SizeCaps};
use tvlab::generate::Scheme;
use tvlab::geometry::Point;
use tvlab::homology::{cell_poset_homology, homology, knk_complex};
use tvlab::instance::{load_system, InstanceFile};
use tvlab::morse::lemma8_matching;
use tvlab::rational::{format_rational, parse_rational};
use tvlab::sarkaria::{
    equivariant_separators, facet_avoids_b, lift, sarkaria_zero_in_hull, subspace_dims,
};
use tvlab::trials::run_trials;
use tvlab::tverberg::{
    build_extremal, check_colorful_intersection, extract_flat_transversal, find_tverberg,
    is_tverberg, join_bound_check, theorem1_experiment, ColorSystem, Family, KPartition,
};

#[derive(Parser)]
#[command(name = "tvlab", version, about = "Exact Tverberg / colorful Helly workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tverberg partitions of one family
    #[command(subcommand)]
    Tverberg(TverbergCmd),
    /// Colorful intersection property
    #[command(subcommand)]
    Colorful(ColorfulCmd),
    /// Seeded experiments
    #[command(subcommand)]
    Experiment(ExperimentCmd),
    /// Instance constructions
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Affine transversals from Tverberg witnesses
    #[command(subcommand)]
    Transversal(TransversalCmd),
    /// The tensor lift and separating functionals
    #[command(subcommand)]
    Sarkaria(SarkariaCmd),
    /// K(n,k) and C(n,k)
    #[command(subcommand)]
    Complex(ComplexCmd),
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    file: PathBuf,
    /// 0-based family index
    #[arg(long, default_value_t = 0)]
    family: usize,
}

#[derive(Subcommand)]
enum TverbergCmd {
    /// First Tverberg k-partition, or "none"
    Search {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        k: usize,
    },
    /// Test one partition, written as `0,2|1`
    Check {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        partition: String,
    },
}

#[derive(Subcommand)]
enum ColorfulCmd {
    Check {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Args)]
struct TrialArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    trials: u64,
    /// axis-slabs, shifted-boxes, random-points-fattened, or all
    #[arg(long, default_value = "axis-slabs")]
    scheme: String,
    /// Include every trial record, not only the summary
    #[arg(long)]
    records: bool,
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// Run the hypothesis/verdict pipeline on a file or on seeded instances
    Theorem1 {
        #[arg(long, conflicts_with_all = ["d", "m", "n"])]
        file: Option<PathBuf>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        /// axis-slabs, shifted-boxes, random-points-fattened, or all
        #[arg(long, default_value = "axis-slabs")]
        scheme: String,
        /// Include every trial record, not only the summary
        #[arg(long)]
        records: bool,
    },
    /// Probe parameters outside the theorem (non-prime-power k); never fails
    Conjecture {
        #[command(flatten)]
        t: TrialArgs,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Tight example for the size bound
    Extremal {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Base points as JSON `[["p/q", …], …]` in R^{d/m}
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TransversalCmd {
    Extract {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum SarkariaCmd {
    /// The (d+1)×k matrix of `x` lifted with basis vector `i`
    Lift {
        /// Comma-separated rationals
        #[arg(long)]
        point: String,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        k: usize,
    },
    /// Zero-in-hull LP for one partition, compared with the direct test
    Certify {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        partition: String,
    },
    /// Separating functionals for a Tverberg-free family
    Separators {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        k: usize,
    },
    /// Margins of the functionals on join facets; all facets unless given
    AvoidB {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        k: usize,
        /// One injection per family, e.g. `1,2;2,3` (1-based)
        #[arg(long)]
        injections: Option<String>,
    },
    /// Dimensions of Y, B and Y ∩ B^⊥
    Dims {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Args)]
struct NK {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
}

#[derive(Subcommand)]
enum ComplexCmd {
    /// Counts for K(n,k) and C(n,k)
    Build {
        #[command(flatten)]
        nk: NK,
    },
    /// Integral homology of K(n,k), or of C(n,k) with --cells
    Homology {
        #[command(flatten)]
        nk: NK,
        #[arg(long)]
        cells: bool,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Order reversal and fibers of σ ↦ η_σ
    Quillen {
        #[command(flatten)]
        nk: NK,
    },
    /// Recursive acyclic matching on C(n,k)
    Morse {
        #[command(flatten)]
        nk: NK,
        #[arg(long)]
        pairs: bool,
    },
}

/// Exit status requested by a command that otherwise succeeded.
enum Status {
    Ok,
    Failed,
}

fn say(text: &str) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn emit<T: Serialize>(value: &T) -> anyhow::Result<()> {
    say(&serde_json::to_string_pretty(value)?)
}

fn family(args: &FamilyArgs) -> anyhow::Result<Family> {
    let system = load_system(&args.file)?;
    system
        .families()
        .get(args.family)
        .cloned()
        .ok_or_else(|| tvlab::Error::Input(format!("no family {} in {}", args.family, args.file.display())).into())
}

fn parse_partition(n: usize, text: &str) -> anyhow::Result<KPartition> {
    let blocks = text
        .split('|')
        .map(|b| {
            b.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| tvlab::Error::Input(format!("bad index {x:?}"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(KPartition::new(n, blocks)?)
}

fn parse_schemes(s: &str) -> anyhow::Result<Vec<Scheme>> {
    if s == "all" {
        return Ok(Scheme::ALL.to_vec());
    }
    s.split(',').map(|x| x.trim().parse::<Scheme>().map_err(Into::into)).collect()
}

fn batch(t: &TrialArgs) -> anyhow::Result<tvlab::trials::BatchReport> {
    let schemes = parse_schemes(&t.scheme)?;
    let mut report = run_trials(t.d, t.m, t.k, t.n, t.seed, t.trials, &schemes)?;
    if !t.records {
        report.records.retain(|r| r.verdict.is_failure());
    }
    Ok(report)
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    let caps = SizeCaps::from_env()?;
    match cli.command {
        Command::Tverberg(TverbergCmd::Search { fam, k }) => {
            match find_tverberg(&family(&fam)?, k)? {
                Some(w) => emit(&w.view())?,
                None => say("none")?,
            }
        }
        Command::Tverberg(TverbergCmd::Check { fam, partition }) => {
            let f = family(&fam)?;
            let p = parse_partition(f.len(), &partition)?;
            let w = is_tverberg(&f, &p)?;
            emit(&json!({
                "partition": p.blocks(),
                "tverberg": w.is_some(),
                "witness": w.map(|w| w.view()),
            }))?;
        }
        Command::Colorful(ColorfulCmd::Check { file }) => {
            let v = check_colorful_intersection(&load_system(&file)?)?;
            emit(&json!({ "colorful": v.is_none(), "violation": v }))?;
        }
        Command::Experiment(ExperimentCmd::Theorem1 { file, d, m, k, n, seed, trials, scheme, records }) => {
            if let Some(file) = file {
                let report = theorem1_experiment(&load_system(&file)?, k)?;
                emit(&report)?;
                return Ok(if report.verdict.is_failure() { Status::Failed } else { Status::Ok });
            }
            let (Some(d), Some(m), Some(n)) = (d, m, n) else {
                return Err(tvlab::Error::Input("give --file or all of --d --m --n".into()).into());
            };
            let report = batch(&TrialArgs { d, m, k, n, seed, trials, scheme, records })?;
            emit(&report)?;
            if report.any_failure() {
                return Ok(Status::Failed);
            }
        }
        Command::Experiment(ExperimentCmd::Conjecture { t }) => {
            let report = batch(&t)?;
            emit(&json!({
                "join_bound": join_bound_check(t.d, t.m, t.k, t.n),
                "k_prime_power": tvlab::tverberg::is_prime_power(t.k),
                "batch": report,
            }))?;
        }
        Command::Construct(ConstructCmd::Extremal { d, m, k, seed, base, out }) => {
            let base = base.map(|b| parse_points(&b)).transpose()?;
            let system = build_extremal(d, m, k, base, seed)?;
            let file = InstanceFile::from_system(&system);
            match out {
                Some(path) => {
                    file.save(&path)?;
                    emit(&json!({ "written": path, "n": system.n(), "m": system.m() }))?;
                }
                None => say(&file.to_json())?,
            }
        }
        Command::Transversal(TransversalCmd::Extract { fam, k }) => {
            let f = family(&fam)?;
            let Some(w) = find_tverberg(&f, k)? else {
                say("none")?;
                return Ok(Status::Ok);
            };
            let t = extract_flat_transversal(&f, &w)?;
            emit(&json!({
                "partition": w.partition.blocks(),
                "dimension": t.flat.dim(),
                "bound": t.bound,
                "base": t.flat.base.to_strings(),
                "directions": t.flat.directions.iter().map(|v| v.iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "hits": t.hits.iter().map(Point::to_strings).collect::<Vec<_>>(),
            }))?;
        }
        Command::Sarkaria(cmd) => return sarkaria(cmd),
        Command::Complex(cmd) => return complex(cmd, caps),
    }
    Ok(Status::Ok)
}

fn parse_points(text: &str) -> anyhow::Result<Vec<Point>> {
    let raw: Vec<Vec<String>> =
        serde_json::from_str(text).map_err(|e| tvlab::Error::Input(format!("bad --base: {e}")))?;
    raw.iter()
        .map(|p| Ok(Point::new(p.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?)))
        .collect()
}

fn sarkaria(cmd: SarkariaCmd) -> anyhow::Result<Status> {
    match cmd {
        SarkariaCmd::Lift { point, i, k } => {
            let coords = point.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
            let l = lift(&Point::new(coords), i, k)?;
            emit(&json!({ "matrix": l.to_strings() }))?;
        }
        SarkariaCmd::Certify { fam, partition } => {
            let f = family(&fam)?;
            let p = parse_partition(f.len(), &partition)?;
            let lambda = sarkaria_zero_in_hull(&f, &p)?;
            let direct = is_tverberg(&f, &p)?.is_some();
            emit(&json!({
                "partition": p.blocks(),
                "zero_in_hull": lambda.is_some(),
                "coefficients": lambda.map(|l| l.iter().map(format_rational).collect::<Vec<_>>()),
                "tverberg": direct,
            }))?;
        }
        SarkariaCmd::Separators { fam, k } => {
            let s = equivariant_separators(&family(&fam)?, k)?;
            let reps: std::collections::HashSet<_> = s.representatives.iter().collect();
            let entries: Vec<_> = s
                .entries
                .iter()
                .map(|(phi, a)| {
                    json!({
                        "surjection": phi.values(),
                        "representative": reps.contains(phi),
                        "functional": a.to_strings(),
                    })
                })
                .collect();
            emit(&json!({ "k": k, "orbits": s.representatives.len(), "separators": entries }))?;
        }
        SarkariaCmd::AvoidB { file, k, injections: given } => {
            let system = load_system(&file)?;
            let assignments =
                system.families().iter().map(|f| equivariant_separators(f, k)).collect::<Result<Vec<_>, _>>()?;
            let choices = match given {
                Some(text) => vec![parse_injections(&text)?],
                None => all_facet_choices(&system, k),
            };
            let mut reports = Vec::with_capacity(choices.len());
            for rhos in &choices {
                reports.push(facet_avoids_b(&system, rhos, &assignments)?);
            }
            let ok = reports.iter().all(|r| r.all_positive && r.hull_misses_b);
            emit(&json!({ "facets": reports.len(), "all_positive": ok, "reports": reports }))?;
            if !ok {
                return Ok(Status::Failed);
            }
        }
        SarkariaCmd::Dims { d, k } => emit(&subspace_dims(d, k)?)?,
    }
    Ok(Status::Ok)
}

fn parse_injections(text: &str) -> anyhow::Result<Vec<Vec<usize>>> {
    text.split(';')
        .map(|r| {
            r.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| tvlab::Error::Input(format!("bad index {x:?}")).into()))
                .collect()
        })
        .collect()
}

fn all_facet_choices(system: &ColorSystem, k: usize) -> Vec<Vec<Vec<usize>>> {
    let rhos = injections(system.n(), k);
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for _ in 0..system.m() {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                rhos.iter().map(move |r| {
                    let mut v = prefix.clone();
                    v.push(r.clone());
                    v
                })
            })
            .collect();
    }
    out
}

fn complex(cmd: ComplexCmd, caps: SizeCaps) -> anyhow::Result<Status> {
    match cmd {
        ComplexCmd::Build { nk } => emit(&summarize(nk.n, nk.k)?)?,
        ComplexCmd::Homology { nk, cells, max_degree } => {
            let report = if cells {
                let c = tvlab::complexes::build_cnk(nk.n, nk.k)?;
                cell_poset_homology(&c, caps.simplices, max_degree)?
            } else {
                homology(&knk_complex(nk.n, nk.k, caps)?, max_degree)?
            };
            let target = nk.n as i64 - nk.k as i64 - 1;
            let vanishes = target < 0 || report.reduced_vanishes_through(target as usize);
            emit(&json!({
                "n": nk.n,
                "k": nk.k,
                "complex": if cells { "C" } else { "K" },
                "vertices": if cells { None } else { Some(build_vnk(nk.n, nk.k).len()) },
                "homology": report,
                "connectivity_degree": target,
                "reduced_vanishes": vanishes,
            }))?;
        }
        ComplexCmd::Quillen { nk } => {
            let r = quillen_map_and_fibers(nk.n, nk.k, caps)?;
            let ok = r.ok();
            emit(&r)?;
            if !ok {
                return Ok(Status::Failed);
            }
        }
        ComplexCmd::Morse { nk, pairs } => {
            let (_, m, r) = lemma8_matching(nk.n, nk.k)?;
            let listed = pairs.then(|| {
                m.pairs.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect::<Vec<_>>()
            });
            emit(&json!({ "n": nk.n, "k": nk.k, "report": r, "pairs": listed }))?;
            let full = (nk.n - nk.k) as i32;
            if !r.acyclic || r.critical.iter().any(|c| c.dim != full) {
                return Ok(Status::Failed);
            }
        }
    }
    Ok(Status::Ok)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<tvlab::Error>() {
        Some(tvlab::Error::Internal(_)) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
