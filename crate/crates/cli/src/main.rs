use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use agree::bench::{run_sweep, sweep_range, write_csv, BenchError, Suite, SweepConfig};
use agree::datasets::{detect_and_evaluate, karate, karate_ids, CoverRunError};
use agree::detection::{detect_with_workers, uncover, KRule, ThresholdNorm, TiePolicy};
use agree::generators::{gen_lfr_like, gen_planted, GenError, LfrLikeConfig, PlantedConfig};
use agree::io::{align_labels, load_edge_list, read_labels, write_partition, IdRemap, LoadOptions};
use agree::metrics::scores;
use agree::runtime::{poll_and_merge, run_rounds, PollerPlan};
use agree::{DetectionParams, Graph, Partition};
use clap::{Args, Parser, Subcommand, ValueEnum};

const AMAZON_HINT: &str =
    "download com-amazon.ungraph.txt.gz and com-amazon.all.dedup.cmty.txt.gz \
from https://snap.stanford.edu/data/com-Amazon.html and gunzip them";

#[derive(Parser)]
#[command(
    name = "agree",
    version,
    about = "Local community detection by neighbour-list agreement"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a benchmark graph with planted communities.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Detect communities in an edge list.
    Detect(DetectArgs),
    /// Compare two `vertex label` files.
    Eval {
        #[arg(long)]
        pred: PathBuf,
        #[arg(long)]
        truth: PathBuf,
    },
    /// Sweep the mixing parameter of a benchmark family and write CSV.
    Bench(BenchArgs),
    /// Score detection on the SNAP Amazon co-purchasing network.
    Amazon {
        #[arg(long)]
        edges: PathBuf,
        #[arg(long)]
        truth: PathBuf,
        #[command(flatten)]
        detection: DetectionOpts,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Equal groups with independent intra- and inter-group edges.
    Planted {
        #[arg(long, default_value_t = 128)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        groups: usize,
        /// Expected degree.
        #[arg(long, default_value_t = 16.0)]
        z: f64,
        /// Expected number of edges leaving a vertex's group.
        #[arg(long, default_value_t = 1.0)]
        zout: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output prefix; writes `<prefix>.edges` and `<prefix>.truth`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Power-law degrees and community sizes.
    LfrLike {
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 0.1)]
        mu: f64,
        #[arg(long, default_value_t = 20.0)]
        avg_degree: f64,
        #[arg(long, default_value_t = 50)]
        max_degree: usize,
        #[arg(long, default_value_t = 2.0)]
        degree_exponent: f64,
        #[arg(long, default_value_t = 1.0)]
        community_exponent: f64,
        #[arg(long, default_value_t = 10)]
        min_community: usize,
        #[arg(long, default_value_t = 50)]
        max_community: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Ties {
    Random,
    LowestId,
}

#[derive(Clone, Copy, ValueEnum)]
enum Threshold {
    Degree,
    ListSize,
}

#[derive(Args)]
struct DetectionOpts {
    #[arg(long, default_value_t = 0.2)]
    tau: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// How ties between equally good neighbours are broken.
    #[arg(long, value_enum, default_value_t = Ties::Random)]
    ties: Ties,
    /// What the agreement threshold is measured against.
    #[arg(long, value_enum, default_value_t = Threshold::Degree)]
    threshold: Threshold,
    /// Candidate list length: half-ceil, half-floor, all, or a fixed number.
    #[arg(long, default_value = "half-ceil", value_parser = parse_k_rule)]
    k: KRule,
    /// Do not favour higher-degree neighbours among agreement ties.
    #[arg(long)]
    no_degree_preference: bool,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

impl DetectionOpts {
    fn params(&self) -> DetectionParams {
        DetectionParams {
            tau: self.tau,
            k_rule: self.k,
            threshold: match self.threshold {
                Threshold::Degree => ThresholdNorm::Degree,
                Threshold::ListSize => ThresholdNorm::ListSize,
            },
            prefer_higher_degree: !self.no_degree_preference,
            ties: match self.ties {
                Ties::Random => TiePolicy::SeededRandom,
                Ties::LowestId => TiePolicy::LowestId,
            },
            seed: self.seed,
        }
    }
}

fn parse_k_rule(s: &str) -> Result<KRule, String> {
    match s {
        "half-ceil" => Ok(KRule::HalfCeil),
        "half-floor" => Ok(KRule::HalfFloor),
        "all" => Ok(KRule::All),
        _ => match s.parse::<usize>() {
            Ok(0) => Err("a fixed list length must be at least 1".into()),
            Ok(k) => Ok(KRule::Fixed(k)),
            Err(_) => Err(format!(
                "expected half-ceil, half-floor, all or a number, got {s:?}"
            )),
        },
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    /// Batch computation over the whole graph.
    Pipeline,
    /// Vertex actors exchanging messages in two rounds.
    Actors,
}

#[derive(Clone, Copy, ValueEnum)]
enum PollPlan {
    Random,
    Blocks,
}

#[derive(Args)]
struct DetectArgs {
    /// Edge list path, or `@karate` for the bundled karate club.
    #[arg(long = "in", value_name = "PATH")]
    input: String,
    #[command(flatten)]
    detection: DetectionOpts,
    #[arg(long, value_enum, default_value_t = Engine::Pipeline)]
    engine: Engine,
    /// Merge with this many concurrent pollers instead of a single pass.
    #[arg(long)]
    pollers: Option<usize>,
    #[arg(long, value_enum, default_value_t = PollPlan::Random)]
    poll_plan: PollPlan,
    /// Output file; defaults to standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    Planted,
    LfrLike,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value_t = SuiteName::Planted)]
    suite: SuiteName,
    /// `start:end:step` of z_out (planted) or mu (lfr-like).
    #[arg(long)]
    sweep: Option<String>,
    #[arg(long, default_value_t = 10)]
    repeats: usize,
    /// Comma-separated thresholds.
    #[arg(long, value_delimiter = ',', default_value = "0.2")]
    tau: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write zero in the timing column so output is reproducible.
    #[arg(long)]
    no_timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum CliError {
    /// Unreadable or inconsistent input.
    Data(String),
    /// Invalid parameters.
    Config(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Data(_) => 1,
            CliError::Config(_) => 2,
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        match e {
            GenError::Graph(_) => CliError::Data(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<BenchError> for CliError {
    fn from(e: BenchError) -> Self {
        CliError::Config(e.to_string())
    }
}

fn data_err(context: impl std::fmt::Display, e: impl std::fmt::Display) -> CliError {
    CliError::Data(format!("{context}: {e}"))
}

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| data_err(path.display(), e))
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| data_err(path.display(), e))
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(create(p)?),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn with_extension(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn generate(family: Family) -> Result<(), CliError> {
    let (bench, out) = match family {
        Family::Planted {
            n,
            groups,
            z,
            zout,
            seed,
            out,
        } => {
            let config = PlantedConfig {
                n,
                groups,
                z,
                z_out: zout,
                seed,
            };
            (gen_planted(&config)?, out)
        }
        Family::LfrLike {
            n,
            mu,
            avg_degree,
            max_degree,
            degree_exponent,
            community_exponent,
            min_community,
            max_community,
            seed,
            out,
        } => {
            let config = LfrLikeConfig {
                n,
                mu,
                degree_exponent,
                community_exponent,
                avg_degree,
                max_degree,
                min_community,
                max_community,
                seed,
            };
            (gen_lfr_like(&config)?, out)
        }
    };
    let (edges_path, truth_path) = (with_extension(&out, "edges"), with_extension(&out, "truth"));
    let mut edges = create(&edges_path)?;
    let mut truth = create(&truth_path)?;
    bench.write(&mut edges, &mut truth)?;
    edges.flush()?;
    truth.flush()?;
    eprintln!(
        "wrote {} and {}: n={} m={} communities={} inter-edge fraction={:.4}",
        edges_path.display(),
        truth_path.display(),
        bench.graph.n(),
        bench.graph.m(),
        bench.truth.num_communities(),
        bench.inter_edge_fraction()
    );
    Ok(())
}

fn load_input(input: &str) -> Result<(Graph, IdRemap), CliError> {
    if input == "@karate" {
        return Ok((karate().0, karate_ids()));
    }
    let path = Path::new(input);
    let loaded = load_edge_list(open(path)?, LoadOptions::default())
        .map_err(|e| data_err(path.display(), e))?;
    let w = loaded.warnings;
    if w.self_loops + w.duplicates + w.isolated_stripped > 0 {
        eprintln!(
            "warning: dropped {} self-loops, {} duplicate edges, {} isolated vertices",
            w.self_loops, w.duplicates, w.isolated_stripped
        );
    }
    Ok((loaded.graph, loaded.remap))
}

fn detect(args: DetectArgs) -> Result<(), CliError> {
    let params = args.detection.params();
    params
        .validate()
        .map_err(|e| CliError::Config(e.to_string()))?;
    if args.pollers == Some(0) {
        return Err(CliError::Config("--pollers must be at least 1".into()));
    }
    let (graph, remap) = load_input(&args.input)?;
    let workers = args.detection.workers;

    let start = Instant::now();
    let preferred = match args.engine {
        Engine::Pipeline => detect_with_workers(&graph, &params, workers).map(|d| d.assignment),
        Engine::Actors => run_rounds(&graph, &params, workers).map(|r| r.assignment),
    }
    .map_err(|e| CliError::Config(e.to_string()))?;
    let partition: Partition = match args.pollers {
        None => uncover(preferred.as_slice()),
        Some(p) => {
            let plan = match args.poll_plan {
                PollPlan::Random => PollerPlan::random(graph.n(), p, 0.1, params.seed),
                PollPlan::Blocks => PollerPlan::blocks(graph.n(), p),
            };
            poll_and_merge(preferred.as_slice(), &plan)
                .map_err(|e| CliError::Config(e.to_string()))?
        }
    };
    let elapsed = start.elapsed();

    let mut out = output(args.out.as_deref())?;
    write_partition(&partition, &remap, &mut out)?;
    out.flush()?;
    eprintln!(
        "n={} m={} communities={} fallbacks={} time={:.1}ms",
        graph.n(),
        graph.m(),
        partition.num_communities(),
        preferred.fallback_count(),
        elapsed.as_secs_f64() * 1e3
    );
    Ok(())
}

fn eval(pred: &Path, truth: &Path) -> Result<(), CliError> {
    let p = read_labels(open(pred)?).map_err(|e| data_err(pred.display(), e))?;
    let t = read_labels(open(truth)?).map_err(|e| data_err(truth.display(), e))?;
    let (p, t) = align_labels(&p, &t).map_err(|e| CliError::Data(e.to_string()))?;
    let s = scores(&p, &t).map_err(|e| CliError::Data(e.to_string()))?;
    println!("ARI={:.6} NMI={:.6}", s.ari, s.nmi);
    Ok(())
}

fn parse_sweep(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || CliError::Config(format!("--sweep expects start:end:step, got {spec:?}"));
    let [a, b, c] = parts[..] else {
        return Err(bad());
    };
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    Ok(sweep_range(num(a)?, num(b)?, num(c)?)?)
}

fn bench(args: BenchArgs) -> Result<(), CliError> {
    let suite = match args.suite {
        SuiteName::Planted => Suite::planted(),
        SuiteName::LfrLike => Suite::lfr_like(),
    };
    let mut config = SweepConfig::new(suite);
    if let Some(spec) = &args.sweep {
        config.values = parse_sweep(spec)?;
    }
    config.taus = args.tau;
    config.repeats = args.repeats;
    config.master_seed = args.seed;
    let rows = run_sweep(&config)?;
    let mut out = output(args.out.as_deref())?;
    write_csv(&rows, !args.no_timing, &mut out)?;
    out.flush()?;
    Ok(())
}

fn amazon(edges: &Path, truth: &Path, opts: &DetectionOpts) -> Result<(), CliError> {
    for path in [edges, truth] {
        if !path.exists() {
            return Err(CliError::Data(format!(
                "{} not found; {AMAZON_HINT}",
                path.display()
            )));
        }
    }
    let params = opts.params();
    params
        .validate()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let start = Instant::now();
    let run = detect_and_evaluate(open(edges)?, open(truth)?, &params).map_err(|e| match e {
        CoverRunError::Params(p) => CliError::Config(p.to_string()),
        CoverRunError::Load(l) => CliError::Data(l.to_string()),
    })?;
    println!(
        "n={} m={} truth_communities={} evaluated={} ARI={:.6} NMI={:.6} time={:.2}s",
        run.n,
        run.m,
        run.communities,
        run.evaluation.evaluated,
        run.evaluation.scores.ari,
        run.evaluation.scores.nmi,
        start.elapsed().as_secs_f64()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate { family } => generate(family),
        Command::Detect(args) => detect(args),
        Command::Eval { pred, truth } => eval(&pred, &truth),
        Command::Bench(args) => bench(args),
        Command::Amazon {
            edges,
            truth,
            detection,
        } => amazon(&edges, &truth, &detection),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = match &e {
                CliError::Data(m) | CliError::Config(m) => m,
            };
            eprintln!("error: {msg}");
            ExitCode::from(e.code())
        }
    }
}
