use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use sbm_spectral::detect::{
    accuracy, spectral_partition_general, DetectOptions, DEFAULT_SEPARATION,
};
use sbm_spectral::harness::{self, SweepConfig};
use sbm_spectral::io::{
    read_edge_list, read_partition, write_edge_list, write_partition, EdgeListHeader,
};
use sbm_spectral::sbm::{make_planted_partition, sample_graph};
use sbm_spectral::{theory, BlockParams, Error, Result};

#[derive(Parser)]
#[command(
    name = "sbm",
    about = "Block-model sampling, spectral detection and spectrum checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a planted-partition graph; writes an edge list and the true partition.
    Generate(Common),
    /// Full modularity spectrum vs. the semicircle (CSV + JSON summary).
    Spectrum(Common),
    /// Spectral modularity detection on an edge-list file.
    Detect(Common),
    /// Accuracy sweep over cin - cout at fixed mean degree (CSV).
    Sweep(Common),
    /// Stochastic moment check of Tr X^(2m) against n c^m C_m (CSV).
    Moments(Common),
    /// Closed-form predictions as JSON.
    Theory(Common),
}

/// Every option can also come from the `--config` JSON file (same names,
/// snake_case); flags win.
#[derive(Args, Default, Deserialize, Serialize, Clone)]
#[serde(deny_unknown_fields, default)]
struct Common {
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    cin: Option<f64>,
    #[arg(long)]
    cout: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Main output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for sweeps.
    #[arg(long)]
    jobs: Option<usize>,
    /// generate: where to write the true partition.
    #[arg(long)]
    truth_out: Option<PathBuf>,
    /// detect: input edge list.
    #[arg(long)]
    edges: Option<PathBuf>,
    /// detect: optional true partition for scoring.
    #[arg(long)]
    truth: Option<PathBuf>,
    /// detect / spectrum: JSON report path (stdout / stderr when absent).
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    bins: Option<usize>,
    #[arg(long)]
    m_max: Option<usize>,
    #[arg(long)]
    probes: Option<usize>,
    #[arg(long)]
    mean_degree: Option<f64>,
    /// Comma-separated cin - cout grid.
    #[arg(long, value_delimiter = ',')]
    deltas: Option<Vec<f64>>,
    #[arg(long)]
    seeds_per_point: Option<usize>,
    #[arg(long)]
    seed_stride: Option<u64>,
    #[arg(long)]
    separation: Option<f64>,
}

macro_rules! merge {
    ($flags:ident, $file:ident, $($f:ident),*) => {
        Common { config: $flags.config, $($f: $flags.$f.or($file.$f)),* }
    };
}

impl Common {
    fn resolve(self) -> Result<Common> {
        let file: Common = match &self.config {
            Some(path) => serde_json::from_reader(BufReader::new(File::open(path)?))?,
            None => Common::default(),
        };
        let flags = self;
        Ok(merge!(
            flags,
            file,
            n,
            q,
            cin,
            cout,
            seed,
            out,
            jobs,
            truth_out,
            edges,
            truth,
            report,
            bins,
            m_max,
            probes,
            mean_degree,
            deltas,
            seeds_per_point,
            seed_stride,
            separation
        ))
    }

    fn need<T: Clone>(v: &Option<T>, name: &str) -> Result<T> {
        v.clone()
            .ok_or_else(|| Error::InvalidArgument(format!("missing --{name} (flag or config key)")))
    }

    fn params(&self) -> Result<BlockParams> {
        BlockParams::new(
            Self::need(&self.n, "n")?,
            self.q.unwrap_or(2),
            Self::need(&self.cin, "cin")?,
            Self::need(&self.cout, "cout")?,
        )
    }

    fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }
}

fn writer(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn write_text(path: &Option<PathBuf>, text: &str) -> Result<()> {
    let mut w = writer(path)?;
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(())
}

fn write_json<T: Serialize>(path: &Option<PathBuf>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(path, &text)
}

fn sibling(path: &Path, ext: &str) -> PathBuf {
    path.with_extension(ext)
}

fn generate(o: Common) -> Result<()> {
    let params = o.params()?;
    let (_, truth) = make_planted_partition(params.n(), params.q(), params.cin(), params.cout())?;
    let graph = sample_graph(&params, &truth, o.seed())?;
    let mut w = writer(&o.out)?;
    let header = EdgeListHeader {
        n: params.n(),
        q: params.q(),
        seed: o.seed(),
    };
    write_edge_list(&mut w, &graph, header)?;
    w.flush()?;
    let truth_path = o
        .truth_out
        .clone()
        .or_else(|| o.out.as_ref().map(|p| sibling(p, "partition")));
    if let Some(path) = truth_path {
        let mut w = BufWriter::new(File::create(path)?);
        write_partition(&mut w, &truth)?;
        w.flush()?;
    }
    Ok(())
}

fn spectrum(o: Common) -> Result<()> {
    let params = o.params()?;
    let exp = harness::run_spectrum_experiment(&params, o.seed(), o.bins.unwrap_or(60))?;
    write_text(&o.out, &exp.to_csv())?;
    let report = o
        .report
        .clone()
        .or_else(|| o.out.as_ref().map(|p| sibling(p, "json")));
    match report {
        Some(_) => write_json(&report, &exp.summary)?,
        None => eprintln!("{}", serde_json::to_string_pretty(&exp.summary)?),
    }
    if let Some(w) = &exp.summary.warning {
        eprintln!("warning: {w}");
    }
    Ok(())
}

#[derive(Serialize)]
struct DetectReport {
    n: usize,
    m: usize,
    q: usize,
    leading_eigenvalue: f64,
    band_edge_estimate: f64,
    detected: bool,
    accuracy: Option<f64>,
    eigenvalues: Vec<f64>,
    iterations: usize,
}

fn detect(o: Common) -> Result<()> {
    let edges = Common::need(&o.edges, "edges")?;
    let (graph, header) = read_edge_list(BufReader::new(File::open(edges)?))?;
    let q = o.q.unwrap_or(header.q.max(2));
    let opts = DetectOptions {
        separation: o.separation.unwrap_or(DEFAULT_SEPARATION),
        ..DetectOptions::with_seed(o.seed())
    };
    let found = spectral_partition_general(&graph, q, &opts)?;
    let acc = match &o.truth {
        Some(path) => Some(accuracy(
            &found.labels,
            &read_partition(BufReader::new(File::open(path)?), Some(q))?,
        )?),
        None => None,
    };
    let mut w = writer(&o.out)?;
    write_partition(&mut w, &found.labels)?;
    w.flush()?;
    let report = DetectReport {
        n: graph.n(),
        m: graph.m(),
        q,
        leading_eigenvalue: found.leading_eigenvalue,
        band_edge_estimate: found.band_edge_estimate,
        detected: found.detected,
        accuracy: acc,
        eigenvalues: found.eigenvalues,
        iterations: found.iterations,
    };
    match &o.report {
        Some(_) => write_json(&o.report, &report),
        None if o.out.is_some() => write_json(&o.out.as_ref().map(|p| sibling(p, "json")), &report),
        None => {
            eprintln!("{}", serde_json::to_string_pretty(&report)?);
            Ok(())
        }
    }
}

fn sweep(o: Common) -> Result<()> {
    let config = SweepConfig {
        n: o.n.unwrap_or(20_000),
        q: o.q.unwrap_or(2),
        mean_degree: o.mean_degree.unwrap_or(8.0),
        deltas: o.deltas.clone().unwrap_or_default(),
        seeds_per_point: o.seeds_per_point.unwrap_or(10),
        seed_base: o.seed(),
        seed_stride: o.seed_stride.unwrap_or(1000),
        separation: o.separation.unwrap_or(DEFAULT_SEPARATION),
    };
    let table = harness::run_sweep(&config)?;
    write_text(&o.out, &table.to_csv())
}

fn moments(o: Common) -> Result<()> {
    let params = o.params()?;
    let rows = harness::run_moment_check(
        &params,
        o.seed(),
        o.m_max.unwrap_or(3),
        o.probes.unwrap_or(30),
    )?;
    write_text(&o.out, &harness::moments_to_csv(&rows))
}

fn theory_cmd(o: Common) -> Result<()> {
    let prediction = theory::predict(&o.params()?)?;
    write_json(&o.out, &prediction)
}

fn run(cli: Cli) -> Result<()> {
    let (opts, f): (Common, fn(Common) -> Result<()>) = match cli.command {
        Command::Generate(o) => (o, generate),
        Command::Spectrum(o) => (o, spectrum),
        Command::Detect(o) => (o, detect),
        Command::Sweep(o) => (o, sweep),
        Command::Moments(o) => (o, moments),
        Command::Theory(o) => (o, theory_cmd),
    };
    let opts = opts.resolve()?;
    if let Some(jobs) = opts.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    }
    f(opts)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
