//! Command-line front end.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use metanet_core::bestest::{self, BestestConfig, Mode, SensitivityConfig};
use metanet_core::landscape;
use metanet_core::metrics::{self, Normalization};
use metanet_core::neosbm::{self, NeoConfig, NeoModel};
use metanet_core::synthgen::{self, SynthConfig};
use metanet_core::{rng, Graph, Model, Partition};
use serde::Serialize;

use crate::config::BlockMatrixFile;
use crate::formats::{self, LabelFile};
use crate::manifest::RunManifest;

#[derive(Debug, Parser)]
#[command(name = "metanet", version, about = "Metadata and community structure in networks")]
#[command(arg_required_else_help = true)]
pub struct Cli {
    /// Worker threads; defaults to the available parallelism. Results do not
    /// depend on this value.
    #[arg(long, global = true, env = "METANET_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Permutation test of a metadata partition against the edges.
    Bestest(BestestArgs),
    /// BESTest power on two-block synthetic graphs over a grid of ℓ.
    Sensitivity(SensitivityArgs),
    /// neoSBM path from the metadata partition over a grid of θ.
    Neosbm(NeosbmArgs),
    /// Partition comparison.
    #[command(subcommand)]
    Metrics(MetricsCommand),
    /// Synthetic networks.
    #[command(subcommand)]
    Generate(GenerateCommand),
    /// Crossover samples around parent partitions, embedded by MDS.
    Landscape(LandscapeArgs),
    /// Exhaustive check that mean AMI over all partitions vanishes.
    Homogeneity(HomogeneityArgs),
}

#[derive(Debug, Args)]
pub struct BestestArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub metadata: PathBuf,
    #[arg(long, default_value = "sbm")]
    pub model: Model,
    #[arg(long, default_value_t = bestest::DEFAULT_PERMUTATIONS)]
    pub permutations: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Enumerate every distinct relabeling instead of sampling.
    #[arg(long)]
    pub exhaustive: bool,
    /// Write null scores here, one per line.
    #[arg(long)]
    pub dump_null: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SensitivityArgs {
    #[arg(long, default_value_t = 300)]
    pub n: usize,
    /// Comma-separated ε values.
    #[arg(long, value_delimiter = ',', default_value = "0.1,1")]
    pub epsilon: Vec<f64>,
    /// Comma-separated ℓ values.
    #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5,0.75,1")]
    pub ell: Vec<f64>,
    #[arg(long, default_value_t = 10.0)]
    pub mean_degree: f64,
    #[arg(long, default_value_t = 100)]
    pub reps: usize,
    #[arg(long, default_value_t = 999)]
    pub permutations: u64,
    #[arg(long, default_value = "sbm")]
    pub model: Model,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// CSV with columns epsilon,ell,mean_p,sd_p,n_reps.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NeosbmArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub metadata: PathBuf,
    #[arg(long, default_value = "sbm")]
    pub model: NeoModel,
    /// `a:b:step` for a linear grid or `log:a:b:count` for a geometric one.
    #[arg(long, default_value = "0.05:0.95:0.05")]
    pub theta_grid: String,
    #[arg(long, default_value_t = neosbm::DEFAULT_SWEEPS)]
    pub sweeps: usize,
    #[arg(long, default_value_t = neosbm::DEFAULT_RESTARTS)]
    pub restarts: usize,
    /// Group count; defaults to the metadata's.
    #[arg(long)]
    pub k: Option<usize>,
    /// Flag a jump when q grows by more than this; defaults to N/20.
    #[arg(long)]
    pub jump_threshold: Option<usize>,
    /// Sweep from this partition instead of fitting the optimum.
    #[arg(long)]
    pub optimum: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Directory for one label file per grid point. Defaults to
    /// `<out>.partitions` when `--out` is given.
    #[arg(long)]
    pub partitions_dir: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum MetricsCommand {
    Nmi(PairArgs),
    Ami(PairArgs),
    Vi(PairArgs),
    /// Mean AMI per group-size profile, as CSV.
    Homogeneity(ProfileArgs),
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    /// NMI only.
    #[arg(long, default_value = "sqrt")]
    pub normalization: Normalization,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GenerateCommand {
    TwoBlock(TwoBlockArgs),
    MultiOptimum(MultiOptimumArgs),
}

#[derive(Debug, Args)]
pub struct TwoBlockArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long)]
    pub ell: f64,
    #[arg(long)]
    pub mean_degree: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out_prefix: PathBuf,
}

#[derive(Debug, Args)]
pub struct MultiOptimumArgs {
    /// Block matrix JSON; defaults to the built-in calibrated matrix.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out_prefix: PathBuf,
}

#[derive(Debug, Args)]
pub struct LandscapeArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Directory of `*.labels` parent partitions, read in name order.
    #[arg(long)]
    pub partitions: PathBuf,
    #[arg(long, default_value = "sbm")]
    pub model: NeoModel,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct HomogeneityArgs {
    /// Largest set size checked, starting from 1.
    #[arg(long, default_value_t = 7)]
    pub n: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses and runs, returning the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let argv: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(cli, &argv) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

pub fn execute(cli: Cli, argv: &[String]) -> Result<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            bail!("--threads must be at least 1");
        }
        // A second call in one process fails harmlessly; the first pool stays.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match cli.command {
        Command::Bestest(a) => cmd_bestest(a, argv),
        Command::Sensitivity(a) => cmd_sensitivity(a, argv),
        Command::Neosbm(a) => cmd_neosbm(a, argv),
        Command::Metrics(m) => cmd_metrics(m),
        Command::Generate(g) => cmd_generate(g, argv),
        Command::Landscape(a) => cmd_landscape(a, argv),
        Command::Homogeneity(a) => cmd_homogeneity(a, argv),
    }
}

fn emit_json<T: Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit_text(&text, out)
}

fn emit_text(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => formats::write_text(p, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn load_graph_and_metadata(graph: &Path, metadata: &Path, manifest: &mut RunManifest) -> Result<(Graph, Partition)> {
    let g = formats::read_edge_list(graph)?;
    let m = formats::read_labels(metadata, &g)?;
    manifest.add_input(graph)?;
    manifest.add_input(metadata)?;
    Ok((g, m))
}

#[derive(Serialize)]
struct BestestOutput {
    manifest: RunManifest,
    model: &'static str,
    kind: &'static str,
    log_base: Option<&'static str>,
    observed: f64,
    null_mean: f64,
    null_sd: f64,
    n_permutations: u64,
    n_extreme: u64,
    p_value: f64,
    seed: u64,
    mode: &'static str,
}

fn cmd_bestest(a: BestestArgs, argv: &[String]) -> Result<()> {
    let mut manifest = RunManifest::new("bestest", argv, Some(a.seed));
    let (graph, metadata) = load_graph_and_metadata(&a.graph, &a.metadata, &mut manifest)?;
    let mut cfg = if a.exhaustive {
        BestestConfig {
            seed: a.seed,
            ..BestestConfig::exhaustive(a.model)
        }
    } else {
        BestestConfig::new(a.model, a.permutations, a.seed)
    };
    cfg.keep_null = a.dump_null.is_some();
    let r = bestest::run_bestest(&graph, &metadata, &cfg)?;
    if let (Some(path), Some(null)) = (&a.dump_null, &r.null_scores) {
        let mut text = String::with_capacity(null.len() * 20);
        for x in null {
            text.push_str(&format!("{x}\n"));
        }
        formats::write_text(path, &text)?;
    }
    let out = BestestOutput {
        manifest,
        model: r.model.id(),
        kind: r.observed.kind.as_str(),
        log_base: r.observed.kind.log_base(),
        observed: r.observed.value,
        null_mean: r.null_mean,
        null_sd: r.null_sd,
        n_permutations: r.null_samples,
        n_extreme: r.n_extreme,
        p_value: r.p_value,
        seed: r.seed,
        mode: r.mode.as_str(),
    };
    debug_assert!(a.exhaustive == (r.mode == Mode::Exhaustive));
    emit_json(&out, a.out.as_deref())
}

#[derive(Serialize)]
struct SensitivityRow {
    epsilon: f64,
    ell: f64,
    mean_p: f64,
    sd_p: f64,
    n_reps: usize,
}

#[derive(Serialize)]
struct SensitivityOutput {
    manifest: RunManifest,
    model: &'static str,
    n_nodes: usize,
    mean_degree: f64,
    n_permutations: u64,
    points: Vec<SensitivityRow>,
}

fn cmd_sensitivity(a: SensitivityArgs, argv: &[String]) -> Result<()> {
    let manifest = RunManifest::new("sensitivity", argv, Some(a.seed));
    let mut rows = Vec::new();
    for (i, &epsilon) in a.epsilon.iter().enumerate() {
        let cfg = SensitivityConfig {
            n_nodes: a.n,
            epsilon,
            ells: a.ell.clone(),
            mean_degree: a.mean_degree,
            n_reps: a.reps,
            n_perm: a.permutations,
            model: a.model,
            seed: rng::derive_seed(a.seed, 0, i as u64),
        };
        for p in bestest::sensitivity_experiment(&cfg)? {
            rows.push(SensitivityRow {
                epsilon: p.epsilon,
                ell: p.ell,
                mean_p: p.mean_p,
                sd_p: p.sd_p,
                n_reps: p.n_reps,
            });
        }
    }
    if let Some(path) = &a.csv {
        let mut w = csv::Writer::from_path(path).with_context(|| path.display().to_string())?;
        for r in &rows {
            w.serialize(r)?;
        }
        w.flush()?;
    }
    let out = SensitivityOutput {
        manifest,
        model: a.model.id(),
        n_nodes: a.n,
        mean_degree: a.mean_degree,
        n_permutations: a.permutations,
        points: rows,
    };
    emit_json(&out, a.out.as_deref())
}

/// `a:b:step` or `log:a:b:count`.
pub fn parse_theta_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| -> Result<f64> {
        s.trim()
            .parse::<f64>()
            .with_context(|| format!("bad number `{s}` in theta grid"))
    };
    match parts.as_slice() {
        ["log", a, b, n] => {
            let (a, b) = (num(a)?, num(b)?);
            let n: usize = n
                .trim()
                .parse()
                .with_context(|| format!("bad count `{n}` in theta grid"))?;
            if !(a > 0.0 && b >= a) || n == 0 {
                bail!("log grid needs 0 < a <= b and count >= 1");
            }
            if n == 1 {
                return Ok(vec![a]);
            }
            let (la, lb) = (a.ln(), b.ln());
            Ok((0..n)
                .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
                .collect())
        }
        [a, b, step] => Ok(neosbm::linear_grid(num(a)?, num(b)?, num(step)?)?),
        _ => bail!("theta grid must be `a:b:step` or `log:a:b:count`, got `{spec}`"),
    }
}

#[derive(Serialize)]
struct NeoRecordOut {
    theta: f64,
    psi: f64,
    q: usize,
    #[serde(rename = "L_base")]
    l_base: f64,
    #[serde(rename = "L_neo")]
    l_neo: f64,
    jump: bool,
    partition: Vec<usize>,
    z: Vec<u8>,
}

#[derive(Serialize)]
struct NeosbmOutput {
    manifest: RunManifest,
    model: &'static str,
    kind: &'static str,
    log_base: &'static str,
    nodes: Vec<String>,
    metadata: Vec<usize>,
    optimum: Vec<usize>,
    #[serde(rename = "optimum_L_base")]
    optimum_l_base: f64,
    jump_threshold: usize,
    n_jumps: usize,
    records: Vec<NeoRecordOut>,
}

fn cmd_neosbm(a: NeosbmArgs, argv: &[String]) -> Result<()> {
    let mut manifest = RunManifest::new("neosbm", argv, Some(a.seed));
    let (graph, metadata) = load_graph_and_metadata(&a.graph, &a.metadata, &mut manifest)?;
    let grid = parse_theta_grid(&a.theta_grid)?;
    let cfg = NeoConfig {
        model: a.model,
        sweeps: a.sweeps,
        restarts: a.restarts,
        k: a.k,
        jump_threshold: a.jump_threshold,
        ..NeoConfig::new(grid[0])
    };
    let path = match &a.optimum {
        Some(p) => {
            let opt = formats::read_labels(p, &graph)?;
            manifest.add_input(p)?;
            neosbm::theta_sweep_from(&graph, &metadata, &opt, &grid, &cfg, a.seed)?
        }
        None => neosbm::theta_sweep(&graph, &metadata, &grid, &cfg, a.seed)?,
    };
    let dir = a
        .partitions_dir
        .clone()
        .or_else(|| a.out.as_ref().map(|o| o.with_extension("partitions")));
    if let Some(dir) = &dir {
        fs::create_dir_all(dir).with_context(|| dir.display().to_string())?;
        for (j, r) in path.records.iter().enumerate() {
            let file = dir.join(format!("theta_{j:04}.labels"));
            formats::write_text(&file, &formats::write_labels(&graph, &r.state.partition()))?;
        }
    }
    let records = path
        .records
        .iter()
        .map(|r| NeoRecordOut {
            theta: r.state.theta,
            psi: neosbm::psi(r.state.theta),
            q: r.state.q,
            l_base: r.state.l_base,
            l_neo: r.state.l_neo,
            jump: r.jump,
            partition: r.state.partition().assignment().to_vec(),
            z: r.state.red.iter().map(|&z| z as u8).collect(),
        })
        .collect();
    let out = NeosbmOutput {
        manifest,
        model: a.model.id(),
        kind: "loglik_nats",
        log_base: "e",
        nodes: graph.names().to_vec(),
        metadata: metadata.assignment().to_vec(),
        optimum: path.optimum.assignment().to_vec(),
        optimum_l_base: path.optimum_l_base,
        jump_threshold: path.jump_threshold,
        n_jumps: path.n_jumps(),
        records,
    };
    emit_json(&out, a.out.as_deref())
}

fn cmd_metrics(m: MetricsCommand) -> Result<()> {
    let pair = |p: &PairArgs| -> Result<(Partition, Partition)> {
        let a = LabelFile::read(&p.a)?;
        let b = LabelFile::read(&p.b)?;
        let bb = a.align(&b)?;
        Ok((a.partition, bb))
    };
    let value = match &m {
        MetricsCommand::Nmi(p) => {
            let (u, v) = pair(p)?;
            metrics::nmi(&u, &v, p.normalization)?
        }
        MetricsCommand::Ami(p) => {
            let (u, v) = pair(p)?;
            metrics::ami(&u, &v)?
        }
        MetricsCommand::Vi(p) => {
            let (u, v) = pair(p)?;
            metrics::vi(&u, &v)?
        }
        MetricsCommand::Homogeneity(p) => {
            let mut text = String::from("profile,count,mean_ami\n");
            for (profile, count, mean) in metrics::homogeneity_by_profile(p.n)? {
                let prof: Vec<String> = profile.iter().map(ToString::to_string).collect();
                text.push_str(&format!("{},{count},{mean}\n", prof.join("-")));
            }
            return emit_text(&text, p.out.as_deref());
        }
    };
    println!("{value}");
    Ok(())
}

#[derive(Serialize)]
struct GenerateOutput {
    manifest: RunManifest,
    n_nodes: usize,
    n_edges: usize,
    files: Vec<String>,
}

fn write_outputs(prefix: &Path, graph: &Graph, parts: &[(&str, &Partition)]) -> Result<Vec<String>> {
    if let Some(dir) = prefix.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| dir.display().to_string())?;
    }
    let with_ext = |ext: &str| {
        let mut s = prefix.as_os_str().to_owned();
        s.push(format!(".{ext}"));
        PathBuf::from(s)
    };
    let edges = with_ext("edges");
    formats::write_text(&edges, &formats::write_edge_list(graph))?;
    let mut files = vec![edges.display().to_string()];
    for (ext, p) in parts {
        let f = with_ext(ext);
        formats::write_text(&f, &formats::write_labels(graph, p))?;
        files.push(f.display().to_string());
    }
    Ok(files)
}

fn cmd_generate(g: GenerateCommand, argv: &[String]) -> Result<()> {
    match g {
        GenerateCommand::TwoBlock(a) => {
            let manifest = RunManifest::new("generate two-block", argv, Some(a.seed));
            let cfg = SynthConfig {
                n_nodes: a.n,
                epsilon: a.epsilon,
                mean_degree: a.mean_degree,
            };
            let mut rng = rng::from_seed(a.seed);
            let (graph, truth) = synthgen::gen_two_block(&cfg, &mut rng)?;
            let metadata = synthgen::corrupt_metadata(&truth, a.ell, &mut rng)?;
            let files = write_outputs(&a.out_prefix, &graph, &[("truth", &truth), ("metadata", &metadata)])?;
            emit_json(
                &GenerateOutput {
                    manifest,
                    n_nodes: graph.n_nodes(),
                    n_edges: graph.n_edges(),
                    files,
                },
                None,
            )
        }
        GenerateCommand::MultiOptimum(a) => {
            let mut manifest = RunManifest::new("generate multi-optimum", argv, Some(a.seed));
            let cfg = match &a.config {
                Some(p) => {
                    manifest.add_input(p)?;
                    BlockMatrixFile::read(p)?.to_config()?
                }
                None => synthgen::MultiOptimumConfig::calibrated(),
            };
            let inst = synthgen::gen_multi_optimum(&cfg, &mut rng::from_seed(a.seed))?;
            let files = write_outputs(
                &a.out_prefix,
                &inst.graph,
                &[
                    ("truth", &inst.planted),
                    ("metadata", &inst.metadata),
                    ("blocks", &inst.blocks),
                ],
            )?;
            emit_json(
                &GenerateOutput {
                    manifest,
                    n_nodes: inst.graph.n_nodes(),
                    n_edges: inst.graph.n_edges(),
                    files,
                },
                None,
            )
        }
    }
}

/// `*.labels` files directly under `dir`, sorted by file name.
fn label_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| dir.display().to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|e| e == "labels"))
        .collect();
    files.sort();
    Ok(files)
}

fn cmd_landscape(a: LandscapeArgs, argv: &[String]) -> Result<()> {
    let mut manifest = RunManifest::new("landscape", argv, Some(a.seed));
    let graph = formats::read_edge_list(&a.graph)?;
    manifest.add_input(&a.graph)?;
    let mut parents: Vec<Partition> = Vec::new();
    for f in label_files(&a.partitions)? {
        let p = formats::read_labels(&f, &graph)?;
        manifest.add_input(&f)?;
        if !parents.iter().any(|q| q.same_grouping(&p)) {
            parents.push(p);
        }
    }
    if parents.len() < 2 {
        bail!(
            "{} holds {} distinct partition(s); crossover needs at least two",
            a.partitions.display(),
            parents.len()
        );
    }
    // Crossover mixes group indices, so parents share the first one's labels.
    let k = parents.iter().map(Partition::k).max().unwrap_or(1);
    let reference = parents[0].clone();
    for p in parents.iter_mut().skip(1) {
        *p = Partition::from_assignment(neosbm::align_to_metadata(&reference, p, k)?);
    }
    let (_, points) = landscape::build_landscape(&graph, &parents, a.samples, a.model, a.seed)?;
    let file = fs::File::create(&a.out).with_context(|| a.out.display().to_string())?;
    formats::write_surface(&points, io::BufWriter::new(file))?;
    emit_json(
        &serde_json::json!({
            "manifest": manifest,
            "model": a.model.id(),
            "n_parents": parents.len(),
            "n_points": points.len(),
            "out": a.out.display().to_string(),
        }),
        None,
    )
}

#[derive(Serialize)]
struct HomogeneityRow {
    n: usize,
    bell: u128,
    max_interior_abs_mean: f64,
    boundary_means: [f64; 2],
    expected_boundary_mean: f64,
}

fn cmd_homogeneity(a: HomogeneityArgs, argv: &[String]) -> Result<()> {
    let manifest = RunManifest::new("homogeneity", argv, None);
    let mut rows = Vec::new();
    for n in 1..=a.n {
        let bell = metrics::bell_number(n).context("set size too large")?;
        let mut worst: f64 = 0.0;
        let mut boundary = [f64::NAN; 2];
        for u in metrics::enumerate_partitions(n)? {
            let h = metrics::homogeneity_profile(&u)?;
            if u.k() == 1 {
                boundary[0] = h;
            }
            if u.k() == n {
                boundary[1] = h;
            }
            if u.k() != 1 && u.k() != n {
                worst = worst.max(h.abs());
            }
        }
        rows.push(HomogeneityRow {
            n,
            bell,
            max_interior_abs_mean: worst,
            boundary_means: boundary,
            expected_boundary_mean: 1.0 / bell as f64,
        });
    }
    emit_json(
        &serde_json::json!({ "manifest": manifest, "rows": rows }),
        a.out.as_deref(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_grids() {
        let g = parse_theta_grid("0.1:0.5:0.1").unwrap();
        assert_eq!(g.len(), 5);
        let g = parse_theta_grid("log:1e-4:1e-1:4").unwrap();
        assert_eq!(g.len(), 4);
        assert!((g[1] - 1e-3).abs() < 1e-15);
        assert!(parse_theta_grid("0.1:0.5").is_err());
        assert!(parse_theta_grid("log:0:1:3").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["metanet"]), 2);
        assert_eq!(run(["metanet", "frobnicate"]), 2);
        assert_eq!(run(["metanet", "bestest", "--graph"]), 2);
        assert_eq!(run(["metanet", "--help"]), 0);
    }
}
