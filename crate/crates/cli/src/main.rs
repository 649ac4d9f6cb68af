use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use bpnn::classify::accuracy;
use bpnn::dataio::{
    bundled_dataset, bundled_font, load_sample_dir, write_report, write_sample_dir, write_sample_matrix, Dataset,
    ReportFormat,
};
use bpnn::harness::{gradcheck, run_experiment, summarize_trends, train_run, write_rows_csv, ExperimentConfig};
use bpnn::learn::{HyperParams, UpdateRule};
use bpnn::netcore::{read_snapshot, write_snapshot, InitScheme, Topology};
use bpnn::numcore::Prng;
use bpnn::preprocess::{PreprocessConfig, TrainingSample};
use clap::{Args, Parser, Subcommand};

/// Feed-forward back-propagation network for 8x6 character recognition.
#[derive(Parser, Debug)]
#[command(name = "bpnn", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Train one network and write its report, epoch trace and snapshot.
    Train(TrainCmd),
    /// Score a saved network against a sample.
    Eval(EvalCmd),
    /// Run every (sample, depth, rule, seed) combination and summarise trends.
    Experiment(ExperimentCmd),
    /// Compare back-propagated gradients with finite differences.
    Gradcheck(GradcheckCmd),
    /// Convert a directory of A.pgm .. Z.pgm scans into glyph files.
    Preprocess(PreprocessCmd),
    /// Write the bundled dataset as sample directories.
    ExportDataset(ExportCmd),
}

#[derive(Args, Debug)]
struct TrainingArgs {
    /// Neurons per hidden layer.
    #[arg(long, default_value_t = Topology::HIDDEN_SIZE)]
    hidden_size: usize,
    /// Learning rate.
    #[arg(long, default_value_t = 0.01)]
    eta: f64,
    /// Momentum on the previous change.
    #[arg(long, default_value_t = 0.90)]
    alpha: f64,
    /// Momentum on the change two epochs back (modified rule only).
    #[arg(long, default_value_t = 0.05)]
    beta: f64,
    /// Stop once the per-output mean squared error reaches this value.
    #[arg(long, default_value_t = 0.001)]
    mse_goal: f64,
    #[arg(long, default_value_t = 2000)]
    max_epochs: usize,
    /// Weight initialisation: `paper` draws [0, 1), `symmetric` draws [-0.5, 0.5).
    #[arg(long, default_value = "paper")]
    init: InitScheme,
}

impl TrainingArgs {
    fn hyperparams(&self, update_rule: UpdateRule) -> HyperParams {
        HyperParams {
            eta: self.eta,
            alpha: self.alpha,
            beta: self.beta,
            mse_goal: self.mse_goal,
            max_epochs: self.max_epochs,
            update_rule,
        }
    }
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct TrainCmd {
    #[command(flatten)]
    training: TrainingArgs,
    #[arg(long, default_value_t = 1)]
    hidden_layers: usize,
    #[arg(long, default_value = "modified")]
    update: UpdateRule,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Sample directory (A..Z `.glyph` or `.pgm` files); the bundled font if omitted.
    #[arg(long)]
    sample: Option<PathBuf>,
    /// Binarisation threshold for `.pgm` input.
    #[arg(long, default_value_t = 0.5)]
    threshold: f64,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args, Debug)]
struct EvalCmd {
    #[arg(long)]
    snapshot: PathBuf,
    /// Sample directory; the bundled font if omitted.
    #[arg(long)]
    sample: Option<PathBuf>,
    #[arg(long, default_value_t = 0.5)]
    threshold: f64,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct ExperimentCmd {
    #[command(flatten)]
    training: TrainingArgs,
    /// Comma-separated hidden-layer counts.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    depths: Vec<usize>,
    /// Comma-separated update rules.
    #[arg(long, value_delimiter = ',', default_value = "classical,modified")]
    rules: Vec<UpdateRule>,
    /// Comma-separated seeds.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    seeds: Vec<u64>,
    /// Dataset directory with `train_<i>/` and `test_<i>/` samples; the bundled dataset if omitted.
    #[arg(long)]
    data_dir: Option<PathBuf>,
    #[command(flatten)]
    bundled: BundledArgs,
    #[arg(long, default_value_t = 0.5)]
    threshold: f64,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args, Debug)]
struct BundledArgs {
    /// Training samples in the bundled dataset (the first is noise-free).
    #[arg(long, default_value_t = 5)]
    train_samples: usize,
    #[arg(long, default_value_t = 2)]
    test_samples: usize,
    /// Per-cell flip probability for the noisy copies.
    #[arg(long, default_value_t = 0.05)]
    flip: f64,
    /// Seed for the noise.
    #[arg(long, default_value_t = 2011)]
    data_seed: u64,
}

impl BundledArgs {
    fn dataset(&self) -> Result<Dataset> {
        Ok(bundled_dataset(
            &mut Prng::new(self.data_seed),
            self.train_samples,
            self.test_samples,
            self.flip,
        )?)
    }
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct GradcheckCmd {
    #[arg(long, default_value_t = 1)]
    hidden_layers: usize,
    #[arg(long, default_value_t = Topology::HIDDEN_SIZE)]
    hidden_size: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1e-5)]
    tolerance: f64,
}

#[derive(Args, Debug)]
struct PreprocessCmd {
    /// Directory holding A.pgm .. Z.pgm (or `.glyph` files).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    threshold: f64,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args, Debug)]
struct ExportCmd {
    #[command(flatten)]
    bundled: BundledArgs,
    #[arg(long)]
    out_dir: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", describe(&e));
            ExitCode::FAILURE
        }
    }
}

/// Joins the error chain, skipping causes already quoted by their parent.
fn describe(e: &anyhow::Error) -> String {
    let mut out = String::new();
    let mut prev = String::new();
    for cause in e.chain() {
        let msg = cause.to_string();
        if !prev.contains(&msg) {
            if !out.is_empty() {
                out.push_str(": ");
            }
            out.push_str(&msg);
        }
        prev = msg;
    }
    out
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Train(cmd) => train(cmd),
        Command::Eval(cmd) => eval(cmd),
        Command::Experiment(cmd) => experiment(cmd),
        Command::Gradcheck(cmd) => gradcheck_cmd(cmd),
        Command::Preprocess(cmd) => preprocess(cmd),
        Command::ExportDataset(cmd) => {
            create_dir(&cmd.out_dir)?;
            cmd.bundled.dataset()?.write_dir(&cmd.out_dir)?;
            println!("wrote dataset to {}", cmd.out_dir.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

fn load_sample(dir: Option<&Path>, threshold: f64) -> Result<TrainingSample> {
    match dir {
        Some(dir) => {
            let cfg = PreprocessConfig::new(threshold)?;
            load_sample_dir(dir, &cfg).with_context(|| format!("loading sample {}", dir.display()))
        }
        None => Ok(bundled_font()),
    }
}

fn train(cmd: TrainCmd) -> Result<ExitCode> {
    let sample = load_sample(cmd.sample.as_deref(), cmd.threshold)?;
    let cfg = ExperimentConfig {
        depths: vec![cmd.hidden_layers],
        hidden_size: cmd.training.hidden_size,
        update_rules: vec![cmd.update],
        hyperparams: cmd.training.hyperparams(cmd.update),
        seeds: vec![cmd.seed],
        init: cmd.training.init,
    };
    cfg.validate()?;
    let outcome = train_run(&cfg, &sample, 1, cmd.hidden_layers, cmd.update, cmd.seed)?;
    let self_test = outcome.evaluate(&sample)?;

    create_dir(&cmd.out_dir)?;
    write_report(&outcome.report, &cmd.out_dir.join("report.json"), ReportFormat::Json)?;
    write_report(&outcome.report, &cmd.out_dir.join("epochs.csv"), ReportFormat::Csv)?;
    write_snapshot(&outcome.network, &cmd.out_dir.join("net.snapshot"))?;

    let r = &outcome.report;
    println!("topology     {}", r.topology);
    println!("rule         {}", cmd.update);
    println!("epochs       {}", r.epochs_run);
    println!("converged    {}", r.converged);
    println!("final mse    {}", r.final_error);
    println!("cum gradient {}", r.cumulative_gradient);
    println!("self-test    {self_test}");
    println!(
        "wrote report.json, epochs.csv, net.snapshot to {}",
        cmd.out_dir.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn eval(cmd: EvalCmd) -> Result<ExitCode> {
    let net = read_snapshot::<f64>(&cmd.snapshot)?;
    let sample = load_sample(cmd.sample.as_deref(), cmd.threshold)?;
    let predicted = bpnn::classify::predict_letters(&net, &sample.inputs())?;
    let result = accuracy(&predicted, &sample.labels())?;
    let line: String = result.predicted.iter().map(|l| l.as_char()).collect();
    println!("predicted {line}");
    println!(
        "accuracy  {}/{} ({})",
        result.correct,
        result.total,
        result.percent_display()
    );
    Ok(ExitCode::SUCCESS)
}

fn experiment(cmd: ExperimentCmd) -> Result<ExitCode> {
    let dataset = match &cmd.data_dir {
        Some(dir) => Dataset::load_dir(dir, &PreprocessConfig::new(cmd.threshold)?)
            .with_context(|| format!("loading dataset {}", dir.display()))?,
        None => cmd.bundled.dataset()?,
    };
    let cfg = ExperimentConfig {
        depths: cmd.depths,
        hidden_size: cmd.training.hidden_size,
        update_rules: cmd.rules,
        hyperparams: cmd.training.hyperparams(UpdateRule::Modified),
        seeds: cmd.seeds,
        init: cmd.training.init,
    };
    let rows = run_experiment(&cfg, &dataset)?;
    let summary = summarize_trends(&rows);

    create_dir(&cmd.out_dir)?;
    let rows_path = cmd.out_dir.join("rows.csv");
    let file = fs::File::create(&rows_path).with_context(|| format!("creating {}", rows_path.display()))?;
    write_rows_csv(&rows, std::io::BufWriter::new(file))?;
    let mut json = serde_json::to_string_pretty(&summary)?;
    json.push('\n');
    fs::write(cmd.out_dir.join("trends.json"), json)?;
    fs::write(cmd.out_dir.join("trends.txt"), summary.to_string())?;

    println!("dataset: {}", dataset.provenance);
    print!("{summary}");
    println!("wrote {} rows to {}", rows.len(), rows_path.display());
    Ok(ExitCode::SUCCESS)
}

fn gradcheck_cmd(cmd: GradcheckCmd) -> Result<ExitCode> {
    let topology = Topology::new(
        Topology::INPUT_SIZE,
        vec![cmd.hidden_size; cmd.hidden_layers],
        Topology::OUTPUT_SIZE,
    )?;
    if cmd.tolerance.is_nan() || cmd.tolerance <= 0.0 {
        bail!("tolerance must be positive, got {}", cmd.tolerance);
    }
    let report = gradcheck(&topology, cmd.seed, cmd.tolerance, None)?;
    let at = &report.at;
    let kind = if at.is_bias { "bias" } else { "weight" };
    println!("topology           {}", report.topology);
    println!("max relative error {:e}", report.max_rel_error);
    println!(
        "at                 layer {} {kind} ({}, {}): analytic {:e}, numeric {:e}",
        at.layer, at.row, at.col, report.analytic, report.numeric
    );
    println!("tolerance          {:e}", report.tolerance);
    println!("result             {}", if report.passed { "pass" } else { "fail" });
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn preprocess(cmd: PreprocessCmd) -> Result<ExitCode> {
    let sample = load_sample(Some(&cmd.input), cmd.threshold)?;
    write_sample_dir(&sample, &cmd.out_dir)?;
    write_sample_matrix(&sample, &cmd.out_dir.join("sample.txt"))?;
    println!("wrote 26 glyphs and sample.txt to {}", cmd.out_dir.display());
    Ok(ExitCode::SUCCESS)
}
