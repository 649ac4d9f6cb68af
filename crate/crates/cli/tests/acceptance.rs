//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use bpnn::classify::{compet, compet_index, one_hot, Letter};
use bpnn::dataio::{bundled_dataset, bundled_font, format_glyph, parse_glyph, read_glyph, write_glyph};
use bpnn::harness::{run_experiment, summarize_trends, train_run, ExperimentConfig, ExperimentRow, Flag};
use bpnn::learn::{backprop, HyperParams, Trainer, UpdateRule};
use bpnn::netcore::{InitScheme, Network, Topology};
use bpnn::numcore::{Prng, Vector};
use bpnn::preprocess::{
    assemble_sample, binarize, downsample_8x6, reshape_48, unflatten, BinaryGlyph, BinaryImage, GrayImage,
    PreprocessConfig, GLYPH_CELLS, GLYPH_COLS, GLYPH_ROWS,
};

const FD_STEP: f64 = 1e-5;
const GRAD_TOLERANCE: f64 = 1e-5;
/// Denominator floor for the relative error, so parameters whose true
/// gradient is zero are compared absolutely.
const GRAD_FLOOR: f64 = 1e-8;
const GRAD_NETS: usize = 24;
const GRAD_BUDGET: Duration = Duration::from_secs(30);
const BETA_ZERO_EPOCHS: usize = 150;
const TREND_SEEDS: u64 = 10;
const COMPET_VECTORS: usize = 1000;
const PREPROCESS_BUDGET: Duration = Duration::from_secs(10);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("gradient matches central differences", gradient_correctness),
        (
            "beta = 0 reproduces classical momentum bit for bit",
            beta_zero_reduction,
        ),
        (
            "depth 1 converges on the clean font at default settings",
            convergence_at_defaults,
        ),
        ("median epochs nondecreasing with depth", epochs_grow_with_depth),
        (
            "modified momentum needs no more epochs than classical",
            modified_is_faster,
        ),
        (
            "modified momentum at least as accurate on noisy tests",
            modified_is_more_accurate,
        ),
        ("compet agrees with a brute-force argmax", compet_matches_argmax),
        (
            "experiment output is byte-identical across executions",
            experiment_is_deterministic,
        ),
        ("preprocessing properties", preprocessing_suite),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}. {name} [{secs:.1}s] {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name} [{secs:.1}s] {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn lms(net: &Network<f64>, x: &Vector<f64>, t: &Vector<f64>) -> f64 {
    let y = net.predict(x).unwrap();
    0.5 * t.iter().zip(y.iter()).map(|(a, b)| (a - b) * (a - b)).sum::<f64>()
}

/// Central difference of the pattern error for one parameter.
fn central_difference(
    net: &mut Network<f64>,
    x: &Vector<f64>,
    t: &Vector<f64>,
    set: impl Fn(&mut Network<f64>, f64),
) -> f64 {
    set(net, FD_STEP);
    let plus = lms(net, x, t);
    set(net, -2.0 * FD_STEP);
    let minus = lms(net, x, t);
    set(net, FD_STEP);
    (plus - minus) / (2.0 * FD_STEP)
}

fn gradient_correctness() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut worst_at = String::new();
    for k in 0..GRAD_NETS {
        let depth = k % 3 + 1;
        let mut prng = Prng::new(1000 + k as u64);
        let mut net = Network::<f64>::init(
            Topology::character_net(depth).unwrap(),
            &mut prng,
            InitScheme::Symmetric,
        );
        let x = Vector::from_vec((0..48).map(|_| f64::from(u8::from(prng.next_bool(0.5)))).collect());
        let t = one_hot(Letter::from_index((prng.next_u64() % 26) as usize).unwrap());
        let grad = backprop(&net, &net.forward(&x).unwrap(), &t).unwrap().params;

        let mut record = |analytic: f64, numeric_de: f64, at: String| {
            // backprop reports the descent direction, -dE/dparam
            let numeric = -numeric_de;
            let rel = (analytic - numeric).abs() / analytic.abs().max(numeric.abs()).max(GRAD_FLOOR);
            if rel > worst {
                worst = rel;
                worst_at = at;
            }
        };
        for l in 0..net.weights().len() {
            let (rows, cols) = (net.weights()[l].rows(), net.weights()[l].cols());
            for r in 0..rows {
                for c in 0..cols {
                    let fd = central_difference(&mut net, &x, &t, |n, h| n.weights_mut()[l][(r, c)] += h);
                    record(
                        grad.weights[l][(r, c)],
                        fd,
                        format!("net {k} depth {depth} w[{l}]({r},{c})"),
                    );
                }
                let fd = central_difference(&mut net, &x, &t, |n, h| n.biases_mut()[l][r] += h);
                record(grad.biases[l][r], fd, format!("net {k} depth {depth} b[{l}]({r})"));
            }
        }
    }
    let elapsed = start.elapsed();
    check(
        worst <= GRAD_TOLERANCE && elapsed < GRAD_BUDGET,
        format!(
            "{GRAD_NETS} nets, max relative error {worst:.3e} at {worst_at} (tolerance {GRAD_TOLERANCE:e}), {:.2}s of {}s",
            elapsed.as_secs_f64(),
            GRAD_BUDGET.as_secs()
        ),
    )
}

fn beta_zero_reduction() -> Outcome {
    let font = bundled_font();
    let (inputs, targets) = (font.inputs::<f64>(), font.targets::<f64>());
    let net = Network::<f64>::init(
        Topology::character_net(2).unwrap(),
        &mut Prng::new(77),
        InitScheme::Symmetric,
    );
    let hp = HyperParams {
        beta: 0.0,
        max_epochs: BETA_ZERO_EPOCHS,
        ..HyperParams::default()
    };
    let mut classical = Trainer::new(net.clone(), hp.with_rule(UpdateRule::Classical)).unwrap();
    let mut modified = Trainer::new(net, hp.with_rule(UpdateRule::Modified)).unwrap();
    for epoch in 1..=BETA_ZERO_EPOCHS {
        let a = classical.epoch(&inputs, &targets).unwrap();
        let b = modified.epoch(&inputs, &targets).unwrap();
        let same_params = classical
            .network()
            .parameters()
            .zip(modified.network().parameters())
            .all(|(p, q)| p.to_bits() == q.to_bits());
        if !same_params || a != b {
            return Err(format!("trajectories diverge at epoch {epoch}"));
        }
    }
    Ok(format!(
        "{BETA_ZERO_EPOCHS} epochs, every parameter identical after every epoch"
    ))
}

fn convergence_at_defaults() -> Outcome {
    let cfg = ExperimentConfig {
        init: InitScheme::Symmetric,
        ..ExperimentConfig::default()
    };
    let font = bundled_font();
    let mut epochs = Vec::new();
    let mut converged = 0;
    let mut mses = Vec::new();
    for seed in 1..=10 {
        let run = train_run(&cfg, &font, 1, 1, UpdateRule::Classical, seed).unwrap();
        if run.report.converged {
            converged += 1;
        }
        epochs.push(run.report.epochs_run as f64);
        mses.push(run.report.final_error);
    }
    let med = bpnn::harness::median(&epochs);
    check(
        converged >= 8 && (20.0..=2000.0).contains(&med),
        format!(
            "{converged}/10 seeds converged (need 8), median epochs {med} (need [20, 2000]), median final mse {:.4e} vs goal {}",
            bpnn::harness::median(&mses),
            cfg.hyperparams.mse_goal
        ),
    )
}

/// Clean font for training, two noisy copies (flip 0.05) for testing,
/// depths 1..3, both rules, ten seeds, symmetric init.
fn trend_rows() -> &'static [ExperimentRow] {
    use std::sync::OnceLock;
    static ROWS: OnceLock<Vec<ExperimentRow>> = OnceLock::new();
    ROWS.get_or_init(|| {
        let data = bundled_dataset(&mut Prng::new(2011), 1, 2, 0.05).unwrap();
        let cfg = ExperimentConfig {
            seeds: (1..=TREND_SEEDS).collect(),
            init: InitScheme::Symmetric,
            ..ExperimentConfig::default()
        };
        run_experiment(&cfg, &data).unwrap()
    })
}

fn flags_line(flags: &[(impl std::fmt::Display, Flag)]) -> String {
    flags
        .iter()
        .map(|(k, f)| format!("{k}: {f}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn medians_line(rows: &[ExperimentRow], f: impl Fn(&bpnn::harness::TrendCell) -> f64) -> String {
    summarize_trends(rows)
        .cells
        .iter()
        .map(|c| format!("d{} {} {}", c.depth, c.rule, f(c)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn censoring_note(rows: &[ExperimentRow]) -> String {
    let converged = rows.iter().filter(|r| r.converged).count();
    format!(
        "{converged}/{} runs converged, the rest count at the epoch cap",
        rows.len()
    )
}

fn epochs_grow_with_depth() -> Outcome {
    let rows = trend_rows();
    let s = summarize_trends(rows);
    let ok = s.epochs_grow_with_depth.len() == 2 && s.epochs_grow_with_depth.iter().all(|(_, f)| *f == Flag::Pass);
    check(
        ok,
        format!(
            "{} | median epochs {} | {}",
            flags_line(&s.epochs_grow_with_depth),
            medians_line(rows, |c| c.median_epochs),
            censoring_note(rows)
        ),
    )
}

fn modified_is_faster() -> Outcome {
    let rows = trend_rows();
    let s = summarize_trends(rows);
    let ok = s.modified_faster.len() == 3 && s.modified_faster.iter().all(|(_, f)| *f == Flag::Pass);
    check(
        ok,
        format!(
            "depth {} | median epochs {} | {}",
            flags_line(&s.modified_faster),
            medians_line(rows, |c| c.median_epochs),
            censoring_note(rows)
        ),
    )
}

fn modified_is_more_accurate() -> Outcome {
    let rows = trend_rows();
    let s = summarize_trends(rows);
    let ordering =
        s.modified_more_accurate.len() == 3 && s.modified_more_accurate.iter().all(|(_, f)| *f == Flag::Pass);

    // every converged run must classify its own clean training sample perfectly
    let cfg = ExperimentConfig {
        seeds: (1..=TREND_SEEDS).collect(),
        init: InitScheme::Symmetric,
        ..ExperimentConfig::default()
    };
    let font = bundled_font();
    let converged: Vec<&ExperimentRow> = rows.iter().filter(|r| r.converged).collect();
    let mut perfect = 0;
    for r in &converged {
        let run = train_run(&cfg, &font, r.sample, r.depth, r.rule, r.seed).unwrap();
        if run.evaluate(&font).unwrap().correct == 26 {
            perfect += 1;
        }
    }
    let self_test = !converged.is_empty() && perfect == converged.len();
    check(
        ordering && self_test,
        format!(
            "depth {} | median accuracy {} | clean self-test 100% on {perfect} of {} converged runs",
            flags_line(&s.modified_more_accurate),
            medians_line(rows, |c| c.median_accuracy),
            converged.len()
        ),
    )
}

fn brute_force_argmax(v: &[f64]) -> usize {
    let max = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    v.iter().position(|&x| x == max).unwrap()
}

fn compet_matches_argmax() -> Outcome {
    let mut prng = Prng::new(7);
    let mut ties = 0;
    for i in 0..COMPET_VECTORS {
        let n = 1 + (prng.next_u64() % 40) as usize;
        let mut v: Vec<f64> = (0..n).map(|_| prng.next_range(-1.0, 1.0)).collect();
        match i % 4 {
            // duplicate the maximum into random positions
            1 if n > 1 => {
                let max = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                for _ in 0..1 + prng.next_u64() % 3 {
                    let j = (prng.next_u64() % n as u64) as usize;
                    v[j] = max;
                }
            }
            // coarse values, so ties arise naturally
            2 => v.iter_mut().for_each(|x| *x = (*x * 3.0).round()),
            // all equal
            3 => v.iter_mut().for_each(|x| *x = 0.25),
            _ => {}
        }
        let expected = brute_force_argmax(&v);
        if v.iter().filter(|&&x| x == v[expected]).count() > 1 {
            ties += 1;
        }
        let got = compet_index(&v).unwrap();
        let hot = compet(&v).unwrap();
        let hot_ok = hot
            .iter()
            .enumerate()
            .all(|(j, &h)| h == if j == expected { 1.0 } else { 0.0 });
        if got != expected || !hot_ok {
            return Err(format!("vector {i}: compet chose {got}, argmax scan chose {expected}"));
        }
    }
    Ok(format!(
        "{COMPET_VECTORS} vectors agree, {ties} of them with tied maxima"
    ))
}

fn run_cli_experiment(out: &Path) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_bpnn"))
        .args(["experiment", "--out-dir"])
        .arg(out)
        .output()
        .map_err(|e| e.to_string())?;
    if !status.status.success() {
        return Err(String::from_utf8_lossy(&status.stderr).into_owned());
    }
    Ok(())
}

fn experiment_is_deterministic() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    run_cli_experiment(&a)?;
    run_cli_experiment(&b)?;
    let mut compared = Vec::new();
    for name in ["rows.csv", "trends.json", "trends.txt"] {
        let x = std::fs::read(a.join(name)).map_err(|e| e.to_string())?;
        let y = std::fs::read(b.join(name)).map_err(|e| e.to_string())?;
        if x != y {
            return Err(format!("{name} differs between executions"));
        }
        compared.push(format!("{name} ({} bytes)", x.len()));
    }
    let rows = std::fs::read_to_string(a.join("rows.csv")).unwrap().lines().count() - 1;
    check(
        rows == 5 * 3 * 2,
        format!("{rows} rows; identical {}", compared.join(", ")),
    )
}

fn random_glyph(prng: &mut Prng, label: Letter) -> BinaryGlyph {
    let mut cells = [0u8; GLYPH_CELLS];
    for c in cells.iter_mut() {
        *c = u8::from(prng.next_bool(0.5));
    }
    BinaryGlyph::new(cells, label).unwrap()
}

fn preprocessing_suite() -> Outcome {
    let start = Instant::now();
    let mut prng = Prng::new(11);
    let mut counts = Vec::new();

    // binarize is idempotent through the gray rendering of its own output
    let mut n = 0;
    for _ in 0..2000 {
        let rows = 1 + (prng.next_u64() % 40) as usize;
        let cols = 1 + (prng.next_u64() % 40) as usize;
        let img = GrayImage::new(rows, cols, (0..rows * cols).map(|_| prng.next_unit()).collect()).unwrap();
        let cfg = PreprocessConfig::new(prng.next_range(0.01, 0.99)).unwrap();
        let once = binarize(&img, &cfg);
        let twice = binarize(&once.to_gray(), &cfg);
        if once != twice {
            return Err(format!("binarize not idempotent on a {rows}x{cols} image"));
        }
        n += 1;
    }
    counts.push(format!("binarize {n}"));

    // every 8x6 binary image downsamples to itself: all 2^6 rows in every
    // row position, plus random grids
    let mut n = 0;
    let mut grids: Vec<[u8; GLYPH_CELLS]> = Vec::new();
    for r in 0..GLYPH_ROWS {
        for bits in 0u8..64 {
            let mut cells = [0u8; GLYPH_CELLS];
            for c in 0..GLYPH_COLS {
                cells[r * GLYPH_COLS + c] = (bits >> c) & 1;
            }
            grids.push(cells);
        }
    }
    grids.extend((0..5000).map(|_| *random_glyph(&mut prng, Letter::from_index(0).unwrap()).cells()));
    for cells in &grids {
        let img = BinaryImage::new(GLYPH_ROWS, GLYPH_COLS, cells.to_vec()).unwrap();
        if downsample_8x6(&img).unwrap() != *cells {
            return Err("downsample changed an 8x6 image".into());
        }
        n += 1;
    }
    counts.push(format!("downsample {n}"));

    // reshape and unflatten are inverse, with cell (r, c) at index r*6 + c
    let mut n = 0;
    for i in 0..5000 {
        let label = Letter::from_index(i % 26).unwrap();
        let g = random_glyph(&mut prng, label);
        let v = reshape_48::<f64>(&g);
        for r in 0..GLYPH_ROWS {
            for c in 0..GLYPH_COLS {
                if v[r * GLYPH_COLS + c] != f64::from(g.get(r, c)) {
                    return Err(format!("reshape puts cell ({r}, {c}) elsewhere"));
                }
            }
        }
        if unflatten(&v, label).unwrap() != g {
            return Err("unflatten(reshape(g)) != g".into());
        }
        n += 1;
    }
    counts.push(format!("reshape {n}"));

    // assembly restores A..Z order from any permutation
    let mut n = 0;
    for _ in 0..1000 {
        let glyphs: Vec<BinaryGlyph> = Letter::all().map(|l| random_glyph(&mut prng, l)).collect();
        let mut shuffled = glyphs.clone();
        for i in (1..shuffled.len()).rev() {
            let j = (prng.next_u64() % (i as u64 + 1)) as usize;
            shuffled.swap(i, j);
        }
        let sample = assemble_sample(shuffled).unwrap();
        if sample.glyphs() != glyphs.as_slice() {
            return Err("assembly did not restore letter order".into());
        }
        let m = sample.matrix::<f64>();
        for (c, g) in glyphs.iter().enumerate() {
            if m.column(c).as_slice() != reshape_48::<f64>(g).as_slice() {
                return Err(format!("matrix column {c} is not letter {}", g.label()));
            }
        }
        n += 1;
    }
    counts.push(format!("assembly {n}"));

    // glyph text and files round-trip
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut n = 0;
    for i in 0..2000 {
        let g = random_glyph(&mut prng, Letter::from_index(i % 26).unwrap());
        if parse_glyph(&format_glyph(&g)).unwrap() != g {
            return Err("glyph text round trip failed".into());
        }
        if i % 10 == 0 {
            let path = dir.path().join(format!("{i}.glyph"));
            write_glyph(&g, &path).unwrap();
            if read_glyph(&path).unwrap() != g {
                return Err("glyph file round trip failed".into());
            }
        }
        n += 1;
    }
    counts.push(format!("glyph files {n}"));

    let elapsed = start.elapsed();
    check(
        elapsed < PREPROCESS_BUDGET,
        format!(
            "{} cases, {:.2}s of {}s",
            counts.join(", "),
            elapsed.as_secs_f64(),
            PREPROCESS_BUDGET.as_secs()
        ),
    )
}
