use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use qdel::ranking::rank_report;
use qdel::{
    gen_synthetic, load_image, q_del_report, FusionMethod, GrayImage, MetricId, QDelConfig, ScoreMatrix,
    SyntheticKind, TiePolicy,
};
use rayon::prelude::*;

use crate::config::{Config, ExperimentSpec};
use crate::error::{CliError, CliResult};
use crate::output::{commit, stage_bytes, stage_image, Staged};

fn load(path: &Path) -> CliResult<GrayImage<f64>> {
    Ok(load_image(path)?)
}

fn load_config(path: Option<&Path>) -> CliResult<Config> {
    path.map_or_else(|| Ok(Config::default()), Config::load)
}

pub fn fuse(method: &str, a: &Path, b: &Path, output: &Path) -> CliResult<()> {
    let method: FusionMethod = method.parse()?;
    let (a, b) = (load(a)?, load(b)?);
    let fused = method.fuse(&a, &b)?;
    commit(vec![stage_image(output, &fused)?])
}

pub struct EvaluateArgs<'a> {
    pub metric: &'a str,
    pub sources: &'a [PathBuf],
    pub fused: &'a Path,
    pub config: Option<&'a Path>,
    pub dump_saliency: Option<&'a Path>,
    pub dump_probability: Option<&'a Path>,
}

/// Returns the `<metric>,<score>` line.
pub fn evaluate(args: &EvaluateArgs<'_>) -> CliResult<String> {
    let metric: MetricId = args.metric.parse()?;
    let config = load_config(args.config)?;
    let sources = args.sources.iter().map(|p| load(p)).collect::<CliResult<Vec<_>>>()?;
    let fused = load(args.fused)?;
    if sources.len() < 2 {
        return Err(qdel::Error::TooFewInputs {
            required: 2,
            actual: sources.len(),
        }
        .into());
    }
    let score = metric.evaluate(&sources, &fused, &config.qdel)?;

    let mut staged = Vec::new();
    if args.dump_saliency.is_some() || args.dump_probability.is_some() {
        let report = q_del_report(&sources, &fused, &config.qdel)?;
        if let Some(path) = args.dump_saliency {
            staged.push(stage_image(path, &report.fused_saliency.to_display_image())?);
        }
        if let Some(path) = args.dump_probability {
            staged.push(stage_image(path, &report.probability.to_display_image())?);
        }
    }
    commit(staged)?;
    Ok(format!("{},{score:.6}", metric.as_str()))
}

pub fn gen(kind: &str, seed: u64, size: usize, prefix: &Path, format: &str) -> CliResult<()> {
    let kind: SyntheticKind = kind.parse()?;
    let pair = gen_synthetic::<f64>(kind, seed, size)?;
    let name = |suffix: &str| {
        let mut s = prefix.as_os_str().to_owned();
        s.push(format!("_{suffix}.{format}"));
        PathBuf::from(s)
    };
    let staged = vec![stage_image(&name("a"), &pair.first)?, stage_image(&name("b"), &pair.second)?];
    commit(staged)
}

struct ExperimentOutput {
    matrix: ScoreMatrix<f64>,
    files: Vec<Staged>,
}

fn score_experiment(spec: &ExperimentSpec, qdel: &QDelConfig<f64>) -> CliResult<ScoreMatrix<f64>> {
    let (a, b) = (load(&spec.sources[0])?, load(&spec.sources[1])?);
    let sources = [a, b];
    let fused = spec
        .methods
        .par_iter()
        .map(|m| m.fuse(&sources[0], &sources[1]))
        .collect::<qdel::Result<Vec<_>>>()?;
    let n = spec.methods.len();
    let flat = (0..spec.metrics.len() * n)
        .into_par_iter()
        .map(|cell| spec.metrics[cell / n].evaluate(&sources, &fused[cell % n], qdel))
        .collect::<qdel::Result<Vec<_>>>()?;
    let scores = flat.chunks(n).map(<[f64]>::to_vec).collect();
    Ok(ScoreMatrix::new(
        spec.metrics.iter().map(|m| m.as_str().to_string()).collect(),
        spec.methods.iter().map(|m| m.as_str().to_string()).collect(),
        scores,
    )?)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|c| format!("{c:.6}")).unwrap_or_default()
}

fn scores_csv(matrix: &ScoreMatrix<f64>, ties: TiePolicy) -> CliResult<String> {
    let ranks = matrix.ranks(ties)?;
    let mut out = String::from("metric,method,score,rank\n");
    for (i, metric) in matrix.metric_ids().iter().enumerate() {
        for (j, method) in matrix.method_ids().iter().enumerate() {
            let _ = writeln!(out, "{metric},{method},{:.6},{}", matrix.scores()[i][j], ranks[i][j]);
        }
    }
    Ok(out)
}

fn correlation_csv(matrix: &ScoreMatrix<f64>) -> String {
    let ids = matrix.metric_ids();
    let mut out = format!("metric,{}\n", ids.join(","));
    for (id, row) in ids.iter().zip(matrix.correlation_matrix()) {
        let cells: Vec<String> = row.into_iter().map(fmt_opt).collect();
        let _ = writeln!(out, "{id},{}", cells.join(","));
    }
    out
}

fn run_experiment(spec: &ExperimentSpec, config: &Config, outdir: &Path) -> CliResult<ExperimentOutput> {
    let matrix = score_experiment(spec, &config.qdel)?;
    let files = vec![
        stage_bytes(
            &outdir.join(format!("{}.scores.csv", spec.name)),
            scores_csv(&matrix, config.ties)?.as_bytes(),
        )?,
        stage_bytes(
            &outdir.join(format!("{}.corr.csv", spec.name)),
            correlation_csv(&matrix).as_bytes(),
        )?,
    ];
    Ok(ExperimentOutput { matrix, files })
}

fn summary_csv(names: &[&str], matrices: &[ScoreMatrix<f64>], ties: TiePolicy) -> CliResult<String> {
    let report = rank_report(matrices, ties)?;
    let mut out = String::from("metric");
    for name in names {
        let _ = write!(out, ",{name}_corr");
    }
    out.push_str(",avg_rank,final_rank\n");
    let fr = &report.final_ranking;
    for (j, metric) in report.metric_ids.iter().enumerate() {
        out.push_str(metric);
        for e in &report.experiments {
            let _ = write!(out, ",{}", fmt_opt(e.loo_correlation[j]));
        }
        let _ = writeln!(out, ",{:.6},{}", fr.average_ranks[j], fr.final_ranks[j]);
    }
    Ok(out)
}

/// Runs every experiment in `config_path`, writing
/// `<name>.scores.csv`, `<name>.corr.csv` and `summary.csv` under `outdir`.
/// Failed experiments are reported to stderr and left out of the summary.
pub fn rank(config_path: &Path, outdir: &Path) -> CliResult<()> {
    let config = Config::load(config_path)?;
    if config.experiments.is_empty() {
        return Err(CliError::Config {
            path: config_path.to_path_buf(),
            message: "no [[experiment]] entries".into(),
        });
    }
    std::fs::create_dir_all(outdir).map_err(|e| CliError::io(outdir, e))?;

    let results: Vec<CliResult<ExperimentOutput>> = config
        .experiments
        .par_iter()
        .map(|spec| run_experiment(spec, &config, outdir))
        .collect();

    let mut failed = 0;
    let mut names = Vec::new();
    let mut matrices = Vec::new();
    for (spec, result) in config.experiments.iter().zip(results) {
        match result.and_then(|out| commit(out.files).map(|()| out.matrix)) {
            Ok(matrix) => {
                names.push(spec.name.as_str());
                matrices.push(matrix);
            }
            Err(e) => {
                failed += 1;
                eprintln!("error: experiment `{}`: {e}", spec.name);
            }
        }
    }
    if !matrices.is_empty() {
        let summary = summary_csv(&names, &matrices, config.ties)
            .and_then(|csv| commit(vec![stage_bytes(&outdir.join("summary.csv"), csv.as_bytes())?]));
        if let Err(e) = summary {
            eprintln!("error: summary: {e}");
            failed += 1;
        }
    }
    if failed > 0 {
        return Err(CliError::ExperimentsFailed {
            failed,
            total: config.experiments.len(),
        });
    }
    Ok(())
}
