//! `lms` — command-line surface for the finite Lorentzian metric space
//! toolkit. Every subcommand reads JSON, writes one JSON document to stdout
//! and exits 0 (success/pass), 1 (usage or I/O error), 2 (property refuted)
//! or 3 (inconclusive within budget).

mod experiment;
mod render;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lms_core::chains::{chain_length, check_length_property, dcheck, is_maximal_chain, maximal_chain_between};
use lms_core::gh::{
    certify_gh_convergence, distortion, search_qc, verify_qc, CertifyVerdict, GhSchedule,
    DEFAULT_SEARCH_BUDGET,
};
use lms_core::io::{load_space_file, save_space_file, SpaceFile};
use lms_core::models;
use lms_core::quasimetric::quasi_metric_pair;
use lms_core::quasimetric::verify_qm_properties;
use lms_core::regions::{quotient, spacelike_kernel};
use lms_core::relation::{causality, check_causal_properties, chronology, chronology_eps};
use lms_core::seq::SequencedSpace;
use lms_core::space::{boundaries, validate_axioms, FiniteLorentzSpace};
use lms_core::timefn::{affine_normalize, time_function};

use render::{pair_labels, point_labels, Outcome};

#[derive(Parser)]
#[command(name = "lms", version, about = "finite Lorentzian metric space toolkit")]
struct Cli {
    /// Worker-thread cap for parallel commands (fallback: LMS_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the space axioms (reverse triangle, distinguishing).
    Check { file: std::path::PathBuf },
    /// Emit the chronological and causal relations with the property report.
    Relations {
        file: std::path::PathBuf,
        /// Also emit the closed thickening I_eps.
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Future/past boundary and chronological interior.
    Boundaries { file: std::path::PathBuf },
    /// Series time function over an enumeration.
    Time {
        file: std::path::PathBuf,
        /// Comma-separated points (labels or indices); default: index order.
        #[arg(long)]
        enumeration: Option<String>,
        /// Rescale so the first point maps to 0 and the second to 1.
        #[arg(long)]
        normalize: Option<String>,
    },
    /// Chain supremum matrix, or one maximal chain with --from/--to.
    Length {
        file: std::path::PathBuf,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
    },
    /// Distance quotient of a region.
    Quotient {
        file: std::path::PathBuf,
        /// Comma-separated region points (labels or indices).
        #[arg(long)]
        region: String,
        /// Synthesize an explicit spacelike-infinity class in the export.
        #[arg(long)]
        spacelike_infinity: bool,
    },
    /// Kuratowski metric and canonical quasi-metric of a sequenced space.
    Quasimetric {
        file: std::path::PathBuf,
        /// Generating sequence (labels or indices); default: the file's seq.
        #[arg(long)]
        seq: Option<String>,
        /// Pin X^m to the whole space at every level.
        #[arg(long)]
        total: bool,
    },
    /// Gromov-Hausdorff machinery.
    #[command(subcommand)]
    Gh(GhCommand),
    /// Generators for example spaces.
    #[command(subcommand)]
    Sample(SampleCommand),
}

#[derive(Subcommand)]
enum GhCommand {
    /// Search for an (m, eps) quasi-correspondence between two spaces.
    Search {
        a: std::path::PathBuf,
        b: std::path::PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
    },
    /// Probe a family against a target per an experiment description.
    Certify { experiment: std::path::PathBuf },
}

#[derive(Copy, Clone, ValueEnum)]
enum DiamondMode {
    Grid,
    Poisson,
}

#[derive(Copy, Clone, ValueEnum)]
enum CausetKind {
    Links,
    Chain,
    Antichain,
}

#[derive(Args)]
struct OutputArg {
    /// Write the sample here instead of stdout.
    #[arg(short, long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum SampleCommand {
    /// Sample the unit causal diamond of flat (1+k)-dimensional spacetime.
    Minkowski {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Grid: points per axis. Poisson: total points.
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = DiamondMode::Grid)]
        mode: DiamondMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Half-line space d(x,y) = (x−y)₊ on explicit positive points.
    Halfline {
        /// Comma-separated positive sample values.
        #[arg(long)]
        points: String,
        /// The family index n (determines the generating sequence).
        #[arg(long)]
        shift: u32,
        #[arg(long, default_value_t = 2)]
        seq_len: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Canonical real-line target sample with anchors to a given depth.
    Realline {
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 8)]
        fill: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Causet fixtures: link-weight closures, chains, antichains.
    Causet {
        #[arg(long, value_enum)]
        kind: CausetKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        step: f64,
        #[command(flatten)]
        out: OutputArg,
    },
}

fn main() {
    let cli = Cli::parse();
    let threads = cli
        .threads
        .or_else(|| std::env::var("LMS_THREADS").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(1)
        .max(1);
    match run(cli.command, threads) {
        Ok(outcome) => {
            println!("{}", serde_json::to_string_pretty(&outcome.document).expect("serializable"));
            std::process::exit(outcome.exit);
        }
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(1);
        }
    }
}

fn load_space(path: &std::path::Path) -> Result<FiniteLorentzSpace, String> {
    load_space_file(path)
        .and_then(|f| f.into_space())
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn load_sequenced(
    path: &std::path::Path,
    seq_flag: Option<&str>,
    total: bool,
) -> Result<SequencedSpace, String> {
    let file = load_space_file(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let (space, from_file) = file.into_parts().map_err(|e| format!("{}: {e}", path.display()))?;
    match seq_flag {
        Some(spec) => {
            let seq = resolve_points(&space, spec)?;
            let made = if total {
                SequencedSpace::total(space, seq)
            } else {
                SequencedSpace::new(space, seq)
            };
            made.map_err(|e| format!("{}: {e}", path.display()))
        }
        None => match from_file {
            Some(seq_space) if !total || seq_space.is_total() => Ok(seq_space),
            Some(seq_space) => SequencedSpace::total(
                seq_space.space.clone(),
                seq_space.seq().to_vec(),
            )
            .map_err(|e| format!("{}: {e}", path.display())),
            None => Err(format!(
                "{}: no sequence: pass --seq or add a \"seq\" field",
                path.display()
            )),
        },
    }
}

/// Comma-separated labels or indices.
fn resolve_points(space: &FiniteLorentzSpace, spec: &str) -> Result<Vec<usize>, String> {
    spec.split(',')
        .map(|token| {
            let token = token.trim();
            if let Ok(idx) = token.parse::<usize>() {
                if idx < space.len() {
                    return Ok(idx);
                }
                return Err(format!("index {idx} out of range (space has {} points)", space.len()));
            }
            space
                .index_of(token)
                .ok_or_else(|| format!("unknown label {token:?}"))
        })
        .collect()
}

fn resolve_point(space: &FiniteLorentzSpace, token: &str) -> Result<usize, String> {
    let v = resolve_points(space, token)?;
    if v.len() != 1 {
        return Err(format!("expected one point, got {token:?}"));
    }
    Ok(v[0])
}

fn run(command: Command, threads: usize) -> Result<Outcome, String> {
    match command {
        Command::Check { file } => {
            let space = load_space(&file)?;
            let report = validate_axioms(&space);
            let doc = json!({
                "format": 1,
                "reverse_triangle": render::check(&report.reverse_triangle, |w| point_labels(&space, &[w.0, w.1, w.2])),
                "distinguishing": render::check(&report.distinguishing, |w| point_labels(&space, &[w.0, w.1])),
            });
            Ok(Outcome { document: doc, exit: if report.all_pass() { 0 } else { 2 } })
        }
        Command::Relations { file, eps } => {
            let space = load_space(&file)?;
            let i = chronology(&space);
            let j = causality(&space);
            let report = check_causal_properties(&space);
            let mut doc = json!({
                "format": 1,
                "chronology": pair_labels(&space, &i.pairs()),
                "causal": pair_labels(&space, &j.pairs()),
                "report": render::causal_report(&space, &report),
            });
            if let Some(eps) = eps {
                let ieps = chronology_eps(&space, eps).map_err(|e| e.to_string())?;
                doc["chronology_eps"] = json!({
                    "eps": eps,
                    "pairs": pair_labels(&space, &ieps.pairs()),
                });
            }
            Ok(Outcome { document: doc, exit: 0 })
        }
        Command::Boundaries { file } => {
            let space = load_space(&file)?;
            let b = boundaries(&space);
            let doc = json!({
                "format": 1,
                "future": point_labels(&space, &b.future),
                "past": point_labels(&space, &b.past),
                "interior": point_labels(&space, &b.interior),
            });
            Ok(Outcome { document: doc, exit: 0 })
        }
        Command::Time { file, enumeration, normalize } => {
            let space = load_space(&file)?;
            let enumeration = match enumeration {
                Some(spec) => resolve_points(&space, &spec)?,
                None => (0..space.len()).collect(),
            };
            let mut tf = time_function(&space, &enumeration).map_err(|e| e.to_string())?;
            if let Some(spec) = normalize {
                let pts = resolve_points(&space, &spec)?;
                if pts.len() != 2 {
                    return Err("--normalize expects exactly two points".into());
                }
                tf = affine_normalize(&tf, pts[0], pts[1]).map_err(|e| e.to_string())?;
            }
            let violation = tf.monotonicity_violation(&space);
            let values: serde_json::Map<String, serde_json::Value> = space
                .labels()
                .iter()
                .enumerate()
                .map(|(i, l)| (l.clone(), json!(tf.value(i))))
                .collect();
            let doc = json!({
                "format": 1,
                "tau": values,
                "alpha": tf.alpha(),
                "beta": tf.beta(),
                "monotone": violation.is_none(),
                "violation": violation.map(|(x, y)| point_labels(&space, &[x, y])),
            });
            Ok(Outcome { document: doc, exit: if violation.is_none() { 0 } else { 2 } })
        }
        Command::Length { file, from, to } => {
            let space = load_space(&file)?;
            match (from, to) {
                (Some(fs), Some(ts)) => {
                    let x = resolve_point(&space, &fs)?;
                    let y = resolve_point(&space, &ts)?;
                    let chain = maximal_chain_between(&space, x, y).map_err(|e| e.to_string())?;
                    let doc = match chain {
                        Some(chain) => {
                            let len = chain_length(&space, &chain).map_err(|e| e.to_string())?;
                            let maximal =
                                is_maximal_chain(&space, &chain).map_err(|e| e.to_string())?;
                            json!({
                                "format": 1,
                                "chain": point_labels(&space, &chain.points),
                                "length": len,
                                "maximal": maximal,
                            })
                        }
                        None => json!({ "format": 1, "chain": null }),
                    };
                    Ok(Outcome { document: doc, exit: 0 })
                }
                (None, None) => {
                    let dmat = dcheck(&space).map_err(|e| e.to_string())?;
                    let report = check_length_property(&space).map_err(|e| e.to_string())?;
                    let doc = json!({
                        "format": 1,
                        "dcheck": dmat,
                        "length_property": {
                            "ok": report.ok,
                            "worst_gap": report.worst_gap,
                            "witness": report.witness.map(|(x, y)| point_labels(&space, &[x, y])),
                        },
                    });
                    Ok(Outcome { document: doc, exit: if report.ok { 0 } else { 2 } })
                }
                _ => Err("--from and --to must be given together".into()),
            }
        }
        Command::Quotient { file, region, spacelike_infinity } => {
            let space = load_space(&file)?;
            let region = resolve_points(&space, &region)?;
            let q = quotient(&space, &region).map_err(|e| e.to_string())?;
            let kernel = spacelike_kernel(&space, &q.region).map_err(|e| e.to_string())?;
            let mut space_file = SpaceFile::from_space(&q.quotient);
            let mut classes: serde_json::Map<String, serde_json::Value> = q
                .classes
                .iter()
                .enumerate()
                .map(|(k, members)| (format!("C{k}"), json!(point_labels(&space, members))))
                .collect();
            if spacelike_infinity && !kernel.is_empty() {
                let n = space_file.labels.len();
                space_file.labels.push("i0".into());
                for row in &mut space_file.d {
                    row.push(0.0);
                }
                space_file.d.push(vec![0.0; n + 1]);
                classes.insert("i0".into(), json!(point_labels(&space, &kernel)));
            }
            let doc = json!({
                "format": 1,
                "space": serde_json::to_value(&space_file).expect("serializable"),
                "classes": classes,
                "kernel": point_labels(&space, &kernel),
            });
            Ok(Outcome { document: doc, exit: 0 })
        }
        Command::Quasimetric { file, seq, total } => {
            let seq_space = load_sequenced(&file, seq.as_deref(), total)?;
            let pair = quasi_metric_pair(&seq_space);
            let report = verify_qm_properties(&seq_space);
            let pass = report.pass();
            let doc = json!({
                "format": 1,
                "gamma": pair.gamma,
                "p": pair.p,
                "seq_len": pair.seq_len,
                "tail_rule": { "level": pair.tail_rule.level, "weight": pair.tail_rule.weight },
                "report": render::qm_report(&seq_space.space, &report),
            });
            Ok(Outcome { document: doc, exit: if pass { 0 } else { 2 } })
        }
        Command::Gh(GhCommand::Search { a, b, m, eps, budget }) => {
            let xs = load_sequenced(&a, None, false)?;
            let xps = load_sequenced(&b, None, false)?;
            let outcome = search_qc(&xs, &xps, m, eps, budget).map_err(|e| e.to_string())?;
            let (found, pairs, dis, verified) = match &outcome.best {
                Some(qc) => {
                    let dis = distortion(&xs.space, &xps.space, qc.pairs())
                        .map_err(|e| e.to_string())?;
                    let verified = verify_qc(&xs, &xps, qc).map_err(|e| e.to_string())?.pass();
                    let labeled: Vec<[String; 2]> = qc
                        .pairs()
                        .iter()
                        .map(|&(i, j)| {
                            [xs.space.label(i).to_string(), xps.space.label(j).to_string()]
                        })
                        .collect();
                    (true, Some(labeled), Some(dis), Some(verified))
                }
                None => (false, None, None, None),
            };
            let exit = if found {
                0
            } else if outcome.certified {
                2
            } else {
                3
            };
            let doc = json!({
                "format": 1,
                "found": found,
                "certified": outcome.certified,
                "budget_exhausted": outcome.budget_exhausted,
                "nodes": outcome.nodes,
                "near_miss": outcome.near_miss,
                "pairs": pairs,
                "distortion": dis,
                "verified": verified,
            });
            Ok(Outcome { document: doc, exit })
        }
        Command::Gh(GhCommand::Certify { experiment }) => {
            let spec = experiment::load(&experiment)?;
            let (family, target) = experiment::build(&spec)?;
            let schedule = GhSchedule {
                deltas: spec.schedule.deltas.clone(),
                thresholds: spec.schedule.thresholds.clone(),
            };
            let outcome = certify_gh_convergence(
                &family,
                &target,
                &schedule,
                spec.m_max,
                spec.budget.unwrap_or(DEFAULT_SEARCH_BUDGET),
                threads,
            )
            .map_err(|e| e.to_string())?;
            let exit = match outcome.verdict {
                CertifyVerdict::Consistent { .. } => 0,
                CertifyVerdict::Refuted { .. } => 2,
                CertifyVerdict::Inconclusive { .. } => 3,
            };
            let doc = json!({
                "format": 1,
                "cells": outcome.cells.iter().map(render::certify_cell).collect::<Vec<_>>(),
                "verdict": render::verdict(&outcome.verdict),
            });
            Ok(Outcome { document: doc, exit })
        }
        Command::Sample(sample) => run_sample(sample),
    }
}

fn run_sample(sample: SampleCommand) -> Result<Outcome, String> {
    let (file, out) = match sample {
        SampleCommand::Minkowski { dim, n, mode, seed, out } => {
            let mode = match mode {
                DiamondMode::Grid => models::SampleMode::Grid,
                DiamondMode::Poisson => models::SampleMode::Poisson { seed },
            };
            let sample = models::sample_diamond(dim, n, mode).map_err(|e| e.to_string())?;
            let mut file = SpaceFile::from_space(&sample.space);
            if let Some((bottom, top)) = sample.corner_indices() {
                file.seq = Some(vec![bottom, top]);
            }
            (file, out)
        }
        SampleCommand::Halfline { points, shift, seq_len, out } => {
            let values: Vec<f64> = points
                .split(',')
                .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad point {t:?}: {e}")))
                .collect::<Result<_, _>>()?;
            let line =
                models::halfline_space(&values, shift, seq_len).map_err(|e| e.to_string())?;
            (SpaceFile::from_sequenced(&line.seq_space), out)
        }
        SampleCommand::Realline { depth, fill, out } => {
            let line = models::realline_canonical(depth, fill).map_err(|e| e.to_string())?;
            (SpaceFile::from_sequenced(&line.seq_space), out)
        }
        SampleCommand::Causet { kind, n, seed, step, out } => {
            let space = match kind {
                CausetKind::Links => models::from_link_weights(n, seed),
                CausetKind::Chain => models::chain(n, step),
                CausetKind::Antichain => models::antichain(n),
            }
            .map_err(|e| e.to_string())?;
            let mut file = SpaceFile::from_space(&space);
            if matches!(kind, CausetKind::Links | CausetKind::Chain) && n >= 2 {
                file.seq = Some(vec![0, n - 1]);
            }
            (file, out)
        }
    };
    match out.output {
        Some(path) => {
            save_space_file(&path, &file).map_err(|e| format!("{}: {e}", path.display()))?;
            let doc = json!({
                "format": 1,
                "written": path.display().to_string(),
                "points": file.labels.len(),
            });
            Ok(Outcome { document: doc, exit: 0 })
        }
        None => Ok(Outcome {
            document: serde_json::to_value(&file).expect("serializable"),
            exit: 0,
        }),
    }
}
