//! Seeded Monte Carlo trials: plant a U_r error set, decode its syndrome,
//! and record the outcome.
//!
//! Every trial draws from its own ChaCha20 stream (`seed`, stream = global
//! trial index), so results do not depend on thread count or scheduling.
//! The main CSV holds only deterministic columns; wall-clock times go to a
//! separate file.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;

use rms_core::jennrich::default_ext_degree;
use rms_core::multilinear::MonomialIndex;
use rms_core::rm::{sample_error_set, CodeParams, RmError, Syndrome};

use crate::commands::{params, write_json};
use crate::decoder::{Algo, AnyDecoder, Mode};
use crate::exit::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpAlgo {
    Jennrich,
    Polyspace,
    Both,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExperimentArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long, default_value_t = 2)]
    pub p: u64,
    /// Number of planted errors (first value of the sweep).
    #[arg(long)]
    pub t: usize,
    /// Sweep t upward to this value inclusive.
    #[arg(long)]
    pub t_max: Option<usize>,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ExpAlgo::Both)]
    pub algo: ExpAlgo,
    /// With `--algo both`, `rand` runs both randomized decoders and
    /// `derand` or `det` runs both deterministic ones.
    #[arg(long, value_enum, default_value_t = Mode::Rand)]
    pub mode: Mode,
    #[arg(long)]
    pub ext_degree: Option<u32>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1000)]
    pub max_resamples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    DecodeFailure,
    SamplingFailed,
}

/// One CSV row: a trial decoded by one algorithm.
#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub m: usize,
    pub r: usize,
    pub p: u64,
    pub t: usize,
    pub algo: &'static str,
    pub mode: &'static str,
    pub ext_degree: Option<u32>,
    pub status: Status,
    pub success: bool,
    pub mismatch: usize,
    pub resamples: usize,
    pub work: usize,
}

#[derive(Debug, Clone, Serialize)]
struct TimingRecord {
    trial: usize,
    t: usize,
    algo: &'static str,
    sample_us: u64,
    syndrome_us: u64,
    decode_us: u64,
}

struct Arm {
    algo: Algo,
    mode: Mode,
    ext_degree: Option<u32>,
    decoder: AnyDecoder,
}

fn arms(args: &ExperimentArgs, params: CodeParams) -> Result<Vec<Arm>, Failure> {
    let deterministic = args.mode != Mode::Rand;
    let picks: Vec<(Algo, Mode)> = match args.algo {
        ExpAlgo::Jennrich => vec![(Algo::Jennrich, args.mode)],
        ExpAlgo::Polyspace => vec![(Algo::Polyspace, args.mode)],
        ExpAlgo::Both if deterministic => {
            vec![(Algo::Jennrich, Mode::Derand), (Algo::Polyspace, Mode::Det)]
        }
        ExpAlgo::Both => vec![(Algo::Jennrich, Mode::Rand), (Algo::Polyspace, Mode::Rand)],
    };
    picks
        .into_iter()
        .map(|(algo, mode)| {
            let ext_degree = (algo == Algo::Jennrich).then(|| {
                args.ext_degree
                    .unwrap_or_else(|| default_ext_degree(&params))
            });
            Ok(Arm {
                algo,
                mode,
                ext_degree,
                decoder: AnyDecoder::new(params, algo, mode, ext_degree)?,
            })
        })
        .collect()
}

fn micros(start: Instant) -> u64 {
    start.elapsed().as_micros() as u64
}

struct TrialOutput {
    records: Vec<TrialRecord>,
    timings: Vec<TimingRecord>,
    /// Both arms returned a set and the sets were equal.
    agreement: Option<bool>,
}

fn run_trial(
    args: &ExperimentArgs,
    params: CodeParams,
    index: &MonomialIndex,
    arms: &[Arm],
    trial: usize,
    t: usize,
) -> TrialOutput {
    let mut rng = ChaCha20Rng::seed_from_u64(args.seed);
    rng.set_stream(trial as u64);
    let base = |arm: &Arm| TrialRecord {
        trial,
        seed: args.seed,
        m: params.m,
        r: params.r,
        p: params.p,
        t,
        algo: arm.algo.name(),
        mode: arm.mode.name(),
        ext_degree: arm.ext_degree,
        status: Status::Ok,
        success: false,
        mismatch: 0,
        resamples: 0,
        work: 0,
    };
    let start = Instant::now();
    let sampled = sample_error_set(&params, t, &mut rng, args.max_resamples);
    let sample_us = micros(start);
    let sampled = match sampled {
        Ok(s) => s,
        Err(e) => {
            if !matches!(e, RmError::SamplingFailed { .. }) {
                log::warn!("trial {trial}: {e}");
            }
            return TrialOutput {
                records: arms
                    .iter()
                    .map(|a| TrialRecord {
                        status: Status::SamplingFailed,
                        resamples: args.max_resamples,
                        ..base(a)
                    })
                    .collect(),
                timings: Vec::new(),
                agreement: None,
            };
        }
    };
    let mags: Vec<u64> = (0..t)
        .map(|_| {
            if params.p == 2 {
                1
            } else {
                rng.gen_range(1..params.p)
            }
        })
        .collect();
    let start = Instant::now();
    let syndrome = Syndrome::from_weighted_errors_in(&params, index, &sampled.errors, &mags)
        .expect("sampled points lie in F_p^m");
    let syndrome_us = micros(start);

    let mut records = Vec::with_capacity(arms.len());
    let mut timings = Vec::with_capacity(arms.len());
    let mut found = Vec::with_capacity(arms.len());
    for arm in arms {
        let start = Instant::now();
        let out = arm.decoder.decode(&syndrome, &mut rng);
        let decode_us = micros(start);
        let record = match &out {
            Ok(d) => {
                let mismatch = d.errors.symmetric_difference(&sampled.errors);
                TrialRecord {
                    success: mismatch == 0 && d.magnitudes == mags,
                    mismatch,
                    resamples: sampled.resamples,
                    work: d.work,
                    ..base(arm)
                }
            }
            Err(e) => {
                log::debug!("trial {trial} {}: {e}", arm.algo.name());
                TrialRecord {
                    status: Status::DecodeFailure,
                    mismatch: t,
                    resamples: sampled.resamples,
                    ..base(arm)
                }
            }
        };
        found.push(out.ok().map(|d| d.errors));
        records.push(record);
        timings.push(TimingRecord {
            trial,
            t,
            algo: arm.algo.name(),
            sample_us,
            syndrome_us,
            decode_us,
        });
    }
    let agreement = match found.as_slice() {
        [Some(a), Some(b)] => Some(a == b),
        _ => None,
    };
    TrialOutput {
        records,
        timings,
        agreement,
    }
}

#[derive(Debug, Default, Serialize)]
struct Percentiles {
    p50: u64,
    p90: u64,
    p99: u64,
    max: u64,
}

fn percentiles(mut v: Vec<u64>) -> Percentiles {
    if v.is_empty() {
        return Percentiles::default();
    }
    v.sort_unstable();
    let at = |q: f64| v[((q * v.len() as f64).ceil() as usize).clamp(1, v.len()) - 1];
    Percentiles {
        p50: at(0.5),
        p90: at(0.9),
        p99: at(0.99),
        max: *v.last().expect("nonempty"),
    }
}

#[derive(Debug, Serialize)]
struct GroupSummary {
    t: usize,
    algo: &'static str,
    mode: &'static str,
    trials: usize,
    successes: usize,
    success_rate: f64,
    decode_failures: usize,
    sampling_failures: usize,
    decode_us: Percentiles,
}

#[derive(Debug, Serialize)]
struct Agreement {
    both_decoded: usize,
    agreed: usize,
    rate: Option<f64>,
}

#[derive(Debug, Serialize)]
struct Summary<'a> {
    config: &'a ExperimentArgs,
    groups: Vec<GroupSummary>,
    agreement: Agreement,
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

pub fn worker_count() -> usize {
    let available = std::thread::available_parallelism().map_or(1, |n| n.get());
    std::env::var("RMS_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .map_or(available, |n| n.min(available))
}

pub fn cmd_experiment(args: &ExperimentArgs) -> Result<(), Failure> {
    if args.trials == 0 {
        return Err(Failure::input("--trials must be at least 1"));
    }
    let params = params(args.m, args.r, args.p)?;
    let t_max = args.t_max.unwrap_or(args.t);
    if t_max < args.t {
        return Err(Failure::input("--t-max must be at least --t"));
    }
    let arms = arms(args, params)?;
    let index = params.syndrome_index()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count())
        .build()
        .map_err(|e| Failure::input(format!("thread pool: {e}")))?;

    let mut csv_out = csv::Writer::from_writer(File::create(&args.out)?);
    let mut timing_out =
        csv::Writer::from_writer(File::create(sibling(&args.out, ".timings.csv"))?);
    let chunk = (pool.current_num_threads() * 8).max(64);
    let jobs: Vec<(usize, usize)> = (args.t..=t_max)
        .flat_map(|t| (0..args.trials).map(move |i| ((t - args.t) * args.trials + i, t)))
        .collect();

    let mut groups: BTreeMap<(usize, usize), (Vec<TrialRecord>, Vec<u64>)> = BTreeMap::new();
    let mut agreement = Agreement {
        both_decoded: 0,
        agreed: 0,
        rate: None,
    };
    for batch in jobs.chunks(chunk) {
        let outputs: Vec<TrialOutput> = pool.install(|| {
            batch
                .par_iter()
                .map(|&(trial, t)| run_trial(args, params, &index, &arms, trial, t))
                .collect()
        });
        // Written in trial order and flushed per batch, so an interrupted
        // run keeps every completed batch.
        for out in outputs {
            for (k, rec) in out.records.iter().enumerate() {
                csv_out.serialize(rec)?;
                let g = groups.entry((rec.t, k)).or_default();
                g.0.push(rec.clone());
                if let Some(tm) = out.timings.get(k) {
                    g.1.push(tm.decode_us);
                }
            }
            for tm in &out.timings {
                timing_out.serialize(tm)?;
            }
            if let Some(agreed) = out.agreement {
                agreement.both_decoded += 1;
                agreement.agreed += agreed as usize;
            }
        }
        csv_out.flush()?;
        timing_out.flush()?;
    }
    agreement.rate = (agreement.both_decoded > 0)
        .then(|| agreement.agreed as f64 / agreement.both_decoded as f64);

    let groups: Vec<GroupSummary> = groups
        .into_values()
        .map(|(recs, times)| {
            let first = &recs[0];
            let successes = recs.iter().filter(|r| r.success).count();
            GroupSummary {
                t: first.t,
                algo: first.algo,
                mode: first.mode,
                trials: recs.len(),
                successes,
                success_rate: successes as f64 / recs.len() as f64,
                decode_failures: recs
                    .iter()
                    .filter(|r| r.status == Status::DecodeFailure)
                    .count(),
                sampling_failures: recs
                    .iter()
                    .filter(|r| r.status == Status::SamplingFailed)
                    .count(),
                decode_us: percentiles(times),
            }
        })
        .collect();
    let mut stdout = std::io::stdout().lock();
    for g in &groups {
        writeln!(
            stdout,
            "t={} {}/{}: {}/{} exact ({:.3}), decode p50 {} us, p99 {} us",
            g.t,
            g.algo,
            g.mode,
            g.successes,
            g.trials,
            g.success_rate,
            g.decode_us.p50,
            g.decode_us.p99
        )?;
    }
    write_json(
        &sibling(&args.out, ".summary.json"),
        &Summary {
            config: args,
            groups,
            agreement,
        },
    )
}
