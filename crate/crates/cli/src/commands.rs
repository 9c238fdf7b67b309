//! The single-shot subcommands: encode, corrupt, syndrome, decode.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::Args;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use rms_core::multilinear::{reduce, Term};
use rms_core::polyspace::PolyspaceDecoder;
use rms_core::polyspace::PolyspaceMode;
use rms_core::rm::{
    corrupt, encode, read_sidecar, read_word, sample_error_set, syndrome_streaming, write_sidecar,
    write_word, CodeParams, RmError, Syndrome, SyndromeFile,
};

use crate::decoder::{Algo, AnyDecoder, Mode};
use crate::exit::{Exit, Failure};

pub fn params(m: usize, r: usize, p: u64) -> Result<CodeParams, Failure> {
    CodeParams::new(m, r, p).map_err(|e| Failure::new(Exit::ParameterBounds, e))
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::from(e).context(format!("creating {}", path.display())))
}

fn open(path: &Path) -> Result<File, Failure> {
    File::open(path).map_err(|e| Failure::from(e).context(format!("opening {}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let mut w = create(path)?;
    serde_json::to_writer(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

fn load_word(path: &Path) -> Result<(CodeParams, rms_core::rm::ReceivedWord), Failure> {
    let params = read_sidecar(path)
        .map_err(|e| Failure::from(e).context(format!("reading sidecar of {}", path.display())))?;
    let word = read_word(params, BufReader::new(open(path)?))
        .map_err(|e| Failure::from(e).context(format!("reading {}", path.display())))?;
    Ok((params, word))
}

fn save_word(path: &Path, word: &rms_core::rm::ReceivedWord) -> Result<(), Failure> {
    let mut w = create(path)?;
    write_word(&mut w, word)?;
    w.flush()?;
    write_sidecar(path, word.params())?;
    Ok(())
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long, default_value_t = 2)]
    pub p: u64,
    /// JSON list of `[exponents, coefficient]` terms.
    #[arg(long)]
    pub poly: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn cmd_encode(args: &EncodeArgs) -> Result<(), Failure> {
    let params = params(args.m, args.r, args.p)?;
    let terms: Vec<Term> = serde_json::from_reader(BufReader::new(open(&args.poly)?))
        .map_err(|e| Failure::from(e).context(format!("parsing {}", args.poly.display())))?;
    let poly =
        reduce(params.m, params.p, &terms).map_err(|e| Failure::new(Exit::InvalidInput, e))?;
    let word = encode(&params, &poly).map_err(|e| match e {
        RmError::DegreeTooHigh { .. } => Failure::new(Exit::InvalidInput, e),
        other => other.into(),
    })?;
    save_word(&args.out, &word)
}

#[derive(Debug, Args)]
pub struct CorruptArgs {
    #[arg(long)]
    pub word: PathBuf,
    /// Number of error locations, redrawn until they satisfy U_r.
    #[arg(long)]
    pub t: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    /// Where to write the planted locations (default `<out>.errors.json`).
    #[arg(long)]
    pub errors_out: Option<PathBuf>,
    #[arg(long, default_value_t = 1000)]
    pub max_resamples: usize,
}

pub fn cmd_corrupt(args: &CorruptArgs) -> Result<(), Failure> {
    let (params, word) = load_word(&args.word)?;
    let mut rng = ChaCha20Rng::seed_from_u64(args.seed);
    let sampled = sample_error_set(&params, args.t, &mut rng, args.max_resamples)?;
    let (bad, _) = corrupt(&word, &sampled.errors, &mut rng);
    save_word(&args.out, &bad)?;
    let errors_out = args.errors_out.clone().unwrap_or_else(|| {
        let mut s = args.out.as_os_str().to_owned();
        s.push(".errors.json");
        PathBuf::from(s)
    });
    write_json(&errors_out, &sampled.errors.points())
}

#[derive(Debug, Args)]
pub struct SyndromeArgs {
    #[arg(long)]
    pub word: PathBuf,
    /// One pass over the file with constant memory besides the syndrome.
    #[arg(long)]
    pub stream: bool,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn cmd_syndrome(args: &SyndromeArgs) -> Result<(), Failure> {
    let syndrome = if args.stream {
        let params = read_sidecar(&args.word)?;
        let index = params.syndrome_index()?;
        syndrome_streaming(params, &index, open(&args.word)?)
            .map_err(|e| Failure::from(e).context(format!("streaming {}", args.word.display())))?
    } else {
        let (_, word) = load_word(&args.word)?;
        Syndrome::from_word(&word)?
    };
    write_json(&args.out, &SyndromeFile::from(&syndrome))
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[arg(long)]
    pub syndrome: PathBuf,
    #[arg(long, value_enum)]
    pub algo: Algo,
    #[arg(long, value_enum, default_value_t = Mode::Rand)]
    pub mode: Mode,
    /// Extension degree for jennrich (default 10m, capped by the field).
    #[arg(long)]
    pub ext_degree: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    /// Also write the reduced basis of the vanishing space.
    #[arg(long)]
    pub dump_space: Option<PathBuf>,
}

#[derive(Serialize)]
struct SpaceDump {
    params: CodeParams,
    codim: usize,
    basis: Vec<Vec<Term>>,
}

pub fn load_syndrome(path: &Path) -> Result<Syndrome, Failure> {
    let file: SyndromeFile = serde_json::from_reader(BufReader::new(open(path)?))
        .map_err(|e| Failure::from(e).context(format!("parsing {}", path.display())))?;
    file.params.validate()?;
    Syndrome::try_from(file).map_err(|e| Failure::new(Exit::InvalidInput, e))
}

pub fn cmd_decode(args: &DecodeArgs) -> Result<(), Failure> {
    let syndrome = load_syndrome(&args.syndrome)?;
    let params = *syndrome.params();
    if let Some(path) = &args.dump_space {
        let space =
            PolyspaceDecoder::new(params, PolyspaceMode::Deterministic)?.space(&syndrome)?;
        write_json(
            path,
            &SpaceDump {
                params,
                codim: space.codim(),
                basis: space.to_terms(),
            },
        )?;
    }
    let decoder = AnyDecoder::new(params, args.algo, args.mode, args.ext_degree)?;
    let mut rng = ChaCha20Rng::seed_from_u64(args.seed);
    let out = decoder.decode(&syndrome, &mut rng)?;
    if params.p != 2 {
        log::info!("magnitudes: {:?}", out.magnitudes);
    }
    write_json(&args.out, &out.errors.points())
}
